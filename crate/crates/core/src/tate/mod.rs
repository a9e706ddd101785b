//! Truncated Tate-algebra arithmetic and finitely presented quotients.

pub mod morphism;
pub mod presentation;
pub mod series;

pub use morphism::{base_change, Morphism};
pub use presentation::{Coefficients, Presentation, DEFAULT_DEGREE, DEFAULT_PRECISION};
pub use series::TateSeries;

use crate::error::{Error, Result};
use crate::poly::{Groebner, QPoly, Rationals};

/// Reduced grevlex Gröbner basis of series with polynomial support, and the
/// dimension of the quotient. Inexact (flagged) inputs are rejected.
pub fn groebner_basis(vars: &[String], gens: &[TateSeries]) -> Result<(Vec<QPoly>, Option<usize>)> {
    let n = vars.len();
    let mut polys = Vec::new();
    for g in gens {
        if g.vars() != vars {
            return Err(Error::CapMismatch("generators use different variables".into()));
        }
        if g.overflow() || g.precision_loss() {
            return Err(Error::Coefficient(format!("{g} is truncated and has no exact rational form")));
        }
        polys.push(g.to_poly());
    }
    let gb = Groebner::grevlex(Rationals, n, &polys);
    Ok((gb.basis(), gb.dimension()))
}
