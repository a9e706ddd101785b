//! Polynomials over fields, Gröbner bases and exact linear algebra.

pub mod field;
pub mod groebner;
pub mod linalg;
pub mod monomial;
pub mod parse;
pub mod polynomial;

pub use field::{Field, PrimeField, Rationals};
pub use groebner::{syzygies, Groebner, ModuleGroebner};
pub use monomial::{Monomial, MonomialOrder};
pub use polynomial::{Poly, QPoly};
