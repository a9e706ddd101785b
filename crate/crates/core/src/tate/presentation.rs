//! Finitely presented algebras `B = A<Y>/(g)` over `A = K<X>/(h)`.
//!
//! A presentation lists the variables of the base algebra first, followed by
//! the adjoined ones. Relations are exact rational polynomials; coefficients
//! are read in `Q_p` (embedded at precision N), in `Z_(p)` or in `F_p`.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::OnceLock;

use num_traits::Zero;
use serde::Serialize;

use super::series::TateSeries;
use crate::base::FiniteRing;
use crate::error::{Error, Result};
use crate::poly::field::rational_valuation;
use crate::poly::{Field, Groebner, Poly, PrimeField, QPoly, Rationals};

/// Coefficient world of a presentation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Coefficients {
    /// `Q_p` at precision `prec`.
    Qp { p: u32, prec: u32 },
    /// `F_p`.
    Fp(u32),
    /// `Z_(p)`, the integers localized at `p`.
    Zp(u32),
}

impl Coefficients {
    pub fn prime(&self) -> u32 {
        match *self {
            Coefficients::Qp { p, .. } | Coefficients::Fp(p) | Coefficients::Zp(p) => p,
        }
    }

    pub fn is_char_p(&self) -> bool {
        matches!(self, Coefficients::Fp(_))
    }

    /// Whether the coefficient ring maps to a finite ring `R`.
    pub fn admits_map_to(&self, ring: &FiniteRing) -> bool {
        let c = ring.characteristic();
        match *self {
            Coefficients::Qp { .. } => false,
            Coefficients::Fp(p) => c == p as u64,
            Coefficients::Zp(p) => {
                let mut c = c;
                while c.is_multiple_of(p as u64) {
                    c /= p as u64;
                }
                c == 1
            }
        }
    }

    /// Checks that a rational coefficient is defined over this ring.
    pub fn check_coefficient(&self, q: &num_rational::BigRational) -> Result<()> {
        if q.is_zero() {
            return Ok(());
        }
        match self {
            Coefficients::Qp { .. } => Ok(()),
            Coefficients::Fp(p) | Coefficients::Zp(p) => {
                let p = *p as u64;
                if rational_valuation(&num_rational::BigRational::from_integer(q.denom().clone()), p).unwrap_or(0) > 0 {
                    Err(Error::Coefficient(format!("{q} has denominator divisible by {p}")))
                } else {
                    Ok(())
                }
            }
        }
    }
}

impl fmt::Display for Coefficients {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coefficients::Qp { p, prec } => write!(f, "Qp({p},{prec})"),
            Coefficients::Fp(p) => write!(f, "Fp({p})"),
            Coefficients::Zp(p) => write!(f, "Zp({p})"),
        }
    }
}

#[derive(Debug)]
enum Reducer {
    Q(Groebner<Rationals>),
    P(Groebner<PrimeField>),
}

/// Default degree cap.
pub const DEFAULT_DEGREE: u32 = 8;
/// Default p-adic precision.
pub const DEFAULT_PRECISION: u32 = 8;

/// `B = A<Y>/(g)` with `A = K<X>/(h)`; the variables are `X` then `Y`.
#[derive(Debug)]
pub struct Presentation {
    coeffs: Coefficients,
    vars: Vec<String>,
    base_vars: usize,
    base_relations: Vec<QPoly>,
    relations: Vec<QPoly>,
    degree_cap: u32,
    integral_generators: Vec<QPoly>,
    declared: BTreeSet<String>,
    reducer: OnceLock<Reducer>,
}

impl Clone for Presentation {
    fn clone(&self) -> Self {
        Presentation {
            coeffs: self.coeffs,
            vars: self.vars.clone(),
            base_vars: self.base_vars,
            base_relations: self.base_relations.clone(),
            relations: self.relations.clone(),
            degree_cap: self.degree_cap,
            integral_generators: self.integral_generators.clone(),
            declared: self.declared.clone(),
            reducer: OnceLock::new(),
        }
    }
}

impl PartialEq for Presentation {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
            && self.vars == other.vars
            && self.base_vars == other.base_vars
            && self.base_relations == other.base_relations
            && self.relations == other.relations
    }
}

fn check_names(vars: &[String]) -> Result<()> {
    let mut seen = BTreeSet::new();
    for v in vars {
        if !seen.insert(v) {
            return Err(Error::Invalid(format!("variable `{v}` declared twice")));
        }
    }
    Ok(())
}

impl Presentation {
    /// The Tate algebra `K<vars>` over its coefficients.
    pub fn free(coeffs: Coefficients, vars: Vec<String>) -> Result<Self> {
        check_names(&vars)?;
        Ok(Presentation {
            coeffs,
            vars,
            base_vars: 0,
            base_relations: Vec::new(),
            relations: Vec::new(),
            degree_cap: DEFAULT_DEGREE,
            integral_generators: Vec::new(),
            declared: BTreeSet::new(),
            reducer: OnceLock::new(),
        })
    }

    /// `base<new_vars>/(relations)` over `base`; relations are written in
    /// `base.vars ++ new_vars`.
    pub fn quotient(base: &Presentation, new_vars: Vec<String>, relations: Vec<QPoly>) -> Result<Self> {
        let mut vars = base.vars.clone();
        vars.extend(new_vars);
        check_names(&vars)?;
        let n = vars.len();
        let relations: Vec<QPoly> = relations.into_iter().filter(|r| !r.is_zero()).collect();
        for r in &relations {
            if r.nvars() != n {
                return Err(Error::Invalid(format!("relation has {} variables, expected {n}", r.nvars())));
            }
            for (_, c) in r.terms() {
                base.coeffs.check_coefficient(c)?;
            }
        }
        Ok(Presentation {
            coeffs: base.coeffs,
            vars,
            base_vars: base.nvars(),
            base_relations: base.all_relations().iter().map(|r| r.extend(n)).collect(),
            relations,
            degree_cap: base.degree_cap,
            integral_generators: base.integral_generators.iter().map(|r| r.extend(n)).collect(),
            declared: BTreeSet::new(),
            reducer: OnceLock::new(),
        })
    }

    /// Assembles a presentation from raw parts.
    pub fn from_parts(
        coeffs: Coefficients,
        vars: Vec<String>,
        base_vars: usize,
        base_relations: Vec<QPoly>,
        relations: Vec<QPoly>,
    ) -> Result<Self> {
        check_names(&vars)?;
        let n = vars.len();
        if base_vars > n {
            return Err(Error::Invalid("more base variables than variables".into()));
        }
        for r in base_relations.iter().chain(&relations) {
            if r.nvars() != n {
                return Err(Error::Invalid(format!("relation has {} variables, expected {n}", r.nvars())));
            }
            for (_, c) in r.terms() {
                coeffs.check_coefficient(c)?;
            }
        }
        for r in &base_relations {
            if r.terms().any(|(m, _)| m.0[base_vars..].iter().any(|&e| e > 0)) {
                return Err(Error::Invalid("base relation uses an adjoined variable".into()));
            }
        }
        Ok(Presentation {
            coeffs,
            vars,
            base_vars,
            base_relations: base_relations.into_iter().filter(|r| !r.is_zero()).collect(),
            relations: relations.into_iter().filter(|r| !r.is_zero()).collect(),
            degree_cap: DEFAULT_DEGREE,
            integral_generators: Vec::new(),
            declared: BTreeSet::new(),
            reducer: OnceLock::new(),
        })
    }

    pub fn with_degree_cap(mut self, cap: u32) -> Self {
        self.degree_cap = cap;
        self
    }

    /// Records a declared property such as "strongly sheafy"; never computed.
    pub fn declare(mut self, property: &str) -> Self {
        self.declared.insert(property.to_string());
        self
    }

    /// Records generators of the integral subring; inert metadata.
    pub fn with_integral_generators(mut self, gens: Vec<QPoly>) -> Self {
        self.integral_generators = gens;
        self
    }

    pub fn coefficients(&self) -> Coefficients {
        self.coeffs
    }

    pub fn prime(&self) -> u32 {
        self.coeffs.prime()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn base_vars(&self) -> usize {
        self.base_vars
    }

    /// Number of adjoined variables.
    pub fn new_vars(&self) -> usize {
        self.vars.len() - self.base_vars
    }

    pub fn relations(&self) -> &[QPoly] {
        &self.relations
    }

    pub fn base_relations(&self) -> &[QPoly] {
        &self.base_relations
    }

    pub fn all_relations(&self) -> Vec<QPoly> {
        self.base_relations.iter().chain(&self.relations).cloned().collect()
    }

    pub fn degree_cap(&self) -> u32 {
        self.degree_cap
    }

    pub fn declared(&self) -> &BTreeSet<String> {
        &self.declared
    }

    pub fn integral_generators(&self) -> &[QPoly] {
        &self.integral_generators
    }

    /// The base algebra `A = K<X>/(h)` as an absolute presentation.
    pub fn base_ring(&self) -> Presentation {
        let k = self.base_vars;
        let rels = self.base_relations.iter().map(|r| r.truncate_vars(k).expect("base relations use base variables")).collect();
        Presentation {
            coeffs: self.coeffs,
            vars: self.vars[..k].to_vec(),
            base_vars: 0,
            base_relations: Vec::new(),
            relations: rels,
            degree_cap: self.degree_cap,
            integral_generators: Vec::new(),
            declared: BTreeSet::new(),
            reducer: OnceLock::new(),
        }
    }

    /// The same ring presented over the coefficients alone.
    pub fn absolute(&self) -> Presentation {
        Presentation {
            coeffs: self.coeffs,
            vars: self.vars.clone(),
            base_vars: 0,
            base_relations: Vec::new(),
            relations: self.all_relations(),
            degree_cap: self.degree_cap,
            integral_generators: self.integral_generators.clone(),
            declared: self.declared.clone(),
            reducer: OnceLock::new(),
        }
    }

    /// Parses a polynomial in this presentation's variables.
    pub fn parse(&self, text: &str) -> Result<QPoly> {
        let f = crate::poly::parse::parse_poly(text, &self.vars)?;
        for (_, c) in f.terms() {
            self.coeffs.check_coefficient(c)?;
        }
        Ok(f)
    }

    pub fn display(&self, f: &QPoly) -> String {
        f.display_with(&self.vars)
    }

    fn reducer(&self) -> &Reducer {
        self.reducer.get_or_init(|| {
            let n = self.nvars();
            let rels = self.all_relations();
            match self.coeffs {
                Coefficients::Fp(p) => {
                    let field = PrimeField::new(p as u64);
                    let gens: Vec<Poly<PrimeField>> =
                        rels.iter().map(|r| r.to_field(&field).expect("coefficients checked at construction")).collect();
                    Reducer::P(Groebner::grevlex(field, n, &gens))
                }
                _ => Reducer::Q(Groebner::grevlex(Rationals, n, &rels)),
            }
        })
    }

    /// Reduced Gröbner basis of all relations (grevlex).
    pub fn groebner_basis(&self) -> Vec<QPoly> {
        match self.reducer() {
            Reducer::Q(gb) => gb.basis(),
            Reducer::P(gb) => gb.basis().iter().map(|g| g.to_rational()).collect(),
        }
    }

    /// Krull dimension of the polynomial model.
    pub fn dimension(&self) -> Option<usize> {
        match self.reducer() {
            Reducer::Q(gb) => gb.dimension(),
            Reducer::P(gb) => gb.dimension(),
        }
    }

    pub fn is_zero_ring(&self) -> bool {
        match self.reducer() {
            Reducer::Q(gb) => gb.is_unit_ideal(),
            Reducer::P(gb) => gb.is_unit_ideal(),
        }
    }

    /// Canonical representative modulo the relations.
    pub fn normal_form(&self, f: &QPoly) -> QPoly {
        match self.reducer() {
            Reducer::Q(gb) => gb.reduce(f),
            Reducer::P(gb) => {
                let field = *gb.field();
                gb.reduce(&f.to_field(&field).expect("coefficient defined over F_p")).to_rational()
            }
        }
    }

    pub fn contains(&self, f: &QPoly) -> bool {
        self.normal_form(f).is_zero()
    }

    /// Normal form of a truncated series; the result is flagged when the
    /// reduction leaves terms above the degree cap.
    pub fn normal_form_series(&self, f: &TateSeries) -> Result<TateSeries> {
        if self.coeffs.is_char_p() {
            return Err(Error::Characteristic("series need a p-adic base".into()));
        }
        if f.vars() != self.vars.as_slice() {
            return Err(Error::CapMismatch("series variables differ from the presentation".into()));
        }
        let nf = self.normal_form(&f.to_poly());
        let mut out = TateSeries::from_poly(f.prime(), f.precision(), self.vars.clone(), f.degree_cap(), &nf);
        if f.overflow() {
            out.mark_overflow();
        }
        Ok(out)
    }

    /// A series in this presentation's variables at its cap and precision.
    pub fn series(&self, f: &QPoly) -> Result<TateSeries> {
        match self.coeffs {
            Coefficients::Qp { p, prec } => Ok(TateSeries::from_poly(p, prec, self.vars.clone(), self.degree_cap, f)),
            Coefficients::Zp(p) => Ok(TateSeries::from_poly(p, DEFAULT_PRECISION, self.vars.clone(), self.degree_cap, f)),
            Coefficients::Fp(_) => Err(Error::Characteristic("series need a p-adic base".into())),
        }
    }

    /// Same ring: equal coefficients, variable count and ideal.
    pub fn same_ring(&self, other: &Presentation) -> bool {
        self.coeffs == other.coeffs && self.nvars() == other.nvars() && self.groebner_basis() == other.groebner_basis()
    }

    /// Relations of the polynomial model over a prime field, for routines that
    /// work on the special fibre.
    pub fn relations_over<F: Field>(&self, field: &F) -> Result<(Vec<Poly<F>>, Vec<Poly<F>>)> {
        let h = self.base_relations.iter().map(|r| r.to_field(field)).collect::<Result<Vec<_>>>()?;
        let g = self.relations.iter().map(|r| r.to_field(field)).collect::<Result<Vec<_>>>()?;
        Ok((h, g))
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let base: Vec<String> = self.base_relations.iter().map(|r| self.display(r)).collect();
        let rels: Vec<String> = self.relations.iter().map(|r| self.display(r)).collect();
        write!(
            f,
            "{}[{}][{}]/({} | {})",
            self.coeffs,
            self.vars[..self.base_vars].join(","),
            self.vars[self.base_vars..].join(","),
            base.join(", "),
            rels.join(", ")
        )
    }
}
