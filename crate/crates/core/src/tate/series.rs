//! Truncated multivariate series over a p-adic base with Gauss norm.

use std::collections::BTreeMap;
use std::fmt;

use crate::base::{Norm, PadicNumber};
use crate::error::{Error, Result};
use crate::poly::{Monomial, Poly, QPoly, Rationals};

/// `sum a_m X^m` over exponents of total degree at most the cap.
#[derive(Clone, PartialEq, Eq)]
pub struct TateSeries {
    p: u32,
    prec: u32,
    vars: Vec<String>,
    cap: u32,
    coeffs: BTreeMap<Monomial, PadicNumber>,
    overflow: bool,
    precision_loss: bool,
}

impl TateSeries {
    pub fn zero(p: u32, prec: u32, vars: Vec<String>, cap: u32) -> Self {
        TateSeries { p, prec, vars, cap, coeffs: BTreeMap::new(), overflow: false, precision_loss: false }
    }

    /// Embeds a rational polynomial; terms above the cap are dropped and flagged.
    pub fn from_poly(p: u32, prec: u32, vars: Vec<String>, cap: u32, f: &QPoly) -> Self {
        assert_eq!(f.nvars(), vars.len(), "variable count");
        let mut s = Self::zero(p, prec, vars, cap);
        for (m, c) in f.terms() {
            if m.degree() > cap {
                s.overflow = true;
                continue;
            }
            let c = PadicNumber::from_rational(p, prec, c);
            if !c.is_zero() {
                s.coeffs.insert(m.clone(), c);
            }
        }
        s
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    pub fn precision(&self) -> u32 {
        self.prec
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn degree_cap(&self) -> u32 {
        self.cap
    }

    /// Set when a product or embedding dropped terms above the degree cap.
    pub fn overflow(&self) -> bool {
        self.overflow
    }

    /// Set when some coefficient cancelled below the tracked precision.
    pub fn precision_loss(&self) -> bool {
        self.precision_loss
    }

    pub(crate) fn mark_overflow(&mut self) {
        self.overflow = true;
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coefficients(&self) -> impl Iterator<Item = (&Monomial, &PadicNumber)> {
        self.coeffs.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Option<&PadicNumber> {
        self.coeffs.get(m)
    }

    /// The polynomial of canonical rational representatives.
    pub fn to_poly(&self) -> QPoly {
        Poly::from_terms(Rationals, self.vars.len(), self.coeffs.iter().map(|(m, c)| (m.clone(), c.to_rational())))
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.p != other.p {
            return Err(Error::PrimeMismatch(self.p, other.p));
        }
        if self.vars != other.vars || self.cap != other.cap || self.prec != other.prec {
            return Err(Error::CapMismatch(format!(
                "({}; D={}, N={}) vs ({}; D={}, N={})",
                self.vars.join(","),
                self.cap,
                self.prec,
                other.vars.join(","),
                other.cap,
                other.prec
            )));
        }
        Ok(())
    }

    fn accumulate(&mut self, m: Monomial, c: &PadicNumber) {
        match self.coeffs.remove(&m) {
            None => {
                if !c.is_zero() {
                    self.coeffs.insert(m, c.clone());
                }
            }
            Some(old) => match old.add(c) {
                Ok(s) if s.is_zero() => {}
                Ok(s) => {
                    self.coeffs.insert(m, s);
                }
                Err(Error::PrecisionLoss(_)) => self.precision_loss = true,
                Err(e) => unreachable!("{e}"),
            },
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        out.overflow |= other.overflow;
        out.precision_loss |= other.precision_loss;
        for (m, c) in &other.coeffs {
            out.accumulate(m.clone(), c);
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for c in out.coeffs.values_mut() {
            *c = c.neg();
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = Self::zero(self.p, self.prec, self.vars.clone(), self.cap);
        out.overflow = self.overflow || other.overflow;
        out.precision_loss = self.precision_loss || other.precision_loss;
        for (m1, c1) in &self.coeffs {
            for (m2, c2) in &other.coeffs {
                let m = m1.mul(m2);
                if m.degree() > self.cap {
                    out.overflow = true;
                    continue;
                }
                let c = c1.mul(c2)?;
                out.accumulate(m, &c);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> Result<Self> {
        let mut acc = Self::from_poly(self.p, self.prec, self.vars.clone(), self.cap, &QPoly::from_int(self.vars.len(), 1));
        for _ in 0..k {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Sup of the coefficient norms. A lower bound when `precision_loss` is set.
    pub fn gauss_norm(&self) -> Norm {
        self.coeffs.values().map(|c| c.norm()).fold(Norm::zero(self.p), Norm::max)
    }
}

impl fmt::Display for TateSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_poly().display_with(&self.vars))
    }
}

impl fmt::Debug for TateSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TateSeries({self}; D={}, N={}, p={})", self.cap, self.prec, self.p)
    }
}
