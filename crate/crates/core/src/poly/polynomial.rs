use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Signed};

use super::field::{Field, Rationals};
use super::monomial::{Monomial, MonomialOrder};
use crate::error::{Error, Result};

/// Sparse multivariate polynomial over a field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly<F: Field> {
    field: F,
    nvars: usize,
    terms: BTreeMap<Monomial, F::Elem>,
}

/// Polynomials with exact rational coefficients; the storage format of every
/// presentation.
pub type QPoly = Poly<Rationals>;

impl<F: Field> Poly<F> {
    pub fn zero(field: F, nvars: usize) -> Self {
        Poly { field, nvars, terms: BTreeMap::new() }
    }

    pub fn constant(field: F, nvars: usize, c: F::Elem) -> Self {
        let mut p = Self::zero(field, nvars);
        p.add_term(Monomial::one(nvars), c);
        p
    }

    pub fn one(field: F, nvars: usize) -> Self {
        let c = field.one();
        Self::constant(field, nvars, c)
    }

    pub fn var(field: F, nvars: usize, i: usize) -> Self {
        let mut p = Self::zero(field.clone(), nvars);
        p.add_term(Monomial::var(nvars, i), field.one());
        p
    }

    pub fn monomial(field: F, m: Monomial, c: F::Elem) -> Self {
        let mut p = Self::zero(field, m.nvars());
        p.add_term(m, c);
        p
    }

    pub fn from_terms(field: F, nvars: usize, terms: impl IntoIterator<Item = (Monomial, F::Elem)>) -> Self {
        let mut p = Self::zero(field, nvars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &F::Elem)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> F::Elem {
        self.terms.get(m).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn constant_term(&self) -> F::Elem {
        self.coeff(&Monomial::one(self.nvars))
    }

    pub fn add_term(&mut self, m: Monomial, c: F::Elem) {
        debug_assert_eq!(m.nvars(), self.nvars);
        if self.field.is_zero(&c) {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                let s = self.field.add(existing, &c);
                if self.field.is_zero(&s) {
                    self.terms.remove(&m);
                } else {
                    *existing = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    /// Degree in variable `i`.
    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|m| m.0[i]).max().unwrap_or(0)
    }

    pub fn uses_var(&self, i: usize) -> bool {
        self.terms.keys().any(|m| m.0[i] > 0)
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        if self.field.is_zero(c) {
            return Self::zero(self.field.clone(), self.nvars);
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, a)| (m.clone(), self.field.mul(a, c)))
            .collect();
        Poly { field: self.field.clone(), nvars: self.nvars, terms }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &F::Elem) -> Self {
        let mut out = Self::zero(self.field.clone(), self.nvars);
        for (mm, a) in &self.terms {
            out.add_term(mm.mul(m), self.field.mul(a, c));
        }
        out
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut acc = Self::one(self.field.clone(), self.nvars);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Formal partial derivative with respect to variable `i`.
    pub fn derivative(&self, i: usize) -> Self {
        let mut out = Self::zero(self.field.clone(), self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut dm = m.clone();
            dm.0[i] -= 1;
            out.add_term(dm, self.field.mul(c, &self.field.from_int(e as i64)));
        }
        out
    }

    /// Leading monomial and coefficient for `order`.
    pub fn leading(&self, order: &MonomialOrder) -> Option<(&Monomial, &F::Elem)> {
        self.terms.iter().max_by(|a, b| order.cmp(a.0, b.0))
    }

    /// Scales to a monic polynomial for `order` (zero stays zero).
    pub fn monic(&self, order: &MonomialOrder) -> Self {
        match self.leading(order) {
            Some((_, c)) => {
                let inv = self.field.inv(c).expect("leading coefficient is nonzero");
                self.scale(&inv)
            }
            None => self.clone(),
        }
    }

    /// Substitutes `images[i]` for variable `i`. All images share a ring with
    /// `target_nvars` variables.
    pub fn substitute(&self, images: &[Poly<F>], target_nvars: usize) -> Self {
        assert_eq!(images.len(), self.nvars, "one image per variable");
        let mut out = Self::zero(self.field.clone(), target_nvars);
        let mut cache: Vec<Vec<Poly<F>>> = vec![Vec::new(); self.nvars];
        for (m, c) in &self.terms {
            let mut term = Self::constant(self.field.clone(), target_nvars, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let powers = &mut cache[i];
                if powers.is_empty() {
                    powers.push(Self::one(self.field.clone(), target_nvars));
                }
                while powers.len() <= e as usize {
                    let next = powers.last().unwrap() * &images[i];
                    powers.push(next);
                }
                term = &term * &powers[e as usize];
            }
            out = &out + &term;
        }
        out
    }

    /// Re-embeds into a ring with `nvars` variables, sending variable `i` to
    /// variable `map[i]`.
    pub fn remap(&self, nvars: usize, map: &[usize]) -> Self {
        let mut out = Self::zero(self.field.clone(), nvars);
        for (m, c) in &self.terms {
            let mut e = vec![0; nvars];
            for (i, &x) in m.0.iter().enumerate() {
                e[map[i]] += x;
            }
            out.add_term(Monomial(e), c.clone());
        }
        out
    }

    /// Embeds into `nvars >= self.nvars` variables, keeping indices.
    pub fn extend(&self, nvars: usize) -> Self {
        let map: Vec<usize> = (0..self.nvars).collect();
        self.remap(nvars, &map)
    }

    /// Drops trailing variables; fails if a dropped variable occurs.
    pub fn truncate_vars(&self, nvars: usize) -> Option<Self> {
        let mut out = Self::zero(self.field.clone(), nvars);
        for (m, c) in &self.terms {
            if m.0[nvars..].iter().any(|&e| e > 0) {
                return None;
            }
            out.add_term(Monomial(m.0[..nvars].to_vec()), c.clone());
        }
        Some(out)
    }

    /// Maps coefficients into another field.
    pub fn map_field<G: Field>(&self, target: &G, f: impl Fn(&F::Elem) -> Option<G::Elem>) -> Option<Poly<G>> {
        let mut out = Poly::zero(target.clone(), self.nvars);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c)?);
        }
        Some(out)
    }

    /// Terms sorted from largest to smallest under `order`.
    pub fn sorted_terms(&self, order: &MonomialOrder) -> Vec<(Monomial, F::Elem)> {
        let mut v: Vec<_> = self.terms.iter().map(|(m, c)| (m.clone(), c.clone())).collect();
        v.sort_by(|a, b| order.cmp(&b.0, &a.0));
        v
    }

    /// Drops every term of total degree above `cap`. Returns whether anything
    /// was dropped.
    pub fn truncate_degree(&mut self, cap: u32) -> bool {
        let before = self.terms.len();
        self.terms.retain(|m, _| m.degree() <= cap);
        before != self.terms.len()
    }

    pub fn display_with(&self, names: &[String]) -> String {
        let order = MonomialOrder::grevlex();
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (m, c)) in self.sorted_terms(&order).iter().enumerate() {
            let q = self.field.to_rational(c);
            let neg = q.is_negative();
            let mag = q.abs();
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = format_monomial(m, names);
            if mono.is_empty() {
                out.push_str(&format_rational(&mag));
            } else if mag.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format_rational(&mag));
                out.push('*');
                out.push_str(&mono);
            }
        }
        out
    }
}

pub fn format_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

fn format_monomial(m: &Monomial, names: &[String]) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.0.iter().enumerate() {
        let name = names.get(i).cloned().unwrap_or_else(|| format!("x{i}"));
        match e {
            0 => {}
            1 => parts.push(name),
            _ => parts.push(format!("{name}^{e}")),
        }
    }
    parts.join("*")
}

impl<F: Field> fmt::Debug for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with(&[]))
    }
}

impl<'a, F: Field> Add for &'a Poly<F> {
    type Output = Poly<F>;
    fn add(self, rhs: &'a Poly<F>) -> Poly<F> {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<'a, F: Field> Sub for &'a Poly<F> {
    type Output = Poly<F>;
    fn sub(self, rhs: &'a Poly<F>) -> Poly<F> {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), self.field.neg(c));
        }
        out
    }
}

impl<'a, F: Field> Mul for &'a Poly<F> {
    type Output = Poly<F>;
    fn mul(self, rhs: &'a Poly<F>) -> Poly<F> {
        let mut out = Poly::zero(self.field.clone(), self.nvars);
        for (ma, a) in &self.terms {
            for (mb, b) in &rhs.terms {
                out.add_term(ma.mul(mb), self.field.mul(a, b));
            }
        }
        out
    }
}

impl<F: Field> Neg for &Poly<F> {
    type Output = Poly<F>;
    fn neg(self) -> Poly<F> {
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), self.field.neg(c))).collect();
        Poly { field: self.field.clone(), nvars: self.nvars, terms }
    }
}

impl<F: Field> Add for Poly<F> {
    type Output = Poly<F>;
    fn add(self, rhs: Poly<F>) -> Poly<F> {
        &self + &rhs
    }
}

impl<F: Field> Sub for Poly<F> {
    type Output = Poly<F>;
    fn sub(self, rhs: Poly<F>) -> Poly<F> {
        &self - &rhs
    }
}

impl<F: Field> Mul for Poly<F> {
    type Output = Poly<F>;
    fn mul(self, rhs: Poly<F>) -> Poly<F> {
        &self * &rhs
    }
}

impl QPoly {
    pub fn from_int(nvars: usize, n: i64) -> Self {
        Poly::constant(Rationals, nvars, BigRational::from_integer(n.into()))
    }

    pub fn q_var(nvars: usize, i: usize) -> Self {
        Poly::var(Rationals, nvars, i)
    }

    /// Converts rational coefficients into `field`, failing on denominators
    /// that are not invertible there.
    pub fn to_field<G: Field>(&self, field: &G) -> Result<Poly<G>> {
        self.map_field(field, |c| field.from_rational(c))
            .ok_or_else(|| Error::Coefficient(format!("{self:?} over characteristic {}", field.characteristic())))
    }

    /// `true` when every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }
}

impl<F: Field> Poly<F> {
    /// Lifts coefficients to canonical rationals.
    pub fn to_rational(&self) -> QPoly {
        let mut out = Poly::zero(Rationals, self.nvars);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), self.field.to_rational(c));
        }
        out
    }
}

impl<F: Field> Default for Poly<F>
where
    F: Default,
{
    fn default() -> Self {
        Poly::zero(F::default(), 0)
    }
}


#[cfg(test)]
mod tests {
    use super::*;

    fn t() -> QPoly {
        QPoly::q_var(1, 0)
    }

    #[test]
    fn product_and_difference() {
        let one = QPoly::from_int(1, 1);
        let lhs = &(&one + &t()) * &(&one - &t());
        let rhs = &one - &t().pow(2);
        assert_eq!(lhs, rhs);
        assert_eq!(format!("{:?}", rhs), "-x0^2 + 1");
    }

    #[test]
    fn derivative_and_substitution() {
        let f = &t().pow(3) - &QPoly::from_int(1, 2);
        assert_eq!(f.derivative(0), &QPoly::from_int(1, 3) * &t().pow(2));
        let g = f.substitute(&[&t() + &QPoly::from_int(1, 1)], 1);
        assert_eq!(g.constant_term(), BigRational::from_integer((-1).into()));
    }
}
