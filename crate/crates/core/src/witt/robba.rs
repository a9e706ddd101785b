//! Truncated Teichmüller expansions `Σ p^k [x̄_k]` over the perfect field
//! `F_p((t̄^(1/p^∞)))`, with interval Gauss norms and Frobenius.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{Signed, Zero};

use super::universal::{evaluate, universal, CharPRing, UniversalOp};
use super::vector::{MAX_LENGTH, PRIMES};
use crate::base::Norm;
use crate::error::{Error, Result};

/// Default bound on the support of a series.
pub const DEFAULT_SUPPORT: usize = 64;

type Exp = Ratio<i64>;

/// A finite sum `Σ c_α t̄^α` with `α ∈ Z[1/p]` and `c_α ∈ F_p`. `truncated`
/// records that terms of large exponent were discarded.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PerfectSeries {
    pub terms: BTreeMap<Exp, u32>,
    pub truncated: bool,
}

impl PerfectSeries {
    pub fn zero() -> Self {
        PerfectSeries { terms: BTreeMap::new(), truncated: false }
    }

    pub fn monomial(c: u32, e: Exp) -> Self {
        let mut s = Self::zero();
        if c != 0 {
            s.terms.insert(e, c);
        }
        s
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Smallest exponent, which fixes the norm `(1/2)^α`.
    pub fn valuation(&self) -> Option<Exp> {
        self.terms.keys().next().copied()
    }

    /// `x ↦ x^(p^k)` for `k >= 0` and its inverse for `k < 0`; coefficients in
    /// `F_p` are fixed.
    pub fn frobenius(&self, p: u32, k: i32) -> Self {
        let factor = if k >= 0 { Ratio::from_integer((p as i64).pow(k as u32)) } else { Ratio::new(1, (p as i64).pow((-k) as u32)) };
        PerfectSeries { terms: self.terms.iter().map(|(e, c)| (e * factor, *c)).collect(), truncated: self.truncated }
    }

    fn display(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mono = if e.is_zero() {
                    None
                } else if *e == Ratio::from_integer(1) {
                    Some("tbar".to_string())
                } else if e.is_integer() && e.is_positive() {
                    Some(format!("tbar^{}", e.numer()))
                } else {
                    Some(format!("tbar^({})", e))
                };
                match (c, mono) {
                    (c, None) => c.to_string(),
                    (1, Some(m)) => m,
                    (c, Some(m)) => format!("{c}*{m}"),
                }
            })
            .collect();
        parts.join(" + ")
    }
}

/// The perfect field with a support bound, as a ring for Witt polynomials.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PerfectField {
    pub p: u32,
    pub support: usize,
}

impl PerfectField {
    fn truncate(&self, mut s: PerfectSeries) -> PerfectSeries {
        while s.terms.len() > self.support {
            s.terms.pop_last();
            s.truncated = true;
        }
        s
    }
}

impl CharPRing for PerfectField {
    type Elem = PerfectSeries;

    fn zero(&self) -> PerfectSeries {
        PerfectSeries::zero()
    }

    fn one(&self) -> PerfectSeries {
        PerfectSeries::monomial(1, Exp::zero())
    }

    fn add(&self, a: &PerfectSeries, b: &PerfectSeries) -> PerfectSeries {
        let mut out = a.clone();
        out.truncated |= b.truncated;
        for (e, c) in &b.terms {
            let v = (out.terms.get(e).copied().unwrap_or(0) + c) % self.p;
            if v == 0 {
                out.terms.remove(e);
            } else {
                out.terms.insert(*e, v);
            }
        }
        self.truncate(out)
    }

    fn mul(&self, a: &PerfectSeries, b: &PerfectSeries) -> PerfectSeries {
        let mut out = PerfectSeries { terms: BTreeMap::new(), truncated: a.truncated || b.truncated };
        for (e1, c1) in &a.terms {
            for (e2, c2) in &b.terms {
                let e = e1 + e2;
                let v = (out.terms.get(&e).copied().unwrap_or(0) + c1 * c2) % self.p;
                if v == 0 {
                    out.terms.remove(&e);
                } else {
                    out.terms.insert(e, v);
                }
            }
        }
        self.truncate(out)
    }

    fn scalar(&self, c: u64) -> PerfectSeries {
        PerfectSeries::monomial((c % self.p as u64) as u32, Exp::zero())
    }

    fn pow(&self, a: &PerfectSeries, mut e: u64) -> PerfectSeries {
        let mut frob = 0;
        while e > 0 && e.is_multiple_of(self.p as u64) {
            e /= self.p as u64;
            frob += 1;
        }
        let base = a.frobenius(self.p, frob);
        let mut out = self.one();
        for _ in 0..e {
            out = self.mul(&out, &base);
        }
        out
    }
}

/// `Σ_{k<N} p^k [x̄_k]`; `digits[k] = x̄_k`. `truncated` records that
/// series terms or p-adic digits beyond `N` were dropped.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RobbaElement {
    pub p: u32,
    pub digits: Vec<PerfectSeries>,
    pub truncated: bool,
}

fn check(p: u32, n: usize) -> Result<()> {
    if !PRIMES.contains(&p) {
        return Err(Error::Invalid(format!("p must be one of {PRIMES:?}")));
    }
    if n == 0 || n > MAX_LENGTH {
        return Err(Error::Length(format!("p-adic length {n} outside 1..={MAX_LENGTH}")));
    }
    Ok(())
}

impl RobbaElement {
    pub fn zero(p: u32, n: usize) -> Result<Self> {
        check(p, n)?;
        Ok(RobbaElement { p, digits: vec![PerfectSeries::zero(); n], truncated: false })
    }

    /// `p^k [x̄]`.
    pub fn term(p: u32, n: usize, k: usize, x: PerfectSeries) -> Result<Self> {
        let mut out = Self::zero(p, n)?;
        if k < n {
            out.truncated = x.truncated;
            out.digits[k] = x;
        } else if !x.is_zero() {
            out.truncated = true;
        }
        Ok(out)
    }

    pub fn length(&self) -> usize {
        self.digits.len()
    }

    pub fn is_zero(&self) -> bool {
        self.digits.iter().all(PerfectSeries::is_zero)
    }

    fn field(&self) -> PerfectField {
        PerfectField { p: self.p, support: DEFAULT_SUPPORT }
    }

    /// Witt coordinates `x̄_k^(p^k)`.
    fn witt(&self) -> Vec<PerfectSeries> {
        self.digits.iter().enumerate().map(|(k, x)| x.frobenius(self.p, k as i32)).collect()
    }

    fn from_witt(p: u32, coords: Vec<PerfectSeries>, truncated: bool) -> Self {
        let digits: Vec<PerfectSeries> = coords.iter().enumerate().map(|(k, a)| a.frobenius(p, -(k as i32))).collect();
        let truncated = truncated || digits.iter().any(|d| d.truncated);
        RobbaElement { p, digits, truncated }
    }

    fn shape(&self, other: &Self) -> Result<()> {
        if self.p != other.p {
            return Err(Error::PrimeMismatch(self.p, other.p));
        }
        if self.length() != other.length() {
            return Err(Error::Length(format!("p-adic lengths {} and {} differ", self.length(), other.length())));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.shape(other)?;
        let polys = universal(UniversalOp::Add, self.p as u64, self.length());
        let inputs: Vec<PerfectSeries> = self.witt().into_iter().chain(other.witt()).collect();
        let coords = evaluate(&self.field(), &polys, &inputs);
        Ok(Self::from_witt(self.p, coords, self.truncated || other.truncated))
    }

    /// Product; digits of `p`-adic order `>= N` are dropped and flagged.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.shape(other)?;
        let n = self.length();
        let overflow = (0..n).any(|i| (0..n).any(|j| i + j >= n && !self.digits[i].is_zero() && !other.digits[j].is_zero()));
        let polys = universal(UniversalOp::Mul, self.p as u64, n);
        let inputs: Vec<PerfectSeries> = self.witt().into_iter().chain(other.witt()).collect();
        let coords = evaluate(&self.field(), &polys, &inputs);
        Ok(Self::from_witt(self.p, coords, self.truncated || other.truncated || overflow))
    }

    /// Parses `p^0*[tbar^(1/2)] + p^1*[tbar^3]`; bare integers denote
    /// multiples of 1 and `[..]` without a power means `p^0`.
    pub fn parse(text: &str, p: u32, n: usize) -> Result<Self> {
        check(p, n)?;
        Parser { s: text.as_bytes(), i: 0, p }.element(n)
    }
}

impl fmt::Display for RobbaElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> =
            self.digits.iter().enumerate().filter(|(_, d)| !d.is_zero()).map(|(k, d)| format!("p^{k}*[{}]", d.display())).collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

struct Parser<'a> {
    s: &'a [u8],
    i: usize,
    p: u32,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Invalid(format!("{msg} at offset {} in Robba literal", self.i))
    }

    fn ws(&mut self) {
        while self.i < self.s.len() && self.s[self.i].is_ascii_whitespace() {
            self.i += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.ws();
        self.s.get(self.i).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.i += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(&format!("expected '{}'", c as char)))
        }
    }

    fn keyword(&mut self, k: &str) -> bool {
        self.ws();
        if self.s[self.i..].starts_with(k.as_bytes()) {
            self.i += k.len();
            true
        } else {
            false
        }
    }

    fn int(&mut self) -> Result<i64> {
        self.ws();
        let neg = self.eat(b'-');
        let start = self.i;
        while self.i < self.s.len() && self.s[self.i].is_ascii_digit() {
            self.i += 1;
        }
        if start == self.i {
            return Err(self.err("expected an integer"));
        }
        let v: i64 = std::str::from_utf8(&self.s[start..self.i])
            .expect("ascii digits")
            .parse()
            .map_err(|_| self.err("integer out of range"))?;
        Ok(if neg { -v } else { v })
    }

    fn exponent(&mut self) -> Result<Exp> {
        if self.eat(b'(') {
            let num = self.int()?;
            let den = if self.eat(b'/') { self.int()? } else { 1 };
            self.expect(b')')?;
            let mut d = den;
            while d > 1 && d % self.p as i64 == 0 {
                d /= self.p as i64;
            }
            if den <= 0 || d != 1 {
                return Err(self.err("exponent denominators must be powers of p"));
            }
            Ok(Ratio::new(num, den))
        } else {
            Ok(Ratio::from_integer(self.int()?))
        }
    }

    fn series(&mut self) -> Result<PerfectSeries> {
        let field = PerfectField { p: self.p, support: DEFAULT_SUPPORT };
        let mut out = PerfectSeries::zero();
        loop {
            let term = if self.keyword("tbar") {
                let e = if self.eat(b'^') { self.exponent()? } else { Ratio::from_integer(1) };
                PerfectSeries::monomial(1, e)
            } else {
                let c = self.int()?.rem_euclid(self.p as i64) as u32;
                if self.eat(b'*') {
                    if !self.keyword("tbar") {
                        return Err(self.err("expected tbar"));
                    }
                    let e = if self.eat(b'^') { self.exponent()? } else { Ratio::from_integer(1) };
                    PerfectSeries::monomial(c, e)
                } else {
                    PerfectSeries::monomial(c, Exp::zero())
                }
            };
            out = field.add(&out, &term);
            if !self.eat(b'+') {
                return Ok(out);
            }
        }
    }

    fn element(&mut self, n: usize) -> Result<RobbaElement> {
        let mut acc = RobbaElement::zero(self.p, n)?;
        loop {
            let term = if self.keyword("p^") {
                let k = self.int()?;
                if k < 0 {
                    return Err(self.err("negative p-power"));
                }
                self.expect(b'*')?;
                self.expect(b'[')?;
                let x = self.series()?;
                self.expect(b']')?;
                RobbaElement::term(self.p, n, k as usize, x)?
            } else if self.eat(b'[') {
                let x = self.series()?;
                self.expect(b']')?;
                RobbaElement::term(self.p, n, 0, x)?
            } else {
                let m = self.int()?;
                if m < 0 {
                    return Err(self.err("negative integers are not supported"));
                }
                let one = RobbaElement::term(self.p, n, 0, PerfectSeries::monomial(1, Exp::zero()))?;
                let mut v = RobbaElement::zero(self.p, n)?;
                for _ in 0..m {
                    v = v.add(&one)?;
                }
                v
            };
            acc = acc.add(&term)?;
            if !self.eat(b'+') {
                break;
            }
        }
        if self.peek().is_some() {
            return Err(self.err("trailing input"));
        }
        Ok(acc)
    }
}

fn rational(q: &Exp) -> BigRational {
    BigRational::new(BigInt::from(*q.numer()), BigInt::from(*q.denom()))
}

/// `‖f‖_r = max_k p^-k ‖x̄_k‖^r` with `‖t̄‖ = 1/2`.
pub fn robba_norm(f: &RobbaElement, r: &BigRational) -> Result<Norm> {
    if !r.is_positive() {
        return Err(Error::Invalid(format!("radius {r} must be positive")));
    }
    Ok(f.digits.iter().enumerate().fold(Norm::zero(f.p), |acc, (k, x)| match x.valuation() {
        None => acc,
        Some(a) => acc.max(Norm::new(f.p, -(rational(&a) * r), BigRational::from_integer(BigInt::from(-(k as i64))))),
    }))
}

/// `max(‖f‖_s, ‖f‖_r)` for `0 < s <= r`.
pub fn interval_norm(f: &RobbaElement, s: &BigRational, r: &BigRational) -> Result<Norm> {
    if s > r {
        return Err(Error::Invalid(format!("interval [{s}, {r}] is empty")));
    }
    Ok(robba_norm(f, s)?.max(robba_norm(f, r)?))
}

/// `φ(Σ p^k [x̄_k]) = Σ p^k [x̄_k^p]`.
pub fn phi_action(f: &RobbaElement) -> RobbaElement {
    RobbaElement { p: f.p, digits: f.digits.iter().map(|d| d.frobenius(f.p, 1)).collect(), truncated: f.truncated }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn literal_round_trip() {
        let text = "p^0*[tbar^(1/2)] + p^1*[tbar^3]";
        let f = RobbaElement::parse(text, 2, 3).unwrap();
        assert_eq!(f.to_string(), text);
        assert_eq!(RobbaElement::parse("2 + [tbar]", 2, 3).unwrap().to_string(), "p^0*[tbar] + p^1*[1]");
        assert!(RobbaElement::parse("[tbar^(1/3)]", 2, 3).is_err());
        assert!(RobbaElement::parse("[tbar", 2, 3).is_err());
    }

    #[test]
    fn norm_examples() {
        let t = RobbaElement::parse("[tbar]", 2, 3).unwrap();
        assert_eq!(robba_norm(&t, &q(1, 1)).unwrap().to_string(), "2^-1");
        let f = RobbaElement::parse("2 + [tbar]", 2, 3).unwrap();
        assert_eq!(robba_norm(&f, &q(2, 1)).unwrap().to_string(), "2^-1");
        assert_eq!(interval_norm(&f, &q(1, 1), &q(2, 1)).unwrap().to_string(), "2^-1");
        let g = RobbaElement::parse("p^1*[tbar^(1/2)]", 2, 3).unwrap();
        assert_eq!(interval_norm(&g, &q(1, 1), &q(2, 1)).unwrap().to_string(), "2^-3/2");
        assert!(robba_norm(&RobbaElement::zero(2, 3).unwrap(), &q(1, 1)).unwrap().is_zero());
        assert!(interval_norm(&f, &q(2, 1), &q(1, 1)).is_err());
    }

    #[test]
    fn frobenius_examples() {
        let t = RobbaElement::parse("[tbar]", 2, 3).unwrap();
        assert_eq!(phi_action(&t).to_string(), "p^0*[tbar^2]");
        assert_eq!(phi_action(&phi_action(&t)).to_string(), "p^0*[tbar^4]");
        assert_eq!(robba_norm(&phi_action(&t), &q(1, 1)).unwrap(), robba_norm(&t, &q(2, 1)).unwrap());
        let two = RobbaElement::parse("2", 2, 3).unwrap();
        assert_eq!(phi_action(&two), two);
    }

    #[test]
    fn teichmuller_sums_carry() {
        // [1] + [1] = 2 = p^1 [1]
        let one = RobbaElement::parse("[1]", 2, 3).unwrap();
        assert_eq!(one.add(&one).unwrap().to_string(), "p^1*[1]");
        // ([t] + [1])^2 keeps its norm
        let f = RobbaElement::parse("[tbar] + [1]", 2, 3).unwrap();
        let sq = f.mul(&f).unwrap();
        for r in [q(1, 2), q(1, 1), q(2, 1)] {
            let n = robba_norm(&f, &r).unwrap();
            assert_eq!(robba_norm(&sq, &r).unwrap(), n.mul(&n));
        }
    }
}
