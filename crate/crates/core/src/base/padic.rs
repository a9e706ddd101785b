use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};

use super::norm::Norm;
use crate::error::{Error, Result};
use crate::poly::field::{int_valuation, rational_valuation};

/// A p-adic number with relative precision: `p^val * unit`, where `unit` is
/// known modulo `p^prec` and is prime to `p`. Exact zero is a separate value
/// with infinite valuation.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PadicNumber {
    p: u32,
    prec: u32,
    val: i64,
    unit: BigInt,
    zero: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PadicOp {
    Add,
    Sub,
    Mul,
    Div,
}

fn p_pow(p: u32, e: u32) -> BigInt {
    Pow::pow(BigInt::from(p), e)
}

impl PadicNumber {
    pub fn zero(p: u32, prec: u32) -> Self {
        PadicNumber { p, prec, val: 0, unit: BigInt::zero(), zero: true }
    }

    pub fn one(p: u32, prec: u32) -> Self {
        Self::from_int(p, prec, 1)
    }

    pub fn from_int(p: u32, prec: u32, n: i64) -> Self {
        Self::from_rational(p, prec, &BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_rational(p: u32, prec: u32, q: &BigRational) -> Self {
        assert!(prec > 0, "precision must be positive");
        let Some(val) = rational_valuation(q, p as u64) else {
            return Self::zero(p, prec);
        };
        let pb = BigInt::from(p);
        let mut num = q.numer().clone();
        let mut den = q.denom().clone();
        for _ in 0..int_valuation(&num, p as u64) {
            num /= &pb;
        }
        for _ in 0..int_valuation(&den, p as u64) {
            den /= &pb;
        }
        let m = p_pow(p, prec);
        let inv = mod_inverse(&den, &m).expect("denominator prime to p");
        let unit = (num * inv).mod_floor(&m);
        PadicNumber { p, prec, val, unit, zero: false }
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    pub fn precision(&self) -> u32 {
        self.prec
    }

    /// Valuation; `None` for exact zero.
    pub fn valuation(&self) -> Option<i64> {
        (!self.zero).then_some(self.val)
    }

    pub fn unit(&self) -> &BigInt {
        &self.unit
    }

    pub fn is_zero(&self) -> bool {
        self.zero
    }

    /// `p^-v`, or zero.
    pub fn norm(&self) -> Norm {
        if self.zero {
            Norm::zero(self.p)
        } else {
            Norm::from_int_exponent(self.p, -self.val)
        }
    }

    /// The rational `unit * p^val` (the canonical representative).
    pub fn to_rational(&self) -> BigRational {
        if self.zero {
            return BigRational::zero();
        }
        let u = BigRational::from_integer(self.unit.clone());
        if self.val >= 0 {
            u * BigRational::from_integer(p_pow(self.p, self.val as u32))
        } else {
            u / BigRational::from_integer(p_pow(self.p, (-self.val) as u32))
        }
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.p != other.p {
            Err(Error::PrimeMismatch(self.p, other.p))
        } else {
            Ok(())
        }
    }

    pub fn neg(&self) -> Self {
        if self.zero {
            return self.clone();
        }
        let m = p_pow(self.p, self.prec);
        PadicNumber { unit: (-&self.unit).mod_floor(&m), ..self.clone() }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        if self.zero {
            return Ok(other.clone());
        }
        if other.zero {
            return Ok(self.clone());
        }
        let (a, b) = if self.val <= other.val { (self, other) } else { (other, self) };
        let abs = (a.val + a.prec as i64).min(b.val + b.prec as i64);
        let width = (abs - a.val) as u32;
        let m = p_pow(a.p, width);
        let shift = (b.val - a.val) as u32;
        let raw = (&a.unit + &b.unit * p_pow(a.p, shift)).mod_floor(&m);
        if raw.is_zero() {
            return Err(Error::PrecisionLoss(abs));
        }
        let k = int_valuation(&raw, a.p as u64) as u32;
        let prec = width - k;
        let unit = (raw / p_pow(a.p, k)).mod_floor(&p_pow(a.p, prec));
        Ok(PadicNumber { p: a.p, prec, val: a.val + k as i64, unit, zero: false })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let prec = self.prec.min(other.prec);
        if self.zero || other.zero {
            return Ok(Self::zero(self.p, prec));
        }
        let m = p_pow(self.p, prec);
        Ok(PadicNumber {
            p: self.p,
            prec,
            val: self.val + other.val,
            unit: (&self.unit * &other.unit).mod_floor(&m),
            zero: false,
        })
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        if other.zero {
            return Err(Error::DivisionByZero);
        }
        let prec = self.prec.min(other.prec);
        if self.zero {
            return Ok(Self::zero(self.p, prec));
        }
        let m = p_pow(self.p, prec);
        let inv = mod_inverse(&other.unit, &m).expect("units are invertible");
        Ok(PadicNumber {
            p: self.p,
            prec,
            val: self.val - other.val,
            unit: (&self.unit * inv).mod_floor(&m),
            zero: false,
        })
    }

    pub fn apply(op: PadicOp, a: &Self, b: &Self) -> Result<Self> {
        match op {
            PadicOp::Add => a.add(b),
            PadicOp::Sub => a.sub(b),
            PadicOp::Mul => a.mul(b),
            PadicOp::Div => a.div(b),
        }
    }
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.mod_floor(m).extended_gcd(m);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(m))
    } else {
        None
    }
}

impl fmt::Display for PadicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.zero {
            return write!(f, "0");
        }
        write!(f, "{}*{}^{} + O({}^{})", self.unit, self.p, self.val, self.p, self.val + self.prec as i64)
    }
}

impl fmt::Debug for PadicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_plus_two() {
        let two = PadicNumber::from_int(2, 8, 2);
        let four = two.add(&two).unwrap();
        assert_eq!(four.valuation(), Some(2));
        assert_eq!(four.unit(), &BigInt::from(1));
        assert!(four.precision() <= 8);
    }

    #[test]
    fn one_third_mod_sixteen() {
        // Extended Euclid: 3 * 11 = 33 = 2*16 + 1.
        let one = PadicNumber::from_int(2, 4, 1);
        let three = PadicNumber::from_int(2, 4, 3);
        let q = one.div(&three).unwrap();
        assert_eq!(q.valuation(), Some(0));
        assert_eq!(q.unit(), &BigInt::from(11));
        assert_eq!((BigInt::from(3) * q.unit()) % BigInt::from(16), BigInt::from(1));
    }

    #[test]
    fn error_paths() {
        let a = PadicNumber::from_int(2, 4, 1);
        let b = PadicNumber::from_int(3, 4, 1);
        assert_eq!(a.add(&b), Err(Error::PrimeMismatch(2, 3)));
        assert_eq!(a.div(&PadicNumber::zero(2, 4)), Err(Error::DivisionByZero));
        let c = PadicNumber::from_int(2, 4, 17);
        assert!(matches!(a.sub(&c), Err(Error::PrecisionLoss(_))));
        // exact zero is not a precision loss
        assert!(a.sub(&a.clone()).is_err());
        assert!(PadicNumber::zero(2, 4).add(&PadicNumber::zero(2, 4)).unwrap().is_zero());
    }

    #[test]
    fn rational_roundtrip() {
        let q = BigRational::new(BigInt::from(-5), BigInt::from(12));
        let x = PadicNumber::from_rational(3, 6, &q);
        assert_eq!(x.valuation(), Some(-1));
        let back = PadicNumber::from_rational(3, 6, &x.to_rational());
        assert_eq!(back, x);
    }
}
