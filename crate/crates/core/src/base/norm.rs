use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

/// An exactly represented non-negative real of the form `2^a * p^b` with
/// rational exponents, or zero. With `p = 2` everything lives in `a`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Norm {
    p: u32,
    value: Option<(BigRational, BigRational)>,
}

impl Norm {
    pub fn zero(p: u32) -> Self {
        Norm { p, value: None }
    }

    pub fn one(p: u32) -> Self {
        Norm { p, value: Some((BigRational::zero(), BigRational::zero())) }
    }

    /// `p^e`.
    pub fn p_power(p: u32, e: BigRational) -> Self {
        Norm::new(p, BigRational::zero(), e)
    }

    /// `2^a * p^b`.
    pub fn new(p: u32, a: BigRational, b: BigRational) -> Self {
        if p == 2 {
            Norm { p, value: Some((a + b, BigRational::zero())) }
        } else {
            Norm { p, value: Some((a, b)) }
        }
    }

    pub fn from_int_exponent(p: u32, e: i64) -> Self {
        Norm::p_power(p, BigRational::from_integer(BigInt::from(e)))
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_none()
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    /// Exponents `(a, b)` with value `2^a * p^b`.
    pub fn exponents(&self) -> Option<(&BigRational, &BigRational)> {
        self.value.as_ref().map(|(a, b)| (a, b))
    }

    pub fn mul(&self, other: &Norm) -> Norm {
        match (&self.value, &other.value) {
            (Some((a, b)), Some((c, d))) => Norm::new(self.p, a + c, b + d),
            _ => Norm::zero(self.p),
        }
    }

    pub fn powr(&self, r: &BigRational) -> Norm {
        match &self.value {
            Some((a, b)) => Norm::new(self.p, a * r, b * r),
            None if r.is_positive() => Norm::zero(self.p),
            None => panic!("zero to a non-positive power"),
        }
    }

    pub fn max(self, other: Norm) -> Norm {
        if self >= other {
            self
        } else {
            other
        }
    }

    pub fn log2(&self) -> f64 {
        match &self.value {
            None => f64::NEG_INFINITY,
            Some((a, b)) => a.to_f64().unwrap() + b.to_f64().unwrap() * (self.p as f64).log2(),
        }
    }
}

impl PartialOrd for Norm {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Norm {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.value, &other.value) {
            (None, None) => Ordering::Equal,
            (None, Some(_)) => Ordering::Less,
            (Some(_), None) => Ordering::Greater,
            (Some((a, b)), Some((c, d))) => {
                let da = a - c;
                let db = b - d;
                if da.is_zero() && db.is_zero() {
                    return Ordering::Equal;
                }
                if !da.is_negative() && !db.is_negative() {
                    return Ordering::Greater;
                }
                if !da.is_positive() && !db.is_positive() {
                    return Ordering::Less;
                }
                // Mixed signs: log 2 and log p are linearly independent over Q
                // for odd p, so the sign is never zero here.
                let v = da.to_f64().unwrap() + db.to_f64().unwrap() * (self.p as f64).log2();
                if v > 0.0 {
                    Ordering::Greater
                } else {
                    Ordering::Less
                }
            }
        }
    }
}

fn fmt_exp(e: &BigRational) -> String {
    if e.is_integer() {
        e.numer().to_string()
    } else {
        format!("{}/{}", e.numer(), e.denom())
    }
}

impl fmt::Display for Norm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.value {
            None => write!(f, "0"),
            Some((a, b)) => {
                let mut parts = Vec::new();
                if !b.is_zero() {
                    parts.push(format!("{}^{}", self.p, fmt_exp(b)));
                }
                if !a.is_zero() {
                    parts.push(format!("2^{}", fmt_exp(a)));
                }
                if parts.is_empty() {
                    write!(f, "1")
                } else {
                    write!(f, "{}", parts.join("*"))
                }
            }
        }
    }
}

impl Serialize for Norm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::field::rational;

    #[test]
    fn display_and_order() {
        let n = Norm::p_power(2, rational(-3, 2));
        assert_eq!(n.to_string(), "2^-3/2");
        assert!(Norm::from_int_exponent(2, -1) > n);
        assert!(Norm::zero(2) < n);
        let m = Norm::new(3, rational(-1, 1), rational(-1, 1));
        assert_eq!(m.to_string(), "3^-1*2^-1");
        // 2^-1 * 3^-1 = 1/6 < 1/4 = 2^-2
        assert!(m < Norm::new(3, rational(-2, 1), rational(0, 1)));
    }
}
