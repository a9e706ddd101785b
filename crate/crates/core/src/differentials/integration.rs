//! Explicit primitives for `A<T>/(T - f)`: every `omega dT` is `dh` for some
//! `h` in the ideal `(T - f)`.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::field::int_valuation;
use crate::poly::{Monomial, QPoly};
use crate::tate::{Coefficients, Presentation};

#[derive(Debug, Clone, PartialEq)]
pub struct Integration {
    /// `h` with `dh/dT = omega` and `h(f) = 0`.
    pub primitive: QPoly,
    /// `h / (T - f)`.
    pub cofactor: QPoly,
    /// `omega(f)`, the constant part of `omega` modulo `T - f`.
    pub residue: QPoly,
    /// Largest `v_p` among the denominators `i + 1`, `i + 2` used.
    pub precision_loss: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IntegrationReport {
    pub primitive: String,
    pub cofactor: String,
    pub derivative_matches: bool,
    pub vanishes_at_f: bool,
    pub in_ideal: bool,
    pub precision_loss: u32,
    pub flags: Vec<String>,
}

/// Coefficients of `omega` as a polynomial in variable `t`.
fn powers_of(omega: &QPoly, t: usize) -> Vec<QPoly> {
    let n = omega.nvars();
    let deg = omega.degree_in(t) as usize;
    let mut out = vec![QPoly::from_int(n, 0); deg + 1];
    for (m, c) in omega.terms() {
        let mut e = m.0.clone();
        let k = e[t] as usize;
        e[t] = 0;
        out[k].add_term(Monomial(e), c.clone());
    }
    out
}

fn scaled(f: &QPoly, num: i64, den: i64) -> QPoly {
    f.scale(&BigRational::new(BigInt::from(num), BigInt::from(den)))
}

/// Primitive of `omega dT` vanishing at `T = f`, following the simple
/// Laurent computation.
pub fn etale_integration(coeffs: Coefficients, t: usize, omega: &QPoly, f: &QPoly) -> Result<Integration> {
    let p = match coeffs {
        Coefficients::Fp(p) => {
            return Err(Error::Characteristic(format!("integration needs characteristic 0, base has characteristic {p}")))
        }
        Coefficients::Qp { p, .. } | Coefficients::Zp(p) => p,
    };
    if f.uses_var(t) {
        return Err(Error::Invalid("f must not involve the integration variable".into()));
    }
    let n = omega.nvars();
    let tv = QPoly::q_var(n, t);
    let c = powers_of(omega, t);
    // omega = a + q(T) (T - f) by synthetic division
    let d = c.len() - 1;
    let mut q = vec![QPoly::from_int(n, 0); d.max(1)];
    if d >= 1 {
        q[d - 1] = c[d].clone();
        for j in (1..d).rev() {
            q[j - 1] = &c[j] + &(f * &q[j]);
        }
    }
    let a = if d >= 1 { &c[0] + &(f * &q[0]) } else { c[0].clone() };
    let t_minus_f = &tv - f;
    let mut h = &a * &t_minus_f;
    let mut cofactor = a.clone();
    let mut loss = 0u32;
    for (i, g) in q.iter().enumerate() {
        if g.is_zero() {
            continue;
        }
        let (i1, i2) = (i as i64 + 1, i as i64 + 2);
        loss = loss
            .max(int_valuation(&BigInt::from(i1), p as u64) as u32)
            .max(int_valuation(&BigInt::from(i2), p as u64) as u32);
        // (T^{i+2} - f^{i+2}) / (i+2) - f (T^{i+1} - f^{i+1}) / (i+1)
        let a_part = &tv.pow(i as u32 + 2) - &f.pow(i as u32 + 2);
        let b_part = &tv.pow(i as u32 + 1) - &f.pow(i as u32 + 1);
        h = &h + &(g * &(&scaled(&a_part, 1, i2) - &scaled(&(f * &b_part), 1, i1)));
        let geo = |k: u32| -> QPoly {
            (0..k).fold(QPoly::from_int(n, 0), |acc, j| &acc + &(&tv.pow(j) * &f.pow(k - 1 - j)))
        };
        cofactor = &cofactor + &(g * &(&scaled(&geo(i as u32 + 2), 1, i2) - &scaled(&(f * &geo(i as u32 + 1)), 1, i1)));
    }
    Ok(Integration { primitive: h, cofactor, residue: a, precision_loss: loss })
}

/// Runs the integration in a presentation's variables and checks the
/// defining identities exactly.
pub fn integrate_report(pres: &Presentation, t: usize, omega: &QPoly, f: &QPoly) -> Result<IntegrationReport> {
    if omega.total_degree().unwrap_or(0) + 1 > pres.degree_cap() {
        return Err(Error::Invalid(format!("form degree exceeds the cap D - 1 = {}", pres.degree_cap() - 1)));
    }
    let res = etale_integration(pres.coefficients(), t, omega, f)?;
    let n = pres.nvars();
    let mut at_f: Vec<QPoly> = (0..n).map(|i| QPoly::q_var(n, i)).collect();
    at_f[t] = f.clone();
    let t_minus_f = &QPoly::q_var(n, t) - f;
    let mut flags = Vec::new();
    if res.precision_loss > 0 {
        flags.push(format!("precision_loss:{}", res.precision_loss));
    }
    Ok(IntegrationReport {
        primitive: pres.display(&res.primitive),
        cofactor: pres.display(&res.cofactor),
        derivative_matches: res.primitive.derivative(t) == *omega,
        vanishes_at_f: res.primitive.substitute(&at_f, n).is_zero(),
        in_ideal: &t_minus_f * &res.cofactor == res.primitive,
        precision_loss: res.precision_loss,
        flags,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse::{names, parse_poly};

    fn q(text: &str) -> QPoly {
        parse_poly(text, &names(&["T"])).unwrap()
    }

    fn q2() -> Coefficients {
        Coefficients::Qp { p: 2, prec: 8 }
    }

    #[test]
    fn examples() {
        let r = etale_integration(q2(), 0, &q("1"), &q("0")).unwrap();
        assert_eq!(r.primitive, q("T"));
        let r = etale_integration(q2(), 0, &q("T"), &q("1")).unwrap();
        assert_eq!(r.primitive, q("(T^2 - 1)/2"));
        assert_eq!(r.cofactor, q("(T + 1)/2"));
        assert!(r.precision_loss >= 1);
        let r = etale_integration(q2(), 0, &q("T - 3"), &q("3")).unwrap();
        assert_eq!(r.primitive, q("(T - 3)^2/2"));
        assert!(etale_integration(Coefficients::Fp(2), 0, &q("T"), &q("0")).is_err());
    }
}
