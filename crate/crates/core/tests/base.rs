use adic_core::base::{FiniteRing, PadicNumber, PadicOp, RingSpec};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;

fn valuation(p: u32, n: i64) -> i64 {
    let mut n = n.abs();
    let mut v = 0;
    while n % p as i64 == 0 {
        n /= p as i64;
        v += 1;
    }
    v
}

/// `x` agrees with the exact rational `want` modulo `p^abs`.
fn agrees(x: &PadicNumber, want: &BigRational, abs: i64) -> bool {
    let d = x.to_rational() - want;
    if d.is_zero() {
        return true;
    }
    let p = BigInt::from(x.prime());
    let (mut num, mut den, mut v) = (d.numer().clone(), d.denom().clone(), 0i64);
    while (&num % &p).is_zero() {
        num /= &p;
        v += 1;
    }
    while (&den % &p).is_zero() {
        den /= &p;
        v -= 1;
    }
    v >= abs
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn padic_arithmetic_matches_integers(p in prop::sample::select(vec![2u32, 3, 5, 7]), a in 1i64..5000, b in 1i64..5000, sa in any::<bool>()) {
        let prec = 6;
        let a = if sa { -a } else { a };
        let (x, y) = (PadicNumber::from_int(p, prec, a), PadicNumber::from_int(p, prec, b));
        let (va, vb) = (valuation(p, a), valuation(p, b));
        let q = |n: i64| BigRational::from_integer(n.into());
        let prod = PadicNumber::apply(PadicOp::Mul, &x, &y).unwrap();
        prop_assert_eq!(prod.valuation(), Some(va + vb));
        prop_assert!(agrees(&prod, &q(a * b), va + vb + prec as i64));
        match PadicNumber::apply(PadicOp::Add, &x, &y) {
            Ok(sum) => prop_assert!(agrees(&sum, &q(a + b), va.min(vb) + prec as i64)),
            // total cancellation
            Err(_) => prop_assert!(a + b == 0 || valuation(p, a + b) >= va.min(vb) + prec as i64),
        }
        let quo = PadicNumber::apply(PadicOp::Div, &prod, &y).unwrap();
        prop_assert!(agrees(&quo, &q(a), va + prec as i64));
        prop_assert_eq!(prod.norm(), x.norm().mul(&y.norm()));
    }

    #[test]
    fn rational_round_trip(p in prop::sample::select(vec![2u32, 3, 5]), n in -200i64..200, d in 1i64..200) {
        let r = BigRational::new(n.into(), d.into());
        let x = PadicNumber::from_rational(p, 8, &r);
        let v = x.valuation().unwrap_or(0);
        prop_assert!(agrees(&x, &r, v + 8));
    }
}

#[test]
fn division_by_zero_is_an_error() {
    let x = PadicNumber::from_int(3, 4, 5);
    assert!(PadicNumber::apply(PadicOp::Div, &x, &PadicNumber::zero(3, 4)).is_err());
}

#[test]
fn ring_specs_satisfy_axioms() {
    for spec in ["Zmod(8)", "Zmod(12)", "GF(2,3)", "GF(3,2)", "Quot(GF(2),[x],[x^3])", "Prod(GF(2),Zmod(4))", "Quot(GF(3),[x,y],[x^2,y^2])"] {
        let r = RingSpec::parse(spec).unwrap().build().unwrap();
        r.verify_axioms_exhaustive().unwrap();
        let nil: Vec<usize> = r.elements().filter(|&x| (1..=8).any(|k| r.pow(x, k) == r.zero())).collect();
        assert_eq!(r.nilradical().elements(), nil.as_slice(), "{spec}");
    }
}

#[test]
fn finite_field_structure() {
    for (p, k) in [(2u64, 1u32), (2, 2), (2, 3), (3, 2), (5, 1)] {
        let r = FiniteRing::gf(p, k).unwrap();
        assert_eq!(r.cardinality() as u64, p.pow(k));
        assert_eq!(r.characteristic(), p);
        assert!(r.elements().filter(|&x| x != r.zero()).all(|x| r.is_unit(x)));
        // x^(q) = x
        assert!(r.elements().all(|x| r.pow(x, p.pow(k)) == x));
    }
    assert!(FiniteRing::gf(4, 1).is_err());
    let z8 = FiniteRing::zmod(8).unwrap();
    assert_eq!(z8.nilradical().len(), 4);
}
