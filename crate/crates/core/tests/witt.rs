use adic_core::base::{FiniteRing, RingSpec};
use adic_core::witt::{frobenius_witt, restrict, verschiebung, witt_arith, witt_neg, witt_sub, WittOp, WittVector};
use proptest::prelude::*;

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

/// `W_n(F_p) -> Z/p^n`, `(x_k) -> sum p^k [x_k]` with the Teichmüller lift
/// `[a] = a^(p^(n-1)) mod p^n`; Frobenius is the identity on `F_p`.
fn to_int(ring: &FiniteRing, p: u64, v: &WittVector) -> u64 {
    let n = v.len() as u32;
    let m = p.pow(n);
    let value = |x: usize| (0..p).find(|&a| ring.from_int(a as i64) == x).unwrap();
    v.coords.iter().enumerate().fold(0, |acc, (k, &x)| {
        (acc + p.pow(k as u32) * pow_mod(value(x), p.pow(n - 1), m)) % m
    })
}

fn vector(ring: &FiniteRing, p: u32, digits: &[u64]) -> WittVector {
    WittVector::new(ring, p, digits.iter().map(|&d| ring.from_int(d as i64)).collect()).unwrap()
}

#[test]
fn integer_lift_is_a_ring_isomorphism() {
    for (p, n) in [(2u32, 1usize), (2, 2), (2, 3), (3, 2), (5, 2)] {
        let ring = FiniteRing::gf(p as u64, 1).unwrap();
        let m = (p as u64).pow(n as u32);
        let all: Vec<WittVector> = (0..m)
            .map(|code| {
                let digits: Vec<u64> = (0..n).map(|k| code / (p as u64).pow(k as u32) % p as u64).collect();
                vector(&ring, p, &digits)
            })
            .collect();
        let images: std::collections::BTreeSet<u64> = all.iter().map(|v| to_int(&ring, p as u64, v)).collect();
        assert_eq!(images.len() as u64, m, "not a bijection for p={p} n={n}");
        for a in &all {
            let ia = to_int(&ring, p as u64, a);
            assert_eq!(to_int(&ring, p as u64, &witt_neg(&ring, a).unwrap()), (m - ia) % m);
            for b in &all {
                let ib = to_int(&ring, p as u64, b);
                let s = witt_arith(&ring, WittOp::Add, a, b).unwrap();
                let t = witt_arith(&ring, WittOp::Mul, a, b).unwrap();
                assert_eq!(to_int(&ring, p as u64, &s), (ia + ib) % m, "{a} + {b}");
                assert_eq!(to_int(&ring, p as u64, &t), ia * ib % m, "{a} * {b}");
            }
        }
    }
}

#[test]
fn verschiebung_is_multiplication_by_p_over_f_p() {
    let ring = FiniteRing::gf(3, 1).unwrap();
    for code in 0..27u64 {
        let a = vector(&ring, 3, &[code % 3, code / 3 % 3, code / 9]);
        let va = verschiebung(&ring, &a).unwrap();
        assert_eq!(to_int(&ring, 3, &va), 3 * to_int(&ring, 3, &a) % 81);
    }
}

#[test]
fn length_limits() {
    let ring = FiniteRing::gf(2, 1).unwrap();
    let a = vector(&ring, 2, &[1, 0, 1, 1]);
    assert!(verschiebung(&ring, &a).is_err());
    assert!(frobenius_witt(&ring, &vector(&ring, 2, &[1])).is_err());
    assert!(WittVector::new(&ring, 3, vec![0]).is_err());
    let b = vector(&ring, 2, &[1, 0]);
    assert!(witt_arith(&ring, WittOp::Add, &a, &b).is_err());
}

fn rings() -> Vec<(FiniteRing, u32)> {
    ["GF(2,2)", "Quot(GF(2),[e],[e^2])", "Prod(GF(2),GF(2))", "GF(3)", "Quot(GF(3),[x],[x^2])"]
        .iter()
        .map(|s| {
            let r = RingSpec::parse(s).unwrap().build().unwrap();
            let p = r.characteristic() as u32;
            (r, p)
        })
        .collect()
}

fn arb_case() -> impl Strategy<Value = (usize, Vec<usize>, Vec<usize>, usize)> {
    (0..5usize, 1..=3usize).prop_flat_map(|(r, n)| {
        let size = rings()[r].0.cardinality();
        (Just(r), prop::collection::vec(0..size, n), prop::collection::vec(0..size, n + 1), 0..size)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn frobenius_after_verschiebung_is_p((r, a, _, _) in arb_case()) {
        let (ring, p) = &rings()[r];
        let a = WittVector::new(ring, *p, a).unwrap();
        let lhs = frobenius_witt(ring, &verschiebung(ring, &a).unwrap()).unwrap();
        let pa = witt_arith(ring, WittOp::Mul, &WittVector::from_int(ring, *p, *p as u64, a.len()).unwrap(), &a).unwrap();
        prop_assert_eq!(lhs, pa);
    }

    #[test]
    fn projection_formula((r, a, b, _) in arb_case()) {
        // V(a F(b)) = V(a) b
        let (ring, p) = &rings()[r];
        let a = WittVector::new(ring, *p, a).unwrap();
        let b = WittVector::new(ring, *p, b).unwrap();
        let lhs = verschiebung(ring, &witt_arith(ring, WittOp::Mul, &a, &frobenius_witt(ring, &b).unwrap()).unwrap()).unwrap();
        let rhs = witt_arith(ring, WittOp::Mul, &verschiebung(ring, &a).unwrap(), &b).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn ring_laws((r, a, b, c) in arb_case()) {
        let (ring, p) = &rings()[r];
        let n = a.len();
        let a = WittVector::new(ring, *p, a).unwrap();
        let b = restrict(&WittVector::new(ring, *p, b).unwrap(), n);
        let t = WittVector::teichmuller(ring, *p, c, n).unwrap();
        let add = |x: &WittVector, y: &WittVector| witt_arith(ring, WittOp::Add, x, y).unwrap();
        let mul = |x: &WittVector, y: &WittVector| witt_arith(ring, WittOp::Mul, x, y).unwrap();
        prop_assert_eq!(add(&a, &b), add(&b, &a));
        prop_assert_eq!(mul(&a, &add(&b, &t)), add(&mul(&a, &b), &mul(&a, &t)));
        prop_assert_eq!(witt_sub(ring, &add(&a, &b), &b).unwrap(), a.clone());
        // Teichmüller representatives are multiplicative
        let t2 = WittVector::teichmuller(ring, *p, ring.mul(c, c), n).unwrap();
        prop_assert_eq!(mul(&t, &t), t2);
    }
}
