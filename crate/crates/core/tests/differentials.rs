use adic_core::differentials::{classify, de_rham_complex, kahler_differentials, naive_cotangent_complex};
use adic_core::poly::parse::{names, parse_poly};
use adic_core::tate::{Coefficients, Presentation};
use proptest::prelude::*;

fn over(coeffs: Coefficients, base: &[&str], new: &[&str], rels: &[&str]) -> Presentation {
    let a = Presentation::free(coeffs, names(base)).unwrap();
    let all: Vec<String> = base.iter().chain(new).map(|s| s.to_string()).collect();
    let rels = rels.iter().map(|r| parse_poly(r, &all).unwrap()).collect();
    Presentation::quotient(&a, names(new), rels).unwrap()
}

fn arb_relation() -> impl Strategy<Value = String> {
    (0i64..3, -2i64..3, -2i64..3, 0i64..3).prop_map(|(a, b, c, d)| {
        let mut s = String::from("-1");
        for (k, m) in [(a, "u^2"), (b, "u*T"), (c, "u"), (d, "T")] {
            if k != 0 {
                s.push_str(&format!(" {} {}*{m}", if k < 0 { '-' } else { '+' }, k.abs()));
            }
        }
        s
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn d_squared_vanishes(rel in arb_relation()) {
        let p = over(Coefficients::Qp { p: 2, prec: 8 }, &["T"], &["u", "w"], &[rel.as_str()]);
        let c = de_rham_complex(&p, 3).unwrap();
        prop_assert_eq!(c.dd_violations, 0);
    }

    /// The verdict is consistent with the cotangent cohomology it reports.
    #[test]
    fn verdict_matches_cohomology(rel in arb_relation()) {
        let p = over(Coefficients::Fp(3), &["T"], &["u"], &[rel.as_str()]);
        let c = classify(&p).unwrap();
        let l = naive_cotangent_complex(&p).unwrap();
        let k = kahler_differentials(&p).unwrap();
        prop_assert_eq!(c.h_minus1, l.h_minus1);
        prop_assert_eq!(c.h0, l.h0);
        prop_assert_eq!(c.truth.non_ramifie, k.is_zero);
        prop_assert_eq!(c.truth.etale, l.h_minus1 == 0 && l.h0 == 0);
        if c.truth.etale {
            prop_assert!(c.truth.lisse && c.truth.non_ramifie);
        }
    }
}

#[test]
fn standard_verdicts() {
    let q2 = Coefficients::Qp { p: 2, prec: 8 };
    assert_eq!(classify(&over(q2, &[], &["T"], &["T^2"])).unwrap().verdict.as_str(), "none");
    assert_eq!(classify(&over(q2, &["T"], &["S"], &[])).unwrap().verdict.as_str(), "lisse");
    assert_eq!(classify(&over(q2, &["T"], &["u"], &["u^2 - u - 1"])).unwrap().verdict.as_str(), "etale");
    // inseparable in characteristic 2, separable over Q_2
    assert_eq!(classify(&over(Coefficients::Fp(2), &[], &["u"], &["u^2 - 3"])).unwrap().verdict.as_str(), "none");
    assert_eq!(classify(&over(q2, &[], &["u"], &["u^2 - 3"])).unwrap().verdict.as_str(), "etale");
    // a closed immersion is unramified but not etale
    assert_eq!(classify(&over(q2, &["T"], &[], &["T"])).unwrap().verdict.as_str(), "non_ramifie");
}
