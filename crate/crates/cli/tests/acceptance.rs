//! Acceptance criteria, one PASS/FAIL line each. Runs without the libtest
//! harness so the lines are always printed.

use std::collections::BTreeMap;
use std::panic::{self, AssertUnwindSafe};
use std::time::{Duration, Instant};

use adic_core::base::{default_corpus, FiniteRing};
use adic_core::differentials::{classify, classify_morphism, etale_integration, integrate_report};
use adic_core::infinitesimal::{classify_lifting_morphism, LiftingMode, TestRing};
use adic_core::poly::QPoly;
use adic_core::tate::{base_change, Coefficients, Morphism, Presentation};
use adic_core::witt::{
    frobenius_witt, interval_norm, phi_action, robba_norm, verschiebung, witt_arith, PerfectSeries, RobbaElement,
    WittOp, WittVector,
};
use adic_core::Exec;
use adic_kit::{parse_script, parse_syntax, render, run_script, Options};
use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value as Json;

const SEED: u64 = 20_260_518;

const CLASSIFIER_MIN_FIXTURES: usize = 12;
const CLASSIFIER_TIME_LIMIT: Duration = Duration::from_secs(10);
const ORACLE_MIN_PRESENTATIONS: usize = 10;
const ORACLE_RINGS: usize = 6;
const GLUE_MIN_COVERINGS: usize = 3;
const GLUE_MIN_MUTATIONS: usize = 3;
const GLUE_DEGREE: u64 = 6;
const GLUE_PRECISION: u64 = 6;
const CLOSURE_MIN_COMPOSITIONS: usize = 20;
const CLOSURE_MIN_BASE_CHANGES: usize = 10;
const DRHAM_TOP: usize = 3;
const WITT_SAMPLES: usize = 100;
const ROBBA_MIN_ELEMENTS: usize = 50;
const INTEGRATION_MIN_FORMS: usize = 20;
const INTEGRATION_MAX_DEGREE: u32 = 6;
const FIXTURES: [&str; 4] = ["classifier.adk", "oracle.adk", "gluing.adk", "tour.adk"];

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(violations: &[String], detail: String) -> Outcome {
    if violations.is_empty() {
        Outcome { pass: true, detail }
    } else {
        let shown: Vec<&str> = violations.iter().take(5).map(String::as_str).collect();
        Outcome { pass: false, detail: format!("{detail}; {} violations: {}", violations.len(), shown.join(" | ")) }
    }
}

fn fixture(name: &str) -> String {
    let path = format!("{}/tests/fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"))
}

fn run(text: &str, opts: &Options) -> Vec<Json> {
    let script = parse_script(text).unwrap_or_else(|e| panic!("fixture does not parse: {e}"));
    run_script(&script, opts).into_iter().map(|r| r.json).collect()
}

/// The subject of a report, as written after the command word.
fn subject(report: &Json) -> String {
    let cmd = report["command"].as_str().unwrap();
    let rest = cmd.split_once(' ').map_or("", |(_, r)| r);
    rest.trim_end_matches(';').split(' ').next().unwrap().to_string()
}

fn unwrap_structural(s: &str) -> &str {
    s.strip_prefix("Structural(").and_then(|s| s.strip_suffix(')')).unwrap_or(s)
}

fn criterion_1() -> Outcome {
    let expected: BTreeMap<&str, &str> = [
        ("L1", "etale"),
        ("L2", "etale"),
        ("L3", "etale"),
        ("L4", "etale"),
        ("L5", "etale"),
        ("L6", "etale"),
        ("E1", "etale"),
        ("E2", "etale"),
        ("E3", "etale"),
        ("E4", "etale"),
        ("E5", "etale"),
        ("N1", "none"),
        ("S1", "lisse"),
        ("S2", "lisse"),
        ("S3", "lisse"),
    ]
    .into_iter()
    .collect();
    let start = Instant::now();
    let reports = run(&fixture("classifier.adk"), &Options::default());
    let elapsed = start.elapsed();
    let mut bad = Vec::new();
    let mut seen = 0;
    for r in &reports {
        let name = subject(r);
        let got = r["result"]["verdict"].as_str().unwrap_or("error");
        match expected.get(name.as_str()) {
            Some(want) => {
                seen += 1;
                if *want != got {
                    bad.push(format!("{name}: expected {want}, got {got}"));
                }
            }
            None => bad.push(format!("{name}: no expectation")),
        }
    }
    if seen < CLASSIFIER_MIN_FIXTURES || seen != expected.len() {
        bad.push(format!("only {seen} fixtures classified"));
    }
    if elapsed >= CLASSIFIER_TIME_LIMIT {
        bad.push(format!("took {elapsed:?}"));
    }
    outcome(&bad, format!("{seen} fixtures, exact verdicts, {:.2}s < {}s", elapsed.as_secs_f64(), CLASSIFIER_TIME_LIMIT.as_secs()))
}

fn truth(r: &Json, key: &str) -> bool {
    r["result"]["truth"][key].as_bool().unwrap_or_else(|| panic!("no truth table in {}", r["command"]))
}

fn criterion_2() -> Outcome {
    let reports = run(&fixture("oracle.adk"), &Options::default());
    let mut jacobian = BTreeMap::new();
    let mut lifting = BTreeMap::new();
    let mut bad = Vec::new();
    for r in &reports {
        let cmd = r["command"].as_str().unwrap();
        if r["status"] == "error" {
            bad.push(format!("{cmd}: {}", r["error"]));
        } else if cmd.starts_with("classify-lifting") {
            lifting.insert(subject(r), r.clone());
        } else if cmd.starts_with("classify ") {
            jacobian.insert(unwrap_structural(&subject(r)).to_string(), r.clone());
        }
    }
    let mut pairs = 0;
    for (name, j) in &jacobian {
        let Some(l) = lifting.get(name) else {
            bad.push(format!("{name}: no lifting report"));
            continue;
        };
        pairs += 1;
        let rings = l["result"]["evidence"].as_array().map_or(0, |e| e.len());
        if rings < ORACLE_RINGS {
            bad.push(format!("{name}: only {rings} test rings"));
        }
        if truth(j, "etale") != truth(l, "etale") {
            bad.push(format!("{name}: etale {} vs {}", truth(j, "etale"), truth(l, "etale")));
        }
        if truth(j, "lisse") && !truth(l, "lisse") {
            bad.push(format!("{name}: lisse but not surjective"));
        }
        if truth(j, "non_ramifie") && !truth(l, "non_ramifie") {
            bad.push(format!("{name}: non_ramifie but not injective"));
        }
    }
    if pairs < ORACLE_MIN_PRESENTATIONS {
        bad.push(format!("only {pairs} presentations"));
    }
    outcome(&bad, format!("{pairs} presentations x {ORACLE_RINGS} rings, agreement and implications"))
}

fn criterion_3() -> Outcome {
    let reports = run(&fixture("gluing.adk"), &Options::default());
    let mut bad = Vec::new();
    let (mut genuine, mut mutated) = (0, Vec::new());
    for r in reports.iter().filter(|r| r["command"].as_str().unwrap().starts_with("glue-check")) {
        let cmd = r["command"].as_str().unwrap();
        let res = &r["result"];
        if res.is_null() {
            bad.push(format!("{cmd}: {}", r["error"]));
            continue;
        }
        if res["degree_cap"] != GLUE_DEGREE || res["precision"] != GLUE_PRECISION {
            bad.push(format!("{cmd}: not run at D={GLUE_DEGREE}, N={GLUE_PRECISION}"));
        }
        let clauses: Vec<&str> = ["left", "middle", "right"].iter().map(|k| res[*k].as_str().unwrap()).collect();
        if res["mutation"] == "none" {
            genuine += 1;
            if clauses.iter().any(|c| *c != "exact") {
                bad.push(format!("{cmd}: {clauses:?}"));
            }
        } else {
            mutated.push(res["mutation"].as_str().unwrap().to_string());
            if !clauses.contains(&"failed") {
                bad.push(format!("{cmd}: mutation not detected {clauses:?}"));
            }
        }
    }
    let kinds: std::collections::BTreeSet<&String> = mutated.iter().collect();
    if genuine < GLUE_MIN_COVERINGS || kinds.len() < GLUE_MIN_MUTATIONS {
        bad.push(format!("{genuine} coverings, {} mutation kinds", kinds.len()));
    }
    outcome(
        &bad,
        format!("{genuine} coverings all exact, {} mutated controls ({} kinds) all failed", mutated.len(), kinds.len()),
    )
}

fn random_poly(rng: &mut ChaCha8Rng, vars: &[&str], max_deg: u32) -> String {
    let mut terms = Vec::new();
    for _ in 0..rng.gen_range(1..=3) {
        let mut mono: Vec<String> = Vec::new();
        let mut deg = rng.gen_range(0..=max_deg);
        while deg > 0 {
            let v = vars[rng.gen_range(0..vars.len())];
            mono.push(v.to_string());
            deg -= 1;
        }
        terms.push(if mono.is_empty() { "1".into() } else { mono.join("*") });
    }
    terms.join(" + ")
}

/// One etale step over `base`, adjoining `var`.
fn etale_step(rng: &mut ChaCha8Rng, base: &Presentation, var: &str) -> Presentation {
    let names: Vec<&str> = base.vars().iter().map(String::as_str).collect();
    let h = random_poly(rng, &names, 2);
    let rel = match rng.gen_range(0..3) {
        0 => format!("{var}^2 + {var} + {h}"),
        1 => format!("{var} - ({h})"),
        _ => format!("{var}*(1 + {}) - 1", names[rng.gen_range(0..names.len())]),
    };
    let mut all = base.vars().to_vec();
    all.push(var.to_string());
    let r = adic_core::poly::parse::parse_poly(&rel, &all).unwrap();
    Presentation::quotient(base, vec![var.to_string()], vec![r]).unwrap()
}

fn rings(p: u64) -> Vec<TestRing> {
    default_corpus(p).iter().map(|s| TestRing::from_spec(s).unwrap()).collect()
}

fn criterion_4() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let corpus = rings(2);
    let dr = |m: &Morphism| classify_lifting_morphism(m, &corpus, LiftingMode::DeRham, Exec::Parallel).unwrap();
    let crys = |m: &Morphism| classify_lifting_morphism(m, &corpus, LiftingMode::Crys, Exec::Parallel).unwrap();
    let mut bad = Vec::new();
    let mut morphisms: Vec<(String, Morphism)> = Vec::new();
    let (mut compositions, mut base_changes) = (0, 0);
    let coeffs = [Coefficients::Zp(2), Coefficients::Fp(2)];
    let mut attempt = 0;
    while compositions < CLOSURE_MIN_COMPOSITIONS + 4 {
        attempt += 1;
        let a = Presentation::free(coeffs[attempt % 2], vec!["T".into()]).unwrap();
        let b = etale_step(&mut rng, &a, "u");
        let c = etale_step(&mut rng, &b, "v");
        let (f, g) = (Morphism::structural(&b), Morphism::structural(&c));
        let steps_etale = [&f, &g].iter().all(|m| classify_morphism(m).unwrap().truth.etale && dr(m).truth.etale);
        if !steps_etale {
            bad.push(format!("step not etale: {c}"));
            continue;
        }
        let gf = f.compose(&g).unwrap();
        compositions += 1;
        if !classify_morphism(&gf).unwrap().truth.etale {
            bad.push(format!("composite not etale (Jacobian): {c}"));
        }
        if !dr(&gf).truth.etale {
            bad.push(format!("composite not etale (lifting): {c}"));
        }
        morphisms.push((format!("composite {c}"), gf));
    }
    while base_changes < CLOSURE_MIN_BASE_CHANGES + 2 {
        let coeff = coeffs[base_changes % 2];
        let a = Presentation::free(coeff, vec!["T".into()]).unwrap();
        let b = etale_step(&mut rng, &a, "u");
        let a2 = Presentation::free(coeff, vec!["S".into()]).unwrap();
        let image = a2.parse(&random_poly(&mut rng, &["S"], 3)).unwrap();
        let phi = Morphism::new(a.clone(), a2, vec![image]).unwrap();
        let bc = base_change(&b, &phi).unwrap();
        base_changes += 1;
        if !classify(&b).unwrap().truth.etale {
            bad.push(format!("step not etale: {b}"));
            continue;
        }
        if !classify(&bc).unwrap().truth.etale {
            bad.push(format!("base change not etale (Jacobian): {bc}"));
        }
        let m = Morphism::structural(&bc);
        if !dr(&m).truth.etale {
            bad.push(format!("base change not etale (lifting): {bc}"));
        }
        morphisms.push((format!("base change {bc}"), m));
    }
    // dR-etale implies crys-etale, on the generated maps and the oracle corpus.
    let mut checked = 0;
    for (name, m) in &morphisms {
        if dr(m).truth.etale {
            checked += 1;
            if !crys(m).truth.etale {
                bad.push(format!("{name}: dR-etale but not crys-etale"));
            }
        }
    }
    let mut oracle = fixture("oracle.adk");
    let names: Vec<String> = parse_syntax(&oracle)
        .unwrap()
        .items
        .iter()
        .filter_map(|i| match i {
            adic_kit::ast::Item::Command { name, args, .. } if name == "classify-lifting" => Some(args.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(" ")),
            _ => None,
        })
        .collect();
    for args in &names {
        oracle.push_str(&format!("classify-lifting {args} mode=crys;\n"));
    }
    let reports = run(&oracle, &Options::default());
    let by_command: BTreeMap<String, &Json> = reports.iter().map(|r| (r["command"].as_str().unwrap().to_string(), r)).collect();
    for args in &names {
        let d = by_command[&format!("classify-lifting {args};")];
        let c = by_command[&format!("classify-lifting {args} mode=crys;")];
        if truth(d, "etale") {
            checked += 1;
            if !truth(c, "etale") {
                bad.push(format!("{args}: dR-etale but not crys-etale"));
            }
        }
    }
    outcome(
        &bad,
        format!("{compositions} compositions, {base_changes} base changes closed in both routes; dR => crys on {checked} etale cases"),
    )
}

fn criterion_5() -> Outcome {
    let mut bad = Vec::new();
    let mut fixtures = 0;
    let mut checks = 0;
    for name in ["classifier.adk", "oracle.adk", "tour.adk"] {
        let mut text = fixture(name);
        let script = parse_syntax(&text).unwrap();
        let presentations: Vec<String> = script
            .items
            .iter()
            .filter_map(|i| match i {
                adic_kit::ast::Item::Decl { name, value, .. } => match &value.kind {
                    adic_kit::ast::ValueKind::Call(c, ..) if ["Tate", "Quot", "Loc", "BaseChange"].contains(&c.as_str()) => {
                        Some(name.clone())
                    }
                    _ => None,
                },
                _ => None,
            })
            .collect();
        for p in &presentations {
            text.push_str(&format!("drham {p} top={DRHAM_TOP};\nkahler {p};\nclassify {p};\n"));
        }
        let reports = run(&text, &Options::default());
        for p in &presentations {
            let find = |cmd: String| reports.iter().find(|r| r["command"] == cmd.as_str()).unwrap().clone();
            let d = find(format!("drham {p} top={DRHAM_TOP};"));
            let k = find(format!("kahler {p};"));
            let c = find(format!("classify {p};"));
            if d["result"].is_null() || k["result"].is_null() || c["result"].is_null() {
                bad.push(format!("{name}/{p}: {}", d["error"]));
                continue;
            }
            fixtures += 1;
            checks += d["result"]["dd_checks"].as_u64().unwrap();
            if d["result"]["dd_violations"] != 0 {
                bad.push(format!("{name}/{p}: d.d != 0"));
            }
            if c["result"]["verdict"] == "etale" && k["result"]["is_zero"] != true {
                bad.push(format!("{name}/{p}: etale with nonzero differentials"));
            }
        }
    }
    outcome(&bad, format!("{fixtures} fixtures to degree {DRHAM_TOP}, {checks} d.d checks, etale => zero differentials"))
}

fn criterion_6() -> Outcome {
    let mut bad = Vec::new();
    let f2 = FiniteRing::gf(2, 1).unwrap();
    let w = |a: usize, b: usize| WittVector::new(&f2, 2, vec![a, b]).unwrap();
    // ghost component w1 = a0^2 + 2 a1, read in Z/4
    let ghost = |v: &WittVector| (v.coords[0] * v.coords[0] + 2 * v.coords[1]) % 4;
    let all: Vec<WittVector> = (0..4).map(|i| w(i % 2, i / 2)).collect();
    let images: std::collections::BTreeSet<usize> = all.iter().map(ghost).collect();
    if images.len() != 4 {
        bad.push("ghost map is not a bijection onto Z/4".into());
    }
    let mut entries = 0;
    for a in &all {
        for b in &all {
            let s = witt_arith(&f2, WittOp::Add, a, b).unwrap();
            entries += 1;
            if ghost(&s) != (ghost(a) + ghost(b)) % 4 {
                bad.push(format!("{a} + {b} = {s}"));
            }
            let m = witt_arith(&f2, WittOp::Mul, a, b).unwrap();
            if ghost(&m) != (ghost(a) * ghost(b)) % 4 {
                bad.push(format!("{a} * {b} = {m}"));
            }
        }
    }
    if witt_arith(&f2, WittOp::Add, &w(1, 0), &w(1, 0)).unwrap() != w(0, 1) {
        bad.push("(1,0) + (1,0) != (0,1)".into());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let f4 = FiniteRing::gf(2, 2).unwrap();
    let fv = |ring: &FiniteRing, a: &WittVector, bad: &mut Vec<String>| {
        let n = a.len();
        let lhs = frobenius_witt(ring, &verschiebung(ring, a).unwrap()).unwrap();
        let p = WittVector::from_int(ring, 2, 2, n).unwrap();
        let rhs = witt_arith(ring, WittOp::Mul, &p, a).unwrap();
        let twice = witt_arith(ring, WittOp::Add, a, a).unwrap();
        if lhs != rhs || rhs != twice {
            bad.push(format!("F(V({a})) = {lhs}, p*a = {rhs}"));
        }
    };
    for a in &all {
        fv(&f2, a, &mut bad);
    }
    let mut samples = 0;
    for (ring, n) in [(&f2, 3), (&f4, 2)] {
        for _ in 0..WITT_SAMPLES {
            let coords = (0..n).map(|_| rng.gen_range(0..ring.cardinality())).collect();
            fv(ring, &WittVector::new(ring, 2, coords).unwrap(), &mut bad);
            samples += 1;
        }
    }
    outcome(&bad, format!("W_2(F_2) = Z/4 on {entries} table entries; F.V = p on 4 + {samples} samples"))
}

fn random_series(rng: &mut ChaCha8Rng, p: u32) -> PerfectSeries {
    let mut s = PerfectSeries::zero();
    for _ in 0..rng.gen_range(1..=3) {
        let den = (p as i64).pow(rng.gen_range(0..=2));
        let e = Ratio::new(rng.gen_range(-6..=6), den);
        let c = rng.gen_range(1..p);
        s.terms.insert(e, c);
    }
    s
}

fn random_robba(rng: &mut ChaCha8Rng, p: u32) -> RobbaElement {
    let mut f = RobbaElement::zero(p, 4).unwrap();
    for k in 0..2 {
        if k == 0 || rng.gen_bool(0.6) {
            f.digits[k] = random_series(rng, p);
        }
    }
    f
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let radii = [BigRational::new(1.into(), 2.into()), BigRational::from_integer(1.into()), BigRational::from_integer(2.into())];
    let mut bad = Vec::new();
    let mut flagless = 0;
    let mut elements = 0;
    while flagless < ROBBA_MIN_ELEMENTS {
        let p = [2, 3, 5][elements % 3];
        let f = random_robba(&mut rng, p);
        let g = random_robba(&mut rng, p);
        elements += 1;
        for r in &radii {
            let nf = robba_norm(&f, r).unwrap();
            let pr = r * BigRational::from_integer(BigInt::from(p));
            if robba_norm(&phi_action(&f), r).unwrap() != robba_norm(&f, &pr).unwrap() {
                bad.push(format!("phi scaling fails for {f} at r = {r}"));
            }
            if interval_norm(&f, r, r).unwrap() != nf {
                bad.push(format!("interval collapse fails for {f} at r = {r}"));
            }
        }
        let fg = f.mul(&g).unwrap();
        if fg.truncated {
            continue;
        }
        flagless += 1;
        for r in &radii {
            let lhs = robba_norm(&fg, r).unwrap();
            let rhs = robba_norm(&f, r).unwrap().mul(&robba_norm(&g, r).unwrap());
            if lhs != rhs {
                bad.push(format!("|fg| = {lhs} != {rhs} for f = {f}, g = {g}, r = {r}"));
            }
        }
    }
    outcome(&bad, format!("{flagless} flagless products of {elements} elements, r in {{1/2, 1, 2}}; phi scaling and interval collapse"))
}

fn random_rational(rng: &mut ChaCha8Rng) -> String {
    let n: i64 = rng.gen_range(-9..=9);
    let d: i64 = [1, 1, 2, 3, 4, 5][rng.gen_range(0..6)];
    format!("({n}/{d})")
}

/// `∫ omega dT` termwise, without any reference to `f`.
fn antiderivative(omega: &QPoly, t: usize) -> QPoly {
    let n = omega.nvars();
    let mut out = QPoly::from_int(n, 0);
    for (m, c) in omega.terms() {
        let mut e = m.0.clone();
        e[t] += 1;
        let k = BigRational::from_integer(BigInt::from(e[t]));
        out.add_term(adic_core::poly::Monomial(e), c / k);
    }
    out
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut bad = Vec::new();
    let mut forms = 0;
    for p in [2, 3] {
        let pres = Presentation::free(Coefficients::Qp { p, prec: 8 }, vec!["X".into(), "T".into()]).unwrap();
        for _ in 0..INTEGRATION_MIN_FORMS / 2 + 2 {
            let deg = rng.gen_range(0..=INTEGRATION_MAX_DEGREE);
            let mut terms = Vec::new();
            for i in 0..=deg {
                let j = rng.gen_range(0..=(INTEGRATION_MAX_DEGREE - i).min(1));
                terms.push(format!("{}*T^{i}*X^{j}", random_rational(&mut rng)));
            }
            let omega = pres.parse(&terms.join(" + ")).unwrap();
            let f = pres.parse(&format!("{} + {}*X", random_rational(&mut rng), random_rational(&mut rng))).unwrap();
            let report = integrate_report(&pres, 1, &omega, &f).unwrap();
            forms += 1;
            if !(report.derivative_matches && report.vanishes_at_f && report.in_ideal) {
                bad.push(format!("identities fail for omega = {}", pres.display(&omega)));
            }
            // independent oracle: H - H(f) with H the termwise antiderivative
            let big = antiderivative(&omega, 1);
            let at_f = big.substitute(&[QPoly::q_var(2, 0), f.clone()], 2);
            let h = etale_integration(pres.coefficients(), 1, &omega, &f).unwrap();
            if &big - &at_f != h.primitive {
                bad.push(format!("primitive differs from the antiderivative for omega = {}", pres.display(&omega)));
            }
        }
    }
    // kernel witness: omega = T - f integrates to (T - f)^2 / 2
    let pres = Presentation::free(Coefficients::Qp { p: 2, prec: 8 }, vec!["T".into()]).unwrap();
    for c in [0, 1, 3, -5] {
        let f = pres.parse(&c.to_string()).unwrap();
        let omega = pres.parse(&format!("T - ({c})")).unwrap();
        let h = etale_integration(pres.coefficients(), 0, &omega, &f).unwrap();
        let witness = pres.parse(&format!("(T - ({c}))^2/2")).unwrap();
        if h.primitive != witness || !h.residue.is_zero() {
            bad.push(format!("kernel witness fails at f = {c}"));
        }
    }
    if forms < INTEGRATION_MIN_FORMS {
        bad.push(format!("only {forms} forms"));
    }
    outcome(&bad, format!("{forms} forms over Q_2 and Q_3 of degree <= {INTEGRATION_MAX_DEGREE}; kernel witness (T - f)^2/2"))
}

fn criterion_9() -> Outcome {
    let mut bad = Vec::new();
    let mut bytes = 0;
    for name in FIXTURES {
        let text = fixture(name);
        let script = parse_syntax(&text).unwrap();
        let printed = script.to_string();
        match parse_syntax(&printed) {
            Ok(again) if again == script && again.to_string() == printed => {}
            Ok(_) => bad.push(format!("{name}: print/parse is not a fixpoint")),
            Err(e) => bad.push(format!("{name}: printed form does not parse: {e}")),
        }
        let resolved = parse_script(&text).unwrap();
        let runs: Vec<String> = [None, Some(1), Some(4), None]
            .into_iter()
            .map(|jobs| render(&run_script(&resolved, &Options { jobs, ..Options::default() })))
            .collect();
        bytes += runs[0].len();
        if runs.iter().any(|r| *r != runs[0]) {
            bad.push(format!("{name}: reports differ between runs"));
        }
    }
    outcome(&bad, format!("{} fixture scripts, 4 runs each byte-identical ({bytes} bytes), print/parse fixpoint", FIXTURES.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("classifier soundness", criterion_1),
        ("oracle equivalence", criterion_2),
        ("gluing exactness", criterion_3),
        ("closure properties", criterion_4),
        ("de Rham complex", criterion_5),
        ("Witt arithmetic", criterion_6),
        ("Robba norms", criterion_7),
        ("integration primitive", criterion_8),
        ("determinism and round-trip", criterion_9),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let result = panic::catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|e| {
            let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            Outcome { pass: false, detail: format!("panicked: {}", msg.unwrap_or_default()) }
        });
        if !result.pass {
            failed += 1;
        }
        println!("{} criterion {}: {name}: {}", if result.pass { "PASS" } else { "FAIL" }, i + 1, result.detail);
    }
    let _ = panic::take_hook();
    if failed > 0 {
        println!("{failed} of {} criteria failed", criteria.len());
        std::process::exit(1);
    }
}
