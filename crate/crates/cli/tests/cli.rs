use std::process::Command;

use adic_kit::ast::{Arg, Expr, Item, Pos, Script, Value, ValueKind};
use adic_kit::signature::{command_signature, COVERAGE};
use adic_kit::{parse_script, parse_syntax, render, run_script, Options, Status};
use num_bigint::BigInt;
use proptest::prelude::*;
use serde_json::Value as Json;

fn run(text: &str) -> Vec<Json> {
    run_script(&parse_script(text).unwrap(), &Options::default()).into_iter().map(|r| r.json).collect()
}

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_adic-kit"))
}

fn temp_script(name: &str, text: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("adic-kit-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

#[test]
fn smoke_parse() {
    let s = parse_script("A = Tate(Qp(2,8),[T]); B = Quot(A,[u],[u - T^2]); classify B;").unwrap();
    assert_eq!(s.items.len(), 3);
}

#[test]
fn spec_literal_with_options_parses() {
    let s = parse_script("A = Tate(Qp(2,8), [T]; D=8); B = Quot(A, [u], [u - T^2]);").unwrap();
    assert_eq!(s.to_string(), "A = Tate(Qp(2, 8), [T]; D=8);\nB = Quot(A, [u], [u - T^2]);\n");
}

#[test]
fn undefined_name_is_positioned() {
    let e = parse_script("classify C;").unwrap_err();
    assert_eq!(e.to_string(), "undefined name C at 1:10");
    let e = parse_script("A = Tate(Qp(2), [T]);\nB = Quot(X, [u], []);").unwrap_err();
    assert_eq!(e.to_string(), "undefined name X at 2:10");
}

#[test]
fn syntax_and_arity_errors() {
    let cases = [
        ("A = Tate(Qp(2), [T])", "expected ';', found end of input at 1:21"),
        ("A = Tate(Qp(2), [T]); classify A A;", "classify takes 1 positional arguments, got 2 at 1:23"),
        ("A = Tate(Qp(2), [T]); frobnicate A;", "unknown command frobnicate at 1:23"),
        ("A = Tate(Qp(2), [T]); glue-check A T;", "glue-check takes 3 positional arguments, got 2 at 1:23"),
        ("A = Tate(Qp(2), [T]); classify A on=T;", "expected a pair of polynomials, found T at 1:37"),
        ("A = Tate(Qp(2), [T]); integrate A omega=1;", "integrate needs f= at 1:23"),
        ("A = Tate(Qp(2), [T]); witt add A (1,0);", "expected a tuple, found A at 1:32"),
        ("R = Ring(Zmod(4)); classify R;", "R is a ring, expected a presentation or morphism at 1:29"),
        ("x = 1 $ 2;", "unexpected character '$' at 1:7"),
        ("s = \"open;", "unterminated string at 1:5"),
        ("A = Tate(Qp(2), [T]); normal-form A T^-1;", "expected a non-negative integer exponent at 1:39"),
    ];
    for (text, want) in cases {
        assert_eq!(parse_script(text).unwrap_err().to_string(), want, "{text}");
    }
}

#[test]
fn nested_quotients_flatten() {
    let r = run("A = Tate(Qp(2, 8), [T]); show Quot(Quot(A, [u], [u - T^2]), [v], [v - u]);");
    let res = &r[0]["result"];
    assert_eq!(res["vars"], serde_json::json!(["T", "u", "v"]));
    let r = run("A = Tate(Qp(2, 8), [T]); classify Quot(Quot(A, [u], [u - T^2]), [v], [v^2 - v - 1]);");
    assert_eq!(r[0]["result"]["verdict"], "etale");
}

#[test]
fn spec_examples() {
    let r = run("A = Tate(Qp(2, 8), [T]); L = Loc(A, T, 2); classify L;");
    assert_eq!(r[0]["result"]["verdict"], "etale");
    let r = run("A = Tate(Qp(2, 8), [T]); glue-check A T 2 degree=6 precision=6;");
    for k in ["left", "middle", "right"] {
        assert_eq!(r[0]["result"][k], "exact");
    }
    let r = run("witt add (1, 0) (1, 0) p=2;");
    assert_eq!(r[0]["result"]["result"], "(0,1)");
}

#[test]
fn report_shape() {
    let r = run("padic div 1 3 p=2 prec=4;");
    let keys: Vec<&String> = r[0].as_object().unwrap().keys().collect();
    assert_eq!(keys, ["command", "parameters", "result", "status", "summary", "version"]);
    assert_eq!(r[0]["parameters"]["degree"], 8);
    assert_eq!(r[0]["result"]["unit"], "11");
    assert_eq!(r[0]["result"]["valuation"], 0);
}

#[test]
fn failed_declaration_is_reported_once_and_poisons_uses() {
    let reports = run_script(
        &parse_script("A = Tate(Qp(2), [T]); B = Quot(A, [u], [u - V]); classify B; classify A;").unwrap(),
        &Options::default(),
    );
    let status: Vec<Status> = reports.iter().map(|r| r.status).collect();
    assert_eq!(status, [Status::Error, Status::Error, Status::Ok]);
    assert!(reports[1].json["error"].as_str().unwrap().contains("B was not built"));
}

#[test]
fn inconclusive_status() {
    let reports = run_script(
        &parse_script("A = Tate(Qp(2, 8), [T]); glue-check A T 2 degree=6 precision=6 mutate=wrong_second_relation;").unwrap(),
        &Options::default(),
    );
    assert_eq!(reports[0].status, Status::Inconclusive);
}

#[test]
fn exit_codes() {
    let ok = temp_script("ok.adk", "witt add (1, 0) (1, 0);\n");
    let out = bin().arg("run").arg(&ok).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let doc: Json = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["reports"][0]["result"]["result"], "(0,1)");
    assert!(String::from_utf8_lossy(&out.stderr).contains("witt add over GF(2): (0,1)"));

    let parse = temp_script("parse.adk", "classify C;\n");
    let out = bin().arg("run").arg(&parse).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("undefined name C at 1:10"));

    let err = temp_script("err.adk", "witt add (1, 0) (1, 0, 1);\n");
    assert_eq!(bin().arg("run").arg(&err).output().unwrap().status.code(), Some(1));

    let inc = temp_script(
        "inc.adk",
        "A = Tate(Qp(2, 8), [T]);\nglue-check A T 2 degree=6 precision=6 mutate=wrong_second_relation;\n",
    );
    assert_eq!(bin().arg("run").arg(&inc).output().unwrap().status.code(), Some(0));
    assert_eq!(bin().arg("run").arg(&inc).arg("--strict").output().unwrap().status.code(), Some(1));

    let report = ok.with_extension("json");
    let out = bin().args(["run", "--degree", "6", "--precision", "5", "--prime", "3", "--jobs", "2", "--out"]).arg(&report).arg(&ok).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let doc: Json = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(doc["reports"][0]["parameters"]["prime"], 3);
    assert_eq!(doc["reports"][0]["result"]["ring"], "GF(3)");
}

#[test]
fn corpus_flag() {
    let s = temp_script("corpus.adk", "F = Tate(Fp(2), [T]);\nclassify-lifting Quot(F, [u], [u^2 + u + T]);\n");
    let out = bin().arg("run").arg(&s).args(["--corpus", "GF(2); GF(2,2)"]).output().unwrap();
    let doc: Json = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["reports"][0]["result"]["corpus"], serde_json::json!(["GF(2)", "GF(2,2)"]));
    assert_eq!(doc["reports"][0]["parameters"]["corpus"], serde_json::json!(["GF(2)", "GF(2,2)"]));
}

#[test]
fn fmt_prints_canonical_form() {
    let s = temp_script("fmt.adk", "A=Tate( Qp(2,8) ,[T]);classify   Loc(A,T,(2));  # comment\n");
    let out = bin().arg("fmt").arg(&s).output().unwrap();
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "A = Tate(Qp(2, 8), [T]);\nclassify Loc(A, T, 2);\n");
}

#[test]
fn determinism_across_job_counts() {
    let text = std::fs::read_to_string(format!("{}/tests/fixtures/tour.adk", env!("CARGO_MANIFEST_DIR"))).unwrap();
    let script = parse_script(&text).unwrap();
    let a = render(&run_script(&script, &Options { jobs: Some(1), ..Options::default() }));
    let b = render(&run_script(&script, &Options { jobs: Some(3), ..Options::default() }));
    assert_eq!(a, b);
}

#[test]
fn coverage_map_matches_commands_and_readme() {
    let readme = std::fs::read_to_string(format!("{}/../../README.md", env!("CARGO_MANIFEST_DIR"))).unwrap();
    for (command, ops) in COVERAGE {
        let is_constructor = command.chars().next().unwrap().is_uppercase();
        assert!(is_constructor || command_signature(command).is_some(), "{command} is not a command");
        let row = readme
            .lines()
            .find(|l| l.starts_with(&format!("| `{command}`")))
            .unwrap_or_else(|| panic!("README has no coverage row for {command}"));
        for op in *ops {
            assert!(row.contains(&format!("`{op}`")), "README row for {command} lacks {op}");
        }
    }
    let spec_ops = [
        "padic_arith",
        "finite_ring_build",
        "nilradical",
        "tate_arith",
        "gauss_norm",
        "groebner_basis",
        "normal_form",
        "compose_presentations",
        "base_change",
        "rational_localization",
        "covering_check",
        "gluing_sequence_check",
        "joint_surjection_lift",
        "kahler_differentials",
        "naive_cotangent_complex",
        "classify_morphism",
        "de_rham_complex",
        "etale_integration",
        "point_set",
        "de_rham_point_set",
        "enumerate_nilpotent_ideals",
        "enumerate_pd_structures",
        "crystalline_point_count",
        "classify_lifting",
        "witt_arith",
        "frobenius_witt",
        "verschiebung",
        "tilt",
        "robba_norm",
        "interval_norm",
        "phi_action",
    ];
    for op in spec_ops {
        assert!(COVERAGE.iter().any(|(_, ops)| ops.contains(&op)), "{op} is not reachable");
    }
}

fn pos() -> Pos {
    Pos::default()
}

fn arb_expr() -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![
        (0u32..50).prop_map(|n| Expr::Int(BigInt::from(n))),
        prop::sample::select(vec!["T", "u", "x1", "tbar"]).prop_map(|s| Expr::Var(s.to_string())),
    ];
    leaf.prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(|e| Expr::Neg(Box::new(e))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Add(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Sub(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Mul(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Div(Box::new(a), Box::new(b))),
            (inner, 0u32..5).prop_map(|(a, k)| Expr::Pow(Box::new(a), k)),
        ]
    })
}

fn arb_value() -> impl Strategy<Value = Value> {
    let leaf = prop_oneof![
        arb_expr().prop_map(ValueKind::Expr),
        "[a-z ]{0,6}".prop_map(ValueKind::Str),
    ]
    .prop_map(|kind| Value { kind, pos: pos() });
    leaf.prop_recursive(3, 16, 3, |inner| {
        prop_oneof![
            prop::collection::vec(inner.clone(), 0..3).prop_map(ValueKind::List),
            prop::collection::vec(inner.clone(), 0..3).prop_map(ValueKind::Tuple),
            (
                prop::sample::select(vec!["Tate", "Quot", "Qp", "GF"]),
                prop::collection::vec(inner.clone(), 0..3),
                prop::collection::vec(inner, 0..2),
            )
                .prop_map(|(n, args, opts)| {
                    let opts = opts.into_iter().enumerate().map(|(i, v)| (format!("k{i}"), v)).collect();
                    ValueKind::Call(n.to_string(), args, opts)
                }),
        ]
        .prop_map(|kind| Value { kind, pos: pos() })
    })
}

fn arb_item() -> impl Strategy<Value = Item> {
    prop_oneof![
        ("[A-Z][a-z0-9]{0,3}", arb_value()).prop_map(|(name, value)| Item::Decl { name, value, pos: pos() }),
        (
            prop::sample::select(vec!["classify", "glue-check", "robba-norm", "witt"]),
            prop::collection::vec((prop::option::of("[a-z]{1,3}"), arb_value()), 0..4),
        )
            .prop_map(|(name, args)| Item::Command {
                name: name.to_string(),
                args: args.into_iter().map(|(key, value)| Arg { key, value }).collect(),
                pos: pos(),
            }),
    ]
}

proptest! {
    #[test]
    fn print_parse_round_trip(items in prop::collection::vec(arb_item(), 0..5)) {
        let script = Script { items };
        let printed = script.to_string();
        let again = parse_syntax(&printed).map_err(|e| TestCaseError::fail(format!("{e}\n{printed}")))?;
        prop_assert_eq!(&again, &script);
        prop_assert_eq!(again.to_string(), printed);
    }

    #[test]
    fn parser_is_total(text in "[ -~\n]{0,80}") {
        let _ = parse_script(&text);
    }
}
