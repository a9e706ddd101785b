//! Shapes of constructors and commands, shared by the resolver and runner.

use crate::ast::{Value, ValueKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NameKind {
    Pres,
    Morph,
    Ring,
    Corpus,
}

impl NameKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            NameKind::Pres => "presentation",
            NameKind::Morph => "morphism",
            NameKind::Ring => "ring",
            NameKind::Corpus => "corpus",
        }
    }
}

#[derive(Debug, Clone)]
pub enum Kind {
    Obj(&'static [NameKind]),
    Poly,
    Int,
    Rational,
    Word(&'static [&'static str]),
    Str,
    Tuple,
    PolyPair,
    List(&'static Kind),
    Names,
    Coefficients,
    Any,
}

#[derive(Debug, Clone)]
pub struct Signature {
    pub positional: Vec<Kind>,
    pub required: usize,
    pub keys: Vec<(&'static str, Kind)>,
    pub required_keys: &'static [&'static str],
    pub produces: Option<NameKind>,
}

const PRES: Kind = Kind::Obj(&[NameKind::Pres]);
const MORPH: Kind = Kind::Obj(&[NameKind::Morph]);
const PRES_OR_MORPH: Kind = Kind::Obj(&[NameKind::Pres, NameKind::Morph]);
const RING: Kind = Kind::Obj(&[NameKind::Ring]);
const CORPUS: Kind = Kind::Obj(&[NameKind::Corpus]);
const POLYS: Kind = Kind::List(&Kind::Poly);
const STRS: Kind = Kind::List(&Kind::Str);

pub const WITT_OPS: &[&str] = &["add", "mul", "sub", "neg", "frobenius", "verschiebung"];
pub const ROBBA_OPS: &[&str] = &["add", "mul", "phi"];
pub const ARITH_OPS: &[&str] = &["add", "sub", "mul", "div"];
pub const TATE_OPS: &[&str] = &["add", "sub", "mul"];
pub const MUTATIONS: &[&str] =
    &["none", "drop_first_relation", "drop_second_relation", "extra_joint_relation", "wrong_second_relation"];
pub const POINT_MODES: &[&str] = &["plain", "dR", "crys"];
pub const LIFT_MODES: &[&str] = &["dR", "crys"];

fn sig(positional: Vec<Kind>, required: usize, keys: Vec<(&'static str, Kind)>) -> Signature {
    Signature { positional, required, keys, required_keys: &[], produces: None }
}

/// Constructors usable on the right of a declaration.
pub fn call_signature(name: &str) -> Option<Signature> {
    let (s, kind) = match name {
        "Tate" => (sig(vec![Kind::Coefficients, Kind::Names], 2, vec![("D", Kind::Int), ("declare", STRS)]), NameKind::Pres),
        "Quot" => (sig(vec![PRES, Kind::Names, POLYS], 3, vec![("D", Kind::Int), ("declare", STRS)]), NameKind::Pres),
        "Loc" => (sig(vec![PRES, Kind::Poly, Kind::Poly], 3, vec![]), NameKind::Pres),
        "BaseChange" => (sig(vec![PRES, MORPH], 2, vec![]), NameKind::Pres),
        "Map" => (sig(vec![PRES, PRES, POLYS], 3, vec![]), NameKind::Morph),
        "Compose" => (sig(vec![MORPH, MORPH], 2, vec![]), NameKind::Morph),
        "Identity" => (sig(vec![PRES], 1, vec![]), NameKind::Morph),
        "Structural" => (sig(vec![PRES], 1, vec![]), NameKind::Morph),
        "Restriction" => (sig(vec![PRES, Kind::Poly, Kind::Poly], 3, vec![]), NameKind::Morph),
        "Ring" => (sig(vec![Kind::Any], 1, vec![]), NameKind::Ring),
        "Corpus" => (sig(vec![Kind::Any], 1, vec![]), NameKind::Corpus),
        _ => return None,
    };
    Some(Signature { produces: Some(kind), ..s })
}

pub fn command_signature(name: &str) -> Option<Signature> {
    let mut s = match name {
        "classify" => sig(vec![PRES_OR_MORPH], 1, vec![("on", Kind::PolyPair)]),
        "classify-lifting" => sig(
            vec![PRES_OR_MORPH],
            1,
            vec![("corpus", CORPUS), ("mode", Kind::Word(LIFT_MODES))],
        ),
        "kahler" | "cotangent" | "groebner" | "show" => sig(vec![PRES], 1, vec![]),
        "drham" => sig(vec![PRES], 1, vec![("top", Kind::Int)]),
        "normal-form" | "gauss-norm" => sig(vec![PRES, Kind::Poly], 2, vec![]),
        "tate" => sig(vec![Kind::Word(TATE_OPS), PRES, Kind::Poly, Kind::Poly], 4, vec![]),
        "integrate" => {
            let mut s = sig(vec![PRES], 1, vec![("var", Kind::Poly), ("omega", Kind::Poly), ("f", Kind::Poly)]);
            s.required_keys = &["omega", "f"];
            s
        }
        "covering" => sig(vec![PRES, Kind::Poly, Kind::Poly], 3, vec![]),
        "glue-check" => sig(
            vec![PRES, Kind::Poly, Kind::Poly],
            3,
            vec![("mutate", Kind::Word(MUTATIONS)), ("degree", Kind::Int), ("precision", Kind::Int)],
        ),
        "lift" => {
            let mut s = sig(vec![PRES, Kind::Poly, Kind::Poly], 3, vec![("s1", POLYS), ("s2", POLYS)]);
            s.required_keys = &["s1", "s2"];
            s
        }
        "generates" => sig(vec![PRES, POLYS], 2, vec![]),
        "points" => sig(vec![PRES, RING], 2, vec![("mode", Kind::Word(POINT_MODES))]),
        "ring-info" | "nilpotent-ideals" | "pd-structures" => sig(vec![RING], 1, vec![]),
        "tilt" => sig(vec![RING], 1, vec![("depth", Kind::Int)]),
        "witt" => sig(
            vec![Kind::Word(WITT_OPS), Kind::Tuple, Kind::Tuple],
            2,
            vec![("ring", RING), ("p", Kind::Int)],
        ),
        "robba-norm" => sig(
            vec![Kind::Str],
            1,
            vec![("r", Kind::Rational), ("s", Kind::Rational), ("p", Kind::Int), ("n", Kind::Int)],
        ),
        "robba" => sig(vec![Kind::Word(ROBBA_OPS), Kind::Str, Kind::Str], 2, vec![("p", Kind::Int), ("n", Kind::Int)]),
        "padic" => sig(
            vec![Kind::Word(ARITH_OPS), Kind::Poly, Kind::Poly],
            3,
            vec![("p", Kind::Int), ("prec", Kind::Int)],
        ),
        _ => return None,
    };
    if name == "robba-norm" {
        s.required_keys = &["r"];
    }
    Some(s)
}

/// Inline ring specifications: `Zmod(n)`, `GF(p)`, `GF(p, k)`, `Prod(...)`
/// and `Quot(GF(p), [vars], [relations])`.
pub fn is_ring_spec(v: &Value) -> bool {
    match &v.kind {
        ValueKind::Call(name, args, _) => match name.as_str() {
            "Zmod" | "GF" | "Prod" => true,
            "Quot" => args.first().is_some_and(|a| matches!(&a.kind, ValueKind::Call(n, ..) if n == "GF")),
            _ => false,
        },
        _ => false,
    }
}

/// Every command with the library operations it reaches.
pub const COVERAGE: &[(&str, &[&str])] = &[
    ("classify", &["classify", "classify_morphism", "classify_on_covering"]),
    ("classify-lifting", &["classify_lifting", "classify_lifting_morphism"]),
    ("kahler", &["kahler_differentials"]),
    ("cotangent", &["naive_cotangent_complex"]),
    ("drham", &["de_rham_complex"]),
    ("groebner", &["groebner_basis"]),
    ("show", &["Presentation::display"]),
    ("normal-form", &["normal_form"]),
    ("gauss-norm", &["gauss_norm"]),
    ("tate", &["tate_arith"]),
    ("integrate", &["etale_integration", "integrate_report"]),
    ("covering", &["covering_check"]),
    ("glue-check", &["gluing_sequence_check", "localize_relative", "BinaryCovering::mutate"]),
    ("lift", &["joint_surjection_lift"]),
    ("generates", &["certify_generation"]),
    ("points", &["point_set", "de_rham_point_set", "crystalline_point_count"]),
    ("ring-info", &["finite_ring_build", "nilradical"]),
    ("nilpotent-ideals", &["enumerate_nilpotent_ideals"]),
    ("pd-structures", &["enumerate_pd_structures", "verify_pd"]),
    ("tilt", &["tilt"]),
    ("witt", &["witt_arith", "witt_neg", "witt_sub", "frobenius_witt", "verschiebung"]),
    ("robba-norm", &["robba_norm", "interval_norm"]),
    ("robba", &["RobbaElement::add", "RobbaElement::mul", "phi_action"]),
    ("padic", &["padic_arith"]),
    ("Loc", &["rational_localization"]),
    ("Restriction", &["rational_localization", "Morphism::structural"]),
    ("Compose", &["compose_presentations"]),
    ("BaseChange", &["base_change"]),
];
