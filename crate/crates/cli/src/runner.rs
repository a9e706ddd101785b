//! Executes resolved scripts against the library and builds reports.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use adic_core::base::{default_corpus, FiniteRing, PadicNumber, PadicOp, RingSpec};
use adic_core::differentials::{
    classify, classify_morphism, classify_on_covering, de_rham_complex, integrate_report, kahler_differentials,
    naive_cotangent_complex,
};
use adic_core::infinitesimal::{
    classify_lifting, classify_lifting_morphism, crystalline_point_count, de_rham_point_set, enumerate_nilpotent_ideals,
    enumerate_pd_structures, point_set, verify_pd, LiftingMode, MapKind, PointSet, TestRing,
};
use adic_core::localization::{
    certify_generation, covering_check, gluing_sequence_check, joint_surjection_lift,
    rational_localization, BinaryCovering, Clause, Mutation,
};
use adic_core::poly::parse::parse_poly;
use adic_core::poly::QPoly;
use adic_core::tate::{base_change, Coefficients, Morphism, Presentation};
use adic_core::witt::{
    frobenius_witt, interval_norm, phi_action, robba_norm, tilt, verschiebung, witt_arith, witt_neg, witt_sub,
    RobbaElement, WittOp, WittVector,
};
use adic_core::Exec;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde_json::{json, Map, Value as Json};

use crate::ast::{Arg, Expr, Item, Script, Value, ValueKind};
use crate::signature::is_ring_spec;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Number of points listed in a point-set report before eliding.
const POINT_LIST_LIMIT: usize = 256;

/// Default Witt length for Robba elements.
const ROBBA_LENGTH: usize = 4;

#[derive(Debug, Clone)]
pub struct Options {
    pub degree: u32,
    pub precision: u32,
    pub prime: u32,
    /// `None` for the default corpus, otherwise ring specs.
    pub corpus: Option<Vec<String>>,
    pub strict: bool,
    /// `None` runs commands in order with parallel search inside them;
    /// `Some(1)` is fully sequential; `Some(k)` runs commands on `k` threads.
    pub jobs: Option<usize>,
}

impl Default for Options {
    fn default() -> Self {
        Options { degree: 8, precision: 8, prime: 2, corpus: None, strict: false, jobs: None }
    }
}

impl Options {
    fn exec(&self) -> Exec {
        if self.jobs == Some(1) {
            Exec::Sequential
        } else {
            Exec::Parallel
        }
    }

    fn parameters(&self) -> Json {
        json!({
            "degree": self.degree,
            "precision": self.precision,
            "prime": self.prime,
            "corpus": match &self.corpus {
                None => json!("default"),
                Some(specs) => json!(specs),
            },
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    Inconclusive,
    Error,
}

#[derive(Debug, Clone)]
pub struct Report {
    pub json: Json,
    pub summary: String,
    pub status: Status,
}

#[derive(Debug)]
pub struct CmdError(String);

impl fmt::Display for CmdError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<adic_core::Error> for CmdError {
    fn from(e: adic_core::Error) -> Self {
        CmdError(e.to_string())
    }
}

impl From<String> for CmdError {
    fn from(e: String) -> Self {
        CmdError(e)
    }
}

type CResult<T> = Result<T, CmdError>;

fn fail<T>(msg: impl Into<String>) -> CResult<T> {
    Err(CmdError(msg.into()))
}

#[derive(Debug, Clone)]
enum Binding {
    Pres(Arc<Presentation>),
    Morph(Arc<Morphism>),
    Ring(Arc<TestRing>, String),
    Corpus(Arc<Vec<TestRing>>, Vec<String>),
    /// A declaration that failed; later uses report this message.
    Failed(String),
}

type Env = BTreeMap<String, Binding>;

struct Ctx<'a> {
    env: &'a Env,
    opts: &'a Options,
}

fn int(v: &Value) -> CResult<BigInt> {
    match &v.kind {
        ValueKind::Expr(Expr::Int(n)) => Ok(n.clone()),
        _ => fail(format!("expected an integer, found {v}")),
    }
}

fn small<T: TryFrom<BigInt>>(v: &Value) -> CResult<T> {
    let n = int(v)?;
    T::try_from(n.clone()).map_err(|_| CmdError(format!("integer {n} out of range")))
}

fn rational(e: &Expr) -> CResult<BigRational> {
    Ok(match e {
        Expr::Int(n) => BigRational::from_integer(n.clone()),
        Expr::Var(v) => return fail(format!("expected a number, found {v}")),
        Expr::Neg(a) => -rational(a)?,
        Expr::Add(a, b) => rational(a)? + rational(b)?,
        Expr::Sub(a, b) => rational(a)? - rational(b)?,
        Expr::Mul(a, b) => rational(a)? * rational(b)?,
        Expr::Div(a, b) => {
            let d = rational(b)?;
            if d.is_zero() {
                return fail("division by zero");
            }
            rational(a)? / d
        }
        Expr::Pow(a, k) => num_traits::pow(rational(a)?, *k as usize),
    })
}

fn expr(v: &Value) -> CResult<&Expr> {
    match &v.kind {
        ValueKind::Expr(e) => Ok(e),
        _ => fail(format!("expected a polynomial, found {v}")),
    }
}

fn poly_in(vars: &[String], v: &Value) -> CResult<QPoly> {
    Ok(parse_poly(&expr(v)?.to_string(), vars)?)
}

fn list(v: &Value) -> CResult<&[Value]> {
    match &v.kind {
        ValueKind::List(items) => Ok(items),
        _ => fail(format!("expected a list, found {v}")),
    }
}

fn names(v: &Value) -> CResult<Vec<String>> {
    list(v)?
        .iter()
        .map(|i| i.as_name().map(str::to_string).ok_or_else(|| CmdError(format!("expected a variable name, found {i}"))))
        .collect()
}

fn strings(v: &Value) -> CResult<Vec<String>> {
    list(v)?
        .iter()
        .map(|i| match &i.kind {
            ValueKind::Str(s) => Ok(s.clone()),
            _ => fail(format!("expected a string, found {i}")),
        })
        .collect()
}

fn string(v: &Value) -> CResult<&str> {
    match &v.kind {
        ValueKind::Str(s) => Ok(s),
        _ => fail(format!("expected a string, found {v}")),
    }
}

fn word(v: &Value) -> CResult<&str> {
    v.as_name().ok_or_else(|| CmdError(format!("expected a word, found {v}")))
}

/// Evaluates an expression inside a finite ring, reading names as the ring's
/// named generators.
fn ring_element(ring: &FiniteRing, e: &Expr) -> CResult<usize> {
    Ok(match e {
        Expr::Int(n) => {
            let m = BigInt::from(ring.characteristic().max(1));
            ring.from_int(((n % &m).to_i64()).expect("reduced"))
        }
        Expr::Var(v) => match ring.generators().iter().find(|(name, _)| name == v) {
            Some((_, x)) => *x,
            None => return fail(format!("{v} is not a generator of {}", ring.name())),
        },
        Expr::Neg(a) => ring.neg(ring_element(ring, a)?),
        Expr::Add(a, b) => ring.add(ring_element(ring, a)?, ring_element(ring, b)?),
        Expr::Sub(a, b) => ring.sub(ring_element(ring, a)?, ring_element(ring, b)?),
        Expr::Mul(a, b) => ring.mul(ring_element(ring, a)?, ring_element(ring, b)?),
        Expr::Div(a, b) => {
            let d = ring_element(ring, b)?;
            match ring.inverse(d) {
                Some(inv) => ring.mul(ring_element(ring, a)?, inv),
                None => return fail(format!("{b} is not a unit in {}", ring.name())),
            }
        }
        Expr::Pow(a, k) => ring.pow(ring_element(ring, a)?, *k as u64),
    })
}

impl Ctx<'_> {
    fn lookup(&self, name: &str) -> CResult<&Binding> {
        match self.env.get(name) {
            Some(Binding::Failed(msg)) => fail(format!("{name} was not built: {msg}")),
            Some(b) => Ok(b),
            None => fail(format!("undefined name {name}")),
        }
    }

    fn coefficients(&self, v: &Value) -> CResult<Coefficients> {
        let ValueKind::Call(name, args, _) = &v.kind else {
            return fail(format!("expected coefficients, found {v}"));
        };
        let p: u32 = small(&args[0])?;
        if !adic_core::poly::field::is_prime(p as u64) {
            return fail(format!("{p} is not prime"));
        }
        Ok(match name.as_str() {
            "Qp" => Coefficients::Qp { p, prec: if args.len() > 1 { small(&args[1])? } else { self.opts.precision } },
            "Fp" => Coefficients::Fp(p),
            "Zp" => Coefficients::Zp(p),
            _ => return fail(format!("unknown coefficients {name}")),
        })
    }

    fn eval(&self, v: &Value) -> CResult<Binding> {
        if let Some(name) = v.as_name() {
            return self.lookup(name).cloned();
        }
        let ValueKind::Call(name, args, opts) = &v.kind else {
            return fail(format!("expected a declaration, found {v}"));
        };
        let opt = |key: &str| opts.iter().find(|(k, _)| k == key).map(|(_, v)| v);
        let finish = |mut p: Presentation| -> CResult<Binding> {
            if let Some(d) = opt("D") {
                p = p.with_degree_cap(small(d)?);
            }
            if let Some(list) = opt("declare") {
                for flag in strings(list)? {
                    p = p.declare(&flag);
                }
            }
            Ok(Binding::Pres(Arc::new(p)))
        };
        match name.as_str() {
            "Tate" => {
                let p = Presentation::free(self.coefficients(&args[0])?, names(&args[1])?)?.with_degree_cap(self.opts.degree);
                finish(p)
            }
            "Quot" => {
                let base = self.pres(&args[0])?;
                let new = names(&args[1])?;
                let mut all = base.vars().to_vec();
                all.extend(new.iter().cloned());
                let rels = list(&args[2])?.iter().map(|r| poly_in(&all, r)).collect::<CResult<Vec<_>>>()?;
                finish(Presentation::quotient(&base, new, rels)?)
            }
            "Loc" => {
                let b = self.pres(&args[0])?;
                let (f, g) = (poly_in(b.vars(), &args[1])?, poly_in(b.vars(), &args[2])?);
                Ok(Binding::Pres(Arc::new(rational_localization(&b, &f, &g)?.0)))
            }
            "BaseChange" => {
                let p = self.pres(&args[0])?;
                let m = self.morph(&args[1])?;
                Ok(Binding::Pres(Arc::new(base_change(&p, &m)?)))
            }
            "Map" => {
                let (s, t) = (self.pres(&args[0])?, self.pres(&args[1])?);
                let images = list(&args[2])?.iter().map(|i| poly_in(t.vars(), i)).collect::<CResult<Vec<_>>>()?;
                Ok(Binding::Morph(Arc::new(Morphism::new((*s).clone(), (*t).clone(), images)?)))
            }
            "Compose" => {
                let (f, g) = (self.morph(&args[0])?, self.morph(&args[1])?);
                Ok(Binding::Morph(Arc::new(f.compose(&g)?)))
            }
            "Identity" => Ok(Binding::Morph(Arc::new(Morphism::identity(&*self.pres(&args[0])?)))),
            "Structural" => Ok(Binding::Morph(Arc::new(Morphism::structural(&*self.pres(&args[0])?)))),
            "Restriction" => {
                let b = self.pres(&args[0])?;
                let (f, g) = (poly_in(b.vars(), &args[1])?, poly_in(b.vars(), &args[2])?);
                Ok(Binding::Morph(Arc::new(rational_localization(&b, &f, &g)?.1)))
            }
            "Ring" => {
                let (ring, spec) = self.ring_of(&args[0])?;
                Ok(Binding::Ring(ring, spec))
            }
            "Corpus" => {
                let specs: Vec<String> = match &args[0].kind {
                    ValueKind::Expr(Expr::Int(_)) => default_corpus(small(&args[0])?).iter().map(|s| s.to_string()).collect(),
                    ValueKind::List(items) => {
                        items.iter().map(|i| self.ring_of(i).map(|(_, s)| s)).collect::<CResult<Vec<_>>>()?
                    }
                    _ => return fail(format!("expected a prime or a list of rings, found {}", args[0])),
                };
                let rings = build_corpus(&specs)?;
                Ok(Binding::Corpus(Arc::new(rings), specs))
            }
            _ => fail(format!("unknown constructor {name}")),
        }
    }

    fn pres(&self, v: &Value) -> CResult<Arc<Presentation>> {
        match self.eval(v)? {
            Binding::Pres(p) => Ok(p),
            _ => fail(format!("{v} is not a presentation")),
        }
    }

    fn morph(&self, v: &Value) -> CResult<Arc<Morphism>> {
        match self.eval(v)? {
            Binding::Morph(m) => Ok(m),
            _ => fail(format!("{v} is not a morphism")),
        }
    }

    /// A ring by name or inline spec, with its canonical spec text.
    fn ring_of(&self, v: &Value) -> CResult<(Arc<TestRing>, String)> {
        if is_ring_spec(v) {
            let spec = RingSpec::parse(&v.to_string())?;
            return Ok((Arc::new(TestRing::from_spec(&spec)?), spec.to_string()));
        }
        match self.eval(v)? {
            Binding::Ring(r, s) => Ok((r, s)),
            _ => fail(format!("{v} is not a ring")),
        }
    }

    fn corpus(&self, v: Option<&Value>, prime: u32) -> CResult<(Arc<Vec<TestRing>>, Vec<String>)> {
        if let Some(v) = v {
            return match self.eval(v)? {
                Binding::Corpus(c, specs) => Ok((c, specs)),
                _ => fail(format!("{v} is not a corpus")),
            };
        }
        let specs = match &self.opts.corpus {
            Some(specs) => specs.clone(),
            None => default_corpus(prime as u64).iter().map(|s| s.to_string()).collect(),
        };
        Ok((Arc::new(build_corpus(&specs)?), specs))
    }
}

fn build_corpus(specs: &[String]) -> CResult<Vec<TestRing>> {
    specs.iter().map(|s| Ok(TestRing::from_spec(&RingSpec::parse(s)?)?)).collect()
}

fn to_json<T: serde::Serialize>(x: &T) -> Json {
    serde_json::to_value(x).expect("report types serialize")
}

struct Outcome {
    result: Json,
    summary: String,
    inconclusive: bool,
}

fn done(result: Json, summary: String) -> CResult<Outcome> {
    Ok(Outcome { result, summary, inconclusive: false })
}

fn show_points(ring: &FiniteRing, set: &PointSet) -> Json {
    let shown: Vec<Json> = set
        .points
        .iter()
        .take(POINT_LIST_LIMIT)
        .map(|p| json!(p.iter().map(|&x| ring.display(x)).collect::<Vec<_>>()))
        .collect();
    json!({
        "ring": set.ring,
        "vars": set.vars,
        "count": set.len(),
        "points": shown,
        "elided": set.len().saturating_sub(POINT_LIST_LIMIT),
    })
}

fn run_command(ctx: &Ctx<'_>, name: &str, args: &[Arg]) -> CResult<Outcome> {
    let pos: Vec<&Value> = args.iter().filter(|a| a.key.is_none()).map(|a| &a.value).collect();
    let key = |k: &str| args.iter().find(|a| a.key.as_deref() == Some(k)).map(|a| &a.value);
    let exec = ctx.opts.exec();
    let subject = pos.first().map(|v| v.to_string()).unwrap_or_default();
    match name {
        "classify" => match ctx.eval(pos[0])? {
            Binding::Pres(p) => {
                let c = match key("on") {
                    Some(Value { kind: ValueKind::Tuple(fg), .. }) => {
                        classify_on_covering(&p, &poly_in(p.vars(), &fg[0])?, &poly_in(p.vars(), &fg[1])?)?
                    }
                    _ => classify(&p)?,
                };
                done(to_json(&c), format!("classify {subject}: {}", c.verdict.as_str()))
            }
            Binding::Morph(m) => {
                let c = classify_morphism(&m)?;
                done(to_json(&c), format!("classify {subject}: {}", c.verdict.as_str()))
            }
            _ => fail(format!("{subject} is not a presentation or morphism")),
        },
        "classify-lifting" => {
            let mode = match key("mode").map(word).transpose()? {
                Some("crys") => LiftingMode::Crys,
                _ => LiftingMode::DeRham,
            };
            let target = ctx.eval(pos[0])?;
            let prime = match &target {
                Binding::Pres(p) => p.prime(),
                Binding::Morph(m) => m.target().prime(),
                _ => return fail(format!("{subject} is not a presentation or morphism")),
            };
            let (rings, specs) = ctx.corpus(key("corpus"), prime)?;
            let c = match target {
                Binding::Pres(p) => classify_lifting(&p, &rings, mode, exec)?,
                Binding::Morph(m) => classify_lifting_morphism(&m, &rings, mode, exec)?,
                _ => unreachable!(),
            };
            let inconclusive = c.evidence.iter().any(|e| e.map == MapKind::Inconclusive);
            let mut result = to_json(&c);
            result["corpus"] = json!(specs);
            Ok(Outcome {
                summary: format!("classify-lifting {subject} ({}): {}", mode.as_str(), c.verdict.as_str()),
                result,
                inconclusive,
            })
        }
        "kahler" => {
            let k = kahler_differentials(&*ctx.pres(pos[0])?)?;
            let s = format!("kahler {subject}: {}", if k.is_zero { "zero".into() } else { format!("rank {}", k.fitting_rank) });
            done(to_json(&k), s)
        }
        "cotangent" => {
            let c = naive_cotangent_complex(&*ctx.pres(pos[0])?)?;
            let s = format!("cotangent {subject}: h-1 = {}, h0 = {}", c.h_minus1, c.h0);
            done(to_json(&c), s)
        }
        "drham" => {
            let top = key("top").map(small::<usize>).transpose()?.unwrap_or(3);
            let c = de_rham_complex(&*ctx.pres(pos[0])?, top)?;
            let s = format!("drham {subject}: {} d∘d checks, {} violations", c.dd_checks, c.dd_violations);
            done(to_json(&c), s)
        }
        "groebner" => {
            let p = ctx.pres(pos[0])?;
            let basis: Vec<String> = p.groebner_basis().iter().map(|g| p.display(g)).collect();
            let dim = p.dimension();
            let s = format!("groebner {subject}: {} elements", basis.len());
            done(json!({ "basis": basis, "dimension": dim, "zero_ring": p.is_zero_ring() }), s)
        }
        "show" => {
            let p = ctx.pres(pos[0])?;
            let result = json!({
                "presentation": p.to_string(),
                "coefficients": p.coefficients().to_string(),
                "vars": p.vars(),
                "base_vars": p.base_vars(),
                "relations": p.relations().iter().map(|r| p.display(r)).collect::<Vec<_>>(),
                "base_relations": p.base_relations().iter().map(|r| p.display(r)).collect::<Vec<_>>(),
                "degree_cap": p.degree_cap(),
                "declared": p.declared(),
            });
            done(result, format!("show {subject}: {p}"))
        }
        "normal-form" => {
            let p = ctx.pres(pos[0])?;
            let nf = p.normal_form(&poly_in(p.vars(), pos[1])?);
            let shown = p.display(&nf);
            done(json!({ "input": pos[1].to_string(), "normal_form": shown, "is_zero": nf.is_zero() }), format!("normal-form: {shown}"))
        }
        "gauss-norm" => {
            let p = ctx.pres(pos[0])?;
            let f = p.series(&poly_in(p.vars(), pos[1])?)?;
            let norm = f.gauss_norm();
            done(json!({ "input": pos[1].to_string(), "norm": norm.to_string() }), format!("gauss-norm {}: {norm}", pos[1]))
        }
        "tate" => {
            let op = word(pos[0])?;
            let p = ctx.pres(pos[1])?;
            let f = p.series(&poly_in(p.vars(), pos[2])?)?;
            let g = p.series(&poly_in(p.vars(), pos[3])?)?;
            let h = match op {
                "add" => f.add(&g)?,
                "sub" => f.sub(&g)?,
                _ => f.mul(&g)?,
            };
            let result = json!({
                "result": h.to_string(),
                "gauss_norm": h.gauss_norm().to_string(),
                "overflow": h.overflow(),
                "precision_loss": h.precision_loss(),
            });
            Ok(Outcome { summary: format!("tate {op}: {h}"), result, inconclusive: h.overflow() })
        }
        "integrate" => {
            let p = ctx.pres(pos[0])?;
            let var = match key("var") {
                Some(v) => word(v)?.to_string(),
                None => p.vars().last().cloned().ok_or_else(|| CmdError("presentation has no variables".into()))?,
            };
            let t = p.vars().iter().position(|v| *v == var).ok_or_else(|| CmdError(format!("{var} is not a variable")))?;
            let omega = poly_in(p.vars(), key("omega").expect("required"))?;
            let f = poly_in(p.vars(), key("f").expect("required"))?;
            let r = integrate_report(&p, t, &omega, &f)?;
            let s = format!("integrate: h = {}", r.primitive);
            done(to_json(&r), s)
        }
        "covering" => {
            let p = ctx.pres(pos[0])?;
            let c = covering_check(&p, &poly_in(p.vars(), pos[1])?, &poly_in(p.vars(), pos[2])?)?;
            let s = format!("covering ({}, {}): {}", pos[1], pos[2], if c.covers { "covers" } else { "does not cover" });
            done(to_json(&c), s)
        }
        "glue-check" => {
            let p = ctx.pres(pos[0])?;
            let cov = BinaryCovering::new(&p, &poly_in(p.vars(), pos[1])?, &poly_in(p.vars(), pos[2])?)?;
            let mutation = key("mutate").map(word).transpose()?.unwrap_or("none");
            let cov = match Mutation::ALL.iter().find(|m| m.name() == mutation) {
                Some(m) => cov.mutate(*m),
                None => cov,
            };
            let degree = key("degree").map(small).transpose()?.unwrap_or(ctx.opts.degree);
            let precision = key("precision").map(small).transpose()?.unwrap_or(ctx.opts.precision);
            let r = gluing_sequence_check(&cov, degree, precision)?;
            let mut result = to_json(&r);
            result["mutation"] = json!(mutation);
            let s = format!(
                "glue-check ({}, {}) [{mutation}]: left {}, middle {}, right {}",
                pos[1],
                pos[2],
                r.left.as_str(),
                r.middle.as_str(),
                r.right.as_str()
            );
            let inconclusive = [r.left, r.middle, r.right].contains(&Clause::Inconclusive);
            Ok(Outcome { result, summary: s, inconclusive })
        }
        "lift" => {
            let p = ctx.pres(pos[0])?;
            let cov = BinaryCovering::new(&p, &poly_in(p.vars(), pos[1])?, &poly_in(p.vars(), pos[2])?)?;
            let s1 = list(key("s1").expect("required"))?.iter().map(|v| poly_in(cov.first.vars(), v)).collect::<CResult<Vec<_>>>()?;
            let s2 = list(key("s2").expect("required"))?.iter().map(|v| poly_in(cov.second.vars(), v)).collect::<CResult<Vec<_>>>()?;
            let d = joint_surjection_lift(&cov, &s1, &s2)?;
            let s = format!("lift: {} generators", d.count);
            done(to_json(&d), s)
        }
        "generates" => {
            let p = ctx.pres(pos[0])?;
            let gens = list(pos[1])?.iter().map(|v| poly_in(p.vars(), v)).collect::<CResult<Vec<_>>>()?;
            let ok = certify_generation(&p, &gens)?;
            done(json!({ "generates": ok }), format!("generates {}: {ok}", pos[1]))
        }
        "points" => {
            let p = ctx.pres(pos[0])?;
            let (ring, spec) = ctx.ring_of(pos[1])?;
            let mode = key("mode").map(word).transpose()?.unwrap_or("plain");
            let result = match mode {
                "crys" => json!({ "ring": spec, "count": crystalline_point_count(&p, &ring, exec)? }),
                "dR" => show_points(&ring.reduction().0, &de_rham_point_set(&p, &ring.ring, exec)?),
                _ => show_points(&ring.ring, &point_set(&p, &ring.ring, exec)?),
            };
            let s = format!("points {subject} in {spec} ({mode}): {}", result["count"]);
            done(result, s)
        }
        "ring-info" => {
            let (ring, spec) = ctx.ring_of(pos[0])?;
            let r = &ring.ring;
            let nil: Vec<String> = r.nilradical().elements().iter().map(|&x| r.display(x)).collect();
            let result = json!({
                "ring": spec,
                "cardinality": r.cardinality(),
                "characteristic": r.characteristic(),
                "generators": r.generators().iter().map(|(n, _)| n.clone()).collect::<Vec<_>>(),
                "units": r.elements().filter(|&x| r.is_unit(x)).count(),
                "reduced": r.is_reduced(),
                "nilradical": nil,
            });
            done(result, format!("ring-info {spec}: {} elements", r.cardinality()))
        }
        "nilpotent-ideals" => {
            let (ring, spec) = ctx.ring_of(pos[0])?;
            let r = &ring.ring;
            let ideals: Vec<Json> = enumerate_nilpotent_ideals(r)
                .iter()
                .map(|(i, e)| json!({ "elements": i.elements().iter().map(|&x| r.display(x)).collect::<Vec<_>>(), "exponent": e }))
                .collect();
            let s = format!("nilpotent-ideals {spec}: {}", ideals.len());
            done(json!({ "ring": spec, "ideals": ideals }), s)
        }
        "pd-structures" => {
            let (ring, spec) = ctx.ring_of(pos[0])?;
            let r = &ring.ring;
            let mut total = 0;
            let mut incomplete = false;
            let per: Vec<Json> = enumerate_nilpotent_ideals(r)
                .iter()
                .map(|(i, _)| {
                    let elems: Vec<String> = i.elements().iter().map(|&x| r.display(x)).collect();
                    match enumerate_pd_structures(r, i) {
                        Ok(list) => {
                            total += list.len();
                            let verified = list.iter().all(|pd| verify_pd(r, pd));
                            json!({ "ideal": elems, "structures": list.len(), "verified": verified })
                        }
                        Err(e) => {
                            incomplete = true;
                            json!({ "ideal": elems, "error": e.to_string() })
                        }
                    }
                })
                .collect();
            let s = format!("pd-structures {spec}: {total} over {} ideals", per.len());
            Ok(Outcome { result: json!({ "ring": spec, "ideals": per, "total": total }), summary: s, inconclusive: incomplete })
        }
        "tilt" => {
            let (ring, spec) = ctx.ring_of(pos[0])?;
            let depth = key("depth").map(small::<usize>).transpose()?.unwrap_or(3);
            let t = tilt(&ring.ring, depth)?;
            let r = &ring.ring;
            let projections: Vec<Vec<String>> =
                t.projections.iter().map(|stage| stage.iter().map(|&x| r.display(x)).collect()).collect();
            let result = json!({
                "ring": spec,
                "tilt": t.ring.name(),
                "cardinality": t.ring.cardinality(),
                "elements": t.ring.elements().map(|x| t.ring.display(x)).collect::<Vec<_>>(),
                "projections": projections,
            });
            done(result, format!("tilt {spec}: {} elements", t.ring.cardinality()))
        }
        "witt" => {
            let op = word(pos[0])?;
            let (ring, spec) = match key("ring") {
                Some(v) => ctx.ring_of(v)?,
                None => {
                    let p: u32 = key("p").map(small).transpose()?.unwrap_or(ctx.opts.prime);
                    let spec = RingSpec::Gf(p as u64, 1);
                    (Arc::new(TestRing::from_spec(&spec)?), spec.to_string())
                }
            };
            let r = &ring.ring;
            let p = r.characteristic() as u32;
            let vector = |v: &Value| -> CResult<WittVector> {
                let ValueKind::Tuple(items) = &v.kind else { return fail(format!("expected a tuple, found {v}")) };
                let coords = items.iter().map(|i| ring_element(r, expr(i)?)).collect::<CResult<Vec<_>>>()?;
                Ok(WittVector::new(r, p, coords)?)
            };
            let a = vector(pos[1])?;
            let b = pos.get(2).map(|v| vector(v)).transpose()?;
            let need_b = || b.clone().ok_or_else(|| CmdError(format!("witt {op} needs two vectors")));
            let out = match op {
                "add" => witt_arith(r, WittOp::Add, &a, &need_b()?)?,
                "mul" => witt_arith(r, WittOp::Mul, &a, &need_b()?)?,
                "sub" => witt_sub(r, &a, &need_b()?)?,
                "neg" => witt_neg(r, &a)?,
                "frobenius" => frobenius_witt(r, &a)?,
                _ => verschiebung(r, &a)?,
            };
            let shown = out.display(r);
            let result = json!({
                "ring": spec,
                "p": p,
                "length": a.len(),
                "a": a.display(r),
                "b": b.as_ref().map(|b| b.display(r)),
                "result": shown,
            });
            done(result, format!("witt {op} over {spec}: {shown}"))
        }
        "robba-norm" => {
            let p: u32 = key("p").map(small).transpose()?.unwrap_or(ctx.opts.prime);
            let n: usize = key("n").map(small).transpose()?.unwrap_or(ROBBA_LENGTH);
            let f = RobbaElement::parse(string(pos[0])?, p, n)?;
            let r = rational(expr(key("r").expect("required"))?)?;
            let (norm, s) = match key("s") {
                Some(s) => {
                    let s = rational(expr(s)?)?;
                    (interval_norm(&f, &s, &r)?, Some(s.to_string()))
                }
                None => (robba_norm(&f, &r)?, None),
            };
            let result = json!({
                "element": f.to_string(),
                "p": p,
                "r": r.to_string(),
                "s": s,
                "norm": norm.to_string(),
                "truncated": f.truncated,
            });
            Ok(Outcome { summary: format!("robba-norm {f} at r = {r}: {norm}"), result, inconclusive: f.truncated })
        }
        "robba" => {
            let op = word(pos[0])?;
            let p: u32 = key("p").map(small).transpose()?.unwrap_or(ctx.opts.prime);
            let n: usize = key("n").map(small).transpose()?.unwrap_or(ROBBA_LENGTH);
            let f = RobbaElement::parse(string(pos[1])?, p, n)?;
            let g = pos.get(2).map(|v| string(v).and_then(|s| Ok(RobbaElement::parse(s, p, n)?))).transpose()?;
            let need_g = || g.clone().ok_or_else(|| CmdError(format!("robba {op} needs two elements")));
            let out = match op {
                "add" => f.add(&need_g()?)?,
                "mul" => f.mul(&need_g()?)?,
                _ => phi_action(&f),
            };
            let result = json!({ "p": p, "result": out.to_string(), "truncated": out.truncated });
            Ok(Outcome { summary: format!("robba {op}: {out}"), result, inconclusive: out.truncated })
        }
        "padic" => {
            let op = word(pos[0])?;
            let p: u32 = key("p").map(small).transpose()?.unwrap_or(ctx.opts.prime);
            let prec: u32 = key("prec").map(small).transpose()?.unwrap_or(ctx.opts.precision);
            let a = PadicNumber::from_rational(p, prec, &rational(expr(pos[1])?)?);
            let b = PadicNumber::from_rational(p, prec, &rational(expr(pos[2])?)?);
            let op_kind = match op {
                "add" => PadicOp::Add,
                "sub" => PadicOp::Sub,
                "mul" => PadicOp::Mul,
                _ => PadicOp::Div,
            };
            let c = PadicNumber::apply(op_kind, &a, &b)?;
            let result = json!({
                "p": p,
                "precision": c.precision(),
                "a": a.to_string(),
                "b": b.to_string(),
                "result": c.to_string(),
                "valuation": c.valuation(),
                "unit": c.unit().to_string(),
                "norm": c.norm().to_string(),
            });
            done(result, format!("padic {op}: {c}"))
        }
        _ => fail(format!("unknown command {name}")),
    }
}

fn report(item: &Item, opts: &Options, outcome: CResult<Outcome>) -> Report {
    let mut obj = Map::new();
    obj.insert("command".into(), json!(item.to_string()));
    obj.insert("parameters".into(), opts.parameters());
    let (summary, status) = match outcome {
        Ok(o) => {
            obj.insert("result".into(), o.result);
            let status = if o.inconclusive { Status::Inconclusive } else { Status::Ok };
            (o.summary, status)
        }
        Err(e) => {
            obj.insert("result".into(), Json::Null);
            obj.insert("error".into(), json!(format!("{e} (in `{item}` at {})", item.pos())));
            (format!("error at {}: {e}", item.pos()), Status::Error)
        }
    };
    obj.insert("status".into(), json!(match status {
        Status::Ok => "ok",
        Status::Inconclusive => "inconclusive",
        Status::Error => "error",
    }));
    obj.insert("summary".into(), json!(summary));
    obj.insert("version".into(), json!(VERSION));
    Report { json: Json::Object(obj), summary, status }
}

enum Task {
    Ready(Report),
    Run(Item, Env),
}

/// Runs a resolved script. Declarations are evaluated in order; failed
/// declarations produce an error report. Commands run against a snapshot of
/// the declarations before them, so they may run concurrently; reports keep
/// script order.
pub fn run_script(script: &Script, opts: &Options) -> Vec<Report> {
    let mut env = Env::new();
    let mut tasks = Vec::new();
    for item in &script.items {
        match item {
            Item::Decl { name, value, .. } => {
                let built = Ctx { env: &env, opts }.eval(value);
                match built {
                    Ok(b) => {
                        env.insert(name.clone(), b);
                    }
                    Err(e) => {
                        env.insert(name.clone(), Binding::Failed(e.0.clone()));
                        tasks.push(Task::Ready(report(item, opts, Err(e))));
                    }
                }
            }
            Item::Command { .. } => tasks.push(Task::Run(item.clone(), env.clone())),
        }
    }
    let run = |task: Task| match task {
        Task::Ready(r) => r,
        Task::Run(item, env) => {
            let Item::Command { name, args, .. } = &item else { unreachable!() };
            let outcome = run_command(&Ctx { env: &env, opts }, name, args);
            report(&item, opts, outcome)
        }
    };
    #[cfg(feature = "parallel")]
    if let Some(k) = opts.jobs.filter(|&k| k > 1) {
        use rayon::prelude::*;
        if let Ok(pool) = rayon::ThreadPoolBuilder::new().num_threads(k).build() {
            return pool.install(|| tasks.into_par_iter().map(run).collect());
        }
    }
    tasks.into_iter().map(run).collect()
}

/// The full JSON document for a run.
pub fn render(reports: &[Report]) -> String {
    let doc = json!({
        "tool": "adic-kit",
        "version": VERSION,
        "reports": reports.iter().map(|r| r.json.clone()).collect::<Vec<_>>(),
    });
    let mut out = serde_json::to_string_pretty(&doc).expect("json");
    out.push('\n');
    out
}
