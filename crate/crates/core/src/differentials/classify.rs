//! Kähler differentials, the naive cotangent complex and the
//! étale / lisse / non-ramifié classifier.

use serde::Serialize;

use super::cotangent::{CotangentSummary, RelativeData};
use crate::error::Result;
use crate::poly::{Field, ModuleGroebner, MonomialOrder, Poly, PrimeField, Rationals};
use crate::tate::{Coefficients, Morphism, Presentation};

pub(crate) enum Rel {
    Q(RelativeData<Rationals>),
    P(RelativeData<PrimeField>),
}

/// Polynomial data of a presentation over the field the classifier uses:
/// `Q` for `Q_p`, `F_p` for `F_p`, and the special fibre `F_p` for `Z_(p)`.
pub(crate) fn relative_data(pres: &Presentation) -> Result<Rel> {
    let (n, k) = (pres.nvars(), pres.base_vars());
    match pres.coefficients() {
        Coefficients::Qp { .. } => Ok(Rel::Q(RelativeData {
            field: Rationals,
            nvars: n,
            base_vars: k,
            base_relations: pres.base_relations().to_vec(),
            relations: pres.relations().to_vec(),
        })),
        Coefficients::Fp(p) | Coefficients::Zp(p) => {
            let field = PrimeField::new(p as u64);
            let (h, g) = pres.relations_over(&field)?;
            Ok(Rel::P(RelativeData {
                field,
                nvars: n,
                base_vars: k,
                base_relations: h.into_iter().filter(|r| !r.is_zero()).collect(),
                relations: g.into_iter().filter(|r| !r.is_zero()).collect(),
            }))
        }
    }
}

macro_rules! dispatch {
    ($pres:expr, |$d:ident| $body:expr) => {
        match $crate::differentials::classify::relative_data($pres)? {
            $crate::differentials::classify::Rel::Q($d) => $body,
            $crate::differentials::classify::Rel::P($d) => $body,
        }
    };
}
pub(crate) use dispatch;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Etale,
    Lisse,
    NonRamifie,
    None,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Etale => "etale",
            Verdict::Lisse => "lisse",
            Verdict::NonRamifie => "non_ramifie",
            Verdict::None => "none",
        }
    }

    /// The strongest verdict among those that hold.
    pub fn strongest(etale: bool, lisse: bool, non_ramifie: bool) -> Self {
        if etale {
            Verdict::Etale
        } else if lisse {
            Verdict::Lisse
        } else if non_ramifie {
            Verdict::NonRamifie
        } else {
            Verdict::None
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TruthTable {
    pub etale: bool,
    pub lisse: bool,
    pub non_ramifie: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Truncation {
    pub degree_cap: u32,
    pub precision: Option<u32>,
}

impl Truncation {
    pub fn of(pres: &Presentation) -> Self {
        let precision = match pres.coefficients() {
            Coefficients::Qp { prec, .. } => Some(prec),
            _ => None,
        };
        Truncation { degree_cap: pres.degree_cap(), precision }
    }
}

/// Verdict with evidence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub verdict: Verdict,
    pub h_minus1: usize,
    pub h0: usize,
    pub truncation: Truncation,
    pub flags: Vec<String>,
    pub truth: TruthTable,
}

fn flags(pres: &Presentation) -> Vec<String> {
    let mut flags = Vec::new();
    if let Coefficients::Zp(p) = pres.coefficients() {
        flags.push(format!("special_fibre_mod_{p}"));
    }
    flags.extend(pres.declared().iter().map(|d| format!("declared:{d}")));
    flags
}

fn verdict_of(s: &CotangentSummary) -> TruthTable {
    let non_ramifie = s.h0 == 0;
    let etale = s.h_minus1 == 0 && non_ramifie;
    let lisse = s.h_minus1 == 0 && s.locally_free;
    TruthTable { etale, lisse, non_ramifie }
}

/// Classifies `B` over its base algebra by the cotangent complex.
pub fn classify(pres: &Presentation) -> Result<Classification> {
    let summary = dispatch!(pres, |d| d.summary());
    let truth = verdict_of(&summary);
    Ok(Classification {
        verdict: Verdict::strongest(truth.etale, truth.lisse, truth.non_ramifie),
        h_minus1: summary.h_minus1,
        h0: summary.h0,
        truncation: Truncation::of(pres),
        flags: flags(pres),
        truth,
    })
}

/// Classifies a morphism through its relative presentation.
pub fn classify_morphism(f: &Morphism) -> Result<Classification> {
    classify(&f.relative().0)
}

/// Classifies locally on the binary covering by `f, g`: the conjunction of
/// the verdicts on `B<f/g>` and `B<g/f>`, both over the base of `B`.
pub fn classify_on_covering(pres: &Presentation, f: &crate::poly::QPoly, g: &crate::poly::QPoly) -> Result<Classification> {
    let p1 = crate::localization::localize_relative(pres, f, g)?;
    let p2 = crate::localization::localize_relative(pres, g, f)?;
    let c1 = classify(&p1)?;
    let c2 = classify(&p2)?;
    let truth = TruthTable {
        etale: c1.truth.etale && c2.truth.etale,
        lisse: c1.truth.lisse && c2.truth.lisse,
        non_ramifie: c1.truth.non_ramifie && c2.truth.non_ramifie,
    };
    let mut flags = flags(pres);
    flags.push("covering".into());
    Ok(Classification {
        verdict: Verdict::strongest(truth.etale, truth.lisse, truth.non_ramifie),
        h_minus1: c1.h_minus1.max(c2.h_minus1),
        h0: c1.h0.max(c2.h0),
        truncation: Truncation::of(pres),
        flags,
        truth,
    })
}

/// `Omega_{B/A}` as the cokernel of the Jacobian over `B`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KahlerModule {
    pub generators: Vec<String>,
    pub relation_rows: Vec<Vec<String>>,
    pub is_zero: bool,
    pub fitting_rank: usize,
    pub locally_free: bool,
}

fn show<F: Field>(p: &Poly<F>, vars: &[String]) -> String {
    p.to_rational().display_with(vars)
}

pub fn kahler_differentials(pres: &Presentation) -> Result<KahlerModule> {
    let vars = pres.vars();
    let generators = vars[pres.base_vars()..].iter().map(|v| format!("d{v}")).collect();
    Ok(dispatch!(pres, |d| {
        let ideal = d.ideal();
        let jac = d.jacobian(&ideal);
        let (rank, locally_free) = d.fitting_rank(&jac, &ideal);
        KahlerModule {
            generators,
            relation_rows: jac.iter().map(|row| row.iter().map(|e| show(e, vars)).collect()).collect(),
            is_zero: rank == 0,
            fitting_rank: rank,
            locally_free,
        }
    }))
}

/// The two-term complex `[I/I^2 -> Omega ⊗ B]` with its cohomology.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CotangentComplex {
    pub conormal_generators: Vec<String>,
    pub differential: Vec<Vec<String>>,
    pub conormal_relation_count: usize,
    pub kernel_generators: Vec<Vec<String>>,
    pub surviving_kernel: Vec<Vec<String>>,
    pub h_minus1: usize,
    pub h0: usize,
    pub locally_free: bool,
    pub truncation: Truncation,
}

pub fn naive_cotangent_complex(pres: &Presentation) -> Result<CotangentComplex> {
    let vars = pres.vars();
    Ok(dispatch!(pres, |d| {
        let ideal = d.ideal();
        let jac = d.jacobian(&ideal);
        let (h0, locally_free) = d.fitting_rank(&jac, &ideal);
        let r = d.relations.len();
        let conormal = d.conormal_relations();
        let (kernel, surviving) = if r == 0 || ideal.is_unit_ideal() {
            (Vec::new(), Vec::new())
        } else {
            let kernel = d.kernel_generators(&jac);
            let gb = ModuleGroebner::new(d.field, d.nvars, r, &conormal, MonomialOrder::grevlex());
            let surviving: Vec<_> = kernel.iter().filter(|k| !gb.contains(k)).map(|k| gb.reduce(k)).collect();
            (kernel, surviving)
        };
        let fmt_vec = |v: &Vec<Poly<_>>| v.iter().map(|e| show(e, vars)).collect::<Vec<_>>();
        CotangentComplex {
            conormal_generators: d.relations.iter().map(|g| format!("[{}]", show(g, vars))).collect(),
            differential: jac.iter().map(fmt_vec).collect(),
            conormal_relation_count: conormal.len(),
            kernel_generators: kernel.iter().map(fmt_vec).collect(),
            h_minus1: surviving.len(),
            surviving_kernel: surviving.iter().map(fmt_vec).collect(),
            h0,
            locally_free,
            truncation: Truncation::of(pres),
        }
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse::names;

    fn over(coeffs: Coefficients, vars: &[&str], rels: &[&str]) -> Presentation {
        let base = Presentation::free(coeffs, vec![]).unwrap();
        let v = names(vars);
        let rels = rels.iter().map(|r| crate::poly::parse::parse_poly(r, &v).unwrap()).collect();
        Presentation::quotient(&base, v, rels).unwrap()
    }

    fn q2() -> Coefficients {
        Coefficients::Qp { p: 2, prec: 8 }
    }

    #[test]
    fn verdicts() {
        assert_eq!(classify(&over(q2(), &["T"], &["T^2 - T"])).unwrap().verdict, Verdict::Etale);
        assert_eq!(classify(&over(q2(), &["T"], &["T^2"])).unwrap().verdict, Verdict::None);
        let free = classify(&over(q2(), &["T"], &[])).unwrap();
        assert_eq!(free.verdict, Verdict::Lisse);
        assert!(!free.truth.etale && !free.truth.non_ramifie);
        assert_eq!(free.h0, 1);
        assert_eq!(classify(&over(q2(), &["T"], &["T^2 + T + 1"])).unwrap().verdict, Verdict::Etale);
        let q5 = Coefficients::Qp { p: 5, prec: 8 };
        assert_eq!(classify(&over(q5, &["T"], &["T^3 - T"])).unwrap().verdict, Verdict::Etale);
    }

    #[test]
    fn rational_localization_is_etale() {
        let a = Presentation::free(q2(), names(&["T"])).unwrap();
        let v = names(&["T", "u"]);
        let b = Presentation::quotient(&a, names(&["u"]), vec![crate::poly::parse::parse_poly("2*u - T", &v).unwrap()]).unwrap();
        let c = classify(&b).unwrap();
        assert_eq!((c.verdict, c.h_minus1, c.h0), (Verdict::Etale, 0, 0));
    }

    #[test]
    fn square_zero_complex() {
        let b = over(q2(), &["T"], &["T^2"]);
        let cc = naive_cotangent_complex(&b).unwrap();
        assert!(cc.h_minus1 > 0 && cc.h0 > 0);
        assert_eq!(cc.surviving_kernel, vec![vec!["T".to_string()]]);
        let k = kahler_differentials(&b).unwrap();
        assert!(!k.is_zero);
        assert_eq!(k.relation_rows, vec![vec!["2*T".to_string()]]);
        assert!(kahler_differentials(&over(q2(), &["T"], &["T^2 - T"])).unwrap().is_zero);
    }

    #[test]
    fn special_fibre() {
        // Over Z_(2), T^2 - 2 reduces to T^2.
        let b = over(Coefficients::Zp(2), &["T"], &["T^2 - 2"]);
        assert_eq!(classify(&b).unwrap().verdict, Verdict::None);
        let c = over(Coefficients::Zp(2), &["T"], &["T^2 - T"]);
        assert_eq!(classify(&c).unwrap().verdict, Verdict::Etale);
    }
}
