//! de Rham and crystalline comparison maps and the lifting classifier.

use std::collections::HashMap;
use std::sync::OnceLock;

use serde::Serialize;

use super::pd::{enumerate_pd_structures, PdStructure};
use super::points::{point_set, PointSet};
use crate::base::{FiniteRing, RingSpec};
use crate::differentials::{TruthTable, Verdict};
use crate::error::{Error, Result};
use crate::par::{map_slice, Exec};
use crate::tate::{Morphism, Presentation};

/// A PD-nilpotent ideal with its quotient.
#[derive(Debug)]
pub struct PdIndex {
    pub pd: PdStructure,
    pub quotient: FiniteRing,
    /// Projection `R -> R/I` on element indices.
    pub projection: Vec<usize>,
}

/// A finite test ring with its reduction and crystalline index, both
/// computed once and then shared.
#[derive(Debug)]
pub struct TestRing {
    pub ring: FiniteRing,
    reduction: OnceLock<(FiniteRing, Vec<usize>)>,
    nilpotent_quotients: OnceLock<Vec<(FiniteRing, Vec<usize>)>>,
    pd_index: OnceLock<std::result::Result<Vec<PdIndex>, Error>>,
}

impl TestRing {
    pub fn new(ring: FiniteRing) -> Self {
        TestRing { ring, reduction: OnceLock::new(), nilpotent_quotients: OnceLock::new(), pd_index: OnceLock::new() }
    }

    pub fn from_spec(spec: &RingSpec) -> Result<Self> {
        Ok(Self::new(spec.build()?))
    }

    pub fn name(&self) -> &str {
        self.ring.name()
    }

    pub fn reduction(&self) -> &(FiniteRing, Vec<usize>) {
        self.reduction.get_or_init(|| self.ring.reduction())
    }

    /// `R/I` with its projection for every nilpotent ideal `I`, smallest first.
    pub fn nilpotent_quotients(&self) -> &[(FiniteRing, Vec<usize>)] {
        self.nilpotent_quotients.get_or_init(|| self.ring.nilpotent_ideals().iter().map(|(i, _)| self.ring.quotient(i)).collect())
    }

    /// Every nilpotent ideal with every PD structure on it.
    pub fn pd_index(&self) -> Result<&[PdIndex]> {
        self.pd_index
            .get_or_init(|| {
                let mut out = Vec::new();
                for ((ideal, _), (quotient, projection)) in self.ring.nilpotent_ideals().into_iter().zip(self.nilpotent_quotients()) {
                    for pd in enumerate_pd_structures(&self.ring, &ideal)? {
                        out.push(PdIndex { pd, quotient: quotient.clone(), projection: projection.clone() });
                    }
                }
                Ok(out)
            })
            .as_deref()
            .map_err(Clone::clone)
    }
}

/// How the comparison map behaves on one ring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MapKind {
    Bijective,
    Surjective,
    Injective,
    Neither,
    Inconclusive,
}

impl MapKind {
    fn of(injective: bool, surjective: bool) -> Self {
        match (injective, surjective) {
            (true, true) => MapKind::Bijective,
            (false, true) => MapKind::Surjective,
            (true, false) => MapKind::Injective,
            (false, false) => MapKind::Neither,
        }
    }

    pub fn injective(self) -> bool {
        matches!(self, MapKind::Bijective | MapKind::Injective)
    }

    pub fn surjective(self) -> bool {
        matches!(self, MapKind::Bijective | MapKind::Surjective)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LiftingMode {
    #[serde(rename = "dR")]
    DeRham,
    Crys,
}

impl LiftingMode {
    pub fn as_str(&self) -> &'static str {
        match self {
            LiftingMode::DeRham => "dR",
            LiftingMode::Crys => "crys",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RingEvidence {
    pub ring: String,
    pub points: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reduced_points: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub crys_classes: Option<usize>,
    pub map: MapKind,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LiftingClassification {
    pub verdict: Verdict,
    pub mode: LiftingMode,
    pub evidence: Vec<RingEvidence>,
    pub skipped: Vec<String>,
    pub flags: Vec<String>,
    pub truth: TruthTable,
}

/// Image of a point of `B` under an element map of `R`.
fn push(x: &[usize], map: &[usize]) -> Vec<usize> {
    x.iter().map(|&v| map[v]).collect()
}

/// The maps `X(R) -> X(R/I) ×_{Y(R/I)} Y(R)` for every nilpotent ideal
/// `I`, up to `I = Nil(R)` where the target is the de Rham point set. The map
/// counts as injective (surjective) when every stage is. Returns the number of
/// points of `B` in `R`, the size of the target at `R_red`, and the kind.
pub fn de_rham_comparison(pres: &Presentation, ring: &TestRing, exec: Exec) -> Result<(usize, usize, MapKind)> {
    let k = pres.base_vars();
    let x = point_set(pres, &ring.ring, exec)?;
    let y = point_set(&pres.base_ring(), &ring.ring, exec)?;
    let stages: Vec<Result<(usize, bool, bool)>> = map_slice(exec, ring.nilpotent_quotients(), |(q, proj)| {
        let xq = point_set(pres, q, exec)?;
        let target = fibre_product(&xq, &y, proj, k);
        let image: Vec<(Vec<usize>, Vec<usize>)> = x.points.iter().map(|p| (push(p, proj), p[..k].to_vec())).collect();
        let (inj, surj) = compare(&image, &target);
        Ok((target.len(), inj, surj))
    });
    let stages: Vec<(usize, bool, bool)> = stages.into_iter().collect::<Result<_>>()?;
    let reduced = stages.last().expect("the zero ideal is nilpotent").0;
    let inj = stages.iter().all(|s| s.1);
    let surj = stages.iter().all(|s| s.2);
    Ok((x.len(), reduced, MapKind::of(inj, surj)))
}

fn fibre_product(reduced: &PointSet, base: &PointSet, proj: &[usize], k: usize) -> Vec<(Vec<usize>, Vec<usize>)> {
    let mut out = Vec::new();
    for xr in &reduced.points {
        for a in &base.points {
            if push(a, proj) == xr[..k] {
                out.push((xr.clone(), a.clone()));
            }
        }
    }
    out.sort();
    out
}

fn compare<T: Ord + Clone>(image: &[T], target: &[T]) -> (bool, bool) {
    let mut sorted = image.to_vec();
    sorted.sort();
    let before = sorted.len();
    sorted.dedup();
    let injective = sorted.len() == before;
    let surjective = target.iter().all(|t| sorted.binary_search(t).is_ok());
    (injective, surjective)
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// The crystalline point classes: the colimit of `X(R/I) ×_{Y(R/I)} Y(R)`
/// over PD-nilpotent ideals ordered by PD-compatible inclusion. Returns the
/// number of points of `B` in `R`, the number of classes and the kind of the
/// comparison map.
pub fn crystalline_comparison(pres: &Presentation, ring: &TestRing, exec: Exec) -> Result<(usize, usize, MapKind)> {
    let k = pres.base_vars();
    let index = ring.pd_index()?;
    let base = point_set(&pres.base_ring(), &ring.ring, exec)?;
    let pieces: Vec<Result<PointSet>> = map_slice(exec, index, |ix| point_set(pres, &ix.quotient, exec));
    let pieces: Vec<PointSet> = pieces.into_iter().collect::<Result<_>>()?;
    // nodes: (object, reduced point, base point) compatible pairs
    let mut nodes: HashMap<(usize, Vec<usize>, Vec<usize>), usize> = HashMap::new();
    for (o, (ix, piece)) in index.iter().zip(&pieces).enumerate() {
        for (xr, a) in fibre_product(piece, &base, &ix.projection, k) {
            let id = nodes.len();
            nodes.insert((o, xr, a), id);
        }
    }
    let mut uf = UnionFind((0..nodes.len()).collect());
    for (o, ix) in index.iter().enumerate() {
        for (o2, jx) in index.iter().enumerate() {
            if o == o2 || !ix.pd.restricts(&jx.pd) {
                continue;
            }
            // R/I -> R/J through representatives in R
            let mut rep = vec![usize::MAX; ix.quotient.cardinality()];
            for (r, &c) in ix.projection.iter().enumerate() {
                if rep[c] == usize::MAX {
                    rep[c] = r;
                }
            }
            let down: Vec<usize> = rep.iter().map(|&r| jx.projection[r]).collect();
            for xr in &pieces[o].points {
                for a in &base.points {
                    if let Some(&from) = nodes.get(&(o, xr.clone(), a.clone())) {
                        let to = nodes[&(o2, push(xr, &down), a.clone())];
                        uf.union(from, to);
                    }
                }
            }
        }
    }
    let zero = index.iter().position(|ix| ix.pd.ideal.is_zero()).expect("the zero ideal is always indexed");
    let x = &pieces[zero];
    let mut roots: Vec<usize> = (0..nodes.len()).map(|i| uf.find(i)).collect();
    roots.sort_unstable();
    roots.dedup();
    let image: Vec<usize> = x.points.iter().map(|p| uf.find(nodes[&(zero, p.clone(), p[..k].to_vec())])).collect();
    let (inj, surj) = compare(&image, &roots);
    Ok((x.len(), roots.len(), MapKind::of(inj, surj)))
}

/// Lifting classification of `pres` over its base on the supplied test
/// rings. Rings the coefficients do not map to are skipped and listed.
pub fn classify_lifting(pres: &Presentation, rings: &[TestRing], mode: LiftingMode, exec: Exec) -> Result<LiftingClassification> {
    let usable: Vec<&TestRing> = rings.iter().filter(|r| pres.coefficients().admits_map_to(&r.ring)).collect();
    let skipped: Vec<String> =
        rings.iter().filter(|r| !pres.coefficients().admits_map_to(&r.ring)).map(|r| r.name().to_string()).collect();
    if usable.is_empty() {
        return Err(Error::Incompatible(format!("no test ring admits a map from {}", pres.coefficients())));
    }
    let evidence: Vec<RingEvidence> = map_slice(exec, &usable, |r| {
        let res = match mode {
            LiftingMode::DeRham => de_rham_comparison(pres, r, exec),
            LiftingMode::Crys => crystalline_comparison(pres, r, exec),
        };
        match res {
            Ok((points, other, map)) => RingEvidence {
                ring: r.name().to_string(),
                points,
                reduced_points: (mode == LiftingMode::DeRham).then_some(other),
                crys_classes: (mode == LiftingMode::Crys).then_some(other),
                map,
                error: None,
            },
            Err(e) => RingEvidence {
                ring: r.name().to_string(),
                points: 0,
                reduced_points: None,
                crys_classes: None,
                map: MapKind::Inconclusive,
                error: Some(e.to_string()),
            },
        }
    });
    let conclusive: Vec<&RingEvidence> = evidence.iter().filter(|e| e.map != MapKind::Inconclusive).collect();
    let mut flags = vec![format!("quantified_over_{}_test_rings", conclusive.len())];
    if conclusive.len() < evidence.len() {
        flags.push("inconclusive_rings".into());
    }
    let truth = TruthTable {
        etale: conclusive.iter().all(|e| e.map == MapKind::Bijective),
        lisse: conclusive.iter().all(|e| e.map.surjective()),
        non_ramifie: conclusive.iter().all(|e| e.map.injective()),
    };
    Ok(LiftingClassification {
        verdict: Verdict::strongest(truth.etale, truth.lisse, truth.non_ramifie),
        mode,
        evidence,
        skipped,
        flags,
        truth,
    })
}

pub fn classify_lifting_morphism(f: &Morphism, rings: &[TestRing], mode: LiftingMode, exec: Exec) -> Result<LiftingClassification> {
    classify_lifting(&f.relative().0, rings, mode, exec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base::default_corpus;
    use crate::poly::parse::{names, parse_poly};
    use crate::tate::Coefficients;

    fn pres(c: Coefficients, rel: &str) -> Presentation {
        let a = Presentation::free(c, vec![]).unwrap();
        let v = names(&["T"]);
        Presentation::quotient(&a, v.clone(), vec![parse_poly(rel, &v).unwrap()]).unwrap()
    }

    fn rings(specs: &[&str]) -> Vec<TestRing> {
        specs.iter().map(|s| TestRing::from_spec(&RingSpec::parse(s).unwrap()).unwrap()).collect()
    }

    #[test]
    fn idempotent_is_etale_in_both_modes() {
        let b = pres(Coefficients::Zp(2), "T^2 - T");
        let corpus = rings(&["GF(2)", "Zmod(4)", "Quot(GF(2),[e],[e^2])", "Quot(GF(2),[x],[x^4])"]);
        for mode in [LiftingMode::DeRham, LiftingMode::Crys] {
            let c = classify_lifting(&b, &corpus, mode, Exec::Sequential).unwrap();
            assert_eq!(c.verdict, Verdict::Etale, "{mode:?}: {c:?}");
        }
    }

    #[test]
    fn square_is_none() {
        let b = pres(Coefficients::Fp(2), "T^2");
        let corpus = rings(&["GF(2)", "Zmod(4)", "Quot(GF(2),[e],[e^2])", "Quot(GF(2),[x],[x^4])"]);
        let c = classify_lifting(&b, &corpus, LiftingMode::DeRham, Exec::Parallel).unwrap();
        assert_eq!(c.verdict, Verdict::None);
        assert_eq!(c.skipped, vec!["Zmod(4)".to_string()]);
        let dual = c.evidence.iter().find(|e| e.ring.contains("e^2")).unwrap();
        assert_eq!((dual.points, dual.reduced_points, dual.map), (2, Some(1), MapKind::Surjective));
    }

    #[test]
    fn identity_and_free_line() {
        let corpus: Vec<TestRing> = default_corpus(2).iter().map(|s| TestRing::from_spec(s).unwrap()).collect();
        let a = Presentation::free(Coefficients::Zp(2), names(&["S"])).unwrap();
        let id = Presentation::quotient(&a, vec![], vec![]).unwrap();
        let line = Presentation::quotient(&a, names(&["T"]), vec![]).unwrap();
        for mode in [LiftingMode::DeRham, LiftingMode::Crys] {
            assert_eq!(classify_lifting(&id, &corpus, mode, Exec::Parallel).unwrap().verdict, Verdict::Etale);
        }
        assert_eq!(classify_lifting(&line, &corpus, LiftingMode::DeRham, Exec::Parallel).unwrap().verdict, Verdict::Lisse);
    }

    #[test]
    fn reduced_rings_have_trivial_crystalline_index() {
        let r = rings(&["GF(2,2)"]).pop().unwrap();
        assert_eq!(r.pd_index().unwrap().len(), 1);
        let b = pres(Coefficients::Fp(2), "T^3 - T");
        let (n, c, m) = crystalline_comparison(&b, &r, Exec::Sequential).unwrap();
        assert_eq!((n, c, m), (point_set(&b, &r.ring, Exec::Sequential).unwrap().len(), n, MapKind::Bijective));
    }
}
