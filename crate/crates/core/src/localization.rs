//! Rational localizations `B<f/g> = B<u>/(gu - f)`, covering checks, the
//! truncated exactness check of the gluing sequence
//! `0 -> B -> B<f/g> ⊕ B<g/f> -> B<f/g, g/f> -> 0`, and joint generating
//! sets for the glued algebra.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::field::rational_valuation;
use crate::poly::linalg::{kernel, Echelon};
use crate::poly::{Field, Groebner, ModuleGroebner, Monomial, MonomialOrder, Poly, PrimeField, QPoly, Rationals};
use crate::tate::{Coefficients, Morphism, Presentation};

fn fresh(base: &str, taken: &[String]) -> String {
    if !taken.iter().any(|t| t == base) {
        return base.to_string();
    }
    (1..).map(|i| format!("{base}{i}")).find(|c| !taken.contains(c)).expect("unbounded suffixes")
}

/// `pres<f/g>` keeping the base of `pres`: one more adjoined variable and
/// the relation `g u - f`.
pub fn localize_relative(pres: &Presentation, f: &QPoly, g: &QPoly) -> Result<Presentation> {
    let n = pres.nvars();
    let mut vars = pres.vars().to_vec();
    vars.push(fresh("u", &vars));
    let u = QPoly::q_var(n + 1, n);
    let mut rels: Vec<QPoly> = pres.relations().iter().map(|r| r.extend(n + 1)).collect();
    rels.push(&(&g.extend(n + 1) * &u) - &f.extend(n + 1));
    Ok(Presentation::from_parts(
        pres.coefficients(),
        vars,
        pres.base_vars(),
        pres.base_relations().iter().map(|r| r.extend(n + 1)).collect(),
        rels,
    )?
    .with_degree_cap(pres.degree_cap()))
}

/// `B<f/g>` over `B`, with the structure map.
pub fn rational_localization(b: &Presentation, f: &QPoly, g: &QPoly) -> Result<(Presentation, Morphism)> {
    let n = b.nvars();
    let name = fresh("u", b.vars());
    let u = QPoly::q_var(n + 1, n);
    let rel = &(&g.extend(n + 1) * &u) - &f.extend(n + 1);
    let loc = Presentation::quotient(b, vec![name], vec![rel])?;
    let map = Morphism::structural(&loc);
    Ok((loc, map))
}

/// Evidence that `1 = a f + b g + i` with `i` in the ideal of relations.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoveringCertificate {
    pub covers: bool,
    pub a: Option<String>,
    pub b: Option<String>,
    pub i: Option<String>,
    pub flags: Vec<String>,
}

fn unit_combination<F: Field>(field: &F, nvars: usize, gens: &[Poly<F>]) -> Option<Vec<Poly<F>>> {
    let r = gens.len();
    let zero = Poly::zero(field.clone(), nvars);
    let aug: Vec<Vec<Poly<F>>> = gens
        .iter()
        .enumerate()
        .map(|(k, g)| {
            let mut v = vec![g.clone()];
            v.extend((0..r).map(|j| if j == k { Poly::one(field.clone(), nvars) } else { zero.clone() }));
            v
        })
        .collect();
    let gb = ModuleGroebner::new(field.clone(), nvars, r + 1, &aug, MonomialOrder::grevlex());
    gb.basis().into_iter().find_map(|v| {
        if v[0].is_constant() && !v[0].is_zero() {
            let c = field.inv(&v[0].constant_term())?;
            Some(v[1..].iter().map(|p| p.scale(&c)).collect())
        } else {
            None
        }
    })
}

/// Whether `(f, g)` generate the unit ideal of `B`, with a certificate.
pub fn covering_check(b: &Presentation, f: &QPoly, g: &QPoly) -> Result<CoveringCertificate> {
    let n = b.nvars();
    let rels = b.all_relations();
    let mut flags = Vec::new();
    let combo: Option<Vec<QPoly>> = match b.coefficients() {
        Coefficients::Fp(p) => {
            let field = PrimeField::new(p as u64);
            let gens: Vec<Poly<PrimeField>> =
                [f, g].into_iter().cloned().chain(rels.iter().cloned()).map(|x| x.to_field(&field)).collect::<Result<_>>()?;
            unit_combination(&field, n, &gens).map(|v| v.iter().map(|p| p.to_rational()).collect())
        }
        c => {
            if matches!(c, Coefficients::Zp(_)) {
                flags.push("generic_fibre".into());
            }
            let gens: Vec<QPoly> = [f, g].into_iter().cloned().chain(rels.iter().cloned()).collect();
            unit_combination(&Rationals, n, &gens)
        }
    };
    Ok(match combo {
        Some(v) => {
            let i = v[2..].iter().zip(&rels).fold(QPoly::from_int(n, 0), |acc, (c, r)| &acc + &(c * r));
            CoveringCertificate {
                covers: true,
                a: Some(b.display(&v[0])),
                b: Some(b.display(&v[1])),
                i: Some(b.display(&i)),
                flags,
            }
        }
        None => CoveringCertificate { covers: false, a: None, b: None, i: None, flags },
    })
}

/// `B` with its two localizations and their overlap, all presented over the
/// base of `B`. The fields are public so that deliberately broken coverings
/// can be assembled as negative controls.
#[derive(Debug, Clone, PartialEq)]
pub struct BinaryCovering {
    pub ambient: Presentation,
    pub f: QPoly,
    pub g: QPoly,
    /// `B<f/g>`: variables of `B` then `u`.
    pub first: Presentation,
    /// `B<g/f>`: variables of `B` then `v`.
    pub second: Presentation,
    /// `B<f/g, g/f>`: variables of `B` then `u, v`.
    pub joint: Presentation,
}

/// Ways to break a covering for negative controls.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mutation {
    DropFirstRelation,
    DropSecondRelation,
    ExtraJointRelation,
    WrongSecondRelation,
}

impl Mutation {
    pub const ALL: [Mutation; 4] =
        [Mutation::DropFirstRelation, Mutation::DropSecondRelation, Mutation::ExtraJointRelation, Mutation::WrongSecondRelation];

    pub fn name(&self) -> &'static str {
        match self {
            Mutation::DropFirstRelation => "drop_first_relation",
            Mutation::DropSecondRelation => "drop_second_relation",
            Mutation::ExtraJointRelation => "extra_joint_relation",
            Mutation::WrongSecondRelation => "wrong_second_relation",
        }
    }
}

fn with_relations(p: &Presentation, rels: Vec<QPoly>) -> Presentation {
    Presentation::from_parts(p.coefficients(), p.vars().to_vec(), p.base_vars(), p.base_relations().to_vec(), rels)
        .expect("same layout")
        .with_degree_cap(p.degree_cap())
}

impl BinaryCovering {
    pub fn new(b: &Presentation, f: &QPoly, g: &QPoly) -> Result<Self> {
        let first = localize_relative(b, f, g)?;
        let mut second = localize_relative(b, g, f)?;
        let n = b.nvars();
        // rename the second variable to v
        let mut vars2 = second.vars().to_vec();
        vars2[n] = fresh("v", b.vars());
        second = Presentation::from_parts(
            second.coefficients(),
            vars2.clone(),
            second.base_vars(),
            second.base_relations().to_vec(),
            second.relations().to_vec(),
        )?
        .with_degree_cap(b.degree_cap());
        let mut vars = first.vars().to_vec();
        vars.push(vars2[n].clone());
        let m = n + 2;
        let (u, v) = (QPoly::q_var(m, n), QPoly::q_var(m, n + 1));
        let (fe, ge) = (f.extend(m), g.extend(m));
        let mut rels: Vec<QPoly> = b.relations().iter().map(|r| r.extend(m)).collect();
        rels.push(&(&ge * &u) - &fe);
        rels.push(&(&fe * &v) - &ge);
        let joint = Presentation::from_parts(
            b.coefficients(),
            vars,
            b.base_vars(),
            b.base_relations().iter().map(|r| r.extend(m)).collect(),
            rels,
        )?
        .with_degree_cap(b.degree_cap());
        Ok(BinaryCovering { ambient: b.clone(), f: f.clone(), g: g.clone(), first, second, joint })
    }

    pub fn mutate(&self, mutation: Mutation) -> Self {
        let mut out = self.clone();
        let n = self.ambient.nvars();
        match mutation {
            Mutation::DropFirstRelation => {
                let mut rels = self.first.relations().to_vec();
                rels.pop();
                out.first = with_relations(&self.first, rels);
            }
            Mutation::DropSecondRelation => {
                let mut rels = self.second.relations().to_vec();
                rels.pop();
                out.second = with_relations(&self.second, rels);
            }
            Mutation::ExtraJointRelation => {
                let mut rels = self.joint.relations().to_vec();
                rels.push(&QPoly::q_var(n + 2, n) - &QPoly::from_int(n + 2, 1));
                out.joint = with_relations(&self.joint, rels);
            }
            Mutation::WrongSecondRelation => {
                let mut rels = self.second.relations().to_vec();
                rels.pop();
                let v = QPoly::q_var(n + 1, n);
                let two = QPoly::from_int(n + 1, 2);
                rels.push(&(&self.f.extend(n + 1) * &v) - &(&two * &self.g.extend(n + 1)));
                out.second = with_relations(&self.second, rels);
            }
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Clause {
    Exact,
    Failed,
    Inconclusive,
}

impl Clause {
    pub fn as_str(&self) -> &'static str {
        match self {
            Clause::Exact => "exact",
            Clause::Failed => "failed",
            Clause::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExactnessReport {
    pub left: Clause,
    pub middle: Clause,
    pub right: Clause,
    pub degree_cap: u32,
    pub precision: u32,
    /// Dimension of the truncated kernel of the difference map.
    pub middle_kernel_dim: usize,
    pub witness: Option<String>,
}

impl ExactnessReport {
    pub fn all_exact(&self) -> bool {
        [self.left, self.middle, self.right].iter().all(|c| *c == Clause::Exact)
    }

    pub fn any_failed(&self) -> bool {
        [self.left, self.middle, self.right].contains(&Clause::Failed)
    }
}

struct Ring<F: Field> {
    rels: Vec<Poly<F>>,
    gb: Groebner<F>,
}

impl<F: Field> Ring<F> {
    fn new(field: &F, pres: &Presentation, rels: Vec<Poly<F>>) -> Self {
        Ring { gb: Groebner::grevlex(field.clone(), pres.nvars(), &rels), rels }
    }

    /// First relation whose image under `map` is nonzero in `target`.
    fn ill_defined(&self, target: &Ring<F>, nvars: usize, map: &[usize]) -> Option<Poly<F>> {
        self.rels.iter().find(|r| !target.gb.reduce(&r.remap(nvars, map)).is_zero()).cloned()
    }

    fn basis(&self, degree: u32) -> (Vec<Monomial>, BTreeMap<Monomial, usize>) {
        let b = self.gb.standard_monomials(degree);
        let idx = b.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        (b, idx)
    }
}

fn coords<F: Field>(field: &F, p: &Poly<F>, index: &BTreeMap<Monomial, usize>, out: &mut [F::Elem], sign: bool) -> bool {
    for (m, c) in p.terms() {
        let Some(&i) = index.get(m) else { return false };
        out[i] = if sign { field.add(&out[i], c) } else { field.sub(&out[i], c) };
    }
    true
}

/// Ring of `pres` with variable `last` moved to the front and eliminated.
fn eliminate_last<F: Field>(field: &F, nvars: usize, rels: &[Poly<F>]) -> (Groebner<F>, Vec<usize>, Vec<usize>) {
    let to: Vec<usize> = (0..nvars).map(|i| if i + 1 == nvars { 0 } else { i + 1 }).collect();
    let back: Vec<usize> = (0..nvars).map(|i| if i == 0 { nvars - 1 } else { i - 1 }).collect();
    let moved: Vec<Poly<F>> = rels.iter().map(|r| r.remap(nvars, &to)).collect();
    let gb = Groebner::new(field.clone(), nvars, &moved, MonomialOrder::blocks(vec![1, nvars - 1]));
    (gb, to, back)
}

fn field_rels<F: Field>(field: &F, p: &Presentation) -> Result<Vec<Poly<F>>> {
    p.all_relations().iter().map(|r| r.to_field(field)).collect()
}

fn glue<F: Field>(field: &F, cov: &BinaryCovering, degree: u32) -> Result<(Clause, Clause, Clause, usize, Option<String>)> {
    let n = cov.ambient.nvars();
    let show = |p: &Poly<F>, pres: &Presentation| pres.display(&p.to_rational());
    let b = Ring::new(field, &cov.ambient, field_rels(field, &cov.ambient)?);
    let rels1 = field_rels(field, &cov.first)?;
    let b1 = Ring::new(field, &cov.first, rels1.clone());
    let b2 = Ring::new(field, &cov.second, field_rels(field, &cov.second)?);
    let b12 = Ring::new(field, &cov.joint, field_rels(field, &cov.joint)?);
    let map2: Vec<usize> = (0..n).chain([n + 1]).collect();
    let mut witness = None;

    // the maps of the sequence must be ring maps
    let id1: Vec<usize> = (0..n + 1).collect();
    let id: Vec<usize> = (0..n).collect();
    let broken = [
        (&b, &b1, n + 1, &id[..], &cov.ambient),
        (&b, &b2, n + 1, &id[..], &cov.ambient),
        (&b1, &b12, n + 2, &id1[..], &cov.first),
        (&b2, &b12, n + 2, &map2[..], &cov.second),
    ]
    .into_iter()
    .find_map(|(s, t, nv, map, pres)| s.ill_defined(t, nv, map).map(|r| (r, pres)));
    if let Some((r, pres)) = broken {
        let w = format!("relation {} does not vanish in the target", show(&r, pres));
        return Ok((Clause::Inconclusive, Clause::Failed, Clause::Inconclusive, 0, Some(w)));
    }

    // left: B -> B1 ⊕ B2 injective on degree <= D
    let (w, _) = b.basis(degree);
    let (w1, i1) = b1.basis(degree);
    let (w2, i2) = b2.basis(degree);
    let width = w1.len() + w2.len();
    let mut images = Vec::new();
    let mut left = Clause::Exact;
    for m in &w {
        let x = Poly::monomial(field.clone(), m.clone(), field.one());
        let mut v = vec![field.zero(); width];
        let ok1 = coords(field, &b1.gb.reduce(&x.extend(n + 1)), &i1, &mut v[..w1.len()], true);
        let ok2 = coords(field, &b2.gb.reduce(&x.extend(n + 1)), &i2, &mut v[w1.len()..], true);
        if !(ok1 && ok2) {
            left = Clause::Inconclusive;
        }
        images.push(v);
    }
    let ker = kernel(field, &images, width);
    if let Some(k) = ker.first() {
        left = Clause::Failed;
        let x = Poly::from_terms(field.clone(), n, w.iter().cloned().zip(k.iter().cloned()));
        witness = Some(format!("left kernel contains {}", show(&x, &cov.ambient)));
    }

    // middle: kernel of the difference map against the image of B
    let (w12, i12) = b12.basis(degree);
    let mut diffs = Vec::new();
    let mut middle = Clause::Exact;
    for (side, basis) in [(0, &w1), (1, &w2)] {
        for m in basis.iter() {
            let x = Poly::monomial(field.clone(), m.clone(), field.one());
            let lifted = if side == 0 { x.extend(n + 2) } else { x.remap(n + 2, &map2) };
            let mut v = vec![field.zero(); w12.len()];
            if !coords(field, &b12.gb.reduce(&lifted), &i12, &mut v, side == 0) {
                middle = Clause::Inconclusive;
            }
            diffs.push(v);
        }
    }
    let ker = kernel(field, &diffs, w12.len());
    let kernel_dim = ker.len();
    let (elim, to, back) = eliminate_last(field, n + 1, &rels1);
    // B -> B1 injective exactly iff the elimination ideal equals I
    let injective1 = elim
        .basis()
        .iter()
        .filter(|g| !g.uses_var(0))
        .all(|g| b.gb.reduce(&g.remap(n + 1, &back).truncate_vars(n).expect("u-free")).is_zero());
    for k in &ker {
        let a = Poly::from_terms(field.clone(), n + 1, w1.iter().cloned().zip(k[..w1.len()].iter().cloned()));
        let bb = Poly::from_terms(field.clone(), n + 1, w2.iter().cloned().zip(k[w1.len()..].iter().cloned()));
        let nf = elim.reduce(&a.remap(n + 1, &to));
        if nf.uses_var(0) {
            middle = Clause::Failed;
            witness.get_or_insert_with(|| format!("{} is in the kernel but not in the image of B", show(&a, &cov.first)));
            continue;
        }
        let x = nf.remap(n + 1, &back);
        if !(&b2.gb.reduce(&x) - &b2.gb.reduce(&bb)).is_zero() {
            if injective1 {
                middle = Clause::Failed;
                witness.get_or_insert_with(|| {
                    format!("({}, {}) is in the kernel but not in the image of B", show(&a, &cov.first), show(&bb, &cov.second))
                });
            } else if middle == Clause::Exact {
                middle = Clause::Inconclusive;
            }
        }
    }

    // right: every degree <= D element of B12 is hit from degree <= 2D
    let (w1b, _) = b1.basis(2 * degree);
    let (w2b, _) = b2.basis(2 * degree);
    let (w12b, i12b) = b12.basis(2 * degree);
    let mut ech = Echelon::new(field.clone(), w12b.len());
    let mut right = Clause::Exact;
    for (side, basis) in [(0, &w1b), (1, &w2b)] {
        for m in basis.iter() {
            let x = Poly::monomial(field.clone(), m.clone(), field.one());
            let lifted = if side == 0 { x.extend(n + 2) } else { x.remap(n + 2, &map2) };
            let mut v = vec![field.zero(); w12b.len()];
            if coords(field, &b12.gb.reduce(&lifted), &i12b, &mut v, true) {
                ech.insert(&v);
            }
        }
    }
    for m in &w12 {
        let mut v = vec![field.zero(); w12b.len()];
        v[i12b[m]] = field.one();
        if !ech.contains(&v) {
            right = Clause::Inconclusive;
            break;
        }
    }
    Ok((left, middle, right, kernel_dim, witness))
}

/// Truncated exactness of the gluing sequence at degree `degree`.
pub fn gluing_sequence_check(cov: &BinaryCovering, degree: u32, precision: u32) -> Result<ExactnessReport> {
    let (left, middle, right, middle_kernel_dim, witness) = match cov.ambient.coefficients() {
        Coefficients::Fp(p) => glue(&PrimeField::new(p as u64), cov, degree)?,
        _ => glue(&Rationals, cov, degree)?,
    };
    Ok(ExactnessReport { left, middle, right, degree_cap: degree, precision, middle_kernel_dim, witness })
}

/// A finite generating set of a presentation over its base.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SurjectionData {
    pub generators: Vec<String>,
    pub count: usize,
    pub dropped: Vec<String>,
    #[serde(skip)]
    pub polys: Vec<QPoly>,
}

fn integral(p: &QPoly, prime: u32) -> bool {
    p.terms().all(|(_, c)| rational_valuation(c, prime as u64).is_none_or(|v| v >= 0))
}

fn certify_over<F: Field>(field: &F, pres: &Presentation, gens: &[QPoly]) -> Result<bool> {
    let (k, m, t) = (pres.base_vars(), pres.new_vars(), gens.len());
    let n = k + m + t;
    // layout [adjoined, base, generators] with the adjoined block eliminated
    let map: Vec<usize> = (0..k + m).map(|i| if i < k { m + i } else { i - k }).collect();
    let mut rels: Vec<Poly<F>> = pres.all_relations().iter().map(|r| r.to_field(field).map(|r| r.remap(n, &map))).collect::<Result<_>>()?;
    for (j, g) in gens.iter().enumerate() {
        rels.push(&Poly::var(field.clone(), n, k + m + j) - &g.to_field(field)?.remap(n, &map));
    }
    let gb = Groebner::new(field.clone(), n, &rels, MonomialOrder::blocks(vec![m, k + t]));
    Ok((0..m).all(|i| {
        let nf = gb.reduce(&Poly::var(field.clone(), n, i));
        (0..m).all(|j| !nf.uses_var(j)) && integral(&nf.to_rational(), pres.prime())
    }))
}

/// Whether `gens` generate `pres` over its base as a Tate algebra: each
/// adjoined variable is an integral polynomial in the base and the generators.
pub fn certify_generation(pres: &Presentation, gens: &[QPoly]) -> Result<bool> {
    match pres.coefficients() {
        Coefficients::Fp(p) => certify_over(&PrimeField::new(p as u64), pres, gens),
        _ => certify_over(&Rationals, pres, gens),
    }
}

/// An element of `B` within `p^-1` of `s` in the localization, if the
/// localized variable only enters through small coefficients.
fn approximant(local: &Presentation, s: &QPoly) -> Option<QPoly> {
    let nl = local.nvars();
    let rels = local.all_relations();
    let (elim, to, back) = eliminate_last(&Rationals, nl, &rels);
    let nf = elim.reduce(&s.remap(nl, &to));
    let p = local.prime();
    let kept = Poly::from_terms(
        Rationals,
        nl,
        nf.terms().filter(|(m, c)| m.0[0] == 0 || rational_valuation(c, p as u64).is_none_or(|v| v < 1)).map(|(m, c)| (m.clone(), c.clone())),
    );
    if kept.uses_var(0) {
        return None;
    }
    kept.remap(nl, &back).truncate_vars(nl - 1)
}

/// Patches generating sets of the two localizations into one for `B`:
/// replaces each generator by a nearby element of `B`, re-certifies and
/// prunes redundant generators.
pub fn joint_surjection_lift(cov: &BinaryCovering, s1: &[QPoly], s2: &[QPoly]) -> Result<SurjectionData> {
    if !certify_generation(&cov.first, s1)? {
        return Err(Error::Certification("first generating set does not generate B<f/g>".into()));
    }
    if !certify_generation(&cov.second, s2)? {
        return Err(Error::Certification("second generating set does not generate B<g/f>".into()));
    }
    let mut seen = BTreeSet::new();
    let mut candidates = Vec::new();
    let mut dropped = Vec::new();
    for (local, gens) in [(&cov.first, s1), (&cov.second, s2)] {
        for s in gens {
            match approximant(local, s) {
                Some(x) if x.is_constant() => {}
                Some(x) => {
                    let key = cov.ambient.display(&x);
                    if seen.insert(key) {
                        candidates.push(x);
                    }
                }
                None => dropped.push(local.display(s)),
            }
        }
    }
    if !certify_generation(&cov.ambient, &candidates)? {
        return Err(Error::Certification("patched generators do not generate B".into()));
    }
    for i in (0..candidates.len()).rev() {
        let mut fewer = candidates.clone();
        let removed = fewer.remove(i);
        if certify_generation(&cov.ambient, &fewer)? {
            dropped.push(cov.ambient.display(&removed));
            candidates = fewer;
        }
    }
    Ok(SurjectionData {
        generators: candidates.iter().map(|c| cov.ambient.display(c)).collect(),
        count: candidates.len(),
        dropped,
        polys: candidates,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse::names;

    fn tate_t() -> Presentation {
        Presentation::free(Coefficients::Qp { p: 2, prec: 6 }, names(&["T"])).unwrap().with_degree_cap(6)
    }

    #[test]
    fn localization_shape() {
        let b = tate_t();
        let (loc, _) = rational_localization(&b, &b.parse("T").unwrap(), &b.parse("2").unwrap()).unwrap();
        assert_eq!(loc.display(&loc.relations()[0]), "-T + 2*u");
    }

    #[test]
    fn coverings() {
        let b = tate_t();
        let t = b.parse("T").unwrap();
        let c = covering_check(&b, &t, &b.parse("1").unwrap()).unwrap();
        assert!(c.covers);
        assert_eq!((c.a.as_deref(), c.b.as_deref(), c.i.as_deref()), (Some("0"), Some("1"), Some("0")));
        let c = covering_check(&b, &t, &b.parse("2").unwrap()).unwrap();
        assert_eq!(c.b.as_deref(), Some("1/2"));
        assert!(!covering_check(&b, &t, &b.parse("T^2").unwrap()).unwrap().covers);
    }

    #[test]
    fn gluing() {
        let b = tate_t();
        for (f, g) in [("T", "1"), ("T", "2")] {
            let cov = BinaryCovering::new(&b, &b.parse(f).unwrap(), &b.parse(g).unwrap()).unwrap();
            let r = gluing_sequence_check(&cov, 6, 6).unwrap();
            assert!(r.all_exact(), "{f}/{g}: {r:?}");
            for m in Mutation::ALL {
                let bad = gluing_sequence_check(&cov.mutate(m), 6, 6).unwrap();
                assert!(bad.any_failed(), "{f}/{g} {m:?}: {bad:?}");
            }
        }
    }

    #[test]
    fn surjection_lift() {
        let a = tate_t();
        let one = a.parse("1").unwrap();
        let same = Presentation::quotient(&a, vec![], vec![]).unwrap();
        let cov = BinaryCovering::new(&same, &one, &one).unwrap();
        assert_eq!(joint_surjection_lift(&cov, &[], &[]).unwrap().count, 0);
        let v = names(&["T", "u"]);
        let b = Presentation::quotient(&a, names(&["u"]), vec![crate::poly::parse::parse_poly("2*u - T", &v).unwrap()]).unwrap();
        let one = b.parse("1").unwrap();
        let cov = BinaryCovering::new(&b, &one, &one).unwrap();
        let u1 = cov.first.parse("u").unwrap();
        let u2 = cov.second.parse("u").unwrap();
        let lift = joint_surjection_lift(&cov, &[u1], &[u2]).unwrap();
        assert_eq!(lift.generators, vec!["u"]);
    }
}
