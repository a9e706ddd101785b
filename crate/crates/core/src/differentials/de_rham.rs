//! The relative de Rham complex `Omega^k = ∧^k Omega` of a presentation.
//!
//! `Omega^k` is presented on `dy_I` (sorted index sets `I` of adjoined
//! variables) modulo `I_B * dy_I` and `dg ∧ dy_J`.

use std::collections::BTreeMap;

use serde::Serialize;

use super::classify::{dispatch, Truncation};
use super::cotangent::{k_subsets, RelativeData};
use crate::error::Result;
use crate::poly::{Field, ModuleGroebner, Monomial, MonomialOrder, Poly, QPoly};
use crate::tate::Presentation;

/// A `k`-form `sum c_I dy_I`, indices relative to the adjoined variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Form<F: Field> {
    pub degree: usize,
    pub terms: BTreeMap<Vec<usize>, Poly<F>>,
}

impl<F: Field> Form<F> {
    pub fn zero(degree: usize) -> Self {
        Form { degree, terms: BTreeMap::new() }
    }

    pub fn term(index: Vec<usize>, coeff: Poly<F>) -> Self {
        let mut f = Form::zero(index.len());
        f.add(index, coeff);
        f
    }

    fn add(&mut self, index: Vec<usize>, coeff: Poly<F>) {
        let sum = match self.terms.remove(&index) {
            Some(old) => &old + &coeff,
            None => coeff,
        };
        if !sum.is_zero() {
            self.terms.insert(index, sum);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

/// `dy_i ∧ dy_I` as a signed sorted index set, or `None` if `i ∈ I`.
fn wedge_one(i: usize, index: &[usize]) -> Option<(bool, Vec<usize>)> {
    if index.contains(&i) {
        return None;
    }
    let before = index.iter().filter(|&&j| j < i).count();
    let mut out = index.to_vec();
    out.insert(before, i);
    Some((before % 2 == 1, out))
}

/// Relative exterior derivative: only the adjoined variables are
/// differentiated.
pub fn d<F: Field>(data: &RelativeData<F>, form: &Form<F>) -> Form<F> {
    let mut out = Form::zero(form.degree + 1);
    for (index, c) in &form.terms {
        for i in 0..data.new_vars() {
            let dc = c.derivative(data.base_vars + i);
            if dc.is_zero() {
                continue;
            }
            if let Some((neg, idx)) = wedge_one(i, index) {
                out.add(idx, if neg { -&dc } else { dc });
            }
        }
    }
    out
}

/// Submodule of `P^{C(m,k)}` presenting the relations of `Omega^k`.
fn relation_module<F: Field>(data: &RelativeData<F>, k: usize) -> (Vec<Vec<usize>>, Vec<Vec<Poly<F>>>) {
    let m = data.new_vars();
    let basis = k_subsets(m, k);
    let pos: BTreeMap<Vec<usize>, usize> = basis.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
    let zero = Poly::zero(data.field.clone(), data.nvars);
    let mut rels = Vec::new();
    for b in data.ideal().basis() {
        for i in 0..basis.len() {
            let mut v = vec![zero.clone(); basis.len()];
            v[i] = b.clone();
            rels.push(v);
        }
    }
    if k >= 1 {
        for g in &data.relations {
            let dg = d(data, &Form::term(Vec::new(), g.clone()));
            for j in k_subsets(m, k - 1) {
                let mut v = vec![zero.clone(); basis.len()];
                for (idx, c) in &dg.terms {
                    if let Some((neg, full)) = wedge_one(idx[0], &j) {
                        let slot = pos[&full];
                        v[slot] = if neg { &v[slot] - c } else { &v[slot] + c };
                    }
                }
                if v.iter().any(|p| !p.is_zero()) {
                    rels.push(v);
                }
            }
        }
    }
    (basis, rels)
}

fn to_vector<F: Field>(data: &RelativeData<F>, basis: &[Vec<usize>], form: &Form<F>) -> Vec<Poly<F>> {
    basis
        .iter()
        .map(|s| form.terms.get(s).cloned().unwrap_or_else(|| Poly::zero(data.field.clone(), data.nvars)))
        .collect()
}

fn monomials_up_to(nvars: usize, max: u32) -> Vec<Monomial> {
    let mut out = vec![Monomial::one(nvars)];
    let mut frontier = out.clone();
    for _ in 0..max {
        let mut next = Vec::new();
        for m in &frontier {
            let last = m.0.iter().rposition(|&e| e > 0).unwrap_or(0);
            for i in last..nvars {
                next.push(m.mul(&Monomial::var(nvars, i)));
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DeRhamPiece {
    pub degree: usize,
    pub generators: Vec<String>,
    pub relation_count: usize,
    pub is_zero: bool,
    /// Rank when `Omega^1` is locally free.
    pub rank: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DeRhamComplex {
    pub top_degree: usize,
    pub pieces: Vec<DeRhamPiece>,
    /// `d(d(c dy_I))` tested for monomials `c` of degree <= 3.
    pub dd_checks: usize,
    pub dd_violations: usize,
    pub truncation: Truncation,
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn complex<F: Field>(data: &RelativeData<F>, vars: &[String], top: usize) -> (Vec<DeRhamPiece>, usize, usize) {
    let ideal = data.ideal();
    let jac = data.jacobian(&ideal);
    let (rank1, free) = data.fitting_rank(&jac, &ideal);
    let names = &vars[data.base_vars..];
    let mut pieces = Vec::new();
    let mut modules = Vec::new();
    for k in 0..=top {
        let (basis, rels) = relation_module(data, k);
        let gb = ModuleGroebner::new(data.field.clone(), data.nvars, basis.len(), &rels, MonomialOrder::grevlex());
        let is_zero = basis.is_empty() || gb.is_full();
        pieces.push(DeRhamPiece {
            degree: k,
            generators: basis
                .iter()
                .map(|s| if s.is_empty() { "1".to_string() } else { s.iter().map(|&i| format!("d{}", names[i])).collect::<Vec<_>>().join("^") })
                .collect(),
            relation_count: rels.len(),
            is_zero,
            rank: free.then(|| if ideal.is_unit_ideal() { 0 } else { binomial(rank1, k) }),
        });
        modules.push((basis, gb));
    }
    let mut checks = 0;
    let mut violations = 0;
    let monos = monomials_up_to(data.nvars, 3);
    for k in 0..top.saturating_sub(1) {
        let (basis_k, _) = &modules[k];
        let (basis_k2, gb2) = &modules[k + 2];
        if basis_k2.is_empty() {
            continue;
        }
        for index in basis_k {
            for m in &monos {
                let c = Poly::monomial(data.field.clone(), m.clone(), data.field.one());
                let first = d(data, &Form::term(index.clone(), c));
                let mut reduced = Form::zero(first.degree);
                for (idx, coeff) in first.terms {
                    reduced.add(idx, ideal.reduce(&coeff));
                }
                let second = d(data, &reduced);
                checks += 1;
                if !gb2.contains(&to_vector(data, basis_k2, &second)) {
                    violations += 1;
                }
            }
        }
    }
    (pieces, checks, violations)
}

/// Graded pieces up to `top` and the `d∘d = 0` check. Pieces above the
/// number of adjoined variables are zero.
pub fn de_rham_complex(pres: &Presentation, top: usize) -> Result<DeRhamComplex> {
    let vars = pres.vars();
    let (pieces, dd_checks, dd_violations) = dispatch!(pres, |data| complex(&data, vars, top));
    Ok(DeRhamComplex { top_degree: top, pieces, dd_checks, dd_violations, truncation: Truncation::of(pres) })
}

/// `d` of a rational form, with coefficients in normal form.
pub fn exterior_derivative(pres: &Presentation, form: &Form<crate::poly::Rationals>) -> Result<Form<crate::poly::Rationals>> {
    let data = RelativeData {
        field: crate::poly::Rationals,
        nvars: pres.nvars(),
        base_vars: pres.base_vars(),
        base_relations: Vec::new(),
        relations: Vec::new(),
    };
    let raw = d(&data, form);
    let mut out = Form::zero(raw.degree);
    for (idx, c) in raw.terms {
        out.add(idx, pres.normal_form(&c));
    }
    Ok(out)
}

/// Renders a form as `c*dX^dY + ...`.
pub fn display_form(pres: &Presentation, form: &Form<crate::poly::Rationals>) -> String {
    if form.is_zero() {
        return "0".into();
    }
    let names = &pres.vars()[pres.base_vars()..];
    form.terms
        .iter()
        .map(|(idx, c)| {
            let wedge: Vec<String> = idx.iter().map(|&i| format!("d{}", names[i])).collect();
            let coeff = pres.display(c);
            match (wedge.is_empty(), coeff.as_str()) {
                (true, _) => coeff,
                (false, "1") => wedge.join("^"),
                _ if c.len() > 1 => format!("({coeff})*{}", wedge.join("^")),
                _ => format!("{coeff}*{}", wedge.join("^")),
            }
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

/// `dX_1 ∧ ... ∧ dX_k` for named adjoined variables, as a sign and a sorted
/// index set; `None` for repeated or unknown names.
pub fn wedge_index(pres: &Presentation, names: &[&str]) -> Option<(bool, Vec<usize>)> {
    let adjoined = &pres.vars()[pres.base_vars()..];
    let mut idx: Vec<usize> = Vec::new();
    let mut neg = false;
    for n in names {
        let i = adjoined.iter().position(|v| v == n)?;
        if idx.contains(&i) {
            return None;
        }
        // appending dy_i after dy_I: move it past the larger indices
        neg ^= idx.iter().filter(|&&j| j > i).count() % 2 == 1;
        let at = idx.iter().filter(|&&j| j < i).count();
        idx.insert(at, i);
    }
    Some((neg, idx))
}

pub fn rational_form(degree: usize, terms: Vec<(Vec<usize>, QPoly)>) -> Form<crate::poly::Rationals> {
    let mut f = Form::zero(degree);
    for (i, c) in terms {
        f.add(i, c);
    }
    f
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse::{names, parse_poly};
    use crate::tate::Coefficients;

    fn q2() -> Coefficients {
        Coefficients::Qp { p: 2, prec: 8 }
    }

    #[test]
    fn one_variable() {
        let a = Presentation::free(q2(), names(&["T"])).unwrap();
        let c = de_rham_complex(&a, 2).unwrap();
        let zero: Vec<bool> = c.pieces.iter().map(|p| p.is_zero).collect();
        assert_eq!(zero, vec![false, false, true]);
        assert_eq!(c.pieces[1].generators, vec!["dT"]);
    }

    #[test]
    fn two_variables() {
        let a = Presentation::free(q2(), names(&["X", "Y"])).unwrap();
        let c = de_rham_complex(&a, 3).unwrap();
        assert_eq!(c.pieces[2].generators, vec!["dX^dY"]);
        assert_eq!(c.pieces[2].rank, Some(1));
        assert!(c.dd_checks > 0);
        assert_eq!(c.dd_violations, 0);
        let v = names(&["X", "Y"]);
        let form = rational_form(1, vec![(vec![1], parse_poly("X", &v).unwrap())]);
        let dx = exterior_derivative(&a, &form).unwrap();
        assert_eq!(display_form(&a, &dx), "dX^dY");
        assert_eq!(wedge_index(&a, &["Y", "X"]), Some((true, vec![0, 1])));
    }

    #[test]
    fn etale_has_no_forms() {
        let base = Presentation::free(q2(), vec![]).unwrap();
        let v = names(&["T"]);
        let b = Presentation::quotient(&base, v.clone(), vec![parse_poly("T^2 - T", &v).unwrap()]).unwrap();
        let c = de_rham_complex(&b, 1).unwrap();
        assert!(!c.pieces[0].is_zero);
        assert!(c.pieces[1].is_zero);
    }
}
