//! Buchberger's algorithm over a field, for ideals and for submodules of free
//! modules. Module terms use a position-over-term order in which a lower
//! component index dominates, so Gröbner bases of augmented generators
//! eliminate the leading block (used for syzygies).

use std::cmp::Ordering;

use super::field::Field;
use super::monomial::{Monomial, MonomialOrder};
use super::polynomial::Poly;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct Term {
    comp: usize,
    mono: Monomial,
}

/// A module element as terms sorted from largest to smallest.
type SVec<E> = Vec<(Term, E)>;

#[derive(Debug, Clone)]
struct Engine<F: Field> {
    field: F,
    nvars: usize,
    ncomps: usize,
    order: MonomialOrder,
}

impl<F: Field> Engine<F> {
    fn cmp(&self, a: &Term, b: &Term) -> Ordering {
        match b.comp.cmp(&a.comp) {
            Ordering::Equal => self.order.cmp(&a.mono, &b.mono),
            o => o,
        }
    }

    fn from_vector(&self, v: &[Poly<F>]) -> SVec<F::Elem> {
        let mut out = Vec::new();
        for (comp, p) in v.iter().enumerate() {
            for (m, c) in p.terms() {
                out.push((Term { comp, mono: m.clone() }, c.clone()));
            }
        }
        out.sort_by(|a, b| self.cmp(&b.0, &a.0));
        out
    }

    fn to_vector(&self, v: &SVec<F::Elem>) -> Vec<Poly<F>> {
        let mut out = vec![Poly::zero(self.field.clone(), self.nvars); self.ncomps];
        for (t, c) in v {
            out[t.comp].add_term(t.mono.clone(), c.clone());
        }
        out
    }

    /// `f - c * m * g`, where both inputs are sorted.
    fn sub_mul(&self, f: &SVec<F::Elem>, c: &F::Elem, m: &Monomial, g: &SVec<F::Elem>) -> SVec<F::Elem> {
        let fld = &self.field;
        let shifted = g.iter().map(|(t, a)| {
            (Term { comp: t.comp, mono: t.mono.mul(m) }, fld.neg(&fld.mul(a, c)))
        });
        let mut out = Vec::with_capacity(f.len() + g.len());
        let mut fi = f.iter().peekable();
        let mut gi = shifted.peekable();
        loop {
            match (fi.peek(), gi.peek()) {
                (None, None) => break,
                (Some(_), None) => out.push(fi.next().unwrap().clone()),
                (None, Some(_)) => out.push(gi.next().unwrap()),
                (Some(a), Some(b)) => match self.cmp(&a.0, &b.0) {
                    Ordering::Greater => out.push(fi.next().unwrap().clone()),
                    Ordering::Less => out.push(gi.next().unwrap()),
                    Ordering::Equal => {
                        let (t, x) = fi.next().unwrap().clone();
                        let (_, y) = gi.next().unwrap();
                        let s = fld.add(&x, &y);
                        if !fld.is_zero(&s) {
                            out.push((t, s));
                        }
                    }
                },
            }
        }
        out
    }

    fn make_monic(&self, v: &mut SVec<F::Elem>) {
        if let Some((_, lc)) = v.first() {
            let inv = self.field.inv(lc).expect("nonzero leading coefficient");
            for (_, c) in v.iter_mut() {
                *c = self.field.mul(c, &inv);
            }
        }
    }

    /// Full reduction of `f` by `basis` (all elements monic).
    fn reduce(&self, f: &SVec<F::Elem>, basis: &[SVec<F::Elem>], skip: Option<usize>) -> SVec<F::Elem> {
        let mut rem: SVec<F::Elem> = Vec::new();
        let mut cur = f.clone();
        while let Some((t, c)) = cur.first().cloned() {
            let divisor = basis.iter().enumerate().find(|(k, g)| {
                Some(*k) != skip && {
                    let lt = &g[0].0;
                    lt.comp == t.comp && lt.mono.divides(&t.mono)
                }
            });
            match divisor {
                Some((_, g)) => {
                    let m = g[0].0.mono.quotient(&t.mono);
                    cur = self.sub_mul(&cur, &c, &m, g);
                }
                None => {
                    rem.push((t, c));
                    cur.remove(0);
                }
            }
        }
        rem
    }

    fn spoly(&self, f: &SVec<F::Elem>, g: &SVec<F::Elem>) -> SVec<F::Elem> {
        let lf = &f[0].0.mono;
        let lg = &g[0].0.mono;
        let l = lf.lcm(lg);
        let one = self.field.one();
        let mf = lf.quotient(&l);
        let mg = lg.quotient(&l);
        // f is monic, so m_f * f has leading coefficient 1; subtract m_g * g.
        let scaled_f: SVec<F::Elem> = f
            .iter()
            .map(|(t, c)| (Term { comp: t.comp, mono: t.mono.mul(&mf) }, c.clone()))
            .collect();
        self.sub_mul(&scaled_f, &one, &mg, g)
    }

    fn buchberger(&self, gens: Vec<SVec<F::Elem>>) -> Vec<SVec<F::Elem>> {
        let mut basis: Vec<SVec<F::Elem>> = Vec::new();
        for g in gens {
            let mut r = self.reduce(&g, &basis, None);
            if !r.is_empty() {
                self.make_monic(&mut r);
                basis.push(r);
            }
        }
        let mut pairs: Vec<(usize, usize)> = Vec::new();
        for j in 0..basis.len() {
            for i in 0..j {
                pairs.push((i, j));
            }
        }
        while !pairs.is_empty() {
            // Normal selection: smallest lcm first.
            let (idx, _) = pairs
                .iter()
                .enumerate()
                .min_by(|(_, a), (_, b)| {
                    let la = self.pair_lcm(&basis, a);
                    let lb = self.pair_lcm(&basis, b);
                    match (la, lb) {
                        (Some(x), Some(y)) => self.cmp(&x, &y),
                        (None, Some(_)) => Ordering::Less,
                        (Some(_), None) => Ordering::Greater,
                        (None, None) => Ordering::Equal,
                    }
                })
                .unwrap();
            let (i, j) = pairs.swap_remove(idx);
            let (ti, tj) = (&basis[i][0].0, &basis[j][0].0);
            if ti.comp != tj.comp {
                continue;
            }
            if self.ncomps == 1 && ti.mono.coprime(&tj.mono) {
                continue;
            }
            let l = ti.mono.lcm(&tj.mono);
            // Chain criterion: some other leading term divides the lcm and
            // both companion pairs are already resolved.
            let chain = (0..basis.len()).any(|k| {
                k != i
                    && k != j
                    && basis[k][0].0.comp == ti.comp
                    && basis[k][0].0.mono.divides(&l)
                    && !pairs.contains(&(i.min(k), i.max(k)))
                    && !pairs.contains(&(j.min(k), j.max(k)))
            });
            if chain {
                continue;
            }
            let s = self.spoly(&basis[i], &basis[j]);
            let mut r = self.reduce(&s, &basis, None);
            if r.is_empty() {
                continue;
            }
            self.make_monic(&mut r);
            let n = basis.len();
            basis.push(r);
            for k in 0..n {
                pairs.push((k, n));
            }
        }
        self.interreduce(basis)
    }

    fn pair_lcm(&self, basis: &[SVec<F::Elem>], &(i, j): &(usize, usize)) -> Option<Term> {
        let (a, b) = (&basis[i][0].0, &basis[j][0].0);
        if a.comp != b.comp {
            return None;
        }
        Some(Term { comp: a.comp, mono: a.mono.lcm(&b.mono) })
    }

    fn interreduce(&self, mut basis: Vec<SVec<F::Elem>>) -> Vec<SVec<F::Elem>> {
        // Drop elements whose leading term is divisible by another's.
        let mut keep = vec![true; basis.len()];
        for i in 0..basis.len() {
            for j in 0..basis.len() {
                if i == j || !keep[j] {
                    continue;
                }
                let (ti, tj) = (&basis[i][0].0, &basis[j][0].0);
                if ti.comp == tj.comp && tj.mono.divides(&ti.mono) && (ti != tj || j < i) {
                    keep[i] = false;
                    break;
                }
            }
        }
        basis = basis.into_iter().zip(keep).filter(|(_, k)| *k).map(|(b, _)| b).collect();
        for i in 0..basis.len() {
            let r = self.reduce(&basis[i], &basis, Some(i));
            basis[i] = r;
            self.make_monic(&mut basis[i]);
        }
        basis.sort_by(|a, b| self.cmp(&b[0].0, &a[0].0));
        basis
    }
}

/// A reduced Gröbner basis of an ideal.
#[derive(Debug, Clone)]
pub struct Groebner<F: Field> {
    engine: Engine<F>,
    basis: Vec<SVec<F::Elem>>,
}

impl<F: Field> Groebner<F> {
    pub fn new(field: F, nvars: usize, gens: &[Poly<F>], order: MonomialOrder) -> Self {
        let engine = Engine { field, nvars, ncomps: 1, order };
        let svecs = gens
            .iter()
            .filter(|g| !g.is_zero())
            .map(|g| engine.from_vector(std::slice::from_ref(g)))
            .collect();
        let basis = engine.buchberger(svecs);
        Groebner { engine, basis }
    }

    pub fn grevlex(field: F, nvars: usize, gens: &[Poly<F>]) -> Self {
        Self::new(field, nvars, gens, MonomialOrder::grevlex())
    }

    pub fn field(&self) -> &F {
        &self.engine.field
    }

    pub fn nvars(&self) -> usize {
        self.engine.nvars
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.engine.order
    }

    pub fn basis(&self) -> Vec<Poly<F>> {
        self.basis.iter().map(|b| self.engine.to_vector(b).remove(0)).collect()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.basis.iter().map(|b| b[0].0.mono.clone()).collect()
    }

    /// Canonical normal form.
    pub fn reduce(&self, f: &Poly<F>) -> Poly<F> {
        let s = self.engine.from_vector(std::slice::from_ref(f));
        let r = self.engine.reduce(&s, &self.basis, None);
        self.engine.to_vector(&r).remove(0)
    }

    pub fn contains(&self, f: &Poly<F>) -> bool {
        self.reduce(f).is_zero()
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.basis.iter().any(|b| b[0].0.mono.is_one())
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_standard(&self, m: &Monomial) -> bool {
        !self.basis.iter().any(|b| b[0].0.mono.divides(m))
    }

    /// Standard monomials (not divisible by a leading monomial) of total degree
    /// at most `max_degree`, in increasing order.
    pub fn standard_monomials(&self, max_degree: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        let n = self.engine.nvars;
        let mut stack = vec![(0usize, Monomial::one(n))];
        while let Some((start, m)) = stack.pop() {
            if !self.is_standard(&m) {
                continue;
            }
            out.push(m.clone());
            if m.degree() >= max_degree {
                continue;
            }
            for i in start..n {
                let mut next = m.clone();
                next.0[i] += 1;
                stack.push((i, next));
            }
        }
        out.sort_by(|a, b| self.engine.order.cmp(a, b));
        out
    }

    /// Whether the quotient is finite dimensional over the field.
    pub fn is_zero_dimensional(&self) -> bool {
        let lms = self.leading_monomials();
        (0..self.engine.nvars).all(|i| {
            lms.iter().any(|m| m.0[i] > 0 && m.0.iter().enumerate().all(|(j, &e)| j == i || e == 0))
        }) || self.is_unit_ideal()
    }

    /// Krull dimension of the quotient via maximal independent variable sets
    /// of the leading-monomial ideal; `None` for the unit ideal.
    pub fn dimension(&self) -> Option<usize> {
        if self.is_unit_ideal() {
            return None;
        }
        let n = self.engine.nvars;
        let lms = self.leading_monomials();
        let mut best = 0;
        for mask in 0u64..(1u64 << n) {
            let size = mask.count_ones() as usize;
            if size <= best {
                continue;
            }
            let independent = lms
                .iter()
                .all(|m| m.0.iter().enumerate().any(|(j, &e)| e > 0 && mask & (1 << j) == 0));
            if independent {
                best = size;
            }
        }
        Some(best)
    }
}

/// A Gröbner basis of a submodule of `P^ncomps`.
#[derive(Debug, Clone)]
pub struct ModuleGroebner<F: Field> {
    engine: Engine<F>,
    basis: Vec<SVec<F::Elem>>,
}

impl<F: Field> ModuleGroebner<F> {
    pub fn new(field: F, nvars: usize, ncomps: usize, gens: &[Vec<Poly<F>>], order: MonomialOrder) -> Self {
        let engine = Engine { field, nvars, ncomps, order };
        let svecs = gens
            .iter()
            .map(|g| engine.from_vector(g))
            .filter(|s| !s.is_empty())
            .collect();
        let basis = engine.buchberger(svecs);
        ModuleGroebner { engine, basis }
    }

    pub fn basis(&self) -> Vec<Vec<Poly<F>>> {
        self.basis.iter().map(|b| self.engine.to_vector(b)).collect()
    }

    pub fn reduce(&self, v: &[Poly<F>]) -> Vec<Poly<F>> {
        let s = self.engine.from_vector(v);
        let r = self.engine.reduce(&s, &self.basis, None);
        self.engine.to_vector(&r)
    }

    pub fn contains(&self, v: &[Poly<F>]) -> bool {
        self.reduce(v).iter().all(|p| p.is_zero())
    }

    /// Whether the submodule is all of `P^ncomps`.
    pub fn is_full(&self) -> bool {
        (0..self.engine.ncomps).all(|c| {
            self.basis.iter().any(|b| b[0].0.comp == c && b[0].0.mono.is_one())
        })
    }
}

/// Generators of the syzygy module of `gens` (vectors in `P^ncomps`), as
/// vectors in `P^gens.len()`.
pub fn syzygies<F: Field>(field: &F, nvars: usize, ncomps: usize, gens: &[Vec<Poly<F>>]) -> Vec<Vec<Poly<F>>> {
    let m = gens.len();
    let total = ncomps + m;
    let augmented: Vec<Vec<Poly<F>>> = gens
        .iter()
        .enumerate()
        .map(|(k, g)| {
            let mut v = g.clone();
            v.resize(ncomps, Poly::zero(field.clone(), nvars));
            for j in 0..m {
                v.push(if j == k { Poly::one(field.clone(), nvars) } else { Poly::zero(field.clone(), nvars) });
            }
            v
        })
        .collect();
    let gb = ModuleGroebner::new(field.clone(), nvars, total, &augmented, MonomialOrder::grevlex());
    gb.basis
        .iter()
        .filter(|b| b[0].0.comp >= ncomps)
        .map(|b| gb.engine.to_vector(b).split_off(ncomps))
        .collect()
}
