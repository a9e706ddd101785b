//! Universal Witt polynomials mod p, computed from the ghost recursion.
//!
//! `S_k` is determined mod `p` by the ghost targets mod `p^(k+1)` and the
//! earlier `S_i` mod `p`, since `(S + pE)^(p^j) = S^(p^j)` mod `p^(j+1)`.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

/// Sparse polynomial over `Z/m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct IntPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, u64>,
}

impl IntPoly {
    fn zero(nvars: usize) -> Self {
        IntPoly { nvars, terms: BTreeMap::new() }
    }

    fn monomial(nvars: usize, var: usize, exp: u32, c: u64, m: u64) -> Self {
        let mut e = vec![0; nvars];
        e[var] = exp;
        let mut p = Self::zero(nvars);
        p.add_term(e, c % m, m);
        p
    }

    fn add_term(&mut self, e: Vec<u32>, c: u64, m: u64) {
        match self.terms.entry(e) {
            Entry::Occupied(mut o) => {
                let v = (*o.get() + c) % m;
                if v == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = v;
                }
            }
            Entry::Vacant(slot) => {
                if !c.is_multiple_of(m) {
                    slot.insert(c % m);
                }
            }
        }
    }

    fn add(&self, other: &Self, m: u64) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), *c, m);
        }
        out
    }

    fn scale(&self, c: u64, m: u64) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, v) in &self.terms {
            out.add_term(e.clone(), v * c % m, m);
        }
        out
    }

    fn mul(&self, other: &Self, m: u64) -> Self {
        let mut acc: HashMap<Vec<u32>, u64> = HashMap::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                let slot = acc.entry(e).or_insert(0);
                *slot = (*slot + c1 * c2) % m;
            }
        }
        IntPoly { nvars: self.nvars, terms: acc.into_iter().filter(|(_, c)| *c != 0).collect() }
    }

    fn pow(&self, mut e: u64, m: u64) -> Self {
        let mut base = self.clone();
        let mut out = Self::zero(self.nvars);
        out.add_term(vec![0; self.nvars], 1, m);
        while e > 0 {
            if e & 1 == 1 {
                out = out.mul(&base, m);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base, m);
            }
        }
        out
    }

    fn reduce(&self, m: u64) -> Self {
        IntPoly { nvars: self.nvars, terms: self.terms.iter().map(|(e, c)| (e.clone(), c % m)).filter(|(_, c)| *c != 0).collect() }
    }

    pub(crate) fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &u64)> {
        self.terms.iter()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub(crate) enum UniversalOp {
    Add,
    Mul,
    Neg,
    /// Frobenius `W_{n+1} -> W_n`.
    Frobenius,
}

/// `w_k(X_offset, ..)` mod `m`.
fn ghost(p: u64, k: usize, nvars: usize, offset: usize, m: u64) -> IntPoly {
    let mut w = IntPoly::zero(nvars);
    for i in 0..=k {
        let e = p.pow((k - i) as u32) as u32;
        w = w.add(&IntPoly::monomial(nvars, offset + i, e, p.pow(i as u32), m), m);
    }
    w
}

/// Output polynomials (mod p) for `op` on length-`n` vectors. Binary ops use
/// variables `X_0..X_{n-1}, Y_0..Y_{n-1}`; Frobenius reads `n + 1` inputs.
fn compute(op: UniversalOp, p: u64, n: usize) -> Vec<IntPoly> {
    let nvars = match op {
        UniversalOp::Add | UniversalOp::Mul => 2 * n,
        UniversalOp::Neg => n,
        UniversalOp::Frobenius => n + 1,
    };
    let mut out: Vec<IntPoly> = Vec::new();
    for k in 0..n {
        let m = p.pow(k as u32 + 1);
        let target = match op {
            UniversalOp::Add => ghost(p, k, nvars, 0, m).add(&ghost(p, k, nvars, n, m), m),
            UniversalOp::Mul => ghost(p, k, nvars, 0, m).mul(&ghost(p, k, nvars, n, m), m),
            UniversalOp::Neg => ghost(p, k, nvars, 0, m).scale(m - 1, m),
            UniversalOp::Frobenius => ghost(p, k + 1, nvars, 0, m),
        };
        let mut lower = IntPoly::zero(nvars);
        for (i, s) in out.iter().enumerate() {
            let term = s.pow(p.pow((k - i) as u32), m).scale(p.pow(i as u32), m);
            lower = lower.add(&term, m);
        }
        let diff = target.add(&lower.scale(m - 1, m), m);
        let pk = p.pow(k as u32);
        let mut s = IntPoly::zero(nvars);
        for (e, c) in diff.terms() {
            debug_assert_eq!(c % pk, 0, "ghost recursion must be divisible");
            s.add_term(e.clone(), (c / pk) % p, p);
        }
        out.push(s.reduce(p));
    }
    out
}

type Cache = Mutex<HashMap<(UniversalOp, u64, usize), Arc<Vec<IntPoly>>>>;

/// Cached universal polynomials.
pub(crate) fn universal(op: UniversalOp, p: u64, n: usize) -> Arc<Vec<IntPoly>> {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = cache.lock().expect("cache lock").get(&(op, p, n)) {
        return v.clone();
    }
    let v = Arc::new(compute(op, p, n));
    cache.lock().expect("cache lock").entry((op, p, n)).or_insert(v).clone()
}

/// A commutative ring of characteristic `p` in which Witt polynomials can
/// be evaluated.
pub trait CharPRing {
    type Elem: Clone + PartialEq;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// `c * 1`.
    fn scalar(&self, c: u64) -> Self::Elem;

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut out = self.one();
        while e > 0 {
            if e & 1 == 1 {
                out = self.mul(&out, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        out
    }
}

pub(crate) fn evaluate<R: CharPRing>(ring: &R, polys: &[IntPoly], inputs: &[R::Elem]) -> Vec<R::Elem> {
    let mut powers: HashMap<(usize, u32), R::Elem> = HashMap::new();
    polys
        .iter()
        .map(|poly| {
            poly.terms().fold(ring.zero(), |acc, (e, c)| {
                let mut t = ring.scalar(*c);
                for (i, &k) in e.iter().enumerate() {
                    if k > 0 {
                        let x = powers.entry((i, k)).or_insert_with(|| ring.pow(&inputs[i], k as u64)).clone();
                        t = ring.mul(&t, &x);
                    }
                }
                ring.add(&acc, &t)
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_addition_polynomial() {
        // S_1 = X_1 + Y_1 + (X_0^p + Y_0^p - (X_0 + Y_0)^p) / p; for p = 2 the
        // quotient is -X_0 Y_0 = X_0 Y_0 mod 2.
        let s = universal(UniversalOp::Add, 2, 2);
        assert_eq!(s[0].terms().count(), 2);
        let terms: Vec<(Vec<u32>, u64)> = s[1].terms().map(|(e, c)| (e.clone(), *c)).collect();
        assert_eq!(terms, vec![(vec![0, 0, 0, 1], 1), (vec![0, 1, 0, 0], 1), (vec![1, 0, 1, 0], 1)]);
        // p = 3: -(3 X^2 Y + 3 X Y^2)/3 = 2 X^2 Y + 2 X Y^2 mod 3
        let s = universal(UniversalOp::Add, 3, 2);
        assert!(s[1].terms().any(|(e, c)| *e == vec![2, 0, 1, 0] && *c == 2));
    }

    #[test]
    fn frobenius_polynomials_are_coordinate_powers() {
        for p in [2u64, 3, 5] {
            let f = universal(UniversalOp::Frobenius, p, 3);
            for (k, s) in f.iter().enumerate() {
                let terms: Vec<(Vec<u32>, u64)> = s.terms().map(|(e, c)| (e.clone(), *c)).collect();
                let mut e = vec![0; 4];
                e[k] = p as u32;
                assert_eq!(terms, vec![(e, 1)]);
            }
        }
    }
}
