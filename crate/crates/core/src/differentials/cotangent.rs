//! The truncated naive cotangent complex `[I/I^2 -> Omega ⊗ B]` of
//! `B = A[y]/(g)` over `A = K[x]/(h)`, computed over a coefficient field.

use serde::Serialize;

use crate::poly::{syzygies, Field, Groebner, ModuleGroebner, MonomialOrder, Poly};

/// Polynomial data of a relative presentation over a field: `k` base
/// variables followed by `m` adjoined ones.
#[derive(Debug, Clone)]
pub struct RelativeData<F: Field> {
    pub field: F,
    pub nvars: usize,
    pub base_vars: usize,
    pub base_relations: Vec<Poly<F>>,
    pub relations: Vec<Poly<F>>,
}

/// Cohomology of the two-term complex and Fitting data of `H^0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CotangentSummary {
    /// Kernel generators of `I/I^2 -> Omega ⊗ B` that survive modulo the
    /// conormal relations; 0 iff `H^-1 = 0`.
    pub h_minus1: usize,
    /// Smallest `k` with `Fitt_k(Omega) = (1)`; 0 iff `H^0 = 0`.
    pub h0: usize,
    /// `Fitt_{h0 - 1}` vanishes in `B`, so `Omega` is locally free of rank `h0`.
    pub locally_free: bool,
}

impl<F: Field> RelativeData<F> {
    pub fn new_vars(&self) -> usize {
        self.nvars - self.base_vars
    }

    /// All relations of `B` over `K`.
    pub fn ideal(&self) -> Groebner<F> {
        let all: Vec<Poly<F>> = self.base_relations.iter().chain(&self.relations).cloned().collect();
        Groebner::grevlex(self.field.clone(), self.nvars, &all)
    }

    /// Jacobian rows `d g_j = (dg_j/dy_1, ..., dg_j/dy_m)`, reduced in `B`.
    pub fn jacobian(&self, ideal: &Groebner<F>) -> Vec<Vec<Poly<F>>> {
        self.relations
            .iter()
            .map(|g| (self.base_vars..self.nvars).map(|i| ideal.reduce(&g.derivative(i))).collect())
            .collect()
    }

    /// `Fitt_i(Omega)`: the `(m - i)`-minors of the Jacobian plus `I_B`.
    pub fn fitting_ideal(&self, jac: &[Vec<Poly<F>>], i: usize) -> Groebner<F> {
        let m = self.new_vars();
        let mut gens: Vec<Poly<F>> = self.base_relations.iter().chain(&self.relations).cloned().collect();
        if i >= m {
            gens.push(Poly::one(self.field.clone(), self.nvars));
        } else {
            gens.extend(minors(&self.field, self.nvars, jac, m - i));
        }
        Groebner::grevlex(self.field.clone(), self.nvars, &gens)
    }

    /// Smallest `k` with `Fitt_k = (1)`, and whether `Fitt_{k-1} ⊆ I_B`.
    pub fn fitting_rank(&self, jac: &[Vec<Poly<F>>], ideal: &Groebner<F>) -> (usize, bool) {
        let m = self.new_vars();
        if ideal.is_unit_ideal() {
            return (0, true);
        }
        let k = (0..=m).find(|&i| self.fitting_ideal(jac, i).is_unit_ideal()).unwrap_or(m);
        if k == 0 {
            return (0, true);
        }
        let below = minors(&self.field, self.nvars, jac, m - k + 1);
        (k, below.iter().all(|d| ideal.reduce(d).is_zero()))
    }

    /// Generators of the `P`-module of coefficient vectors `a` with
    /// `sum a_j dg_j = 0` in `Omega_{P/A} ⊗ B`.
    pub fn kernel_generators(&self, jac: &[Vec<Poly<F>>]) -> Vec<Vec<Poly<F>>> {
        let r = self.relations.len();
        let m = self.new_vars();
        let zero = Poly::zero(self.field.clone(), self.nvars);
        let ideal_gens: Vec<Poly<F>> = self.ideal().basis();
        let mut vectors: Vec<Vec<Poly<F>>> = jac.to_vec();
        for b in &ideal_gens {
            for i in 0..m {
                let mut v = vec![zero.clone(); m];
                v[i] = b.clone();
                vectors.push(v);
            }
        }
        syzygies(&self.field, self.nvars, m, &vectors)
            .into_iter()
            .map(|s| s[..r].to_vec())
            .filter(|s| s.iter().any(|p| !p.is_zero()))
            .collect()
    }

    /// The relations of `I/I^2` on the generators `[g_j]`: projected
    /// syzygies of `(g, h)` together with `I_B * P^r`.
    pub fn conormal_relations(&self) -> Vec<Vec<Poly<F>>> {
        let r = self.relations.len();
        let zero = Poly::zero(self.field.clone(), self.nvars);
        let gens: Vec<Vec<Poly<F>>> =
            self.relations.iter().chain(&self.base_relations).map(|g| vec![g.clone()]).collect();
        let mut out: Vec<Vec<Poly<F>>> = syzygies(&self.field, self.nvars, 1, &gens)
            .into_iter()
            .map(|s| s[..r].to_vec())
            .collect();
        for b in self.ideal().basis() {
            for j in 0..r {
                let mut v = vec![zero.clone(); r];
                v[j] = b.clone();
                out.push(v);
            }
        }
        out
    }

    /// `H^-1` and `H^0` of the complex.
    pub fn summary(&self) -> CotangentSummary {
        let ideal = self.ideal();
        let jac = self.jacobian(&ideal);
        let (h0, locally_free) = self.fitting_rank(&jac, &ideal);
        let r = self.relations.len();
        let h_minus1 = if r == 0 || ideal.is_unit_ideal() {
            0
        } else {
            let kernel = self.kernel_generators(&jac);
            let conormal = ModuleGroebner::new(self.field.clone(), self.nvars, r, &self.conormal_relations(), MonomialOrder::grevlex());
            kernel.iter().filter(|k| !conormal.contains(k)).count()
        };
        CotangentSummary { h_minus1, h0, locally_free }
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Sorted `k`-subsets of `0..n`.
pub fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    subsets(n, k)
}

/// Determinant by cofactor expansion (matrices here are tiny).
pub fn determinant<F: Field>(field: &F, nvars: usize, m: &[Vec<Poly<F>>]) -> Poly<F> {
    let n = m.len();
    if n == 0 {
        return Poly::one(field.clone(), nvars);
    }
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = Poly::zero(field.clone(), nvars);
    for (j, entry) in m[0].iter().enumerate() {
        if entry.is_zero() {
            continue;
        }
        let minor: Vec<Vec<Poly<F>>> =
            m[1..].iter().map(|row| row.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, p)| p.clone()).collect()).collect();
        let term = entry * &determinant(field, nvars, &minor);
        acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}

/// All `size x size` minors of a matrix given by rows.
pub fn minors<F: Field>(field: &F, nvars: usize, rows: &[Vec<Poly<F>>], size: usize) -> Vec<Poly<F>> {
    if size == 0 {
        return vec![Poly::one(field.clone(), nvars)];
    }
    let ncols = rows.first().map_or(0, |r| r.len());
    if size > rows.len() || size > ncols {
        return Vec::new();
    }
    let mut out = Vec::new();
    for rs in subsets(rows.len(), size) {
        for cs in subsets(ncols, size) {
            let sub: Vec<Vec<Poly<F>>> = rs.iter().map(|&r| cs.iter().map(|&c| rows[r][c].clone()).collect()).collect();
            let d = determinant(field, nvars, &sub);
            if !d.is_zero() {
                out.push(d);
            }
        }
    }
    out
}
