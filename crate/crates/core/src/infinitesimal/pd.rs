//! Divided-power structures on nilpotent ideals of finite rings.

use std::collections::{HashMap, VecDeque};

use serde::Serialize;

use crate::base::{FiniteRing, Ideal};
use crate::error::{Error, Result};

/// Largest ideal on which PD structures are enumerated.
pub const MAX_PD_IDEAL: usize = 16;
const NODE_BOUND: u128 = 1_000_000;

/// Maps `γ_n: I -> I` for `0 <= n <= e` (`e` the nilpotency exponent), with
/// `γ_n = 0` beyond `e`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct PdStructure {
    pub ideal: Ideal,
    pub exponent: u32,
    /// `gamma[n][i] = γ_n(ideal.elements()[i])`.
    pub gamma: Vec<Vec<usize>>,
}

impl PdStructure {
    /// `γ_n(x)` for `x` in the ideal.
    pub fn get(&self, n: u32, x: usize) -> usize {
        if n as usize >= self.gamma.len() {
            return 0;
        }
        let i = self.ideal.elements().binary_search(&x).expect("element of the ideal");
        self.gamma[n as usize][i]
    }

    /// Whether `self` is the restriction of `other` (PD-compatible inclusion).
    pub fn restricts(&self, other: &PdStructure) -> bool {
        let top = self.exponent.max(other.exponent);
        self.ideal.is_subset(&other.ideal)
            && self.ideal.elements().iter().all(|&x| (0..=top).all(|n| self.get(n, x) == other.get(n, x)))
    }
}

fn factorial(n: u32) -> i64 {
    (1..=n as i64).product()
}

fn binomial(n: u32, k: u32) -> i64 {
    (0..k as i64).fold(1, |acc, i| acc * (n as i64 - i) / (i + 1))
}

/// Checks every PD axiom exhaustively over the ideal, for indices up to
/// twice the exponent.
pub fn verify_pd(ring: &FiniteRing, pd: &PdStructure) -> bool {
    let top = 2 * pd.exponent;
    let elems = pd.ideal.elements();
    let g = |n: u32, x: usize| if n == 0 { ring.one() } else { pd.get(n, x) };
    let values_in_ideal = pd.gamma.iter().skip(1).all(|row| row.iter().all(|&v| pd.ideal.contains(v)));
    let first = elems.iter().all(|&x| g(1, x) == x);
    let powers = elems.iter().all(|&x| (1..=top).all(|n| ring.mul(ring.from_int(factorial(n)), g(n, x)) == ring.pow(x, n as u64)));
    let sums = elems.iter().all(|&x| {
        elems.iter().all(|&y| {
            (1..=top).all(|n| {
                let rhs = (0..=n).fold(ring.zero(), |acc, i| ring.add(acc, ring.mul(g(i, x), g(n - i, y))));
                g(n, ring.add(x, y)) == rhs
            })
        })
    });
    let scalars = elems.iter().all(|&x| {
        ring.elements().all(|a| (1..=top).all(|n| g(n, ring.mul(a, x)) == ring.mul(ring.pow(a, n as u64), g(n, x))))
    });
    let products = elems.iter().all(|&x| {
        (1..top).all(|m| {
            (1..=top - m).all(|n| ring.mul(g(m, x), g(n, x)) == ring.mul(ring.from_int(binomial(m + n, n)), g(m + n, x)))
        })
    });
    values_in_ideal && first && powers && sums && scalars && products
}

/// Additive generators of an ideal, chosen greedily.
fn additive_generators(ring: &FiniteRing, ideal: &Ideal) -> Vec<usize> {
    let mut span = vec![ring.zero()];
    let mut gens = Vec::new();
    for &x in ideal.elements() {
        if span.contains(&x) {
            continue;
        }
        gens.push(x);
        let mut queue: VecDeque<usize> = span.iter().copied().collect();
        while let Some(s) = queue.pop_front() {
            let t = ring.add(s, x);
            if !span.contains(&t) {
                span.push(t);
                queue.push_back(t);
            }
        }
    }
    gens
}

/// Extends values on additive generators to the whole ideal through the
/// sum formula; `None` on an inconsistency.
fn extend(ring: &FiniteRing, ideal: &Ideal, e: u32, gens: &[usize], on_gens: &[Vec<usize>]) -> Option<Vec<Vec<usize>>> {
    let len = e as usize + 1;
    let mut known: HashMap<usize, Vec<usize>> = HashMap::new();
    let mut zero = vec![ring.zero(); len];
    zero[0] = ring.one();
    known.insert(ring.zero(), zero);
    let mut queue = VecDeque::from([ring.zero()]);
    while let Some(x) = queue.pop_front() {
        let gx = known[&x].clone();
        for (g, gg) in gens.iter().zip(on_gens) {
            let y = ring.add(x, *g);
            let vals: Vec<usize> =
                (0..len).map(|n| (0..=n).fold(ring.zero(), |acc, i| ring.add(acc, ring.mul(gx[i], gg[n - i])))).collect();
            match known.get(&y) {
                Some(prev) if *prev != vals => return None,
                Some(_) => {}
                None => {
                    known.insert(y, vals);
                    queue.push_back(y);
                }
            }
        }
    }
    Some((0..len).map(|n| ideal.elements().iter().map(|x| known[x][n]).collect()).collect())
}

/// All PD structures on a nilpotent ideal.
pub fn enumerate_pd_structures(ring: &FiniteRing, ideal: &Ideal) -> Result<Vec<PdStructure>> {
    if ideal.len() > MAX_PD_IDEAL {
        return Err(Error::SearchBound(ideal.len() as u128, MAX_PD_IDEAL as u128));
    }
    let e = ring
        .nilpotency_exponent(ideal)
        .ok_or_else(|| Error::Invalid(format!("ideal of {} is not nilpotent", ring.name())))?;
    let gens = additive_generators(ring, ideal);
    let elems = ideal.elements().to_vec();
    // per generator, the admissible value rows (γ_0, ..., γ_e)
    let mut per_gen: Vec<Vec<Vec<usize>>> = Vec::new();
    let mut nodes = 0u128;
    for &g in &gens {
        let mut rows = Vec::new();
        let mut row = vec![ring.zero(); e as usize + 1];
        row[0] = ring.one();
        if e >= 1 {
            row[1] = g;
        }
        let ok_upto = |row: &[usize], n: usize| {
            let n = n as u32;
            ring.mul(ring.from_int(factorial(n)), row[n as usize]) == ring.pow(g, n as u64)
                && (1..n).all(|m| {
                    ring.mul(row[m as usize], row[(n - m) as usize]) == ring.mul(ring.from_int(binomial(n, m)), row[n as usize])
                })
        };
        fn fill(
            n: usize,
            row: &mut Vec<usize>,
            rows: &mut Vec<Vec<usize>>,
            elems: &[usize],
            ok: &dyn Fn(&[usize], usize) -> bool,
            nodes: &mut u128,
        ) -> Result<()> {
            if n == row.len() {
                rows.push(row.clone());
                return Ok(());
            }
            for &v in elems {
                *nodes += 1;
                if *nodes > NODE_BOUND {
                    return Err(Error::SearchBound(*nodes, NODE_BOUND));
                }
                row[n] = v;
                if ok(row, n) {
                    fill(n + 1, row, rows, elems, ok, nodes)?;
                }
            }
            Ok(())
        }
        if e >= 2 {
            fill(2, &mut row, &mut rows, &elems, &ok_upto, &mut nodes)?;
        } else {
            rows.push(row);
        }
        per_gen.push(rows);
    }
    let mut out = Vec::new();
    let mut choice = vec![0usize; gens.len()];
    loop {
        if per_gen.iter().any(|r| r.is_empty()) {
            break;
        }
        nodes += 1;
        if nodes > NODE_BOUND {
            return Err(Error::SearchBound(nodes, NODE_BOUND));
        }
        let on_gens: Vec<Vec<usize>> = choice.iter().zip(&per_gen).map(|(&c, rows)| rows[c].clone()).collect();
        if let Some(gamma) = extend(ring, ideal, e, &gens, &on_gens) {
            let pd = PdStructure { ideal: ideal.clone(), exponent: e, gamma };
            if verify_pd(ring, &pd) {
                out.push(pd);
            }
        }
        // odometer
        let mut i = 0;
        while i < choice.len() {
            choice[i] += 1;
            if choice[i] < per_gen[i].len() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
        if i == choice.len() {
            break;
        }
    }
    Ok(out)
}
