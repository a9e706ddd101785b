//! Point sets `Hom(B, R)` over finite rings by exhaustive search.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::base::FiniteRing;
use crate::error::{Error, Result};
use crate::par::{map_range, Exec};
use crate::poly::QPoly;
use crate::tate::Presentation;

/// Largest search space `|R|^n` explored.
pub const SEARCH_BOUND: u128 = 1_000_000;

/// Homomorphisms `B -> R`, each a tuple of variable images (base variables
/// first), in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PointSet {
    pub ring: String,
    pub vars: Vec<String>,
    pub points: Vec<Vec<usize>>,
}

impl PointSet {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, x: &[usize]) -> bool {
        self.points.binary_search_by(|p| p.as_slice().cmp(x)).is_ok()
    }
}

/// A polynomial with coefficients mapped into `R`.
pub(crate) struct Evaluator {
    terms: Vec<(Vec<u32>, usize)>,
}

fn coefficient_in(ring: &FiniteRing, q: &num_rational::BigRational) -> Result<usize> {
    let c = BigInt::from(ring.characteristic());
    let lift = |n: &BigInt| n.mod_floor(&c).to_i64().expect("characteristic fits");
    let num = ring.from_int(lift(q.numer()));
    let den = ring.from_int(lift(q.denom()));
    let inv = ring
        .inverse(den)
        .ok_or_else(|| Error::Coefficient(format!("{q} in {}", ring.name())))?;
    Ok(ring.mul(num, inv))
}

impl Evaluator {
    pub(crate) fn new(ring: &FiniteRing, f: &QPoly) -> Result<Self> {
        let terms = f
            .terms()
            .map(|(m, c)| Ok((m.0.clone(), coefficient_in(ring, c)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Evaluator { terms })
    }

    pub(crate) fn eval(&self, ring: &FiniteRing, x: &[usize]) -> usize {
        self.terms.iter().fold(ring.zero(), |acc, (e, c)| {
            let t = e.iter().zip(x).fold(*c, |t, (&k, &xi)| if k == 0 { t } else { ring.mul(t, ring.pow(xi, k as u64)) });
            ring.add(acc, t)
        })
    }
}

/// All of `Hom(B, R)` for the absolute ring of `pres`.
pub fn point_set(pres: &Presentation, ring: &FiniteRing, exec: Exec) -> Result<PointSet> {
    if !pres.coefficients().admits_map_to(ring) {
        return Err(Error::Incompatible(format!("{} does not map to {}", pres.coefficients(), ring.name())));
    }
    let n = pres.nvars();
    let q = ring.cardinality();
    let space = (q as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if space > SEARCH_BOUND {
        return Err(Error::SearchBound(space, SEARCH_BOUND));
    }
    let rels = pres.all_relations().iter().map(|r| Evaluator::new(ring, r)).collect::<Result<Vec<_>>>()?;
    let holds = |x: &[usize]| rels.iter().all(|r| r.eval(ring, x) == ring.zero());
    let points = if n == 0 {
        if holds(&[]) { vec![vec![]] } else { vec![] }
    } else {
        let rest = space / q as u128;
        let chunks = map_range(exec, q, |first| {
            let mut found = Vec::new();
            let mut x = vec![0usize; n];
            x[0] = first;
            for idx in 0..rest {
                let mut k = idx;
                for slot in x[1..].iter_mut().rev() {
                    *slot = (k % q as u128) as usize;
                    k /= q as u128;
                }
                if holds(&x) {
                    found.push(x.clone());
                }
            }
            found
        });
        chunks.into_iter().flatten().collect()
    };
    Ok(PointSet { ring: ring.name().to_string(), vars: pres.vars().to_vec(), points })
}

/// `Hom(B, R_red)`: the de Rham points, since in a finite ring the
/// nilradical is the largest nilpotent ideal.
pub fn de_rham_point_set(pres: &Presentation, ring: &FiniteRing, exec: Exec) -> Result<PointSet> {
    let (red, _) = ring.reduction();
    point_set(pres, &red, exec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base::RingSpec;
    use crate::poly::parse::names;
    use crate::tate::Coefficients;

    fn ring(s: &str) -> FiniteRing {
        RingSpec::parse(s).unwrap().build().unwrap()
    }

    fn pres(c: Coefficients, rel: &str) -> Presentation {
        let a = Presentation::free(c, vec![]).unwrap();
        let v = names(&["T"]);
        Presentation::quotient(&a, v.clone(), vec![crate::poly::parse::parse_poly(rel, &v).unwrap()]).unwrap()
    }

    #[test]
    fn examples() {
        let idem = pres(Coefficients::Fp(2), "T^2 - T");
        let sq = pres(Coefficients::Fp(2), "T^2");
        let f2 = ring("GF(2)");
        let dual = ring("Quot(GF(2),[e],[e^2])");
        assert_eq!(point_set(&idem, &f2, Exec::Sequential).unwrap().points, vec![vec![0], vec![1]]);
        assert_eq!(point_set(&sq, &f2, Exec::Sequential).unwrap().len(), 1);
        assert_eq!(point_set(&sq, &dual, Exec::Parallel).unwrap().len(), 2);
        assert_eq!(de_rham_point_set(&sq, &dual, Exec::Sequential).unwrap().len(), 1);
        let z = pres(Coefficients::Zp(2), "T^2 - T");
        assert_eq!(point_set(&z, &ring("Zmod(4)"), Exec::Sequential).unwrap().len(), 2);
        assert!(point_set(&idem, &ring("Zmod(4)"), Exec::Sequential).is_err());
    }

    #[test]
    fn search_bound() {
        let a = Presentation::free(Coefficients::Fp(2), names(&["a", "b", "c", "d"])).unwrap();
        let r = ring("Quot(GF(2),[x],[x^6])");
        assert!(matches!(point_set(&a, &r, Exec::Sequential), Err(Error::SearchBound(..))));
    }
}
