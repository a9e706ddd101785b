use std::cmp::Ordering;

/// Exponent vector of a monomial.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming divisibility.
    pub fn quotient(&self, other: &Monomial) -> Monomial {
        Monomial(other.0.iter().zip(&self.0).map(|(b, a)| b - a).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }
}

/// Block graded reverse lexicographic order. Variables are ordered by index
/// (`x0 > x1 > ...`); earlier blocks dominate later ones, and each block is
/// compared by grevlex on its own variables. A single block is plain grevlex.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MonomialOrder {
    blocks: Vec<usize>,
}

impl MonomialOrder {
    pub fn grevlex() -> Self {
        MonomialOrder { blocks: Vec::new() }
    }

    /// Elimination order with the given block sizes. A trailing block may be
    /// omitted; remaining variables form the last block.
    pub fn blocks(sizes: Vec<usize>) -> Self {
        MonomialOrder { blocks: sizes }
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let n = a.0.len();
        let mut start = 0;
        for &size in &self.blocks {
            let end = (start + size).min(n);
            let o = grevlex_range(&a.0[start..end], &b.0[start..end]);
            if o != Ordering::Equal {
                return o;
            }
            start = end;
        }
        if start < n {
            grevlex_range(&a.0[start..], &b.0[start..])
        } else {
            Ordering::Equal
        }
    }
}

impl Default for MonomialOrder {
    fn default() -> Self {
        Self::grevlex()
    }
}

fn grevlex_range(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    if da != db {
        return da.cmp(&db);
    }
    for (x, y) in a.iter().zip(b).rev() {
        if x != y {
            return y.cmp(x);
        }
    }
    Ordering::Equal
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grevlex_basics() {
        let o = MonomialOrder::grevlex();
        // x^2 > xy > y^2 > x > y > 1 in two variables
        let ms = [
            Monomial(vec![2, 0]),
            Monomial(vec![1, 1]),
            Monomial(vec![0, 2]),
            Monomial(vec![1, 0]),
            Monomial(vec![0, 1]),
            Monomial(vec![0, 0]),
        ];
        for w in ms.windows(2) {
            assert_eq!(o.cmp(&w[0], &w[1]), Ordering::Greater);
        }
        // grevlex: x y^2 z^0 vs x^2 z: last differing variable z, smaller exponent wins
        assert_eq!(
            o.cmp(&Monomial(vec![1, 2, 0]), &Monomial(vec![2, 0, 1])),
            Ordering::Greater
        );
    }

    #[test]
    fn block_order_eliminates() {
        let o = MonomialOrder::blocks(vec![1]);
        // u (block 0) beats any power of T (block 1)
        assert_eq!(
            o.cmp(&Monomial(vec![1, 0]), &Monomial(vec![0, 9])),
            Ordering::Greater
        );
    }
}
