//! Row reduction over a field.

use super::field::Field;

/// Row-reduced echelon form of a set of vectors, used for rank, span
/// membership and kernels.
#[derive(Debug, Clone)]
pub struct Echelon<F: Field> {
    field: F,
    width: usize,
    /// Pivot rows, each normalized to leading coefficient 1 at its pivot.
    rows: Vec<(usize, Vec<F::Elem>)>,
}

impl<F: Field> Echelon<F> {
    pub fn new(field: F, width: usize) -> Self {
        Echelon { field, width, rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the pivots; returns the residue.
    pub fn reduce(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        let f = &self.field;
        let mut v = v.to_vec();
        for (p, row) in &self.rows {
            if f.is_zero(&v[*p]) {
                continue;
            }
            let c = v[*p].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !f.is_zero(r) {
                    *x = f.sub(x, &f.mul(&c, r));
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[F::Elem]) -> bool {
        self.reduce(v).iter().all(|x| self.field.is_zero(x))
    }

    /// Inserts `v`; returns whether the rank grew.
    pub fn insert(&mut self, v: &[F::Elem]) -> bool {
        assert_eq!(v.len(), self.width);
        let f = self.field.clone();
        let mut r = self.reduce(v);
        let Some(p) = r.iter().position(|x| !f.is_zero(x)) else {
            return false;
        };
        let inv = f.inv(&r[p]).expect("nonzero pivot");
        for x in r.iter_mut() {
            *x = f.mul(x, &inv);
        }
        // Keep existing rows reduced at the new pivot.
        for (_, row) in self.rows.iter_mut() {
            if f.is_zero(&row[p]) {
                continue;
            }
            let c = row[p].clone();
            for (x, y) in row.iter_mut().zip(&r) {
                if !f.is_zero(y) {
                    *x = f.sub(x, &f.mul(&c, y));
                }
            }
        }
        self.rows.push((p, r));
        true
    }
}

/// Basis of the kernel of the linear map sending the `i`-th unit vector to
/// `images[i]` (all of length `width`). Kernel vectors have length
/// `images.len()`.
pub fn kernel<F: Field>(field: &F, images: &[Vec<F::Elem>], width: usize) -> Vec<Vec<F::Elem>> {
    let n = images.len();
    // Augment each image with its unit vector and row reduce; rows whose image
    // part vanishes give kernel vectors.
    let mut ech = Echelon::new(field.clone(), width + n);
    for (i, img) in images.iter().enumerate() {
        let mut row = img.clone();
        row.resize(width, field.zero());
        row.extend((0..n).map(|j| if j == i { field.one() } else { field.zero() }));
        ech.insert(&row);
    }
    ech.rows
        .iter()
        .filter(|(p, _)| *p >= width)
        .map(|(_, row)| row[width..].to_vec())
        .collect()
}

/// Rank of a list of vectors.
pub fn rank<F: Field>(field: &F, vectors: &[Vec<F::Elem>], width: usize) -> usize {
    let mut ech = Echelon::new(field.clone(), width);
    for v in vectors {
        ech.insert(v);
    }
    ech.rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::field::{rational, Rationals};

    #[test]
    fn kernel_of_dependent_columns() {
        let q = Rationals;
        let imgs = vec![
            vec![rational(1, 1), rational(2, 1)],
            vec![rational(2, 1), rational(4, 1)],
            vec![rational(0, 1), rational(1, 1)],
        ];
        let k = kernel(&q, &imgs, 2);
        assert_eq!(k.len(), 1);
        // k0 * (1,2) + k1 * (2,4) + k2 * (0,1) = 0
        let v = &k[0];
        let a = &v[0] + &(&v[1] * rational(2, 1));
        let b = &(&v[0] * rational(2, 1)) + &(&(&v[1] * rational(4, 1)) + &v[2]);
        assert_eq!(a, rational(0, 1));
        assert_eq!(b, rational(0, 1));
        assert_eq!(rank(&q, &imgs, 2), 2);
    }
}
