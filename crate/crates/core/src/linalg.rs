//! Dense row reduction over GF(p).

use crate::field::PrimeField;

/// Incrementally built row space in semi-echelon form: every stored row has
/// a pivot entry equal to 1 and vanishes at the pivots of earlier rows.
#[derive(Clone, Debug)]
pub struct Echelon {
    field: PrimeField,
    dim: usize,
    rows: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(field: PrimeField, dim: usize) -> Self {
        Echelon { field, dim, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Pivot columns; a reduced vector vanishes at all of them.
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Reduces `v` against the stored rows in place.
    pub fn reduce(&self, v: &mut [u32]) {
        let f = &self.field;
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let c = v[p];
            if c != 0 {
                let c = f.neg(c);
                for (a, &b) in v.iter_mut().zip(row.iter()) {
                    if b != 0 {
                        *a = f.add(*a, f.mul(c, b));
                    }
                }
            }
        }
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|&x| x == 0)
    }

    /// Adds `v` to the span; returns whether it was independent.
    pub fn insert(&mut self, v: &[u32]) -> bool {
        debug_assert_eq!(v.len(), self.dim);
        let mut w = v.to_vec();
        self.reduce(&mut w);
        match w.iter().position(|&x| x != 0) {
            None => false,
            Some(p) => {
                let inv = self.field.inv_nz(w[p]);
                for a in w.iter_mut() {
                    *a = self.field.mul(*a, inv);
                }
                self.rows.push(w);
                self.pivots.push(p);
                true
            }
        }
    }
}

/// Basis of the kernel of the linear map sending the `i`-th source basis
/// vector to `images[i]` (each of length `target_dim`).
pub fn kernel(field: PrimeField, images: &[Vec<u32>], target_dim: usize) -> Vec<Vec<u32>> {
    let n = images.len();
    let f = &field;
    // rows: [image | identity]
    let mut rows: Vec<(Vec<u32>, Vec<u32>)> = images
        .iter()
        .enumerate()
        .map(|(i, im)| {
            let mut id = vec![0u32; n];
            id[i] = 1;
            (im.clone(), id)
        })
        .collect();
    let mut out = Vec::new();
    let mut pivot_rows: Vec<(usize, usize)> = Vec::new(); // (pivot column, row index)
    for r in 0..rows.len() {
        // reduce row r against earlier pivot rows
        for &(p, k) in &pivot_rows {
            let c = rows[r].0[p];
            if c != 0 {
                let c = f.neg(c);
                let (head, tail) = rows.split_at_mut(r);
                let src = &head[k];
                let dst = &mut tail[0];
                for (a, &b) in dst.0.iter_mut().zip(src.0.iter()) {
                    if b != 0 {
                        *a = f.add(*a, f.mul(c, b));
                    }
                }
                for (a, &b) in dst.1.iter_mut().zip(src.1.iter()) {
                    if b != 0 {
                        *a = f.add(*a, f.mul(c, b));
                    }
                }
            }
        }
        match rows[r].0.iter().position(|&x| x != 0) {
            None => out.push(rows[r].1.clone()),
            Some(p) => {
                let inv = f.inv_nz(rows[r].0[p]);
                for a in rows[r].0.iter_mut() {
                    *a = f.mul(*a, inv);
                }
                for a in rows[r].1.iter_mut() {
                    *a = f.mul(*a, inv);
                }
                pivot_rows.push((p, r));
            }
        }
    }
    debug_assert!(images.iter().all(|im| im.len() == target_dim));
    out
}

/// Rank of a list of vectors.
pub fn rank(field: PrimeField, vectors: &[Vec<u32>], dim: usize) -> usize {
    let mut e = Echelon::new(field, dim);
    for v in vectors {
        e.insert(v);
    }
    e.rank()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_of_small_map() {
        let f = PrimeField::default();
        // e0 -> (1,0), e1 -> (0,1), e2 -> (1,1)
        let images = vec![vec![1, 0], vec![0, 1], vec![1, 1]];
        let k = kernel(f, &images, 2);
        assert_eq!(k.len(), 1);
        let v = &k[0];
        // v0 + v2 = 0 and v1 + v2 = 0
        assert_eq!(f.add(v[0], v[2]), 0);
        assert_eq!(f.add(v[1], v[2]), 0);
        assert_eq!(rank(f, &images, 2), 2);
    }

    #[test]
    fn echelon_membership() {
        let f = PrimeField::new(7).unwrap();
        let mut e = Echelon::new(f, 3);
        assert!(e.insert(&[1, 2, 3]));
        assert!(e.insert(&[0, 1, 1]));
        assert!(!e.insert(&[2, 5, 0]));
        assert!(e.contains(&[1, 3, 4]));
        assert!(!e.contains(&[0, 0, 1]));
    }
}
