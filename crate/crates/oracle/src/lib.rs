//! Dense rational Gauss-Jordan elimination, kept deliberately naive.
//!
//! This crate exists only as a dev-dependency: tests use it as an independent
//! oracle for rank / kernel / solve results produced by the sparse engine.
//! It shares no code with the sparse implementation.

use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Rat = BigRational;

/// A dense matrix stored row-major as `rows` vectors of length `cols`.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseMat {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Vec<Rat>>,
}

impl DenseMat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        DenseMat {
            rows,
            cols,
            data: vec![vec![Rat::zero(); cols]; rows],
        }
    }

    pub fn from_rows(data: Vec<Vec<Rat>>) -> Self {
        let rows = data.len();
        let cols = data.first().map_or(0, |r| r.len());
        for r in &data {
            assert_eq!(r.len(), cols, "ragged rows");
        }
        DenseMat { rows, cols, data }
    }

    pub fn from_triplets(rows: usize, cols: usize, triplets: &[(usize, usize, Rat)]) -> Self {
        let mut m = Self::zero(rows, cols);
        for (r, c, v) in triplets {
            m.data[*r][*c] = v.clone();
        }
        m
    }

    /// Reduced row-echelon form together with the pivot columns.
    pub fn rref(&self) -> (DenseMat, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row >= m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m.data[r][col].is_zero()) else {
                continue;
            };
            m.data.swap(row, p);
            let inv = m.data[row][col].clone();
            for c in col..m.cols {
                let v = m.data[row][c].clone() / inv.clone();
                m.data[row][c] = v;
            }
            for r in 0..m.rows {
                if r != row && !m.data[r][col].is_zero() {
                    let f = m.data[r][col].clone();
                    for c in col..m.cols {
                        let v = m.data[r][c].clone() - f.clone() * m.data[row][c].clone();
                        m.data[r][c] = v;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel, one vector per free column, in column order.
    pub fn kernel(&self) -> Vec<Vec<Rat>> {
        let (rref, pivots) = self.rref();
        let pivot_set: Vec<Option<usize>> = {
            let mut v = vec![None; self.cols];
            for (i, &c) in pivots.iter().enumerate() {
                v[c] = Some(i);
            }
            v
        };
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_set[free].is_some() {
                continue;
            }
            let mut vec = vec![Rat::zero(); self.cols];
            vec[free] = Rat::one();
            for (i, &pc) in pivots.iter().enumerate() {
                vec[pc] = -rref.data[i][free].clone();
            }
            basis.push(vec);
        }
        basis
    }

    /// Solve `self * x = b`, free variables set to zero; `None` if inconsistent.
    pub fn solve(&self, b: &[Rat]) -> Option<Vec<Rat>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = self.clone();
        for (r, v) in b.iter().enumerate() {
            aug.data[r].push(v.clone());
        }
        aug.cols += 1;
        let (rref, pivots) = aug.rref();
        if pivots.contains(&self.cols) {
            return None;
        }
        let mut x = vec![Rat::zero(); self.cols];
        for (i, &pc) in pivots.iter().enumerate() {
            x[pc] = rref.data[i][self.cols].clone();
        }
        Some(x)
    }

    pub fn mul_vec(&self, x: &[Rat]) -> Vec<Rat> {
        assert_eq!(x.len(), self.cols);
        self.data
            .iter()
            .map(|row| {
                row.iter()
                    .zip(x)
                    .fold(Rat::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn r(n: i64) -> Rat {
        Rat::from(BigInt::from(n))
    }

    #[test]
    fn rank_of_identity() {
        let m = DenseMat::from_rows(vec![vec![r(1), r(0)], vec![r(0), r(1)]]);
        assert_eq!(m.rank(), 2);
        assert!(m.kernel().is_empty());
    }

    #[test]
    fn kernel_of_row() {
        let m = DenseMat::from_rows(vec![vec![r(1), r(1)]]);
        let k = m.kernel();
        assert_eq!(k.len(), 1);
        assert!(m.mul_vec(&k[0]).iter().all(|v| v.is_zero()));
    }

    #[test]
    fn solve_inconsistent() {
        let m = DenseMat::zero(2, 2);
        assert!(m.solve(&[r(1), r(0)]).is_none());
        assert_eq!(m.solve(&[r(0), r(0)]), Some(vec![r(0), r(0)]));
    }
}
