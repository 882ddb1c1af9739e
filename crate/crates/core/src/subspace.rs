//! Subspaces in reduced echelon form.
//!
//! The basis rows are kept in reduced row-echelon form (pivots 1, pivot
//! columns cleared elsewhere, rows ordered by pivot column), which makes the
//! representation unique: two subspaces are equal iff their bases are equal.

use num_traits::{One, Zero};

use crate::rat::Rat;

#[derive(Clone, Debug, PartialEq)]
pub struct Subspace {
    ambient: usize,
    /// RREF rows, each with its pivot column; sorted by pivot column.
    basis: Vec<(usize, Vec<Rat>)>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        let mut s = Self::zero(ambient);
        for i in 0..ambient {
            let mut v = vec![Rat::zero(); ambient];
            v[i] = Rat::one();
            s.insert(v);
        }
        s
    }

    pub fn from_spanning<I>(ambient: usize, vectors: I) -> Self
    where
        I: IntoIterator<Item = Vec<Rat>>,
    {
        let mut s = Self::zero(ambient);
        for v in vectors {
            s.insert(v);
        }
        s
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> impl Iterator<Item = &[Rat]> {
        self.basis.iter().map(|(_, v)| v.as_slice())
    }

    pub fn pivot_columns(&self) -> Vec<usize> {
        self.basis.iter().map(|(p, _)| *p).collect()
    }

    /// Standard basis indices not used as pivots; they span a deterministic
    /// complement.
    pub fn complement_indices(&self) -> Vec<usize> {
        let pivots: std::collections::HashSet<usize> = self.pivot_columns().into_iter().collect();
        (0..self.ambient).filter(|i| !pivots.contains(i)).collect()
    }

    /// Reduce `v` against the basis; the remainder has zeros in all pivot
    /// columns.
    pub fn reduce(&self, mut v: Vec<Rat>) -> Vec<Rat> {
        assert_eq!(v.len(), self.ambient);
        for (pivot, row) in &self.basis {
            if v[*pivot].is_zero() {
                continue;
            }
            let f = v[*pivot].clone();
            for (x, r) in v.iter_mut().zip(row) {
                *x -= f.clone() * r.clone();
            }
        }
        v
    }

    pub fn contains(&self, v: &[Rat]) -> bool {
        self.reduce(v.to_vec()).iter().all(|x| x.is_zero())
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis().all(|v| self.contains(v))
    }

    /// Insert a vector, returning true when it enlarged the span.
    pub fn insert(&mut self, v: Vec<Rat>) -> bool {
        let mut v = self.reduce(v);
        let Some(pivot) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[pivot].clone();
        for x in v.iter_mut() {
            *x = x.clone() / inv.clone();
        }
        // clear the new pivot column from existing rows to stay reduced
        for (_, row) in self.basis.iter_mut() {
            if row[pivot].is_zero() {
                continue;
            }
            let f = row[pivot].clone();
            for (x, nv) in row.iter_mut().zip(&v) {
                *x -= f.clone() * nv.clone();
            }
        }
        let pos = self
            .basis
            .binary_search_by_key(&pivot, |(p, _)| *p)
            .unwrap_err();
        self.basis.insert(pos, (pivot, v));
        true
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut s = self.clone();
        for v in other.basis() {
            s.insert(v.to_vec());
        }
        s
    }

    /// Coordinates of `v` in terms of the basis rows, or `None` when `v` is
    /// outside the subspace.
    pub fn coordinates(&self, v: &[Rat]) -> Option<Vec<Rat>> {
        let coords: Vec<Rat> = self.basis.iter().map(|(p, _)| v[*p].clone()).collect();
        let mut check = v.to_vec();
        for ((_, row), c) in self.basis.iter().zip(&coords) {
            for (x, r) in check.iter_mut().zip(row) {
                *x -= c.clone() * r.clone();
            }
        }
        if check.iter().all(|x| x.is_zero()) {
            Some(coords)
        } else {
            None
        }
    }

    pub fn intersects_trivially(&self, other: &Subspace) -> bool {
        self.sum(other).dim() == self.dim() + other.dim()
    }
}
