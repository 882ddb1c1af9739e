//! Algebra laws given by structure constants, and the basic structural
//! operations: Leibniz/Lie identity checks, ideal of squares, right center,
//! quotients and base change.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::rat::Rat;
use crate::sparse::SparseMat;
use crate::subspace::Subspace;

/// A bilinear law on a based vector space, stored as the sparse table of
/// structure constants `c[i][j][k]` with `[e_i, e_j] = sum_k c[i][j][k] e_k`.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraLaw {
    dim: usize,
    basis_labels: Vec<String>,
    c: BTreeMap<(usize, usize), Vec<(usize, Rat)>>,
}

impl AlgebraLaw {
    /// The zero (abelian) law.
    pub fn abelian(dim: usize) -> Self {
        AlgebraLaw {
            dim,
            basis_labels: (0..dim).map(|i| format!("x{i}")).collect(),
            c: BTreeMap::new(),
        }
    }

    pub fn from_brackets(
        dim: usize,
        basis_labels: Vec<String>,
        brackets: Vec<(usize, usize, Vec<(usize, Rat)>)>,
    ) -> Result<Self> {
        if basis_labels.len() != dim {
            return Err(Error::DimensionMismatch(format!(
                "{} labels for dimension {dim}",
                basis_labels.len()
            )));
        }
        let mut law = AlgebraLaw {
            dim,
            basis_labels,
            c: BTreeMap::new(),
        };
        for (i, j, terms) in brackets {
            law.add_bracket_terms(i, j, terms)?;
        }
        Ok(law)
    }

    pub fn add_bracket_terms(&mut self, i: usize, j: usize, terms: Vec<(usize, Rat)>) -> Result<()> {
        if i >= self.dim || j >= self.dim || terms.iter().any(|(k, _)| *k >= self.dim) {
            return Err(Error::DimensionMismatch(format!(
                "bracket ({i}, {j}) out of range for dimension {}",
                self.dim
            )));
        }
        let entry = self.c.entry((i, j)).or_default();
        entry.extend(terms);
        entry.sort_by_key(|(k, _)| *k);
        let mut merged: Vec<(usize, Rat)> = Vec::with_capacity(entry.len());
        for (k, v) in entry.drain(..) {
            match merged.last_mut() {
                Some((lk, lv)) if *lk == k => *lv += v,
                _ => merged.push((k, v)),
            }
        }
        merged.retain(|(_, v)| !v.is_zero());
        if merged.is_empty() {
            self.c.remove(&(i, j));
        } else {
            *entry = merged;
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis_labels(&self) -> &[String] {
        &self.basis_labels
    }

    pub fn set_basis_labels(&mut self, labels: Vec<String>) {
        assert_eq!(labels.len(), self.dim);
        self.basis_labels = labels;
    }

    /// `[e_i, e_j]` as a sparse target list, sorted by target index.
    pub fn bracket_basis(&self, i: usize, j: usize) -> &[(usize, Rat)] {
        self.c.get(&(i, j)).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn brackets(&self) -> impl Iterator<Item = (usize, usize, &[(usize, Rat)])> {
        self.c.iter().map(|(&(i, j), t)| (i, j, t.as_slice()))
    }

    pub fn nonzero_bracket_entries(&self) -> usize {
        self.c.values().map(Vec::len).sum()
    }

    pub fn bracket_vec(&self, x: &[Rat], y: &[Rat]) -> Vec<Rat> {
        assert!(x.len() == self.dim && y.len() == self.dim);
        let mut out = vec![Rat::zero(); self.dim];
        for (&(i, j), terms) in &self.c {
            if x[i].is_zero() || y[j].is_zero() {
                continue;
            }
            let f = x[i].clone() * y[j].clone();
            for (k, v) in terms {
                out[*k] += f.clone() * v.clone();
            }
        }
        out
    }

    fn basis_vec(&self, i: usize) -> Vec<Rat> {
        let mut v = vec![Rat::zero(); self.dim];
        v[i] = crate::rat::one();
        v
    }

    /// `[[e_i,e_j],e_k] - [[e_i,e_k],e_j] - [e_i,[e_j,e_k]]`, the Leibniz
    /// defect on one basis triple.
    pub fn residual_at(&self, i: usize, j: usize, k: usize) -> Vec<Rat> {
        let mut out = vec![Rat::zero(); self.dim];
        for (a, v) in self.bracket_basis(i, j) {
            for (b, w) in self.bracket_basis(*a, k) {
                out[*b] += v.clone() * w.clone();
            }
        }
        for (a, v) in self.bracket_basis(i, k) {
            for (b, w) in self.bracket_basis(*a, j) {
                out[*b] -= v.clone() * w.clone();
            }
        }
        for (a, v) in self.bracket_basis(j, k) {
            for (b, w) in self.bracket_basis(i, *a) {
                out[*b] -= v.clone() * w.clone();
            }
        }
        out
    }

    /// First basis triple violating the Leibniz identity, if any.
    pub fn leibniz_defect(&self) -> Option<(usize, usize, usize)> {
        for i in 0..self.dim {
            for j in 0..self.dim {
                for k in 0..self.dim {
                    if self.residual_at(i, j, k).iter().any(|v| !v.is_zero()) {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    pub fn is_leibniz(&self) -> bool {
        self.leibniz_defect().is_none()
    }

    pub fn require_leibniz(&self) -> Result<()> {
        match self.leibniz_defect() {
            None => Ok(()),
            Some((i, j, k)) => Err(Error::NotLeibniz(i, j, k)),
        }
    }

    /// The full trilinear defect table, flattened in lexicographic order of
    /// `(i, j, k, target)`.
    pub fn leibniz_residual(&self) -> Vec<Rat> {
        let d = self.dim;
        let mut out = Vec::with_capacity(d * d * d * d);
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    out.extend(self.residual_at(i, j, k));
                }
            }
        }
        out
    }

    /// True iff the structure constants are antisymmetric and the Leibniz
    /// identity holds (which together give the Jacobi identity).
    pub fn is_lie(&self) -> bool {
        for (&(i, j), terms) in &self.c {
            let ji = self.bracket_basis(j, i);
            if ji.len() != terms.len()
                || !terms
                    .iter()
                    .zip(ji)
                    .all(|((k, v), (k2, w))| k == k2 && v.clone() + w.clone() == Rat::zero())
            {
                return false;
            }
        }
        self.is_leibniz()
    }

    pub fn require_lie(&self) -> Result<()> {
        if self.is_lie() {
            Ok(())
        } else {
            Err(Error::NotLie("bracket not antisymmetric or not Jacobi".into()))
        }
    }

    /// The smallest subspace containing all squares `[x, x]` that is closed
    /// under left and right multiplication, computed by breadth-first closure
    /// with echelon reduction.
    pub fn ideal_of_squares(&self) -> Result<Subspace> {
        self.require_leibniz()?;
        let mut space = Subspace::zero(self.dim);
        let mut queue: Vec<Vec<Rat>> = Vec::new();
        let push = |space: &mut Subspace, queue: &mut Vec<Vec<Rat>>, v: Vec<Rat>| {
            if space.insert(v.clone()) {
                queue.push(v);
            }
        };
        for i in 0..self.dim {
            let sq: Vec<Rat> = self
                .bracket_basis_dense(i, i);
            push(&mut space, &mut queue, sq);
            for j in 0..i {
                let mut sym = self.bracket_basis_dense(i, j);
                for (s, t) in sym.iter_mut().zip(self.bracket_basis_dense(j, i)) {
                    *s += t;
                }
                push(&mut space, &mut queue, sym);
            }
        }
        while let Some(v) = queue.pop() {
            for i in 0..self.dim {
                let left = self.bracket_vec(&self.basis_vec(i), &v);
                push(&mut space, &mut queue, left);
                let right = self.bracket_vec(&v, &self.basis_vec(i));
                push(&mut space, &mut queue, right);
            }
        }
        Ok(space)
    }

    fn bracket_basis_dense(&self, i: usize, j: usize) -> Vec<Rat> {
        let mut out = vec![Rat::zero(); self.dim];
        for (k, v) in self.bracket_basis(i, j) {
            out[*k] += v.clone();
        }
        out
    }

    /// `{ z : [x, z] = 0 for all x }`, as an echelonized subspace.
    pub fn right_center(&self) -> Subspace {
        let mut triplets = Vec::new();
        // rows indexed by (i, component), columns by the z-coordinate j
        for (&(i, j), terms) in &self.c {
            for (k, v) in terms {
                triplets.push((i * self.dim + k, j, v.clone()));
            }
        }
        let m = SparseMat::from_triplets(self.dim * self.dim, self.dim, triplets);
        Subspace::from_spanning(self.dim, m.kernel_basis())
    }

    /// Induced law on the complement of a two-sided ideal; the complement is
    /// spanned by the standard basis vectors away from the ideal's pivots.
    pub fn quotient_law(&self, ideal: &Subspace) -> Result<AlgebraLaw> {
        if ideal.ambient_dim() != self.dim {
            return Err(Error::DimensionMismatch("ideal ambient dimension".into()));
        }
        for (bi, v) in ideal.basis().enumerate() {
            for i in 0..self.dim {
                let l = self.bracket_vec(&self.basis_vec(i), v);
                let r = self.bracket_vec(v, &self.basis_vec(i));
                if !ideal.contains(&l) || !ideal.contains(&r) {
                    return Err(Error::NotAnIdeal(format!(
                        "bracket of basis vector {i} with ideal vector {bi}"
                    )));
                }
            }
        }
        let comp = ideal.complement_indices();
        let pos: std::collections::HashMap<usize, usize> =
            comp.iter().enumerate().map(|(n, &i)| (i, n)).collect();
        let labels = comp
            .iter()
            .map(|&i| self.basis_labels[i].clone())
            .collect();
        let mut law = AlgebraLaw {
            dim: comp.len(),
            basis_labels: labels,
            c: BTreeMap::new(),
        };
        for (a, &ia) in comp.iter().enumerate() {
            for (b, &ib) in comp.iter().enumerate() {
                let mut w = vec![Rat::zero(); self.dim];
                for (k, v) in self.bracket_basis(ia, ib) {
                    w[*k] = v.clone();
                }
                let reduced = ideal.reduce(w);
                let terms: Vec<(usize, Rat)> = reduced
                    .iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .map(|(k, v)| (pos[&k], v.clone()))
                    .collect();
                law.add_bracket_terms(a, b, terms)?;
            }
        }
        Ok(law)
    }

    /// The base-change action `(g . law)(x, y) = g(law(g^-1 x, g^-1 y))`.
    pub fn change_of_basis(&self, g: &SparseMat) -> Result<AlgebraLaw> {
        if g.rows() != self.dim || g.cols() != self.dim {
            return Err(Error::DimensionMismatch("base change matrix".into()));
        }
        let mut inv_cols = Vec::with_capacity(self.dim);
        for i in 0..self.dim {
            let col = g.solve(&self.basis_vec(i)).ok_or(Error::SingularMatrix)?;
            inv_cols.push(col);
        }
        let mut law = AlgebraLaw {
            dim: self.dim,
            basis_labels: self.basis_labels.clone(),
            c: BTreeMap::new(),
        };
        for i in 0..self.dim {
            for j in 0..self.dim {
                let w = self.bracket_vec(&inv_cols[i], &inv_cols[j]);
                let gw = g.mul_vec(&w);
                let terms: Vec<(usize, Rat)> = gw
                    .into_iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .collect();
                law.add_bracket_terms(i, j, terms)?;
            }
        }
        Ok(law)
    }

    /// Rewrite the law in the basis given by the columns of `basis`; this is
    /// `change_of_basis` with `g = basis^-1`, computed without inverting.
    pub fn law_in_basis(&self, basis: &SparseMat, labels: Vec<String>) -> Result<AlgebraLaw> {
        if basis.rows() != self.dim || basis.cols() != self.dim {
            return Err(Error::DimensionMismatch("basis matrix".into()));
        }
        let cols: Vec<Vec<Rat>> = (0..self.dim).map(|i| basis.col_as_dense(i)).collect();
        let mut law = AlgebraLaw {
            dim: self.dim,
            basis_labels: labels,
            c: BTreeMap::new(),
        };
        for i in 0..self.dim {
            for j in 0..self.dim {
                let w = self.bracket_vec(&cols[i], &cols[j]);
                let coords = basis.solve(&w).ok_or(Error::SingularMatrix)?;
                let terms: Vec<(usize, Rat)> = coords
                    .into_iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .collect();
                law.add_bracket_terms(i, j, terms)?;
            }
        }
        Ok(law)
    }

    /// Reverse index: all `(i, j, c)` with `c[i][j][target] = c != 0`,
    /// grouped by target. Used by the coboundary builders.
    pub fn pairs_by_target(&self) -> Vec<Vec<(usize, usize, Rat)>> {
        let mut out = vec![Vec::new(); self.dim];
        for (&(i, j), terms) in &self.c {
            for (k, v) in terms {
                out[*k].push((i, j, v.clone()));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructors::{heisenberg3, sl2};
    use crate::rat::rat;

    #[test]
    fn abelian_is_lie() {
        let a = AlgebraLaw::abelian(4);
        assert!(a.is_lie());
        assert!(a.is_leibniz());
        assert_eq!(a.right_center().dim(), 4);
    }

    #[test]
    fn sl2_residual_vanishes_and_perturbation_breaks_it() {
        let g = sl2();
        assert!(g.leibniz_residual().iter().all(|v| v.is_zero()));
        let mut bad = g.clone();
        bad.add_bracket_terms(0, 1, vec![(0, rat(1))]).unwrap();
        assert!(bad.leibniz_defect().is_some());
    }

    #[test]
    fn sl2_is_simple_enough() {
        let g = sl2();
        assert!(g.is_lie());
        assert_eq!(g.right_center().dim(), 0);
        assert_eq!(g.nonzero_bracket_entries(), 6);
        assert_eq!(g.ideal_of_squares().unwrap().dim(), 0);
    }

    #[test]
    fn quotient_by_zero_is_identity() {
        let g = sl2();
        let q = g.quotient_law(&Subspace::zero(3)).unwrap();
        assert_eq!(q, g);
    }

    #[test]
    fn abelian_quotient() {
        let a = AlgebraLaw::abelian(3);
        let mut line = Subspace::zero(3);
        line.insert(vec![rat(0), rat(0), rat(1)]);
        let q = a.quotient_law(&line).unwrap();
        assert_eq!(q.dim(), 2);
        assert!(q.is_lie());
    }

    #[test]
    fn change_of_basis_is_a_group_action() {
        let g = heisenberg3();
        // diag(1, 2, 3)
        let d = SparseMat::from_triplets(
            3,
            3,
            vec![(0, 0, rat(1)), (1, 1, rat(2)), (2, 2, rat(3))],
        );
        let dinv = SparseMat::from_triplets(
            3,
            3,
            vec![
                (0, 0, rat(1)),
                (1, 1, crate::rat::frac(1, 2)),
                (2, 2, crate::rat::frac(1, 3)),
            ],
        );
        let moved = g.change_of_basis(&d).unwrap();
        let back = moved.change_of_basis(&dinv).unwrap();
        assert_eq!(back, g);
        let id = SparseMat::identity(3);
        assert_eq!(g.change_of_basis(&id).unwrap(), g);
    }

    #[test]
    fn permuted_sl2_is_still_lie() {
        let g = sl2();
        let p = SparseMat::from_triplets(
            3,
            3,
            vec![(0, 2, rat(1)), (1, 0, rat(1)), (2, 1, rat(1))],
        );
        let moved = g.change_of_basis(&p).unwrap();
        assert!(moved.is_lie());
        assert!(moved.leibniz_residual().iter().all(|v| v.is_zero()));
    }

    #[test]
    fn singular_base_change_rejected() {
        let g = sl2();
        let z = SparseMat::zero(3, 3);
        assert!(matches!(
            g.change_of_basis(&z),
            Err(Error::SingularMatrix)
        ));
    }

    #[test]
    fn heisenberg_center_and_squares() {
        let g = heisenberg3();
        assert!(g.is_lie());
        // center is the line through e3
        let z = g.right_center();
        assert_eq!(z.dim(), 1);
        assert!(z.contains(&[rat(0), rat(0), rat(1)]));
        assert_eq!(g.ideal_of_squares().unwrap().dim(), 0);
    }
}
