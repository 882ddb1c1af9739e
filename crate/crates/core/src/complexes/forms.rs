//! Invariant symmetric bilinear forms on a Lie algebra (in characteristic
//! zero these are the invariant quadratic forms).

use num_traits::Zero;

use crate::algebra::AlgebraLaw;
use crate::error::Result;
use crate::sparse::SparseMat;

/// Solve `B([x,y],z) + B(y,[x,z]) = 0` over symmetric `B`; returns the
/// dimension and an echelonized basis of symmetric matrices.
pub fn invariant_quadratic_forms(g: &AlgebraLaw) -> Result<(usize, Vec<SparseMat>)> {
    g.require_lie()?;
    let dim = g.dim();
    let pairs: Vec<(usize, usize)> = (0..dim)
        .flat_map(|a| (a..dim).map(move |b| (a, b)))
        .collect();
    let pair_index: std::collections::HashMap<(usize, usize), usize> = pairs
        .iter()
        .enumerate()
        .map(|(i, &p)| (p, i))
        .collect();
    let var = |a: usize, b: usize| pair_index[&(a.min(b), a.max(b))];

    let mut triplets = Vec::new();
    let mut row = 0;
    for x in 0..dim {
        for y in 0..dim {
            for z in 0..dim {
                for (k, c) in g.bracket_basis(x, y) {
                    triplets.push((row, var(*k, z), c.clone()));
                }
                for (k, c) in g.bracket_basis(x, z) {
                    triplets.push((row, var(y, *k), c.clone()));
                }
                row += 1;
            }
        }
    }
    let system = SparseMat::from_triplets(row, pairs.len(), triplets);
    let kernel = system.kernel_basis();
    let basis = kernel
        .iter()
        .map(|v| {
            let mut entries = Vec::new();
            for (i, &(a, b)) in pairs.iter().enumerate() {
                if v[i].is_zero() {
                    continue;
                }
                entries.push((a, b, v[i].clone()));
                if a != b {
                    entries.push((b, a, v[i].clone()));
                }
            }
            SparseMat::from_triplets(dim, dim, entries)
        })
        .collect();
    Ok((kernel.len(), basis))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructors::{abelian, sl2};

    #[test]
    fn sl2_has_the_killing_line() {
        let (dim, basis) = invariant_quadratic_forms(&sl2()).unwrap();
        assert_eq!(dim, 1);
        let b = &basis[0];
        // an invariant form on sl2 pairs e with f and h with itself
        assert!(!b.get(0, 2).is_zero());
        assert!(!b.get(1, 1).is_zero());
        assert!(b.get(0, 0).is_zero());
        // Killing proportions: B(h,h) = 2 B(e,f)
        assert_eq!(b.get(1, 1), b.get(0, 2).clone() * crate::rat::rat(2));
    }

    #[test]
    fn abelian_forms_are_unconstrained() {
        let (dim, _) = invariant_quadratic_forms(&abelian(4)).unwrap();
        assert_eq!(dim, 4 * 5 / 2);
    }
}
