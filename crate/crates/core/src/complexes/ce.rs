//! The antisymmetric (Chevalley-Eilenberg) subcomplex of the tensor complex
//! of a Lie algebra with symmetric coefficients, and its cokernel.
//!
//! Antisymmetric cochains are included into the tensor complex by alternating
//! over all argument orders; the inclusion lands in a subcomplex, which is
//! verified entry by entry rather than assumed. The cokernel gets the basis
//! of all non-strictly-increasing tuples: the class of a cochain is its
//! deviation from the alternating cochain with the same values on increasing
//! tuples.

use std::collections::HashMap;

use num_traits::Zero;

use crate::bimodule::Bimodule;
use crate::error::{Error, Result};
use crate::rat::Rat;
use crate::sparse::SparseMat;

use super::{
    enumerate_tuples, full_labels, tuple_rank, tuple_unrank, CochainLabel, ComplexSlice,
    ComplexTriple, LodayTerms,
};

pub struct CeData {
    pub slices: Vec<ComplexSlice>,
    pub inclusions: Vec<SparseMat>,
    pub loday: Vec<ComplexSlice>,
}

fn strictly_increasing(t: &[usize]) -> bool {
    t.windows(2).all(|w| w[0] < w[1])
}

/// All permutations of `0..n` with their signs.
fn permutations_with_signs(n: usize) -> Vec<(Vec<usize>, i8)> {
    let mut out = vec![(Vec::new(), 1i8)];
    for k in 0..n {
        let mut next = Vec::with_capacity(out.len() * (k + 1));
        for (perm, sign) in &out {
            for pos in 0..=k {
                let mut p = perm.clone();
                p.insert(pos, k);
                // inserting k at `pos` jumps over k - pos larger... all previous
                // entries are < k, so the number of inversions added is k - pos
                let flips = (k - pos) % 2 == 1;
                next.push((p, if flips { -sign } else { *sign }));
            }
        }
        out = next;
    }
    out
}

fn apply_perm(perm: &[usize], t: &[usize]) -> Vec<usize> {
    perm.iter().map(|&i| t[i]).collect()
}

/// Sorting permutation sign for a tuple with distinct entries.
fn sort_sign(t: &[usize]) -> i8 {
    let mut sign = 1i8;
    let mut v = t.to_vec();
    for i in 0..v.len() {
        for j in (i + 1)..v.len() {
            if v[j] < v[i] {
                v.swap(i, j);
                sign = -sign;
            }
        }
    }
    sign
}

fn has_repeat(t: &[usize]) -> bool {
    let mut v = t.to_vec();
    v.sort_unstable();
    v.windows(2).any(|w| w[0] == w[1])
}

fn check_ce_inputs(module: &Bimodule) -> Result<()> {
    module.algebra.require_lie()?;
    if !module.is_symmetric() {
        return Err(Error::NotSymmetricModule(0));
    }
    Ok(())
}

/// Inclusion of antisymmetric cochains: the degree-`n` basis cochain on an
/// increasing tuple extends by alternation.
fn inclusion_matrix(dim: usize, dim_m: usize, n: usize, increasing: &[Vec<usize>]) -> SparseMat {
    let perms = permutations_with_signs(n);
    let rows = dim.pow(n as u32) * dim_m;
    let mut cols = Vec::with_capacity(increasing.len() * dim_m);
    for tuple in increasing {
        for t in 0..dim_m {
            let mut entries = Vec::with_capacity(perms.len());
            for (perm, sign) in &perms {
                let image = apply_perm(perm, tuple);
                let row = tuple_rank(dim, &image) * dim_m + t;
                let v = if *sign > 0 {
                    Rat::from_integer(1.into())
                } else {
                    Rat::from_integer((-1).into())
                };
                entries.push((row, v));
            }
            cols.push(entries);
        }
    }
    SparseMat::from_columns(rows, cols)
}

/// Verify that a tensor-complex column is an alternating cochain, then return
/// its coordinates on the increasing-tuple basis.
fn restrict_alternating(
    column: &[(usize, Rat)],
    dim: usize,
    dim_m: usize,
    n_rows: usize,
    increasing_index: &HashMap<Vec<usize>, usize>,
) -> Result<Vec<(usize, Rat)>> {
    let mut map: HashMap<(Vec<usize>, usize), Rat> = HashMap::with_capacity(column.len());
    for (row, v) in column {
        let tuple = tuple_unrank(dim, n_rows, row / dim_m);
        map.insert((tuple, row % dim_m), v.clone());
    }
    let mut out = Vec::new();
    let perms = permutations_with_signs(n_rows);
    for ((tuple, t), v) in &map {
        if has_repeat(tuple) {
            return Err(Error::NotAChainMap(n_rows - 1));
        }
        let mut sorted = tuple.clone();
        sorted.sort_unstable();
        let sign = sort_sign(tuple);
        let base = map
            .get(&(sorted.clone(), *t))
            .cloned()
            .unwrap_or_else(Rat::zero);
        let expected = if sign > 0 { base.clone() } else { -base.clone() };
        if *v != expected {
            return Err(Error::NotAChainMap(n_rows - 1));
        }
        if strictly_increasing(tuple) {
            // every permuted position must carry sgn * v, including the
            // implicit zeros
            for (perm, psign) in &perms {
                let image = apply_perm(perm, tuple);
                let found = map
                    .get(&(image, *t))
                    .cloned()
                    .unwrap_or_else(Rat::zero);
                let want = if *psign > 0 { v.clone() } else { -v.clone() };
                if found != want {
                    return Err(Error::NotAChainMap(n_rows - 1));
                }
            }
            out.push((increasing_index[tuple] * dim_m + t, v.clone()));
        }
    }
    Ok(out)
}

/// Antisymmetric subcomplex, the inclusion maps, and the tensor complex it
/// was cut from.
pub fn ce_complex(module: &Bimodule, max_degree: usize) -> Result<CeData> {
    check_ce_inputs(module)?;
    let loday = super::loday::loday_slices(module, max_degree)?;
    let dim = module.algebra.dim();
    let dim_m = module.dim_m;
    let mut slices = Vec::new();
    let mut inclusions = Vec::new();
    for n in 0..=max_degree {
        let increasing = enumerate_tuples(dim, n, strictly_increasing);
        let incl = inclusion_matrix(dim, dim_m, n, &increasing);
        let inc_next = enumerate_tuples(dim, n + 1, strictly_increasing);
        let next_index: HashMap<Vec<usize>, usize> = inc_next
            .iter()
            .enumerate()
            .map(|(i, t)| (t.clone(), i))
            .collect();
        let full_d = loday[n].d.mul(&incl);
        let mut cols = Vec::with_capacity(full_d.cols());
        for c in 0..full_d.cols() {
            cols.push(restrict_alternating(
                full_d.col(c),
                dim,
                dim_m,
                n + 1,
                &next_index,
            )?);
        }
        let labels = increasing
            .iter()
            .flat_map(|tuple| {
                (0..dim_m).map(move |t| CochainLabel {
                    args: tuple.clone(),
                    target: t,
                    w_slot: None,
                })
            })
            .collect();
        slices.push(ComplexSlice {
            degree: n,
            labels,
            d: SparseMat::from_columns(inc_next.len() * dim_m, cols),
        });
        inclusions.push(incl);
    }
    Ok(CeData {
        slices,
        inclusions,
        loday,
    })
}

fn quotient_basis(dim: usize, n: usize) -> Vec<Vec<usize>> {
    enumerate_tuples(dim, n, |t| !strictly_increasing(t))
}

/// Project a tensor cochain (given as a tuple-keyed map) onto the cokernel
/// coordinates: subtract the alternating cochain matching it on increasing
/// tuples.
fn project_to_quotient(
    entries: &HashMap<(Vec<usize>, usize), Rat>,
    dim_m: usize,
    quotient_index: &HashMap<Vec<usize>, usize>,
) -> Vec<(usize, Rat)> {
    let mut acc: HashMap<(Vec<usize>, usize), Rat> = HashMap::new();
    for ((tuple, t), v) in entries {
        if !strictly_increasing(tuple) {
            *acc.entry((tuple.clone(), *t)).or_insert_with(Rat::zero) += v.clone();
        } else {
            let perms = permutations_with_signs(tuple.len());
            for (perm, sign) in &perms {
                let image = apply_perm(perm, tuple);
                if strictly_increasing(&image) {
                    continue;
                }
                let signed = if *sign > 0 { -v.clone() } else { v.clone() };
                *acc.entry((image, *t)).or_insert_with(Rat::zero) += signed;
            }
        }
    }
    acc.into_iter()
        .filter(|(_, v)| !v.is_zero())
        .map(|((tuple, t), v)| (quotient_index[&tuple] * dim_m + t, v))
        .collect()
}

/// Cokernel of the inclusion of antisymmetric cochains, in ambient degrees
/// `0..=max_degree` (the space is zero in degrees 0 and 1).
pub fn pirashvili_complex(module: &Bimodule, max_degree: usize) -> Result<Vec<ComplexSlice>> {
    check_ce_inputs(module)?;
    let terms = LodayTerms::new(&module.algebra, module);
    let dim = module.algebra.dim();
    let dim_m = module.dim_m;
    let mut slices = Vec::new();
    for n in 0..=max_degree {
        let basis = quotient_basis(dim, n);
        let next = quotient_basis(dim, n + 1);
        let next_index: HashMap<Vec<usize>, usize> = next
            .iter()
            .enumerate()
            .map(|(i, t)| (t.clone(), i))
            .collect();
        let mut cols = Vec::with_capacity(basis.len() * dim_m);
        for tuple in &basis {
            for t in 0..dim_m {
                let mut entries: HashMap<(Vec<usize>, usize), Rat> = HashMap::new();
                terms.column(tuple, t, |row_tuple, rt, coeff| {
                    if coeff.is_zero() {
                        return;
                    }
                    *entries
                        .entry((row_tuple.to_vec(), rt))
                        .or_insert_with(Rat::zero) += coeff;
                });
                cols.push(project_to_quotient(&entries, dim_m, &next_index));
            }
        }
        let labels = basis
            .iter()
            .flat_map(|tuple| {
                (0..dim_m).map(move |t| CochainLabel {
                    args: tuple.clone(),
                    target: t,
                    w_slot: None,
                })
            })
            .collect();
        slices.push(ComplexSlice {
            degree: n,
            labels,
            d: SparseMat::from_columns(next.len() * dim_m, cols),
        });
    }
    Ok(slices)
}

/// Degreewise projection `CL^n -> coker`, used for the long exact sequence.
fn projection_matrix(
    dim: usize,
    dim_m: usize,
    n: usize,
    quotient_index: &HashMap<Vec<usize>, usize>,
) -> SparseMat {
    let labels = full_labels(dim, dim_m, n);
    let mut cols = Vec::with_capacity(labels.len());
    for label in &labels {
        let mut entries: HashMap<(Vec<usize>, usize), Rat> = HashMap::new();
        entries.insert(
            (label.args.clone(), label.target),
            Rat::from_integer(1.into()),
        );
        cols.push(project_to_quotient(&entries, dim_m, quotient_index));
    }
    SparseMat::from_columns(quotient_index.len() * dim_m, cols)
}

/// The short exact sequence of complexes (antisymmetric, tensor, cokernel).
pub fn ce_pirashvili_triple(module: &Bimodule, max_degree: usize) -> Result<ComplexTriple> {
    let ce = ce_complex(module, max_degree)?;
    let quot = pirashvili_complex(module, max_degree)?;
    let dim = module.algebra.dim();
    let dim_m = module.dim_m;
    let mut proj = Vec::new();
    for n in 0..=max_degree {
        let basis = quotient_basis(dim, n);
        let index: HashMap<Vec<usize>, usize> = basis
            .iter()
            .enumerate()
            .map(|(i, t)| (t.clone(), i))
            .collect();
        proj.push(projection_matrix(dim, dim_m, n, &index));
    }
    Ok(ComplexTriple {
        sub: ce.slices,
        mid: ce.loday,
        quot,
        incl: ce.inclusions,
        proj,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bimodule::{adjoint_bimodule, Bimodule};
    use crate::constructors::{abelian, heisenberg3, sl2};
    use crate::sparse::RankStrategy;

    fn binom(n: usize, k: usize) -> usize {
        if k > n {
            return 0;
        }
        let mut r = 1usize;
        for i in 0..k {
            r = r * (n - i) / (i + 1);
        }
        r
    }

    #[test]
    fn signs_of_permutations() {
        let perms = permutations_with_signs(3);
        assert_eq!(perms.len(), 6);
        let sum: i32 = perms.iter().map(|(_, s)| *s as i32).sum();
        assert_eq!(sum, 0);
        for (p, s) in &perms {
            assert_eq!(*s, sort_sign(p), "{p:?}");
        }
    }

    #[test]
    fn ce_dimension_counting() {
        let adj = adjoint_bimodule(&sl2()).unwrap();
        let ce = ce_complex(&adj, 3).unwrap();
        for n in 0..=3 {
            assert_eq!(ce.slices[n].dim(), binom(3, n) * 3, "degree {n}");
        }
    }

    #[test]
    fn inclusion_is_a_chain_map() {
        let adj = adjoint_bimodule(&heisenberg3()).unwrap();
        let ce = ce_complex(&adj, 2).unwrap();
        for n in 0..2 {
            let left = ce.loday[n].d.mul(&ce.inclusions[n]);
            let right = ce.inclusions[n + 1].mul(&ce.slices[n].d);
            assert_eq!(left, right, "degree {n}");
        }
    }

    #[test]
    fn ce_d_squared_zero() {
        let adj = adjoint_bimodule(&heisenberg3()).unwrap();
        let ce = ce_complex(&adj, 2).unwrap();
        assert!(ce.slices[1].d.mul(&ce.slices[0].d).is_zero());
        assert!(ce.slices[2].d.mul(&ce.slices[1].d).is_zero());
    }

    #[test]
    fn sl2_trivial_coefficients_h1_h2_vanish() {
        let triv = Bimodule::trivial(sl2(), 1);
        let ce = ce_complex(&triv, 2).unwrap();
        let rank1 = ce.slices[1].d.rank(RankStrategy::Exact).rank;
        let ker1 = ce.slices[1].dim() - rank1;
        let rank0 = ce.slices[0].d.rank(RankStrategy::Exact).rank;
        assert_eq!(ker1 - rank0, 0, "H1");
        let rank2 = ce.slices[2].d.rank(RankStrategy::Exact).rank;
        let ker2 = ce.slices[2].dim() - rank2;
        assert_eq!(ker2 - rank1, 0, "H2");
    }

    #[test]
    fn pirashvili_vanishes_in_low_degrees_and_counts() {
        let adj = adjoint_bimodule(&heisenberg3()).unwrap();
        let rel = pirashvili_complex(&adj, 2).unwrap();
        assert_eq!(rel[0].dim(), 0);
        assert_eq!(rel[1].dim(), 0);
        assert_eq!(rel[2].dim(), 9 * 3 - 3 * 3);
    }

    #[test]
    fn projection_is_a_chain_map_and_sequence_is_exact_degreewise() {
        let adj = adjoint_bimodule(&heisenberg3()).unwrap();
        let triple = ce_pirashvili_triple(&adj, 2).unwrap();
        for n in 0..2 {
            let left = triple.proj[n + 1].mul(&triple.mid[n].d);
            let right = triple.quot[n].d.mul(&triple.proj[n]);
            assert_eq!(left, right, "degree {n}");
        }
        for n in 0..=2 {
            // dim sub + dim quot = dim mid, and proj . incl = 0
            assert_eq!(
                triple.sub[n].dim() + triple.quot[n].dim(),
                triple.mid[n].dim()
            );
            assert!(triple.proj[n].mul(&triple.incl[n]).is_zero());
            // proj surjective: rank = dim quot
            assert_eq!(
                triple.proj[n].rank(RankStrategy::Exact).rank,
                triple.quot[n].dim()
            );
        }
    }

    #[test]
    fn abelian_one_dim_has_zero_ce_in_degree_two() {
        let triv = Bimodule::trivial(abelian(1), 1);
        let ce = ce_complex(&triv, 2).unwrap();
        assert_eq!(ce.slices[2].dim(), 0);
        // but the tensor complex keeps one cochain per degree
        assert_eq!(ce.loday[2].dim(), 1);
    }

    #[test]
    fn non_lie_input_rejected() {
        let law = crate::constructors::hemisemidirect(
            &sl2(),
            &crate::constructors::sl2_irreducible(1),
        )
        .unwrap();
        let adj = adjoint_bimodule(&law).unwrap();
        assert!(ce_complex(&adj, 1).is_err());
    }
}
