//! Relative complex of a surjective algebra morphism `f: h -> b` with
//! coefficients in a `b`-module pulled back to `h`: the cokernel of the
//! injection `f*` of cochain complexes.
//!
//! Internally the source algebra is rewritten in an adapted basis (sections
//! of the target basis followed by a kernel basis), where `f` becomes a
//! coordinate projection. In those coordinates the image of `f*` is spanned
//! by the basis cochains whose argument tuples avoid kernel slots, so the
//! cokernel has the complementary basis cochains as its basis and the induced
//! coboundary is a plain row/column restriction.

use num_traits::Zero;

use crate::algebra::AlgebraLaw;
use crate::bimodule::Bimodule;
use crate::error::{Error, Result};
use crate::rat::Rat;
use crate::sparse::{RankStrategy, SparseMat};

use super::{
    build_slice, enumerate_tuples, full_labels, tuple_rank, CochainLabel, ComplexSlice,
    ComplexTriple, LodayTerms,
};

/// A checked surjective morphism of Leibniz algebras.
#[derive(Clone, Debug)]
pub struct AlgebraMorphism {
    pub src: AlgebraLaw,
    pub dst: AlgebraLaw,
    /// `dst.dim x src.dim` matrix sending source basis vectors to their images.
    pub map: SparseMat,
}

impl AlgebraMorphism {
    pub fn new(src: AlgebraLaw, dst: AlgebraLaw, map: SparseMat) -> Result<Self> {
        if map.rows() != dst.dim() || map.cols() != src.dim() {
            return Err(Error::DimensionMismatch("morphism matrix shape".into()));
        }
        for i in 0..src.dim() {
            for j in 0..src.dim() {
                let mut lhs = vec![Rat::zero(); dst.dim()];
                for (k, c) in src.bracket_basis(i, j) {
                    for (r, v) in map.col(*k) {
                        lhs[*r] += c.clone() * v.clone();
                    }
                }
                let rhs = dst.bracket_vec(&map.col_as_dense(i), &map.col_as_dense(j));
                if lhs != rhs {
                    return Err(Error::NotAMorphism(i, j));
                }
            }
        }
        let rank = map.rank(RankStrategy::Exact).rank;
        if rank != dst.dim() {
            return Err(Error::NotSurjective {
                rank,
                dim: dst.dim(),
            });
        }
        Ok(AlgebraMorphism { src, dst, map })
    }
}

/// The quotient map of a Leibniz algebra onto its Lie quotient (quotient by
/// the ideal of squares, on the complement basis).
pub fn lie_quotient_morphism(h: &AlgebraLaw) -> Result<AlgebraMorphism> {
    let squares = h.ideal_of_squares()?;
    let quotient = h.quotient_law(&squares)?;
    let comp = squares.complement_indices();
    let pos: std::collections::HashMap<usize, usize> =
        comp.iter().enumerate().map(|(n, &i)| (i, n)).collect();
    let mut cols = Vec::with_capacity(h.dim());
    for i in 0..h.dim() {
        let mut e = vec![Rat::zero(); h.dim()];
        e[i] = crate::rat::one();
        let reduced = squares.reduce(e);
        cols.push(
            reduced
                .into_iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(k, v)| (pos[&k], v))
                .collect(),
        );
    }
    let map = SparseMat::from_columns(quotient.dim(), cols);
    AlgebraMorphism::new(h.clone(), quotient, map)
}

struct Adapted {
    law: AlgebraLaw,
    module: Bimodule,
    dim_b: usize,
}

/// Rewrite the source in the adapted basis and pull the coefficients back.
fn adapt(f: &AlgebraMorphism, coeff: &Bimodule) -> Result<Adapted> {
    if coeff.algebra != f.dst {
        return Err(Error::BadModule(
            "coefficients must be a module over the morphism target".into(),
        ));
    }
    let dim_h = f.src.dim();
    let dim_b = f.dst.dim();
    let mut columns: Vec<Vec<Rat>> = Vec::with_capacity(dim_h);
    for i in 0..dim_b {
        let mut e = vec![Rat::zero(); dim_b];
        e[i] = crate::rat::one();
        columns.push(f.map.solve(&e).ok_or(Error::SingularMatrix)?);
    }
    columns.extend(f.map.kernel_basis());
    if columns.len() != dim_h {
        return Err(Error::DimensionMismatch(
            "sections plus kernel must span the source".into(),
        ));
    }
    let basis = SparseMat::from_dense_columns(dim_h, &columns);
    let mut labels: Vec<String> = f.dst.basis_labels().to_vec();
    labels.extend((0..dim_h - dim_b).map(|i| format!("k{i}")));
    let law = f.src.law_in_basis(&basis, labels)?;
    let dm = coeff.dim_m;
    let mut left = Vec::with_capacity(dim_h);
    let mut right = Vec::with_capacity(dim_h);
    for i in 0..dim_h {
        if i < dim_b {
            left.push(coeff.left(i).clone());
            right.push(coeff.right(i).clone());
        } else {
            left.push(SparseMat::zero(dm, dm));
            right.push(SparseMat::zero(dm, dm));
        }
    }
    let module = Bimodule::new(law.clone(), left, right)?;
    Ok(Adapted { law, module, dim_b })
}

/// Cokernel slices only (ambient degrees `0..=max_degree`).
pub fn pair_rel_slices(
    f: &AlgebraMorphism,
    coeff: &Bimodule,
    max_degree: usize,
) -> Result<Vec<ComplexSlice>> {
    Ok(pair_rel_triple(f, coeff, max_degree)?.quot)
}

/// The short exact sequence of complexes for `f`: target complex, source
/// complex (in adapted coordinates) and the cokernel.
pub fn pair_rel_triple(
    f: &AlgebraMorphism,
    coeff: &Bimodule,
    max_degree: usize,
) -> Result<ComplexTriple> {
    let adapted = adapt(f, coeff)?;
    let dim_h = adapted.law.dim();
    let dim_b = adapted.dim_b;
    let dim_m = coeff.dim_m;
    let mid = super::loday::loday_slices(&adapted.module, max_degree)?;
    let sub = super::loday::loday_slices(coeff, max_degree)?;
    let terms = LodayTerms::new(&adapted.law, &adapted.module);

    let has_kernel_slot = |t: &[usize]| t.iter().any(|&a| a >= dim_b);
    let mut quot = Vec::new();
    let mut incl = Vec::new();
    let mut proj = Vec::new();
    for n in 0..=max_degree {
        let tuples = enumerate_tuples(dim_h, n, has_kernel_slot);
        let index: std::collections::HashMap<Vec<usize>, usize> = tuples
            .iter()
            .enumerate()
            .map(|(i, t)| (t.clone(), i))
            .collect();
        let next = enumerate_tuples(dim_h, n + 1, has_kernel_slot);
        let next_index: std::collections::HashMap<Vec<usize>, usize> = next
            .iter()
            .enumerate()
            .map(|(i, t)| (t.clone(), i))
            .collect();
        let labels: Vec<CochainLabel> = tuples
            .iter()
            .flat_map(|tuple| {
                (0..dim_m).map(move |t| CochainLabel {
                    args: tuple.clone(),
                    target: t,
                    w_slot: None,
                })
            })
            .collect();
        let rows = next.len() * dim_m;
        quot.push(build_slice(&terms, n, labels, rows, |tuple, t| {
            next_index.get(tuple).map(|i| i * dim_m + t)
        }));

        // inclusion f*: a basis cochain on b-tuples becomes the same basis
        // cochain on pure tuples of the adapted source
        let b_labels = full_labels(dim_b, dim_m, n);
        let mut cols = Vec::with_capacity(b_labels.len());
        for label in &b_labels {
            let row = tuple_rank(dim_h, &label.args) * dim_m + label.target;
            cols.push(vec![(row, Rat::from_integer(1.into()))]);
        }
        incl.push(SparseMat::from_columns(
            dim_h.pow(n as u32) * dim_m,
            cols,
        ));

        // projection: drop pure tuples, renumber the rest
        let h_labels = full_labels(dim_h, dim_m, n);
        let mut pcols = Vec::with_capacity(h_labels.len());
        for label in &h_labels {
            match index.get(&label.args) {
                Some(i) => pcols.push(vec![(
                    i * dim_m + label.target,
                    Rat::from_integer(1.into()),
                )]),
                None => pcols.push(Vec::new()),
            }
        }
        proj.push(SparseMat::from_columns(tuples.len() * dim_m, pcols));
    }
    Ok(ComplexTriple {
        sub,
        mid,
        quot,
        incl,
        proj,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bimodule::adjoint_bimodule;
    use crate::constructors::{richardson_leibniz, sl2, sl2_irreducible};
    use crate::sparse::RankStrategy;

    #[test]
    fn identity_morphism_gives_zero_complex() {
        let g = sl2();
        let id = AlgebraMorphism::new(g.clone(), g.clone(), SparseMat::identity(3)).unwrap();
        let adj = adjoint_bimodule(&g).unwrap();
        let rel = pair_rel_slices(&id, &adj, 2).unwrap();
        for s in &rel {
            assert_eq!(s.dim(), 0);
        }
    }

    #[test]
    fn quotient_morphism_of_richardson() {
        let h = richardson_leibniz(1, 1);
        let f = lie_quotient_morphism(&h).unwrap();
        assert_eq!(f.dst.dim(), 6);
        // the quotient is the semidirect product
        let expected = crate::constructors::semidirect(&sl2(), &sl2_irreducible(1)).unwrap();
        for i in 0..6 {
            for j in 0..6 {
                assert_eq!(f.dst.bracket_basis(i, j), expected.bracket_basis(i, j));
            }
        }
    }

    #[test]
    fn dimension_bookkeeping() {
        let h = richardson_leibniz(1, 1);
        let f = lie_quotient_morphism(&h).unwrap();
        let coeff = adjoint_bimodule(&f.dst).unwrap();
        let triple = pair_rel_triple(&f, &coeff, 2).unwrap();
        for n in 0..=2 {
            assert_eq!(
                triple.quot[n].dim(),
                9usize.pow(n as u32) * 6 - 6usize.pow(n as u32) * 6,
                "degree {n}"
            );
            assert_eq!(
                triple.sub[n].dim() + triple.quot[n].dim(),
                triple.mid[n].dim()
            );
        }
    }

    #[test]
    fn triple_is_a_short_exact_sequence_of_chain_maps() {
        let h = richardson_leibniz(1, 1);
        let f = lie_quotient_morphism(&h).unwrap();
        let coeff = adjoint_bimodule(&f.dst).unwrap();
        let triple = pair_rel_triple(&f, &coeff, 2).unwrap();
        for n in 0..2 {
            let incl_chain_l = triple.mid[n].d.mul(&triple.incl[n]);
            let incl_chain_r = triple.incl[n + 1].mul(&triple.sub[n].d);
            assert_eq!(incl_chain_l, incl_chain_r, "inclusion chain map, degree {n}");
            let proj_chain_l = triple.quot[n].d.mul(&triple.proj[n]);
            let proj_chain_r = triple.proj[n + 1].mul(&triple.mid[n].d);
            assert_eq!(proj_chain_l, proj_chain_r, "projection chain map, degree {n}");
        }
        for n in 0..=2 {
            assert!(triple.proj[n].mul(&triple.incl[n]).is_zero());
            assert_eq!(
                triple.incl[n].rank(RankStrategy::Exact).rank,
                triple.sub[n].dim()
            );
        }
    }

    #[test]
    fn d_squared_zero_on_quotient() {
        let h = richardson_leibniz(1, 1);
        let f = lie_quotient_morphism(&h).unwrap();
        let coeff = adjoint_bimodule(&f.dst).unwrap();
        let rel = pair_rel_slices(&f, &coeff, 2).unwrap();
        assert!(rel[1].d.mul(&rel[0].d).is_zero());
        assert!(rel[2].d.mul(&rel[1].d).is_zero());
    }

    #[test]
    fn non_morphism_rejected() {
        let g = sl2();
        let bad = SparseMat::from_triplets(3, 3, vec![(0, 0, crate::rat::rat(1))]);
        assert!(AlgebraMorphism::new(g.clone(), g, bad).is_err());
    }
}
