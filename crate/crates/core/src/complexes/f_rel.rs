//! The subalgebra-relative complex: cochains defined on tuples with at most
//! one argument outside the subalgebra.
//!
//! The algebra is rewritten in an adapted basis (subalgebra basis first, the
//! standard complement after it), so "outside" becomes a slot-index test.
//! Because the subalgebra is closed under the bracket, the coboundary of a
//! cochain evaluated on such a tuple only ever queries allowed tuples, so the
//! restricted coboundary is well-defined.

use crate::algebra::AlgebraLaw;
use crate::bimodule::Bimodule;
use crate::error::{Error, Result};
use crate::sparse::SparseMat;
use crate::subspace::Subspace;

use super::{build_slice, enumerate_tuples, CochainLabel, ComplexSlice, LodayTerms};

/// Check that `s` is closed under the bracket of `h`.
pub fn require_subalgebra(h: &AlgebraLaw, s: &Subspace) -> Result<()> {
    if s.ambient_dim() != h.dim() {
        return Err(Error::DimensionMismatch("subalgebra ambient".into()));
    }
    let basis: Vec<Vec<_>> = s.basis().map(|v| v.to_vec()).collect();
    for (i, u) in basis.iter().enumerate() {
        for (j, v) in basis.iter().enumerate() {
            if !s.contains(&h.bracket_vec(u, v)) {
                return Err(Error::NotASubalgebra(i, j));
            }
        }
    }
    Ok(())
}

/// Slices `0..=max_degree` of the relative complex of `(h, s)` with
/// coefficients in `module`.
pub fn f_rel_slices(
    h: &AlgebraLaw,
    s: &Subspace,
    module: &Bimodule,
    max_degree: usize,
) -> Result<Vec<ComplexSlice>> {
    h.require_leibniz()?;
    require_subalgebra(h, s)?;
    if module.algebra != *h {
        return Err(Error::BadModule(
            "coefficients must be a module over the ambient algebra".into(),
        ));
    }
    let dim = h.dim();
    let s_dim = s.dim();
    let mut columns: Vec<Vec<_>> = s.basis().map(|v| v.to_vec()).collect();
    for i in s.complement_indices() {
        let mut e = vec![crate::rat::zero(); dim];
        e[i] = crate::rat::one();
        columns.push(e);
    }
    let basis = SparseMat::from_dense_columns(dim, &columns);
    let mut labels: Vec<String> = (0..s_dim).map(|i| format!("s{i}")).collect();
    labels.extend(
        s.complement_indices()
            .iter()
            .map(|&i| h.basis_labels()[i].clone()),
    );
    let law = h.law_in_basis(&basis, labels)?;
    let module = module.transport_algebra(law.clone(), &basis)?;
    let dim_m = module.dim_m;

    let allowed = |t: &[usize]| t.iter().filter(|&&a| a >= s_dim).count() <= 1;
    let terms = LodayTerms::new(&law, &module);
    let mut slices = Vec::with_capacity(max_degree + 1);
    for n in 0..=max_degree {
        let tuples = enumerate_tuples(dim, n, allowed);
        let next = enumerate_tuples(dim, n + 1, allowed);
        let next_index: std::collections::HashMap<Vec<usize>, usize> = next
            .iter()
            .enumerate()
            .map(|(i, t)| (t.clone(), i))
            .collect();
        let labels: Vec<CochainLabel> = tuples
            .iter()
            .flat_map(|tuple| {
                let w_slot = tuple.iter().position(|&a| a >= s_dim);
                (0..dim_m).map(move |t| CochainLabel {
                    args: tuple.clone(),
                    target: t,
                    w_slot,
                })
            })
            .collect();
        let rows = next.len() * dim_m;
        slices.push(build_slice(&terms, n, labels, rows, |tuple, t| {
            next_index.get(tuple).map(|i| i * dim_m + t)
        }));
    }
    Ok(slices)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bimodule::adjoint_bimodule;
    use crate::constructors::{richardson_leibniz, sl2};
    use crate::rat::rat;

    fn first_indices_subspace(ambient: usize, k: usize) -> Subspace {
        let mut s = Subspace::zero(ambient);
        for i in 0..k {
            let mut v = vec![rat(0); ambient];
            v[i] = rat(1);
            s.insert(v);
        }
        s
    }

    #[test]
    fn full_subalgebra_reproduces_the_tensor_complex() {
        let g = sl2();
        let adj = adjoint_bimodule(&g).unwrap();
        let full = first_indices_subspace(3, 3);
        let rel = f_rel_slices(&g, &full, &adj, 2).unwrap();
        let loday = super::super::loday::loday_slices(&adj, 2).unwrap();
        for n in 0..=2 {
            assert_eq!(rel[n].dim(), loday[n].dim());
            assert_eq!(rel[n].d, loday[n].d, "degree {n}");
            for (a, b) in rel[n].labels.iter().zip(&loday[n].labels) {
                assert_eq!(a.args, b.args);
                assert_eq!(a.target, b.target);
            }
        }
    }

    #[test]
    fn dimension_formula() {
        let h = richardson_leibniz(9, 2);
        let s = first_indices_subspace(27, 3);
        let adj = adjoint_bimodule(&h).unwrap();
        let rel = f_rel_slices(&h, &s, &adj, 2).unwrap();
        // (s^n + n s^{n-1} w) * dim M with s = 3, w = 24, dim M = 27
        assert_eq!(rel[0].dim(), 27);
        assert_eq!(rel[1].dim(), 27 * 27);
        assert_eq!(rel[2].dim(), (9 + 2 * 3 * 24) * 27);
        assert_eq!(rel[2].dim(), 4131);
    }

    #[test]
    fn d_squared_zero_on_relative_complex() {
        let h = richardson_leibniz(1, 1);
        let s = first_indices_subspace(9, 3);
        let adj = adjoint_bimodule(&h).unwrap();
        let rel = f_rel_slices(&h, &s, &adj, 2).unwrap();
        assert!(rel[1].d.mul(&rel[0].d).is_zero());
        assert!(rel[2].d.mul(&rel[1].d).is_zero());
    }

    #[test]
    fn w_slot_labels() {
        let h = richardson_leibniz(1, 1);
        let s = first_indices_subspace(9, 3);
        let adj = adjoint_bimodule(&h).unwrap();
        let rel = f_rel_slices(&h, &s, &adj, 2).unwrap();
        for label in &rel[2].labels {
            let outside = label.args.iter().filter(|&&a| a >= 3).count();
            assert!(outside <= 1);
            assert_eq!(label.w_slot, label.args.iter().position(|&a| a >= 3));
        }
    }

    #[test]
    fn non_subalgebra_rejected() {
        let h = richardson_leibniz(1, 1);
        // span(e, m0) is not closed: [m0, e] = m1
        let mut s = Subspace::zero(9);
        let mut v = vec![rat(0); 9];
        v[0] = rat(1);
        s.insert(v);
        let mut w = vec![rat(0); 9];
        w[3] = rat(1);
        s.insert(w);
        let adj = adjoint_bimodule(&h).unwrap();
        assert!(matches!(
            f_rel_slices(&h, &s, &adj, 1),
            Err(Error::NotASubalgebra(_, _))
        ));
    }
}
