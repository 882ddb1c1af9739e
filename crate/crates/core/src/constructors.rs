//! The algebras of interest: `sl2` and its irreducible right modules,
//! semidirect and hemisemidirect products, the rigid Leibniz family built
//! from them, and a small catalog of test algebras.

use crate::algebra::AlgebraLaw;
use crate::bimodule::require_right_module;
use crate::error::{Error, Result};
use crate::rat::{rat, Rat};
use crate::sparse::SparseMat;

/// `sl2` on the basis `(e, h, f)` with `[e,f] = h`, `[h,e] = 2e`,
/// `[h,f] = -2f`.
pub fn sl2() -> AlgebraLaw {
    AlgebraLaw::from_brackets(
        3,
        vec!["e".into(), "h".into(), "f".into()],
        vec![
            (0, 2, vec![(1, rat(1))]),
            (2, 0, vec![(1, rat(-1))]),
            (1, 0, vec![(0, rat(2))]),
            (0, 1, vec![(0, rat(-2))]),
            (1, 2, vec![(2, rat(-2))]),
            (2, 1, vec![(2, rat(2))]),
        ],
    )
    .expect("sl2 structure constants")
}

/// The irreducible right `sl2`-module of dimension `2k+1` on the weight basis
/// `m_0, ..., m_2k`:
///
///   `m_i . h = (2k - 2i) m_i`,  `m_i . e = m_{i+1}`,  `m_i . f = i(2k-i+1) m_{i-1}`.
///
/// Returned as the action matrices `[R_e, R_h, R_f]` in the `sl2` basis
/// order. The right-module axiom is re-verified on every basis triple at
/// construction time: the sign conventions are pinned by that check, not
/// assumed.
pub fn sl2_irreducible(k: usize) -> Vec<SparseMat> {
    assert!(k >= 1, "k must be at least 1");
    let d = 2 * k + 1;
    let mut e_triplets = Vec::new();
    let mut h_triplets = Vec::new();
    let mut f_triplets = Vec::new();
    for i in 0..d {
        if i + 1 < d {
            e_triplets.push((i + 1, i, rat(1)));
        }
        let w = 2 * k as i64 - 2 * i as i64;
        if w != 0 {
            h_triplets.push((i, i, rat(w)));
        }
        if i > 0 {
            let c = i as i64 * (2 * k as i64 - i as i64 + 1);
            f_triplets.push((i - 1, i, rat(c)));
        }
    }
    let action = vec![
        SparseMat::from_triplets(d, d, e_triplets),
        SparseMat::from_triplets(d, d, h_triplets),
        SparseMat::from_triplets(d, d, f_triplets),
    ];
    assert!(
        crate::bimodule::right_module_defect(&sl2(), &action).is_none(),
        "sl2 irreducible action must satisfy the right-module axiom"
    );
    action
}

/// Semidirect product Lie algebra on `g + M` with bracket
/// `[(x1,m1),(x2,m2)] = ([x1,x2], m1.x2 - m2.x1)`.
pub fn semidirect(g: &AlgebraLaw, action: &[SparseMat]) -> Result<AlgebraLaw> {
    g.require_lie()?;
    require_right_module(g, action)?;
    let dg = g.dim();
    let dm = action.first().map_or(0, |m| m.rows());
    let mut labels = g.basis_labels().to_vec();
    labels.extend((0..dm).map(|i| format!("m{i}")));
    let mut law = AlgebraLaw::from_brackets(dg + dm, labels, Vec::new())?;
    for (i, j, terms) in g.brackets() {
        law.add_bracket_terms(i, j, terms.to_vec())?;
    }
    for j in 0..dg {
        for q in 0..dm {
            // [m_q, x_j] = m_q . x_j
            let plus: Vec<(usize, Rat)> = action[j]
                .col(q)
                .iter()
                .map(|(p, v)| (dg + p, v.clone()))
                .collect();
            law.add_bracket_terms(dg + q, j, plus)?;
            // [x_j, m_q] = -m_q . x_j
            let minus: Vec<(usize, Rat)> = action[j]
                .col(q)
                .iter()
                .map(|(p, v)| (dg + p, -v.clone()))
                .collect();
            law.add_bracket_terms(j, dg + q, minus)?;
        }
    }
    Ok(law)
}

/// Hemisemidirect product Leibniz algebra on `g + I` with bracket
/// `[(x1,m1),(x2,m2)] = ([x1,x2], m1.x2)`; non-Lie whenever the action is
/// nontrivial.
pub fn hemisemidirect(g: &AlgebraLaw, action: &[SparseMat]) -> Result<AlgebraLaw> {
    require_right_module(g, action)?;
    let dg = g.dim();
    let dm = action.first().map_or(0, |m| m.rows());
    let mut labels = g.basis_labels().to_vec();
    labels.extend((0..dm).map(|i| format!("i{i}")));
    let mut law = AlgebraLaw::from_brackets(dg + dm, labels, Vec::new())?;
    for (i, j, terms) in g.brackets() {
        law.add_bracket_terms(i, j, terms.to_vec())?;
    }
    for j in 0..dg {
        for q in 0..dm {
            let plus: Vec<(usize, Rat)> = action[j]
                .col(q)
                .iter()
                .map(|(p, v)| (dg + p, v.clone()))
                .collect();
            law.add_bracket_terms(dg + q, j, plus)?;
        }
    }
    Ok(law)
}

/// The Leibniz algebra `I_l +. (sl2 x M_k)`: the hemisemidirect product of
/// the semidirect product `sl2 x M_k` with the irreducible module `I_l`,
/// which acts through the `sl2` factor. Basis order is `(sl2, M, I)`,
/// dimension `3 + (2k+1) + (2l+1)`.
pub fn richardson_leibniz(k: usize, l: usize) -> AlgebraLaw {
    assert!(k >= 1 && l >= 1);
    let g = sl2();
    let m_action = sl2_irreducible(k);
    let ghat = semidirect(&g, &m_action).expect("semidirect of sl2 with its module");
    let i_action_sl2 = sl2_irreducible(l);
    let di = 2 * l + 1;
    // Extend the I-action to all of ghat: the M-part acts by zero.
    let mut i_action: Vec<SparseMat> = i_action_sl2;
    i_action.extend(std::iter::repeat_n(SparseMat::zero(di, di), 2 * k + 1));
    let mut law = hemisemidirect(&ghat, &i_action).expect("hemisemidirect with I");
    let mut labels: Vec<String> = vec!["e".into(), "h".into(), "f".into()];
    labels.extend((0..2 * k + 1).map(|i| format!("m{i}")));
    labels.extend((0..di).map(|i| format!("i{i}")));
    law.set_basis_labels(labels);
    law
}

pub fn abelian(n: usize) -> AlgebraLaw {
    AlgebraLaw::abelian(n)
}

/// Heisenberg algebra of dimension 3: `[e1, e2] = e3`.
pub fn heisenberg3() -> AlgebraLaw {
    AlgebraLaw::from_brackets(
        3,
        vec!["e1".into(), "e2".into(), "e3".into()],
        vec![(0, 1, vec![(2, rat(1))]), (1, 0, vec![(2, rat(-1))])],
    )
    .expect("heisenberg structure constants")
}

/// Two commuting copies of `sl2`, basis `(e1,h1,f1,e2,h2,f2)`.
pub fn sl2_plus_sl2() -> AlgebraLaw {
    let g = sl2();
    let mut labels = Vec::new();
    for suffix in ["1", "2"] {
        for name in ["e", "h", "f"] {
            labels.push(format!("{name}{suffix}"));
        }
    }
    let mut law = AlgebraLaw::from_brackets(6, labels, Vec::new()).unwrap();
    for (i, j, terms) in g.brackets() {
        law.add_bracket_terms(i, j, terms.to_vec()).unwrap();
        law.add_bracket_terms(
            3 + i,
            3 + j,
            terms.iter().map(|(k, v)| (3 + k, v.clone())).collect(),
        )
        .unwrap();
    }
    law
}

/// `sl2 + sl2` rewritten in an adapted basis: the diagonal copy of `sl2`
/// first, then a complement on which the diagonal acts like the
/// `sl2_irreducible(1)` weight basis. In these coordinates the one-parameter
/// rescaling of the complement contracts the law onto
/// `semidirect(sl2, sl2_irreducible(1))` entry by entry.
pub fn sl2_diag_embedding_data() -> AlgebraLaw {
    let law = sl2_plus_sl2();
    // diagonal: d_x = (x, x); complement: the anti-diagonal, ordered and
    // scaled so its right adjoint action matches the weight basis m_0, m_1,
    // m_2 of sl2_irreducible(1): (f,-f), -(h,-h), -2(e,-e).
    let col = |entries: &[(usize, i64)]| -> Vec<(usize, Rat)> {
        entries.iter().map(|&(r, v)| (r, rat(v))).collect()
    };
    let basis = SparseMat::from_columns(
        6,
        vec![
            col(&[(0, 1), (3, 1)]),  // d_e
            col(&[(1, 1), (4, 1)]),  // d_h
            col(&[(2, 1), (5, 1)]),  // d_f
            col(&[(2, 1), (5, -1)]), // a_0 = (f, -f)
            col(&[(1, -1), (4, 1)]), // a_1 = -(h, -h)
            col(&[(0, -2), (3, 2)]), // a_2 = -2(e, -e)
        ],
    );
    let labels = vec![
        "e".into(),
        "h".into(),
        "f".into(),
        "m0".into(),
        "m1".into(),
        "m2".into(),
    ];
    law.law_in_basis(&basis, labels)
        .expect("adapted basis is invertible")
}

/// Catalog lookup by name; `abelian(n)` takes the dimension inline.
pub fn catalog(name: &str) -> Result<AlgebraLaw> {
    if let Some(rest) = name.strip_prefix("abelian(") {
        let n: usize = rest
            .strip_suffix(')')
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| Error::UnknownName(name.into()))?;
        return Ok(abelian(n));
    }
    match name {
        "sl2" => Ok(sl2()),
        "heisenberg3" => Ok(heisenberg3()),
        "sl2_plus_sl2" => Ok(sl2_plus_sl2()),
        "sl2_diag_embedding_data" => Ok(sl2_diag_embedding_data()),
        _ => Err(Error::UnknownName(name.into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bimodule::{adjoint_bimodule, right_module_defect};
    use num_traits::Zero;
    use crate::subspace::Subspace;

    #[test]
    fn sl2_checks() {
        let g = sl2();
        assert!(g.is_lie());
        assert_eq!(g.right_center().dim(), 0);
        assert_eq!(g.nonzero_bracket_entries(), 6);
    }

    #[test]
    fn irreducible_axiom_holds_up_to_k9() {
        let g = sl2();
        for k in 1..=9 {
            let action = sl2_irreducible(k);
            assert!(right_module_defect(&g, &action).is_none(), "k = {k}");
        }
    }

    #[test]
    fn highest_weight_is_2k() {
        for k in [1, 3, 7] {
            let action = sl2_irreducible(k);
            let h = &action[1];
            assert_eq!(h.get(0, 0), rat(2 * k as i64));
        }
    }

    #[test]
    fn irreducible_has_no_invariant_subspace_from_closure() {
        for k in [1, 2, 5] {
            let action = sl2_irreducible(k);
            let d = 2 * k + 1;
            for start in 0..d {
                let mut space = Subspace::zero(d);
                let mut v = vec![rat(0); d];
                v[start] = rat(1);
                let mut queue = vec![v.clone()];
                space.insert(v);
                while let Some(w) = queue.pop() {
                    for mat in &action {
                        let img = mat.mul_vec(&w);
                        if space.insert(img.clone()) {
                            queue.push(img);
                        }
                    }
                }
                assert_eq!(space.dim(), d, "closure from basis vector {start}");
            }
        }
    }

    #[test]
    fn semidirect_is_lie() {
        let law = semidirect(&sl2(), &sl2_irreducible(1)).unwrap();
        assert_eq!(law.dim(), 6);
        assert!(law.is_lie());
        assert_eq!(law.ideal_of_squares().unwrap().dim(), 0);
    }

    #[test]
    fn semidirect_with_trivial_module() {
        let action = vec![SparseMat::zero(2, 2); 3];
        let law = semidirect(&sl2(), &action).unwrap();
        assert!(law.is_lie());
        // the module summand is an abelian ideal
        for q in 3..5 {
            for j in 3..5 {
                assert!(law.bracket_basis(q, j).is_empty());
            }
        }
    }

    #[test]
    fn hemisemidirect_bracket_shape() {
        let law = hemisemidirect(&sl2(), &sl2_irreducible(1)).unwrap();
        assert!(law.is_leibniz());
        assert!(!law.is_lie());
        // [x, i] = 0 and [i, x] = i.x
        assert!(law.bracket_basis(0, 3).is_empty());
        assert_eq!(law.bracket_basis(3, 0), &[(4, rat(1))]);
        let squares = law.ideal_of_squares().unwrap();
        assert_eq!(squares.dim(), 3);
    }

    #[test]
    fn hemisemidirect_trivial_action_is_lie() {
        let action = vec![SparseMat::zero(1, 1); 3];
        let law = hemisemidirect(&sl2(), &action).unwrap();
        assert!(law.is_lie());
    }

    #[test]
    fn richardson_structure() {
        let law = richardson_leibniz(1, 1);
        assert_eq!(law.dim(), 9);
        assert!(law.is_leibniz());
        assert!(!law.is_lie());
        // [g, I] = 0, [I, g] in I, [M, I] = [I, M] = [M, M] = [I, I] = 0
        for x in 0..3 {
            for i in 6..9 {
                assert!(law.bracket_basis(x, i).is_empty(), "[g, I] must vanish");
                assert!(
                    law.bracket_basis(i, x)
                        .iter()
                        .all(|(k, _)| (6..9).contains(k)),
                    "[I, g] must lie in I"
                );
            }
        }
        for a in 3..9 {
            for b in 3..9 {
                if a < 6 && b < 6 {
                    assert!(law.bracket_basis(a, b).is_empty(), "[M, M] must vanish");
                } else if a >= 6 || b >= 6 {
                    if !(a >= 6 && b < 3) && !(b >= 6 && a < 3) {
                        assert!(
                            law.bracket_basis(a, b).is_empty(),
                            "mixed M/I brackets vanish"
                        );
                    }
                }
            }
        }
        let squares = law.ideal_of_squares().unwrap();
        assert_eq!(squares.dim(), 3);
        for v in squares.basis() {
            assert!(v[..6].iter().all(|x| x.is_zero()), "squares live in I");
        }
        // right center contains the ideal of squares
        assert!(law.right_center().contains_subspace(&squares));
    }

    #[test]
    fn richardson_dimensions_and_hypotheses() {
        let law = richardson_leibniz(9, 2);
        assert_eq!(law.dim(), 27);
        assert!(law.is_leibniz());
        // bracket of g with M is antisymmetric entrywise
        for x in 0..3 {
            for m in 3..22 {
                let xm = law.bracket_basis(x, m);
                let mx = law.bracket_basis(m, x);
                assert_eq!(xm.len(), mx.len());
                for ((k1, v1), (k2, v2)) in xm.iter().zip(mx) {
                    assert_eq!(k1, k2);
                    assert_eq!(v1.clone() + v2.clone(), rat(0));
                }
            }
        }
    }

    #[test]
    fn quotient_of_richardson_by_squares_is_semidirect() {
        let law = richardson_leibniz(2, 1);
        let squares = law.ideal_of_squares().unwrap();
        assert_eq!(squares.dim(), 3);
        let q = law.quotient_law(&squares).unwrap();
        let expected = semidirect(&sl2(), &sl2_irreducible(2)).unwrap();
        // compare entrywise: same dim, same structure constants
        assert_eq!(q.dim(), expected.dim());
        for i in 0..q.dim() {
            for j in 0..q.dim() {
                assert_eq!(q.bracket_basis(i, j), expected.bracket_basis(i, j));
            }
        }
        assert!(q.is_lie());
    }

    #[test]
    fn adjoint_of_richardson_passes_check() {
        let law = richardson_leibniz(1, 1);
        let adj = adjoint_bimodule(&law).unwrap();
        assert!(adj.check().is_empty());
    }

    #[test]
    fn catalog_names() {
        assert_eq!(catalog("abelian(4)").unwrap().dim(), 4);
        assert_eq!(catalog("sl2").unwrap().dim(), 3);
        assert_eq!(catalog("heisenberg3").unwrap().dim(), 3);
        assert_eq!(catalog("sl2_plus_sl2").unwrap().dim(), 6);
        assert_eq!(catalog("sl2_diag_embedding_data").unwrap().dim(), 6);
        assert!(catalog("nope").is_err());
    }

    #[test]
    fn diag_adapted_law_is_lie() {
        let law = sl2_diag_embedding_data();
        assert!(law.is_lie());
        // the first three vectors form an sl2 copy with the standard constants
        let g = sl2();
        for i in 0..3 {
            for j in 0..3 {
                let bracket = law.bracket_basis(i, j);
                let expected = g.bracket_basis(i, j);
                let g_part: Vec<(usize, Rat)> = bracket
                    .iter()
                    .filter(|(k, _)| *k < 3)
                    .cloned()
                    .collect();
                assert_eq!(g_part, expected.to_vec());
            }
        }
    }
}
