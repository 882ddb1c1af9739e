//! Cochain complexes as indexed bases plus sparse coboundary matrices.
//!
//! All complexes here are built from one generic coboundary routine for the
//! cochain space `Hom(h^(x)n, M)` of a Leibniz algebra `h` with coefficients
//! in a module `M`:
//!
//! ```text
//! (d f)(x_1, ..., x_{n+1}) = [x_1, f(x_2, ..., x_{n+1})]
//!     + sum_{i >= 2} (-1)^i [f(x_1, ..., ^x_i, ..., x_{n+1}), x_i]
//!     + sum_{i < j} (-1)^{j+1} f(x_1, ..., x_{i-1}, [x_i, x_j], x_{i+1}, ..., ^x_j, ...)
//! ```
//!
//! In degree 0 this is `(d m)(x) = [x, m]`, so degree-0 kernels are the left
//! invariants; in degree 1 it is `[x, f(y)] + [f(x), y] - f([x, y])`. The
//! antisymmetric subcomplex, the two cokernel complexes and the
//! subalgebra-relative complex are all obtained by composing this routine with
//! basis filters and projections.

pub mod ce;
pub mod f_rel;
pub mod forms;
pub mod loday;
pub mod pair_rel;

pub use ce::{ce_complex, ce_pirashvili_triple, pirashvili_complex, CeData};
pub use f_rel::f_rel_slices;
pub use forms::invariant_quadratic_forms;
pub use loday::loday_slices;
pub use pair_rel::{lie_quotient_morphism, pair_rel_slices, pair_rel_triple, AlgebraMorphism};

use num_traits::Zero;

use crate::algebra::AlgebraLaw;
use crate::bimodule::Bimodule;
use crate::rat::Rat;
use crate::sparse::SparseMat;

/// One basis cochain: argument tuple of algebra basis indices plus the index
/// of the target coefficient. For the subalgebra-relative complex, `w_slot`
/// records which argument (if any) lies outside the subalgebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CochainLabel {
    pub args: Vec<usize>,
    pub target: usize,
    pub w_slot: Option<usize>,
}

/// Degree-`n` piece of a complex: the domain basis and the coboundary matrix
/// into degree `n+1` (whose dimension is `d.rows()`).
#[derive(Clone, Debug)]
pub struct ComplexSlice {
    pub degree: usize,
    pub labels: Vec<CochainLabel>,
    pub d: SparseMat,
}

impl ComplexSlice {
    pub fn dim(&self) -> usize {
        self.labels.len()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum ComplexKind {
    Loday,
    ChevalleyEilenberg,
    PirashviliRel,
    PairRel,
    SubalgebraRel,
}

impl ComplexKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            ComplexKind::Loday => "leibniz",
            ComplexKind::ChevalleyEilenberg => "ce",
            ComplexKind::PirashviliRel => "pirashvili-rel",
            ComplexKind::PairRel => "pair-rel",
            ComplexKind::SubalgebraRel => "sub-rel",
        }
    }
}

/// A short exact sequence of complexes `0 -> sub -> mid -> quot -> 0`
/// together with the degreewise inclusion and projection matrices.
#[derive(Clone, Debug)]
pub struct ComplexTriple {
    pub sub: Vec<ComplexSlice>,
    pub mid: Vec<ComplexSlice>,
    pub quot: Vec<ComplexSlice>,
    pub incl: Vec<SparseMat>,
    pub proj: Vec<SparseMat>,
}

/// Shared coboundary term generator.
pub(crate) struct LodayTerms<'a> {
    pub law: &'a AlgebraLaw,
    pub module: &'a Bimodule,
    pairs_by_target: Vec<Vec<(usize, usize, Rat)>>,
}

impl<'a> LodayTerms<'a> {
    pub fn new(law: &'a AlgebraLaw, module: &'a Bimodule) -> Self {
        LodayTerms {
            law,
            module,
            pairs_by_target: law.pairs_by_target(),
        }
    }

    /// Emit every coboundary contribution of the basis cochain
    /// `(args, target)` as `(row_tuple, row_target, coefficient)`.
    pub fn column<F>(&self, args: &[usize], target: usize, mut emit: F)
    where
        F: FnMut(&[usize], usize, Rat),
    {
        let n = args.len();
        let dim = self.law.dim();
        let mut tuple = Vec::with_capacity(n + 1);

        // [x_1, f(x_2, ..., x_{n+1})]
        for a in 0..dim {
            let col = self.module.left(a).col(target);
            if col.is_empty() {
                continue;
            }
            tuple.clear();
            tuple.push(a);
            tuple.extend_from_slice(args);
            for (s, v) in col {
                emit(&tuple, *s, v.clone());
            }
        }

        // (-1)^i [f(..., ^x_i, ...), x_i] for i = 2..n+1; the inserted slot
        // sits at zero-based position q = i - 1, so the sign is negative for
        // even q.
        for q in 1..=n {
            let negative = q % 2 == 0;
            for a in 0..dim {
                let col = self.module.right(a).col(target);
                if col.is_empty() {
                    continue;
                }
                tuple.clear();
                tuple.extend_from_slice(&args[..q]);
                tuple.push(a);
                tuple.extend_from_slice(&args[q..]);
                for (s, v) in col {
                    let c = if negative { -v.clone() } else { v.clone() };
                    emit(&tuple, *s, c);
                }
            }
        }

        // (-1)^{j+1} f(..., [x_i, x_j] at slot i, ..., ^x_j, ...): slot u of
        // `args` receives the bracket, the partner sits at zero-based row
        // position v > u, and the sign is (-1)^v.
        for u in 0..n {
            for (a, b, c) in &self.pairs_by_target[args[u]] {
                for v_pos in (u + 1)..=n {
                    tuple.clear();
                    tuple.extend_from_slice(&args[..u]);
                    tuple.push(*a);
                    tuple.extend_from_slice(&args[u + 1..v_pos]);
                    tuple.push(*b);
                    tuple.extend_from_slice(&args[v_pos..]);
                    let coeff = if v_pos % 2 == 1 { -c.clone() } else { c.clone() };
                    emit(&tuple, target, coeff);
                }
            }
        }
    }
}

/// Lexicographic rank of a tuple over an alphabet of size `dim`.
pub(crate) fn tuple_rank(dim: usize, t: &[usize]) -> usize {
    t.iter().fold(0, |acc, &x| acc * dim + x)
}

pub(crate) fn tuple_unrank(dim: usize, n: usize, mut rank: usize) -> Vec<usize> {
    let mut t = vec![0; n];
    for i in (0..n).rev() {
        t[i] = rank % dim;
        rank /= dim;
    }
    t
}

/// All length-`n` tuples over `0..dim` satisfying `keep`, in lexicographic
/// order.
pub(crate) fn enumerate_tuples<F>(dim: usize, n: usize, keep: F) -> Vec<Vec<usize>>
where
    F: Fn(&[usize]) -> bool,
{
    let mut out = Vec::new();
    let mut t = vec![0usize; n];
    if n == 0 {
        if keep(&t) {
            out.push(t);
        }
        return out;
    }
    if dim == 0 {
        return out;
    }
    loop {
        if keep(&t) {
            out.push(t.clone());
        }
        let mut i = n;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            t[i] += 1;
            if t[i] < dim {
                break;
            }
            t[i] = 0;
        }
    }
}

/// Assemble a slice given the column labels, a per-column term source and a
/// row indexer that may drop filtered rows.
pub(crate) fn build_slice<R>(
    terms: &LodayTerms,
    degree: usize,
    labels: Vec<CochainLabel>,
    rows: usize,
    row_index: R,
) -> ComplexSlice
where
    R: Fn(&[usize], usize) -> Option<usize> + Sync,
{
    use rayon::prelude::*;
    let cols_data: Vec<Vec<(usize, Rat)>> = labels
        .par_iter()
        .map(|label| {
            let mut entries: Vec<(usize, Rat)> = Vec::new();
            terms.column(&label.args, label.target, |tuple, t, coeff| {
                if coeff.is_zero() {
                    return;
                }
                if let Some(r) = row_index(tuple, t) {
                    entries.push((r, coeff));
                }
            });
            entries
        })
        .collect();
    ComplexSlice {
        degree,
        labels,
        d: SparseMat::from_columns(rows, cols_data),
    }
}

/// Column labels for the full tensor cochain basis in lexicographic
/// (tuple, target) order.
pub(crate) fn full_labels(dim: usize, dim_m: usize, n: usize) -> Vec<CochainLabel> {
    let mut labels = Vec::new();
    for rank in 0..dim.pow(n as u32) {
        let args = tuple_unrank(dim, n, rank);
        for target in 0..dim_m {
            labels.push(CochainLabel {
                args: args.clone(),
                target,
                w_slot: None,
            });
        }
    }
    labels
}
