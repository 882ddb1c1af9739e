//! Sparse exact linear algebra: rank, kernel bases and linear solves over the
//! rationals, with a modular-prime fast path for large matrices.
//!
//! Matrices are stored column-major because coboundary matrices are built
//! column-by-column from basis cochains. Rank computations first split the
//! matrix into connected components of its nonzero pattern (weight gradings of
//! the cochain complexes show up as block structure, and the split exploits it
//! without knowing anything about algebra), then run a fraction-free
//! elimination per block: rows are scaled to integers, combined by
//! cross-multiplication and divided by their content after every step.
//!
//! Pivoting is deterministic - smallest remaining row index first, then the
//! smallest column index within that row - so reports are reproducible. Kernel
//! bases and solves go through the reduced row-echelon form, which is unique,
//! hence equally reproducible.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::rat::Rat;

/// Primes just below 2^31 (all above the 2^30 bound required for the modular
/// strategy). Products of two residues fit into a u64 without overflow.
pub const MODULAR_PRIMES: [u64; 4] = [2_147_483_647, 2_147_483_629, 2_147_483_587, 1_073_741_827];

/// Above this `rows * cols` size the auto strategy switches to modular ranks.
pub const DEFAULT_AUTO_THRESHOLD: usize = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum RankStrategy {
    Exact,
    Modular,
    Auto,
}

impl RankStrategy {
    pub fn parse(s: &str) -> Option<RankStrategy> {
        match s {
            "exact" => Some(RankStrategy::Exact),
            "modular" => Some(RankStrategy::Modular),
            "auto" => Some(RankStrategy::Auto),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum RankMethod {
    Exact,
    Modular(Vec<u64>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankResult {
    pub rank: usize,
    pub method: RankMethod,
    /// Only exact elimination certifies the rank; agreeing modular primes
    /// leave a (tiny) probability of undercounting.
    pub certified: bool,
}

impl RankResult {
    fn exact(rank: usize) -> Self {
        RankResult {
            rank,
            method: RankMethod::Exact,
            certified: true,
        }
    }
}

/// Sparse matrix over the rationals; no explicit zeros are stored and every
/// column keeps its entries sorted by row index.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseMat {
    rows: usize,
    cols: usize,
    cols_data: Vec<Vec<(usize, Rat)>>,
}

impl SparseMat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        SparseMat {
            rows,
            cols,
            cols_data: vec![Vec::new(); cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.cols_data[i].push((i, Rat::one()));
        }
        m
    }

    /// Build from (row, col, value) triplets; duplicate positions accumulate.
    pub fn from_triplets<I>(rows: usize, cols: usize, triplets: I) -> Self
    where
        I: IntoIterator<Item = (usize, usize, Rat)>,
    {
        let mut cols_data: Vec<Vec<(usize, Rat)>> = vec![Vec::new(); cols];
        for (r, c, v) in triplets {
            assert!(r < rows && c < cols, "triplet index out of range");
            if !v.is_zero() {
                cols_data[c].push((r, v));
            }
        }
        for col in &mut cols_data {
            Self::normalize_col(col);
        }
        SparseMat {
            rows,
            cols,
            cols_data,
        }
    }

    /// Build from per-column entry lists (entries may be unsorted, duplicates
    /// accumulate, zeros are dropped).
    pub fn from_columns(rows: usize, mut cols_data: Vec<Vec<(usize, Rat)>>) -> Self {
        for col in &mut cols_data {
            assert!(col.iter().all(|(r, _)| *r < rows));
            Self::normalize_col(col);
        }
        SparseMat {
            rows,
            cols: cols_data.len(),
            cols_data,
        }
    }

    pub fn from_dense_columns(rows: usize, columns: &[Vec<Rat>]) -> Self {
        let cols_data = columns
            .iter()
            .map(|v| {
                assert_eq!(v.len(), rows);
                v.iter()
                    .enumerate()
                    .filter(|(_, x)| !x.is_zero())
                    .map(|(r, x)| (r, x.clone()))
                    .collect()
            })
            .collect();
        SparseMat {
            rows,
            cols: columns.len(),
            cols_data,
        }
    }

    fn normalize_col(col: &mut Vec<(usize, Rat)>) {
        col.sort_by_key(|(r, _)| *r);
        let mut out: Vec<(usize, Rat)> = Vec::with_capacity(col.len());
        for (r, v) in col.drain(..) {
            match out.last_mut() {
                Some((lr, lv)) if *lr == r => *lv += v,
                _ => out.push((r, v)),
            }
        }
        out.retain(|(_, v)| !v.is_zero());
        *col = out;
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.cols_data.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.cols_data.iter().all(Vec::is_empty)
    }

    pub fn col(&self, c: usize) -> &[(usize, Rat)] {
        &self.cols_data[c]
    }

    pub fn get(&self, r: usize, c: usize) -> Rat {
        match self.cols_data[c].binary_search_by_key(&r, |(row, _)| *row) {
            Ok(i) => self.cols_data[c][i].1.clone(),
            Err(_) => Rat::zero(),
        }
    }

    /// Entries `(col, value)` of one row; linear scan over the columns, fine
    /// for small matrices such as module actions.
    pub fn row_entries(&self, row: usize) -> Vec<(usize, Rat)> {
        let mut out = Vec::new();
        for (c, col) in self.cols_data.iter().enumerate() {
            if let Ok(i) = col.binary_search_by_key(&row, |(r, _)| *r) {
                out.push((c, col[i].1.clone()));
            }
        }
        out
    }

    pub fn col_as_dense(&self, c: usize) -> Vec<Rat> {
        let mut v = vec![Rat::zero(); self.rows];
        for (r, x) in &self.cols_data[c] {
            v[*r] = x.clone();
        }
        v
    }

    pub fn transpose(&self) -> SparseMat {
        let mut cols_data: Vec<Vec<(usize, Rat)>> = vec![Vec::new(); self.rows];
        for (c, col) in self.cols_data.iter().enumerate() {
            for (r, v) in col {
                cols_data[*r].push((c, v.clone()));
            }
        }
        SparseMat {
            rows: self.cols,
            cols: self.rows,
            cols_data,
        }
    }

    pub fn mul_vec(&self, x: &[Rat]) -> Vec<Rat> {
        assert_eq!(x.len(), self.cols, "mul_vec dimension mismatch");
        let mut out = vec![Rat::zero(); self.rows];
        for (c, col) in self.cols_data.iter().enumerate() {
            if x[c].is_zero() {
                continue;
            }
            for (r, v) in col {
                out[*r] += v.clone() * x[c].clone();
            }
        }
        out
    }

    /// Matrix product `self * rhs`.
    pub fn mul(&self, rhs: &SparseMat) -> SparseMat {
        assert_eq!(self.cols, rhs.rows, "mul dimension mismatch");
        let cols_data: Vec<Vec<(usize, Rat)>> = rhs
            .cols_data
            .iter()
            .map(|rcol| {
                let mut acc: Vec<(usize, Rat)> = Vec::new();
                for (k, w) in rcol {
                    for (r, v) in &self.cols_data[*k] {
                        acc.push((*r, v.clone() * w.clone()));
                    }
                }
                Self::normalize_col(&mut acc);
                acc
            })
            .collect();
        SparseMat {
            rows: self.rows,
            cols: rhs.cols,
            cols_data,
        }
    }

    /// Keep only the rows selected by `row_map` (old index -> new index),
    /// producing a `new_rows x cols` matrix. Entries on unselected rows are
    /// dropped.
    pub fn select_rows(&self, row_map: &[Option<usize>], new_rows: usize) -> SparseMat {
        assert_eq!(row_map.len(), self.rows);
        let cols_data = self
            .cols_data
            .iter()
            .map(|col| {
                col.iter()
                    .filter_map(|(r, v)| row_map[*r].map(|nr| (nr, v.clone())))
                    .collect()
            })
            .collect();
        SparseMat {
            rows: new_rows,
            cols: self.cols,
            cols_data,
        }
    }

    pub fn scale(&self, s: &Rat) -> SparseMat {
        let cols_data = self
            .cols_data
            .iter()
            .map(|col| {
                col.iter()
                    .filter(|_| !s.is_zero())
                    .map(|(r, v)| (*r, v.clone() * s.clone()))
                    .collect()
            })
            .collect();
        SparseMat {
            rows: self.rows,
            cols: self.cols,
            cols_data,
        }
    }

    pub fn add(&self, other: &SparseMat) -> SparseMat {
        assert!(self.rows == other.rows && self.cols == other.cols);
        let cols_data = (0..self.cols)
            .map(|c| {
                let mut acc = self.cols_data[c].clone();
                acc.extend(other.cols_data[c].iter().cloned());
                Self::normalize_col(&mut acc);
                acc
            })
            .collect();
        SparseMat {
            rows: self.rows,
            cols: self.cols,
            cols_data,
        }
    }

    // ---------------------------------------------------------------- rank

    pub fn rank(&self, strategy: RankStrategy) -> RankResult {
        self.rank_with_threshold(strategy, DEFAULT_AUTO_THRESHOLD)
    }

    pub fn rank_with_threshold(&self, strategy: RankStrategy, threshold: usize) -> RankResult {
        match strategy {
            RankStrategy::Exact => RankResult::exact(self.rank_exact()),
            RankStrategy::Modular => self.rank_modular(),
            RankStrategy::Auto => {
                if self.rows.saturating_mul(self.cols) > threshold {
                    let ranks = self.modular_ranks();
                    match ranks.as_slice() {
                        [(p1, r1), (p2, r2)] if r1 == r2 => RankResult {
                            rank: *r1,
                            method: RankMethod::Modular(vec![*p1, *p2]),
                            certified: false,
                        },
                        // fewer than two usable primes, or disagreement
                        _ => RankResult::exact(self.rank_exact()),
                    }
                } else {
                    RankResult::exact(self.rank_exact())
                }
            }
        }
    }

    fn rank_exact(&self) -> usize {
        let comps = self.components();
        comps
            .par_iter()
            .map(|comp| exact_rank_int_rows(self.component_int_rows(comp)))
            .sum()
    }

    /// Rank modulo two distinct word-sized primes. If the two values agree the
    /// shared value is reported (uncertified); if they disagree the larger one
    /// is kept as the better lower bound. Primes that cannot reduce some
    /// denominator are skipped.
    fn rank_modular(&self) -> RankResult {
        let ranks = self.modular_ranks();
        if ranks.is_empty() {
            // No prime could reduce the matrix; fall back to exact.
            return RankResult::exact(self.rank_exact());
        }
        RankResult {
            rank: ranks.iter().map(|(_, r)| *r).max().unwrap(),
            method: RankMethod::Modular(ranks.iter().map(|(p, _)| *p).collect()),
            certified: false,
        }
    }

    /// Ranks over GF(p) for the first two usable primes of `MODULAR_PRIMES`.
    fn modular_ranks(&self) -> Vec<(u64, usize)> {
        let comps = self.components();
        let mut out = Vec::new();
        for &p in MODULAR_PRIMES.iter() {
            if out.len() == 2 {
                break;
            }
            let per_comp: Option<Vec<usize>> = comps
                .par_iter()
                .map(|comp| {
                    self.component_mod_rows(comp, p)
                        .map(|rows| modular::rank_mod_rows(rows, p))
                })
                .collect();
            if let Some(rs) = per_comp {
                out.push((p, rs.iter().sum::<usize>()));
            }
        }
        out
    }

    // ------------------------------------------------------------- kernel

    /// Basis of the right kernel: one vector per free column of the reduced
    /// row-echelon form, listed in column order. The RREF is unique, so the
    /// result does not depend on elimination order or thread count.
    pub fn kernel_basis(&self) -> Vec<Vec<Rat>> {
        let comps = self.components();
        let col_to_comp = {
            let mut v = vec![usize::MAX; self.cols];
            for (ci, comp) in comps.iter().enumerate() {
                for &c in &comp.cols {
                    v[c] = ci;
                }
            }
            v
        };
        let rrefs: Vec<Rref> = comps
            .par_iter()
            .map(|comp| rref_rows(self.component_rat_rows(comp), &comp.cols))
            .collect();
        let mut pivot_cols = vec![false; self.cols];
        for rref in &rrefs {
            for row in &rref.rows {
                pivot_cols[row.pivot_col] = true;
            }
        }
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_cols[free] {
                continue;
            }
            let mut v = vec![Rat::zero(); self.cols];
            v[free] = Rat::one();
            if col_to_comp[free] != usize::MAX {
                for row in &rrefs[col_to_comp[free]].rows {
                    if let Some(x) = row.get(free) {
                        v[row.pivot_col] = -x.clone();
                    }
                }
            }
            basis.push(v);
        }
        basis
    }

    // -------------------------------------------------------------- solve

    /// Solve `self * x = b`; free variables are set to zero (the first
    /// solution of the reduced-echelon back substitution). Returns `None` when
    /// `b` is outside the column space.
    pub fn solve(&self, b: &[Rat]) -> Option<Vec<Rat>> {
        assert_eq!(b.len(), self.rows, "solve dimension mismatch");
        let comps = self.components();
        let mut covered_rows = vec![false; self.rows];
        for comp in &comps {
            for &r in &comp.rows {
                covered_rows[r] = true;
            }
        }
        // Rows with no entries at all can only be satisfied by b = 0 there.
        for (r, v) in b.iter().enumerate() {
            if !covered_rows[r] && !v.is_zero() {
                return None;
            }
        }
        let partial: Vec<Option<Vec<(usize, Rat)>>> = comps
            .par_iter()
            .map(|comp| {
                let rows = self.component_rat_rows_augmented(comp, b);
                solve_rows(rows, &comp.cols)
            })
            .collect();
        let mut x = vec![Rat::zero(); self.cols];
        for part in partial {
            let entries = part?;
            for (c, v) in entries {
                x[c] = v;
            }
        }
        Some(x)
    }

    // --------------------------------------------------- component split

    fn components(&self) -> Vec<Component> {
        let mut uf = UnionFind::new(self.cols);
        let mut row_first_col = vec![usize::MAX; self.rows];
        for (c, col) in self.cols_data.iter().enumerate() {
            for (r, _) in col {
                if row_first_col[*r] == usize::MAX {
                    row_first_col[*r] = c;
                } else {
                    uf.union(row_first_col[*r], c);
                }
            }
        }
        let mut comp_index = std::collections::HashMap::new();
        let mut comps: Vec<Component> = Vec::new();
        for c in 0..self.cols {
            let root = uf.find(c);
            let idx = *comp_index.entry(root).or_insert_with(|| {
                comps.push(Component::default());
                comps.len() - 1
            });
            comps[idx].cols.push(c);
        }
        for r in 0..self.rows {
            if row_first_col[r] != usize::MAX {
                let idx = comp_index[&uf.find(row_first_col[r])];
                comps[idx].rows.push(r);
            }
        }
        comps
    }

    /// Rows of a component as integer rows (column indices are global);
    /// each row is scaled by the lcm of its denominators and divided by its
    /// content, which changes neither rank nor kernel.
    fn component_int_rows(&self, comp: &Component) -> Vec<Vec<(usize, BigInt)>> {
        let rat_rows = self.component_rat_rows(comp);
        rat_rows.into_iter().map(int_row_from_rat).collect()
    }

    fn component_rat_rows(&self, comp: &Component) -> Vec<Vec<(usize, Rat)>> {
        let mut row_pos = std::collections::HashMap::new();
        for (i, &r) in comp.rows.iter().enumerate() {
            row_pos.insert(r, i);
        }
        let mut rows: Vec<Vec<(usize, Rat)>> = vec![Vec::new(); comp.rows.len()];
        for &c in &comp.cols {
            for (r, v) in &self.cols_data[c] {
                rows[row_pos[r]].push((c, v.clone()));
            }
        }
        for row in &mut rows {
            row.sort_by_key(|(c, _)| *c);
        }
        rows
    }

    /// Like `component_rat_rows` but with `b`-values appended at the sentinel
    /// column `usize::MAX` so they never become pivots.
    fn component_rat_rows_augmented(&self, comp: &Component, b: &[Rat]) -> Vec<Vec<(usize, Rat)>> {
        let mut rows = self.component_rat_rows(comp);
        for (i, &r) in comp.rows.iter().enumerate() {
            if !b[r].is_zero() {
                rows[i].push((usize::MAX, b[r].clone()));
            }
        }
        rows
    }

    fn component_mod_rows(&self, comp: &Component, p: u64) -> Option<Vec<Vec<(usize, u64)>>> {
        let rat_rows = self.component_rat_rows(comp);
        rat_rows
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|(c, v)| modular::reduce(&v, p).map(|x| (c, x)))
                    .collect::<Option<Vec<_>>>()
                    .map(|mut r| {
                        r.retain(|(_, x)| *x != 0);
                        r
                    })
            })
            .collect()
    }
}

#[derive(Default)]
struct Component {
    rows: Vec<usize>,
    cols: Vec<usize>,
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }
    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

fn int_row_from_rat(row: Vec<(usize, Rat)>) -> Vec<(usize, BigInt)> {
    if row.is_empty() {
        return Vec::new();
    }
    let mut lcm = BigInt::one();
    for (_, v) in &row {
        lcm = lcm.lcm(v.denom());
    }
    let mut out: Vec<(usize, BigInt)> = row
        .into_iter()
        .map(|(c, v)| (c, v.numer() * (&lcm / v.denom())))
        .collect();
    divide_by_content(&mut out);
    out
}

fn divide_by_content(row: &mut Vec<(usize, BigInt)>) {
    let mut g = BigInt::zero();
    for (_, v) in row.iter() {
        g = g.gcd(v);
        if g.is_one() {
            return;
        }
    }
    if g.is_zero() || g.is_one() {
        return;
    }
    for (_, v) in row.iter_mut() {
        *v = &*v / &g;
    }
}

/// Fraction-free elimination on integer rows: take the first remaining
/// nonempty row as pivot (its smallest column is the pivot column), combine
/// every later row holding that column by cross-multiplication, and reduce by
/// the row content. The count of extracted pivots is the rank.
fn exact_rank_int_rows(mut rows: Vec<Vec<(usize, BigInt)>>) -> usize {
    let mut rank = 0;
    for i in 0..rows.len() {
        if rows[i].is_empty() {
            continue;
        }
        rank += 1;
        let pivot = std::mem::take(&mut rows[i]);
        let (pcol, pval) = (pivot[0].0, pivot[0].1.clone());
        for row in rows.iter_mut().skip(i + 1) {
            let Ok(pos) = row.binary_search_by_key(&pcol, |(c, _)| *c) else {
                continue;
            };
            let factor = row[pos].1.clone();
            let mut merged = merge_scaled(row, &pval, &pivot, &(-&factor));
            divide_by_content(&mut merged);
            *row = merged;
        }
    }
    rank
}

/// Compute `a*ca + b*cb` for sorted sparse integer rows.
fn merge_scaled(
    a: &[(usize, BigInt)],
    ca: &BigInt,
    b: &[(usize, BigInt)],
    cb: &BigInt,
) -> Vec<(usize, BigInt)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i >= a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push((a[i].0, &a[i].1 * ca));
            i += 1;
        } else if take_b {
            out.push((b[j].0, &b[j].1 * cb));
            j += 1;
        } else {
            let v = &a[i].1 * ca + &b[j].1 * cb;
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

struct RrefRow {
    pivot_col: usize,
    entries: Vec<(usize, Rat)>,
}

impl RrefRow {
    fn get(&self, col: usize) -> Option<&Rat> {
        self.entries
            .binary_search_by_key(&col, |(c, _)| *c)
            .ok()
            .map(|i| &self.entries[i].1)
    }
}

struct Rref {
    rows: Vec<RrefRow>,
}

/// Reduced row-echelon form over the rationals on sparse rows whose column
/// indices live in `cols` (global indices, ascending). Pivot entries are
/// normalized to 1 and eliminated from every other row.
fn rref_rows(rows: Vec<Vec<(usize, Rat)>>, cols: &[usize]) -> Rref {
    let mut active: Vec<Vec<(usize, Rat)>> = rows;
    let mut pivot_rows: Vec<RrefRow> = Vec::new();
    for &col in cols {
        let Some(i) = active
            .iter()
            .position(|r| r.first().is_some_and(|(c, _)| *c == col))
        else {
            continue;
        };
        let mut pivot = active.swap_remove(i);
        // swap_remove breaks original order, restore determinism: order of
        // remaining rows does not affect the (unique) RREF.
        let inv = pivot[0].1.clone();
        for (_, v) in &mut pivot {
            *v = v.clone() / inv.clone();
        }
        for row in active.iter_mut() {
            eliminate_col(row, col, &pivot);
        }
        for prow in pivot_rows.iter_mut() {
            eliminate_col(&mut prow.entries, col, &pivot);
        }
        pivot_rows.push(RrefRow {
            pivot_col: col,
            entries: pivot,
        });
    }
    Rref { rows: pivot_rows }
}

fn eliminate_col(row: &mut Vec<(usize, Rat)>, col: usize, pivot: &[(usize, Rat)]) {
    let Ok(pos) = row.binary_search_by_key(&col, |(c, _)| *c) else {
        return;
    };
    let factor = row[pos].1.clone();
    let mut merged: Vec<(usize, Rat)> = Vec::with_capacity(row.len() + pivot.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < pivot.len() {
        let take_a = j >= pivot.len() || (i < row.len() && row[i].0 < pivot[j].0);
        let take_b = i >= row.len() || (j < pivot.len() && pivot[j].0 < row[i].0);
        if take_a {
            merged.push(row[i].clone());
            i += 1;
        } else if take_b {
            merged.push((pivot[j].0, -(pivot[j].1.clone() * factor.clone())));
            j += 1;
        } else {
            let v = row[i].1.clone() - pivot[j].1.clone() * factor.clone();
            if !v.is_zero() {
                merged.push((row[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    *row = merged;
}

/// RREF-based solve on augmented rows (sentinel column `usize::MAX` carries b).
/// Returns the (col, value) pairs for pivot columns, or `None` if inconsistent.
fn solve_rows(rows: Vec<Vec<(usize, Rat)>>, cols: &[usize]) -> Option<Vec<(usize, Rat)>> {
    let mut active = rows;
    let mut solution = Vec::new();
    let mut pivots: Vec<(usize, Vec<(usize, Rat)>)> = Vec::new();
    for &col in cols {
        let Some(i) = active
            .iter()
            .position(|r| r.first().is_some_and(|(c, _)| *c == col))
        else {
            continue;
        };
        let mut pivot = active.swap_remove(i);
        let inv = pivot[0].1.clone();
        for (_, v) in &mut pivot {
            *v = v.clone() / inv.clone();
        }
        for row in active.iter_mut() {
            eliminate_col(row, col, &pivot);
        }
        for (_, prow) in pivots.iter_mut() {
            eliminate_col(prow, col, &pivot);
        }
        pivots.push((col, pivot));
    }
    // Any leftover nonzero row can only hold the sentinel entry: inconsistent.
    if active.iter().any(|r| !r.is_empty()) {
        return None;
    }
    for (col, row) in pivots {
        let b = row
            .iter()
            .find(|(c, _)| *c == usize::MAX)
            .map(|(_, v)| v.clone())
            .unwrap_or_else(Rat::zero);
        solution.push((col, b));
    }
    Some(solution)
}

pub mod modular {
    //! Rank computation over GF(p) for word-sized primes.

    use num_bigint::BigInt;
    use num_traits::{Signed, ToPrimitive};

    use crate::rat::Rat;

    pub fn reduce_int(v: &BigInt, p: u64) -> u64 {
        let m = (v.magnitude() % p).to_u64().unwrap();
        if v.is_negative() && m != 0 {
            p - m
        } else {
            m
        }
    }

    /// Map a rational into GF(p); `None` when the denominator vanishes mod p.
    pub fn reduce(v: &Rat, p: u64) -> Option<u64> {
        let den = reduce_int(v.denom(), p);
        if den == 0 {
            return None;
        }
        let num = reduce_int(v.numer(), p);
        Some(mul(num, inv(den, p), p))
    }

    pub fn mul(a: u64, b: u64, p: u64) -> u64 {
        // p < 2^31 so the product fits into u64.
        (a * b) % p
    }

    pub fn inv(a: u64, p: u64) -> u64 {
        pow(a, p - 2, p)
    }

    fn pow(mut base: u64, mut exp: u64, p: u64) -> u64 {
        let mut acc = 1u64;
        base %= p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = mul(acc, base, p);
            }
            base = mul(base, base, p);
            exp >>= 1;
        }
        acc
    }

    /// Same elimination order as the exact path, with arithmetic in GF(p).
    pub fn rank_mod_rows(mut rows: Vec<Vec<(usize, u64)>>, p: u64) -> usize {
        let mut rank = 0;
        for i in 0..rows.len() {
            if rows[i].is_empty() {
                continue;
            }
            rank += 1;
            let pivot = std::mem::take(&mut rows[i]);
            let (pcol, pval) = pivot[0];
            let pinv = inv(pval, p);
            for row in rows.iter_mut().skip(i + 1) {
                let Ok(pos) = row.binary_search_by_key(&pcol, |(c, _)| *c) else {
                    continue;
                };
                let factor = mul(row[pos].1, pinv, p);
                let mut merged = Vec::with_capacity(row.len() + pivot.len());
                let (mut a, mut b) = (0, 0);
                while a < row.len() || b < pivot.len() {
                    let take_a = b >= pivot.len() || (a < row.len() && row[a].0 < pivot[b].0);
                    let take_b = a >= row.len() || (b < pivot.len() && pivot[b].0 < row[a].0);
                    if take_a {
                        merged.push(row[a]);
                        a += 1;
                    } else if take_b {
                        let v = (p - mul(pivot[b].1, factor, p)) % p;
                        if v != 0 {
                            merged.push((pivot[b].0, v));
                        }
                        b += 1;
                    } else {
                        let v = (row[a].1 + p - mul(pivot[b].1, factor, p)) % p;
                        if v != 0 {
                            merged.push((row[a].0, v));
                        }
                        a += 1;
                        b += 1;
                    }
                }
                *row = merged;
            }
        }
        rank
    }

}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{frac, rat};

    fn mat(rows: usize, cols: usize, entries: &[(usize, usize, i64)]) -> SparseMat {
        SparseMat::from_triplets(
            rows,
            cols,
            entries.iter().map(|&(r, c, v)| (r, c, rat(v))),
        )
    }

    #[test]
    fn identity_rank() {
        let m = SparseMat::identity(3);
        let r = m.rank(RankStrategy::Exact);
        assert_eq!(r.rank, 3);
        assert!(r.certified);
        assert_eq!(r.method, RankMethod::Exact);
    }

    #[test]
    fn zero_matrix_rank() {
        let m = SparseMat::zero(5, 7);
        assert_eq!(m.rank(RankStrategy::Exact).rank, 0);
        assert_eq!(m.kernel_basis().len(), 7);
    }

    #[test]
    fn proportional_rows() {
        let m = mat(2, 2, &[(0, 0, 1), (0, 1, 2), (1, 0, 2), (1, 1, 4)]);
        assert_eq!(m.rank(RankStrategy::Exact).rank, 1);
        assert_eq!(m.rank(RankStrategy::Modular).rank, 1);
    }

    #[test]
    fn kernel_of_ones_row() {
        let m = mat(1, 2, &[(0, 0, 1), (0, 1, 1)]);
        let k = m.kernel_basis();
        assert_eq!(k.len(), 1);
        assert!(m.mul_vec(&k[0]).iter().all(|v| v.is_zero()));
        // proportional to (1, -1)
        assert_eq!(k[0][0].clone() + k[0][1].clone(), rat(0));
    }

    #[test]
    fn solve_identity_and_zero() {
        let id = SparseMat::identity(3);
        let b = vec![rat(3), rat(-1), frac(1, 2)];
        assert_eq!(id.solve(&b), Some(b.clone()));
        let z = SparseMat::zero(2, 3);
        assert_eq!(z.solve(&[rat(1), rat(0)]), None);
        assert_eq!(z.solve(&[rat(0), rat(0)]), Some(vec![rat(0); 3]));
    }

    #[test]
    fn rank_plus_kernel_is_cols() {
        let m = mat(
            4,
            5,
            &[
                (0, 0, 1),
                (0, 2, -3),
                (1, 1, 2),
                (1, 2, 1),
                (2, 0, 2),
                (2, 2, -6),
                (3, 4, 7),
            ],
        );
        let r = m.rank(RankStrategy::Exact).rank;
        let k = m.kernel_basis();
        assert_eq!(r + k.len(), m.cols());
        for v in &k {
            assert!(m.mul_vec(v).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn modular_matches_exact_on_rationals() {
        let m = SparseMat::from_triplets(
            3,
            3,
            vec![
                (0, 0, frac(1, 2)),
                (0, 1, frac(-2, 3)),
                (1, 1, frac(5, 7)),
                (2, 0, frac(1, 2)),
                (2, 1, frac(-2, 3)),
            ],
        );
        let exact = m.rank(RankStrategy::Exact);
        let modular = m.rank(RankStrategy::Modular);
        assert_eq!(exact.rank, modular.rank);
        assert!(!modular.certified);
        assert!(matches!(modular.method, RankMethod::Modular(ref ps) if ps.len() == 2));
    }

    #[test]
    fn auto_uses_exact_below_threshold() {
        let m = SparseMat::identity(4);
        let r = m.rank_with_threshold(RankStrategy::Auto, 1_000);
        assert!(r.certified);
        let r2 = m.rank_with_threshold(RankStrategy::Auto, 8);
        assert!(!r2.certified);
        assert_eq!(r2.rank, 4);
    }

    #[test]
    fn modular_primes_are_prime_and_large() {
        for &p in MODULAR_PRIMES.iter() {
            assert!(p > (1 << 30), "{p} too small");
            let mut d = 2u64;
            while d * d <= p {
                assert!(p % d != 0, "{p} divisible by {d}");
                d += 1;
            }
        }
    }

    #[test]
    fn solve_respects_column_space() {
        // rank-1 matrix, b outside the column space
        let m = mat(2, 2, &[(0, 0, 1), (1, 0, 2)]);
        assert!(m.solve(&[rat(1), rat(2)]).is_some());
        assert!(m.solve(&[rat(1), rat(3)]).is_none());
    }

    #[test]
    fn components_do_not_change_results() {
        // block diagonal with a 2x2 and a 1x1 block
        let m = mat(3, 3, &[(0, 0, 1), (0, 1, 1), (1, 0, 1), (1, 1, 1), (2, 2, 5)]);
        assert_eq!(m.rank(RankStrategy::Exact).rank, 2);
        let k = m.kernel_basis();
        assert_eq!(k.len(), 1);
        assert!(m.mul_vec(&k[0]).iter().all(|x| x.is_zero()));
    }
}
