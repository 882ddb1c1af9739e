//! Leibniz module structures: two-sided actions, the three module axioms,
//! symmetric/antisymmetric constructions, the antisymmetric-kernel splitting,
//! Hom-modules and the extension group of pairs of twisting functions.

use num_traits::Zero;

use crate::algebra::AlgebraLaw;
use crate::error::{Error, Result};
use crate::rat::Rat;
use crate::sparse::SparseMat;
use crate::subspace::Subspace;

/// A Leibniz module over `algebra`: `left[i]` is the matrix of `m -> [e_i, m]`
/// and `right[i]` the matrix of `m -> [m, e_i]`.
#[derive(Clone, Debug, PartialEq)]
pub struct Bimodule {
    pub algebra: AlgebraLaw,
    pub dim_m: usize,
    left: Vec<SparseMat>,
    right: Vec<SparseMat>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModuleAxiom {
    /// `[m,[x,y]] = [[m,x],y] - [[m,y],x]`
    Mll,
    /// `[x,[m,y]] = [[x,m],y] - [[x,y],m]`
    Lml,
    /// `[x,[y,m]] = [[x,y],m] - [[x,m],y]`
    Llm,
}

#[derive(Clone, Debug)]
pub struct AxiomViolation {
    pub axiom: ModuleAxiom,
    pub x: usize,
    pub y: usize,
    pub m: usize,
}

impl Bimodule {
    pub fn new(algebra: AlgebraLaw, left: Vec<SparseMat>, right: Vec<SparseMat>) -> Result<Self> {
        let dim = algebra.dim();
        if left.len() != dim || right.len() != dim {
            return Err(Error::DimensionMismatch(
                "one action matrix per algebra basis element expected".into(),
            ));
        }
        let dim_m = left.first().map_or(0, |m| m.rows());
        for m in left.iter().chain(right.iter()) {
            if m.rows() != dim_m || m.cols() != dim_m {
                return Err(Error::DimensionMismatch(
                    "action matrices must be square of equal size".into(),
                ));
            }
        }
        Ok(Bimodule {
            algebra,
            dim_m,
            left,
            right,
        })
    }

    /// Zero actions; a symmetric module over any algebra.
    pub fn trivial(algebra: AlgebraLaw, dim_m: usize) -> Self {
        let z = vec![SparseMat::zero(dim_m, dim_m); algebra.dim()];
        Bimodule {
            algebra,
            dim_m,
            left: z.clone(),
            right: z,
        }
    }

    pub fn left(&self, i: usize) -> &SparseMat {
        &self.left[i]
    }

    pub fn right(&self, i: usize) -> &SparseMat {
        &self.right[i]
    }

    pub fn left_apply(&self, i: usize, v: &[Rat]) -> Vec<Rat> {
        self.left[i].mul_vec(v)
    }

    pub fn right_apply(&self, i: usize, v: &[Rat]) -> Vec<Rat> {
        self.right[i].mul_vec(v)
    }

    /// Action matrix of an algebra element given by coordinates.
    fn action_of(&self, mats: &[SparseMat], x: &[Rat]) -> SparseMat {
        let mut acc = SparseMat::zero(self.dim_m, self.dim_m);
        for (i, c) in x.iter().enumerate() {
            if !c.is_zero() {
                acc = acc.add(&mats[i].scale(c));
            }
        }
        acc
    }

    pub fn is_symmetric(&self) -> bool {
        self.left
            .iter()
            .zip(&self.right)
            .all(|(l, r)| l.add(r).is_zero())
    }

    pub fn is_antisymmetric(&self) -> bool {
        self.left.iter().all(SparseMat::is_zero)
    }

    /// Check the axioms MLL, LML, LLM on every basis triple `(x, y, m)`.
    pub fn check(&self) -> Vec<AxiomViolation> {
        let dim = self.algebra.dim();
        let mut out = Vec::new();
        for x in 0..dim {
            for y in 0..dim {
                let bracket = self.algebra.bracket_basis(x, y);
                let l_bracket = |v: &[Rat]| {
                    let mut acc = vec![Rat::zero(); self.dim_m];
                    for (k, c) in bracket {
                        for (a, lv) in self.left[*k].mul_vec(v).into_iter().enumerate() {
                            acc[a] += c.clone() * lv;
                        }
                    }
                    acc
                };
                let r_bracket = |v: &[Rat]| {
                    let mut acc = vec![Rat::zero(); self.dim_m];
                    for (k, c) in bracket {
                        for (a, rv) in self.right[*k].mul_vec(v).into_iter().enumerate() {
                            acc[a] += c.clone() * rv;
                        }
                    }
                    acc
                };
                for m in 0..self.dim_m {
                    let mut em = vec![Rat::zero(); self.dim_m];
                    em[m] = crate::rat::one();
                    // MLL: [m,[x,y]] = [[m,x],y] - [[m,y],x]
                    let lhs = r_bracket(&em);
                    let rx = self.right[x].mul_vec(&em);
                    let ry = self.right[y].mul_vec(&em);
                    let rhs: Vec<Rat> = self.right[y]
                        .mul_vec(&rx)
                        .into_iter()
                        .zip(self.right[x].mul_vec(&ry))
                        .map(|(a, b)| a - b)
                        .collect();
                    if lhs != rhs {
                        out.push(AxiomViolation {
                            axiom: ModuleAxiom::Mll,
                            x,
                            y,
                            m,
                        });
                    }
                    // LML: [x,[m,y]] = [[x,m],y] - [[x,y],m]
                    let lhs = self.left[x].mul_vec(&ry);
                    let lx = self.left[x].mul_vec(&em);
                    let rhs: Vec<Rat> = self.right[y]
                        .mul_vec(&lx)
                        .into_iter()
                        .zip(l_bracket(&em))
                        .map(|(a, b)| a - b)
                        .collect();
                    if lhs != rhs {
                        out.push(AxiomViolation {
                            axiom: ModuleAxiom::Lml,
                            x,
                            y,
                            m,
                        });
                    }
                    // LLM: [x,[y,m]] = [[x,y],m] - [[x,m],y]
                    let ly = self.left[y].mul_vec(&em);
                    let lhs = self.left[x].mul_vec(&ly);
                    let rhs: Vec<Rat> = l_bracket(&em)
                        .into_iter()
                        .zip(self.right[y].mul_vec(&lx))
                        .map(|(a, b)| a - b)
                        .collect();
                    if lhs != rhs {
                        out.push(AxiomViolation {
                            axiom: ModuleAxiom::Llm,
                            x,
                            y,
                            m,
                        });
                    }
                }
            }
        }
        out
    }

    pub fn checked(self) -> Result<Self> {
        match self.check().first() {
            None => Ok(self),
            Some(v) => Err(Error::BadModule(format!(
                "axiom {:?} fails at triple ({}, {}, {})",
                v.axiom, v.x, v.y, v.m
            ))),
        }
    }

    /// Direct sum of two modules over the same algebra (block actions).
    pub fn direct_sum(&self, other: &Bimodule) -> Result<Bimodule> {
        if self.algebra != other.algebra {
            return Err(Error::BadModule("direct sum over different algebras".into()));
        }
        let dim_m = self.dim_m + other.dim_m;
        let block = |a: &SparseMat, b: &SparseMat| {
            let mut triplets = Vec::new();
            for c in 0..a.cols() {
                for (r, v) in a.col(c) {
                    triplets.push((*r, c, v.clone()));
                }
            }
            for c in 0..b.cols() {
                for (r, v) in b.col(c) {
                    triplets.push((self.dim_m + *r, self.dim_m + c, v.clone()));
                }
            }
            SparseMat::from_triplets(dim_m, dim_m, triplets)
        };
        let left = self
            .left
            .iter()
            .zip(&other.left)
            .map(|(a, b)| block(a, b))
            .collect();
        let right = self
            .right
            .iter()
            .zip(&other.right)
            .map(|(a, b)| block(a, b))
            .collect();
        Ok(Bimodule {
            algebra: self.algebra.clone(),
            dim_m,
            left,
            right,
        })
    }

    /// The same module space viewed over a subalgebra: keep only the actions
    /// of the listed basis elements, with `sub_law` their algebra.
    pub fn restrict_algebra(&self, sub_law: AlgebraLaw, indices: &[usize]) -> Result<Bimodule> {
        if sub_law.dim() != indices.len() {
            return Err(Error::DimensionMismatch("restriction index count".into()));
        }
        Bimodule::new(
            sub_law,
            indices.iter().map(|&i| self.left[i].clone()).collect(),
            indices.iter().map(|&i| self.right[i].clone()).collect(),
        )
    }

    /// Transport to a new basis of the algebra (module space untouched):
    /// the action of the new basis vector `b_i` is the matching linear
    /// combination of old actions. `basis` columns express the new basis in
    /// the old one, `new_law` is the law already rewritten in that basis.
    pub fn transport_algebra(&self, new_law: AlgebraLaw, basis: &SparseMat) -> Result<Bimodule> {
        if new_law.dim() != self.algebra.dim() || basis.cols() != self.algebra.dim() {
            return Err(Error::DimensionMismatch("transport basis".into()));
        }
        let left = (0..basis.cols())
            .map(|i| self.action_of(&self.left, &basis.col_as_dense(i)))
            .collect();
        let right = (0..basis.cols())
            .map(|i| self.action_of(&self.right, &basis.col_as_dense(i)))
            .collect();
        Ok(Bimodule {
            algebra: new_law,
            dim_m: self.dim_m,
            left,
            right,
        })
    }
}

/// Adjoint module of a Leibniz algebra: left and right multiplication.
pub fn adjoint_bimodule(law: &AlgebraLaw) -> Result<Bimodule> {
    law.require_leibniz()?;
    let dim = law.dim();
    let mut left = Vec::with_capacity(dim);
    let mut right = Vec::with_capacity(dim);
    for i in 0..dim {
        let mut lcols: Vec<Vec<(usize, Rat)>> = Vec::with_capacity(dim);
        let mut rcols: Vec<Vec<(usize, Rat)>> = Vec::with_capacity(dim);
        for m in 0..dim {
            lcols.push(law.bracket_basis(i, m).to_vec());
            rcols.push(law.bracket_basis(m, i).to_vec());
        }
        left.push(SparseMat::from_columns(dim, lcols));
        right.push(SparseMat::from_columns(dim, rcols));
    }
    Bimodule::new(law.clone(), left, right)
}

/// First triple violating the right-module axiom
/// `m.[x,y] = (m.x).y - (m.y).x`, if any.
pub fn right_module_defect(law: &AlgebraLaw, action: &[SparseMat]) -> Option<(usize, usize, usize)> {
    let dim = law.dim();
    let dm = action.first().map_or(0, |m| m.rows());
    for x in 0..dim {
        for y in 0..dim {
            for m in 0..dm {
                let mut em = vec![Rat::zero(); dm];
                em[m] = crate::rat::one();
                let mut lhs = vec![Rat::zero(); dm];
                for (k, c) in law.bracket_basis(x, y) {
                    for (a, v) in action[*k].mul_vec(&em).into_iter().enumerate() {
                        lhs[a] += c.clone() * v;
                    }
                }
                let mx = action[x].mul_vec(&em);
                let my = action[y].mul_vec(&em);
                let rhs: Vec<Rat> = action[y]
                    .mul_vec(&mx)
                    .into_iter()
                    .zip(action[x].mul_vec(&my))
                    .map(|(a, b)| a - b)
                    .collect();
                if lhs != rhs {
                    return Some((x, y, m));
                }
            }
        }
    }
    None
}

pub fn require_right_module(law: &AlgebraLaw, action: &[SparseMat]) -> Result<()> {
    match right_module_defect(law, action) {
        None => Ok(()),
        Some((x, y, m)) => Err(Error::NotRightModule(x, y, m)),
    }
}

/// Symmetric Leibniz module from a right module over a Lie algebra:
/// `[x, m] = -[m, x]`.
pub fn symmetric_from_lie(law: &AlgebraLaw, right: Vec<SparseMat>) -> Result<Bimodule> {
    law.require_lie()?;
    require_right_module(law, &right)?;
    let left = right
        .iter()
        .map(|r| r.scale(&crate::rat::rat(-1)))
        .collect();
    Bimodule::new(law.clone(), left, right)
}

/// Antisymmetric Leibniz module from a right module over a Lie algebra:
/// `[x, m] = 0`.
pub fn antisymmetric_from_lie(law: &AlgebraLaw, right: Vec<SparseMat>) -> Result<Bimodule> {
    law.require_lie()?;
    require_right_module(law, &right)?;
    let dm = right.first().map_or(0, |m| m.rows());
    let left = vec![SparseMat::zero(dm, dm); right.len()];
    Bimodule::new(law.clone(), left, right)
}

/// Split a module along its antisymmetric kernel: `M^a` is the action-closure
/// of the span of all `[x,m] + [m,x]`, `M^s` the quotient module, and the
/// returned matrix is the projection `M -> M^s`.
pub fn split_symmetrization(module: &Bimodule) -> Result<(Bimodule, SparseMat, Bimodule)> {
    let dim = module.algebra.dim();
    let dm = module.dim_m;
    let mut space = Subspace::zero(dm);
    let mut queue = Vec::new();
    for i in 0..dim {
        for m in 0..dm {
            let mut em = vec![Rat::zero(); dm];
            em[m] = crate::rat::one();
            let gen: Vec<Rat> = module
                .left_apply(i, &em)
                .into_iter()
                .zip(module.right_apply(i, &em))
                .map(|(a, b)| a + b)
                .collect();
            if space.insert(gen.clone()) {
                queue.push(gen);
            }
        }
    }
    while let Some(v) = queue.pop() {
        for i in 0..dim {
            for w in [module.left_apply(i, &v), module.right_apply(i, &v)] {
                if space.insert(w.clone()) {
                    queue.push(w);
                }
            }
        }
    }

    // M^a: restrict the actions to the closure, in its echelon basis.
    let sub_basis: Vec<Vec<Rat>> = space.basis().map(|v| v.to_vec()).collect();
    let da = sub_basis.len();
    let restrict = |mat: &SparseMat| -> Result<SparseMat> {
        let mut cols = Vec::with_capacity(da);
        for b in &sub_basis {
            let img = mat.mul_vec(b);
            let coords = space
                .coordinates(&img)
                .ok_or_else(|| Error::BadModule("antisymmetric kernel not action-closed".into()))?;
            cols.push(
                coords
                    .into_iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .collect(),
            );
        }
        Ok(SparseMat::from_columns(da, cols))
    };
    let m_a = Bimodule::new(
        module.algebra.clone(),
        module
            .left
            .iter()
            .map(&restrict)
            .collect::<Result<Vec<_>>>()?,
        module
            .right
            .iter()
            .map(&restrict)
            .collect::<Result<Vec<_>>>()?,
    )?;

    // M^s: induced actions on the complement coordinates.
    let comp = space.complement_indices();
    let ds = comp.len();
    let comp_pos: std::collections::HashMap<usize, usize> =
        comp.iter().enumerate().map(|(n, &i)| (i, n)).collect();
    let project = |v: Vec<Rat>| -> Vec<(usize, Rat)> {
        let reduced = space.reduce(v);
        reduced
            .into_iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(i, x)| (comp_pos[&i], x))
            .collect()
    };
    let induce = |mat: &SparseMat| -> SparseMat {
        let mut cols = Vec::with_capacity(ds);
        for &i in &comp {
            let mut e = vec![Rat::zero(); dm];
            e[i] = crate::rat::one();
            cols.push(project(mat.mul_vec(&e)));
        }
        SparseMat::from_columns(ds, cols)
    };
    let m_s = Bimodule::new(
        module.algebra.clone(),
        module.left.iter().map(&induce).collect(),
        module.right.iter().map(&induce).collect(),
    )?;
    let mut proj_cols = Vec::with_capacity(dm);
    for i in 0..dm {
        let mut e = vec![Rat::zero(); dm];
        e[i] = crate::rat::one();
        proj_cols.push(project(e));
    }
    let projection = SparseMat::from_columns(ds, proj_cols);
    Ok((m_a, projection, m_s))
}

/// The symmetric module `Hom(N, M)` over a Lie algebra with right action
/// `(f.x)(n) = f(n).x - f(n.x)`. Basis element `(p, q)` is the map sending
/// the `q`-th basis vector of `N` to the `p`-th basis vector of `M`, at
/// index `p * dim_n + q`.
pub fn hom_module(law: &AlgebraLaw, n: &Bimodule, m: &Bimodule) -> Result<Bimodule> {
    law.require_lie()?;
    if !n.is_symmetric() || !m.is_symmetric() {
        return Err(Error::NotSymmetricModule(0));
    }
    let (dn, dm) = (n.dim_m, m.dim_m);
    let dh = dn * dm;
    let mut right = Vec::with_capacity(law.dim());
    for x in 0..law.dim() {
        let mut triplets = Vec::new();
        for p in 0..dm {
            for q in 0..dn {
                let col = p * dn + q;
                // f(n).x part: e_q -> (e_p).x
                for (pp, v) in m.right(x).col(p) {
                    triplets.push((*pp * dn + q, col, v.clone()));
                }
                // -f(n.x) part: e_qq -> -R[q, qq] e_p for every qq
                for (qq, v) in n.right(x).row_entries(q) {
                    triplets.push((p * dn + qq, col, -v));
                }
            }
        }
        right.push(SparseMat::from_triplets(dh, dh, triplets));
    }
    symmetric_from_lie(law, right)
}

/// Invariants of the right action: `{ f : f.x = 0 for all x }`.
pub fn right_invariants(module: &Bimodule) -> Subspace {
    let dim = module.algebra.dim();
    let dm = module.dim_m;
    let mut triplets = Vec::new();
    for i in 0..dim {
        for c in 0..dm {
            for (r, v) in module.right(i).col(c) {
                triplets.push((i * dm + r, c, v.clone()));
            }
        }
    }
    let m = SparseMat::from_triplets(dim * dm, dm, triplets);
    Subspace::from_spanning(dm, m.kernel_basis())
}

/// The linear data of an extension `0 -> M -> E -> N -> 0` of Leibniz
/// modules: matrices `phi_l[x]` and `phi_r[x]` in `Hom(N, M)` per algebra
/// basis element.
#[derive(Clone, Debug)]
pub struct TwistingPair {
    pub phi_l: Vec<SparseMat>,
    pub phi_r: Vec<SparseMat>,
}

/// Index layout for the twisting-pair unknowns:
/// `side * (dim_h * dm * dn) + x * (dm * dn) + p * dn + q`
/// with side 0 = left, 1 = right.
fn var(side: usize, x: usize, p: usize, q: usize, dh: usize, dm: usize, dn: usize) -> usize {
    debug_assert!(side < 2 && x < dh && p < dm && q < dn);
    side * (dh * dm * dn) + x * (dm * dn) + p * dn + q
}

/// The group of extensions `0 -> M -> E -> N -> 0` of Leibniz modules over
/// `law`, as (dimension, basis of twisting-pair classes). Dimension zero
/// means every such extension splits.
pub fn module_extension_group(
    law: &AlgebraLaw,
    m: &Bimodule,
    n: &Bimodule,
) -> Result<(usize, Vec<TwistingPair>)> {
    if m.algebra != *law || n.algebra != *law {
        return Err(Error::BadModule("modules must live over the given law".into()));
    }
    let dh = law.dim();
    let (dm, dn) = (m.dim_m, n.dim_m);
    let nvars = 2 * dh * dm * dn;
    let v = |side, x, p, q| var(side, x, p, q, dh, dm, dn);

    let mut triplets: Vec<(usize, usize, Rat)> = Vec::new();
    let mut row = 0;
    let push = |trips: &mut Vec<(usize, usize, Rat)>, row: usize, col: usize, val: Rat| {
        if !val.is_zero() {
            trips.push((row, col, val));
        }
    };
    for x in 0..dh {
        for y in 0..dh {
            let bracket = law.bracket_basis(x, y);
            for q in 0..dn {
                for p in 0..dm {
                    // (a)  phi_r([x,y])(n) - [phi_r(x)(n),y] - phi_r(y)([n,x])
                    //      + [phi_r(y)(n),x] + phi_r(x)([n,y]) = 0
                    for (k, c) in bracket {
                        push(&mut triplets, row, v(1, *k, p, q), c.clone());
                    }
                    for (pp, c) in m.right(y).row_entries(p) {
                        push(&mut triplets, row, v(1, x, pp, q), -c.clone());
                    }
                    for (qq, c) in n.right(x).col(q) {
                        push(&mut triplets, row, v(1, y, p, *qq), -c.clone());
                    }
                    for (pp, c) in m.right(x).row_entries(p) {
                        push(&mut triplets, row, v(1, y, pp, q), c.clone());
                    }
                    for (qq, c) in n.right(y).col(q) {
                        push(&mut triplets, row, v(1, x, p, *qq), c.clone());
                    }
                    row += 1;
                    // (b)  phi_l(x)([n,y]) + [x,phi_r(y)(n)] - [phi_l(x)(n),y]
                    //      - phi_r(y)([x,n]) + phi_l([x,y])(n) = 0
                    for (qq, c) in n.right(y).col(q) {
                        push(&mut triplets, row, v(0, x, p, *qq), c.clone());
                    }
                    for (pp, c) in m.left(x).row_entries(p) {
                        push(&mut triplets, row, v(1, y, pp, q), c.clone());
                    }
                    for (pp, c) in m.right(y).row_entries(p) {
                        push(&mut triplets, row, v(0, x, pp, q), -c.clone());
                    }
                    for (qq, c) in n.left(x).col(q) {
                        push(&mut triplets, row, v(1, y, p, *qq), -c.clone());
                    }
                    for (k, c) in bracket {
                        push(&mut triplets, row, v(0, *k, p, q), c.clone());
                    }
                    row += 1;
                    // (c)  [x,phi_l(y)(n)] + phi_l(x)([y,n]) - phi_l([x,y])(n)
                    //      + [phi_l(x)(n),y] + phi_r(y)([x,n]) = 0
                    for (pp, c) in m.left(x).row_entries(p) {
                        push(&mut triplets, row, v(0, y, pp, q), c.clone());
                    }
                    for (qq, c) in n.left(y).col(q) {
                        push(&mut triplets, row, v(0, x, p, *qq), c.clone());
                    }
                    for (k, c) in bracket {
                        push(&mut triplets, row, v(0, *k, p, q), -c.clone());
                    }
                    for (pp, c) in m.right(y).row_entries(p) {
                        push(&mut triplets, row, v(0, x, pp, q), c.clone());
                    }
                    for (qq, c) in n.left(x).col(q) {
                        push(&mut triplets, row, v(1, y, p, *qq), c.clone());
                    }
                    row += 1;
                }
            }
        }
    }
    let cocycle_system = SparseMat::from_triplets(row, nvars, triplets);
    let cocycles = cocycle_system.kernel_basis();

    // Coboundaries: image of f in Hom(N, M) under
    //   phi_l(x)(n) = [x, f(n)] - f([x,n]),  phi_r(x)(n) = [f(n), x] - f([n,x]).
    let mut b_triplets = Vec::new();
    for x in 0..dh {
        for p in 0..dm {
            for q in 0..dn {
                for (pp, c) in m.left(x).row_entries(p) {
                    b_triplets.push((v(0, x, p, q), pp * dn + q, c.clone()));
                }
                for (qq, c) in n.left(x).col(q) {
                    b_triplets.push((v(0, x, p, q), p * dn + *qq, Rat::zero() - c.clone()));
                }
                for (pp, c) in m.right(x).row_entries(p) {
                    b_triplets.push((v(1, x, p, q), pp * dn + q, c.clone()));
                }
                for (qq, c) in n.right(x).col(q) {
                    b_triplets.push((v(1, x, p, q), p * dn + *qq, Rat::zero() - c.clone()));
                }
            }
        }
    }
    let boundary_map = SparseMat::from_triplets(nvars, dm * dn, b_triplets);

    let mut span = Subspace::zero(nvars);
    for c in 0..boundary_map.cols() {
        span.insert(boundary_map.col_as_dense(c));
    }
    let b_dim = span.dim();
    let mut reps = Vec::new();
    for z in &cocycles {
        if span.insert(z.clone()) {
            reps.push(unflatten_pair(z, dh, dm, dn));
        }
    }
    let dim = cocycles.len() - b_dim;
    debug_assert_eq!(reps.len(), dim);
    Ok((dim, reps))
}

fn unflatten_pair(flat: &[Rat], dh: usize, dm: usize, dn: usize) -> TwistingPair {
    let mat = |side: usize, x: usize| {
        let mut triplets = Vec::new();
        for p in 0..dm {
            for q in 0..dn {
                let c = flat[var(side, x, p, q, dh, dm, dn)].clone();
                if !c.is_zero() {
                    triplets.push((p, q, c));
                }
            }
        }
        SparseMat::from_triplets(dm, dn, triplets)
    };
    TwistingPair {
        phi_l: (0..dh).map(|x| mat(0, x)).collect(),
        phi_r: (0..dh).map(|x| mat(1, x)).collect(),
    }
}
