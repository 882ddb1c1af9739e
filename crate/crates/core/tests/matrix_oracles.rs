//! Independent reconstruction of the coboundary matrices and cross-checks of
//! the sparse rank engine against dense elimination.

use dense_oracle::DenseMat;
use loday_core::bimodule::adjoint_bimodule;
use loday_core::complexes::loday_slices;
use loday_core::constructors::*;
use loday_core::rat::{rat, Rat};
use loday_core::sparse::{RankStrategy, SparseMat};
use loday_core::AlgebraLaw;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn basis(dim: usize, i: usize) -> Vec<Rat> {
    let mut v = vec![Rat::zero(); dim];
    v[i] = rat(1);
    v
}

/// d(f)(x, y) = [x, f(y)] + [f(x), y] - f([x, y]) built entry by entry from
/// the law alone.
fn direct_d1(law: &AlgebraLaw) -> DenseMat {
    let d = law.dim();
    let mut m = DenseMat::zero(d * d * d, d * d);
    for i in 0..d {
        for t in 0..d {
            let col = i * d + t;
            // f = e_{(i),t}
            let f = |v: &[Rat]| -> Vec<Rat> {
                let mut out = vec![Rat::zero(); d];
                out[t] = v[i].clone();
                out
            };
            for x in 0..d {
                for y in 0..d {
                    let ex = basis(d, x);
                    let ey = basis(d, y);
                    let mut val = law.bracket_vec(&ex, &f(&ey));
                    let t2 = law.bracket_vec(&f(&ex), &ey);
                    let t3 = f(&law.bracket_vec(&ex, &ey));
                    for s in 0..d {
                        val[s] += t2[s].clone();
                        val[s] -= t3[s].clone();
                        m.data[(x * d + y) * d + s][col] = val[s].clone();
                    }
                }
            }
        }
    }
    m
}

/// d(f)(x,y,z) = [x,f(y,z)] + [f(x,z),y] - [f(x,y),z]
///               - f([x,y],z) + f([x,z],y) + f(x,[y,z])
fn direct_d2(law: &AlgebraLaw) -> DenseMat {
    let d = law.dim();
    let mut m = DenseMat::zero(d * d * d * d, d * d * d);
    for i in 0..d {
        for j in 0..d {
            for t in 0..d {
                let col = (i * d + j) * d + t;
                let f = |u: &[Rat], v: &[Rat]| -> Vec<Rat> {
                    let mut out = vec![Rat::zero(); d];
                    out[t] = u[i].clone() * v[j].clone();
                    out
                };
                for x in 0..d {
                    let ex = basis(d, x);
                    for y in 0..d {
                        let ey = basis(d, y);
                        let bxy = law.bracket_vec(&ex, &ey);
                        for z in 0..d {
                            let ez = basis(d, z);
                            let bxz = law.bracket_vec(&ex, &ez);
                            let byz = law.bracket_vec(&ey, &ez);
                            let mut val = law.bracket_vec(&ex, &f(&ey, &ez));
                            let t2 = law.bracket_vec(&f(&ex, &ez), &ey);
                            let t3 = law.bracket_vec(&f(&ex, &ey), &ez);
                            let t4 = f(&bxy, &ez);
                            let t5 = f(&bxz, &ey);
                            let t6 = f(&ex, &byz);
                            for s in 0..d {
                                val[s] += t2[s].clone();
                                val[s] -= t3[s].clone();
                                val[s] -= t4[s].clone();
                                val[s] += t5[s].clone();
                                val[s] += t6[s].clone();
                                m.data[((x * d + y) * d + z) * d + s][col] = val[s].clone();
                            }
                        }
                    }
                }
            }
        }
    }
    m
}

fn to_dense(m: &SparseMat) -> DenseMat {
    let mut out = DenseMat::zero(m.rows(), m.cols());
    for c in 0..m.cols() {
        for (r, v) in m.col(c) {
            out.data[*r][c] = v.clone();
        }
    }
    out
}

#[test]
fn coboundaries_match_direct_evaluation() {
    for law in [
        sl2(),
        heisenberg3(),
        hemisemidirect(&sl2(), &sl2_irreducible(1)).unwrap(),
        richardson_leibniz(1, 1),
    ] {
        let adj = adjoint_bimodule(&law).unwrap();
        let slices = loday_slices(&adj, 2).unwrap();
        assert_eq!(to_dense(&slices[1].d), direct_d1(&law), "d1 for dim {}", law.dim());
        assert_eq!(to_dense(&slices[2].d), direct_d2(&law), "d2 for dim {}", law.dim());
    }
}

#[test]
fn sparse_ranks_match_dense_oracle_on_coboundaries() {
    for law in [sl2(), heisenberg3(), hemisemidirect(&sl2(), &sl2_irreducible(1)).unwrap()] {
        let adj = adjoint_bimodule(&law).unwrap();
        let slices = loday_slices(&adj, 2).unwrap();
        for n in 0..=2 {
            let sparse = slices[n].d.rank(RankStrategy::Exact).rank;
            let dense = to_dense(&slices[n].d).rank();
            assert_eq!(sparse, dense, "degree {n} of dim {}", law.dim());
            let k = slices[n].d.kernel_basis();
            assert_eq!(k.len(), slices[n].d.cols() - sparse);
            for v in &k {
                assert!(slices[n].d.mul_vec(v).iter().all(|x| x.is_zero()));
            }
        }
    }
}

#[test]
fn random_matrices_rank_kernel_solve_agree_with_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(20260810);
    for trial in 0..25 {
        let rows = rng.gen_range(1..=12);
        let cols = rng.gen_range(1..=12);
        let density = rng.gen_range(1..=4);
        let mut triplets = Vec::new();
        for r in 0..rows {
            for c in 0..cols {
                if rng.gen_range(0..4) < density {
                    let num = rng.gen_range(-6i64..=6);
                    let den = rng.gen_range(1i64..=3);
                    triplets.push((r, c, Rat::new(num.into(), den.into())));
                }
            }
        }
        let sparse = SparseMat::from_triplets(rows, cols, triplets.clone());
        let dense = DenseMat::from_triplets(rows, cols, &triplets);
        assert_eq!(
            sparse.rank(RankStrategy::Exact).rank,
            dense.rank(),
            "trial {trial}"
        );
        assert_eq!(
            sparse.rank(RankStrategy::Modular).rank,
            dense.rank(),
            "modular, trial {trial}"
        );
        let ks = sparse.kernel_basis();
        let kd = dense.kernel();
        assert_eq!(ks.len(), kd.len(), "kernel count, trial {trial}");
        for v in &ks {
            assert!(sparse.mul_vec(v).iter().all(|x| x.is_zero()));
        }
        // a consistent right-hand side: random combination of the columns
        let x: Vec<Rat> = (0..cols).map(|_| rat(rng.gen_range(-3i64..=3))).collect();
        let b = sparse.mul_vec(&x);
        let sol = sparse.solve(&b).expect("consistent system");
        assert_eq!(sparse.mul_vec(&sol), b, "residual, trial {trial}");
        assert_eq!(dense.solve(&b).is_some(), true);
    }
}

#[test]
fn random_rank4_system_solve_round_trip() {
    // 10x6 rank-limited system with consistent right-hand side
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut triplets = Vec::new();
    // build as product of 10x4 and 4x6 patterns for rank <= 4
    let a: Vec<Vec<i64>> = (0..10)
        .map(|_| (0..4).map(|_| rng.gen_range(-3i64..=3)).collect())
        .collect();
    let b: Vec<Vec<i64>> = (0..4)
        .map(|_| (0..6).map(|_| rng.gen_range(-3i64..=3)).collect())
        .collect();
    for r in 0..10 {
        for c in 0..6 {
            let v: i64 = (0..4).map(|k| a[r][k] * b[k][c]).sum();
            if v != 0 {
                triplets.push((r, c, rat(v)));
            }
        }
    }
    let m = SparseMat::from_triplets(10, 6, triplets);
    assert!(m.rank(RankStrategy::Exact).rank <= 4);
    let x: Vec<Rat> = (0..6).map(|i| rat(i as i64 - 2)).collect();
    let rhs = m.mul_vec(&x);
    let sol = m.solve(&rhs).unwrap();
    assert_eq!(m.mul_vec(&sol), rhs);
}
