mod common;

use common::*;
use morita_core::bimodules::{balancing_subspace, column_module, regular_bimodule, row_module};
use morita_core::exactla::{certified_rank, image, kernel, rank, LinearMap, RationalMatrix, SparseVec};
use morita_core::homology::{bar_complex, hochschild_table, DEFAULT_SIZE_LIMIT};
use morita_core::morita::split_sequence;
use morita_core::structures::{
    brandt, cyclic_group, matrix_algebra, scalars, semigroup_algebra, symmetric_group, StructureAlgebra,
};
use num_traits::Zero;
use proptest::prelude::*;

fn small_matrix() -> impl Strategy<Value = (usize, usize, Vec<i64>)> {
    (1usize..7, 1usize..7).prop_flat_map(|(r, c)| (Just(r), Just(c), prop::collection::vec(-3i64..4, r * c)))
}

fn to_matrix(r: usize, c: usize, v: &[i64]) -> RationalMatrix {
    let rows: Vec<&[i64]> = v.chunks(c).collect();
    assert_eq!(rows.len(), r);
    RationalMatrix::from_i64(&rows)
}

proptest! {
    #[test]
    fn sparse_rank_matches_dense((r, c, v) in small_matrix()) {
        let m = to_matrix(r, c, &v);
        let dense: Dense = v.chunks(c).map(|row| row.iter().map(|&x| big(x)).collect()).collect();
        prop_assert_eq!(rank(&m), dense_rank(dense));
    }

    #[test]
    fn kernel_and_image_dims((r, c, v) in small_matrix()) {
        let f = LinearMap::new(to_matrix(r, c, &v));
        let rk = dense_rank(dense_of_map(&f));
        prop_assert_eq!(image(&f).dim(), rk);
        prop_assert_eq!(kernel(&f).dim(), c - rk);
        for z in kernel(&f).basis_vectors() {
            prop_assert!(f.apply(z).is_zero());
        }
    }

    #[test]
    fn certified_rank_matches_dense((r, c, v) in small_matrix()) {
        let m = to_matrix(r, c, &v);
        let rows = m.row_vecs().to_vec();
        let cert = certified_rank(c, &rows, r.min(c));
        prop_assert_eq!(cert.rank, dense_rank(dense_of_rows(c, &rows)));
    }
}

#[test]
fn balancing_dims_against_dense_spanning_set() {
    // ℓ¹(I) ⊗ ℓ¹(I) over M_I: N is spanned by δ_i E_{kl} ⊗ δ_r − δ_i ⊗ E_{kl} δ_r,
    // i.e. [i=k] δ_l⊗δ_r − [l=r] δ_i⊗δ_k. Expect n² − 1.
    for n in 1..=4 {
        let mut rows = Vec::new();
        for i in 0..n {
            for k in 0..n {
                for l in 0..n {
                    for r in 0..n {
                        let mut v = vec![big(0); n * n];
                        if i == k {
                            v[l * n + r] += big(1);
                        }
                        if l == r {
                            v[i * n + k] -= big(1);
                        }
                        rows.push(v);
                    }
                }
            }
        }
        let oracle = dense_rank(rows);
        assert_eq!(oracle, n * n - 1);
        let c = scalars();
        let m = matrix_algebra(n).unwrap();
        let s = balancing_subspace(&row_module(&c, &m, n), &column_module(&m, &c, n), &m).unwrap();
        assert_eq!(s.dim(), oracle, "n = {n}");
    }
}

fn regular_oracle_cases() -> Vec<StructureAlgebra> {
    let c2 = cyclic_group(2).unwrap();
    vec![
        (*semigroup_algebra(&brandt(1, &c2).unwrap())).clone(),
        (*semigroup_algebra(&brandt(2, &cyclic_group(1).unwrap()).unwrap())).clone(),
        (*matrix_algebra(2).unwrap()).clone(),
        dual_numbers(),
    ]
}

pub fn dual_numbers() -> StructureAlgebra {
    StructureAlgebra::new(
        "D",
        vec!["1".into(), "x".into()],
        vec![
            SparseVec::unit(0),
            SparseVec::unit(1),
            SparseVec::unit(1),
            SparseVec::new(),
        ],
        Some(SparseVec::unit(0)),
        true,
    )
    .unwrap()
}

#[test]
fn regular_hochschild_betti_against_dense_bar_complex() {
    for alg in regular_oracle_cases() {
        let a = std::sync::Arc::new(alg);
        let expected = regular_betti(&a, 2);
        let table = hochschild_table(&a, &regular_bimodule(&a), 2, DEFAULT_SIZE_LIMIT).unwrap();
        let got: Vec<usize> = table.homology.iter().map(|h| h.betti).collect();
        assert_eq!(got, expected, "{}", a.name());
        let co: Vec<usize> = table.cohomology.iter().map(|h| h.betti).collect();
        assert_eq!(co, expected, "{}", a.name());
    }
}

#[test]
fn dual_numbers_do_not_vanish() {
    let a = std::sync::Arc::new(dual_numbers());
    let betti = regular_betti(&a, 2);
    assert_eq!(betti[0], 2);
    assert!(betti[1] > 0 && betti[2] > 0);
}

#[test]
fn bar_boundary_ranks_against_dense() {
    let a = semigroup_algebra(&brandt(2, &cyclic_group(2).unwrap()).unwrap());
    let cx = bar_complex(&a, &regular_bimodule(&a), 2, DEFAULT_SIZE_LIMIT).unwrap();
    // n_max = 2 builds through C_3 so that H_2 is available
    assert_eq!(cx.dims, vec![9, 81, 729, 6561]);
    for n in 1..=2 {
        let f = cx.boundary(n);
        assert_eq!(f.rank(), dense_rank(dense_of_map(f)), "b_{n}");
        assert_eq!(
            dense_rank(dense_of_map(f)),
            dense_rank(regular_bar_boundary(&a, n)),
            "b_{n}"
        );
    }
    let bb = dense_mul(&dense_of_map(cx.boundary(1)), &dense_of_map(cx.boundary(2)));
    assert!(bb.iter().flatten().all(|x| x.is_zero()));
}

#[test]
fn split_sequence_dims_against_dense() {
    for g in [
        cyclic_group(1).unwrap(),
        cyclic_group(3).unwrap(),
        symmetric_group(3).unwrap(),
    ] {
        for n in 1..=2 {
            let seq = split_sequence(n, &g).unwrap();
            let s = n * n * g.order() + 1;
            assert_eq!(seq.full.dim(), s);
            let (u, v, w) = (dense_of_map(&seq.u), dense_of_map(&seq.v), dense_of_map(&seq.w));
            // u injective, v surjective onto ℂ, rank u + rank v = dim ℓ¹(S)
            assert_eq!(dense_rank(u.clone()), s - 1);
            assert_eq!(dense_rank(v.clone()), 1);
            assert!(dense_mul(&v, &u).iter().flatten().all(|x| x.is_zero()));
            let wu = dense_mul(&w, &u);
            for (r, row) in wu.iter().enumerate() {
                for (c, x) in row.iter().enumerate() {
                    assert_eq!(*x, big((r == c) as i64));
                }
            }
            let theta = dense_of_map(&seq.theta);
            let theta_inv = dense_of_map(&seq.theta_inv);
            let id = dense_mul(&theta_inv, &theta);
            assert_eq!(dense_rank(theta), s);
            for (r, row) in id.iter().enumerate() {
                for (c, x) in row.iter().enumerate() {
                    assert_eq!(*x, big((r == c) as i64));
                }
            }
        }
    }
}
