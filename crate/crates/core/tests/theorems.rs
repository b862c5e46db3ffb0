use morita_core::bimodules::{
    balancing_subspace, column_module, is_induced, regular_bimodule, row_module, BimoduleError, Side,
};
use morita_core::exactla::{kernel, LinearMap, Rational, SparseVec};
use morita_core::homology::{
    diagonal_check, hochschild_homology, hochschild_table, vanishing_suite, verify_diagonal, HomologyError,
    DEFAULT_SIZE_LIMIT,
};
use morita_core::morita::{
    comparison_map, split_sequence, verify_witness, witness_brandt_contracted, witness_brandt_full,
    witness_matrix_vs_scalars,
};
use morita_core::structures::{
    brandt, cyclic_group, group_from_cayley, matrix_algebra, parse_cayley, scalars, semigroup_algebra, symmetric_group,
    StructureAlgebra, StructureError,
};

fn nu(n: usize) -> LinearMap {
    let images: Vec<SparseVec> = (0..n * n)
        .map(|k| {
            if k / n == k % n {
                SparseVec::unit(0)
            } else {
                SparseVec::new()
            }
        })
        .collect();
    LinearMap::from_images(1, &images)
}

#[test]
fn balancing_subspace_is_kernel_of_trace_pairing() {
    let c = scalars();
    for n in 1..=4 {
        let m = matrix_algebra(n).unwrap();
        let s = balancing_subspace(&row_module(&c, &m, n), &column_module(&m, &c, n), &m).unwrap();
        assert_eq!(s, kernel(&nu(n)), "n = {n}");
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    assert!(s.contains(&SparseVec::unit(i * n + j)));
                }
                let diff = SparseVec::unit(j * n + j).sub(&SparseVec::unit(i * n + i));
                assert!(s.contains(&diff));
            }
        }
    }
}

#[test]
fn matrix_algebras_are_equivalent_to_scalars() {
    for n in 1..=4 {
        let c = scalars();
        let m = matrix_algebra(n).unwrap();
        assert!(is_induced(&row_module(&c, &m, n)).unwrap().two_sided);
        assert!(is_induced(&column_module(&m, &c, n)).unwrap().two_sided);
        let r = verify_witness(&witness_matrix_vs_scalars(n).unwrap());
        assert!(r.passed(), "{:?}", r.first_failure());
    }
}

#[test]
fn split_sequences_pass_on_the_grid() {
    for g in [
        cyclic_group(1).unwrap(),
        cyclic_group(2).unwrap(),
        cyclic_group(3).unwrap(),
        symmetric_group(3).unwrap(),
    ] {
        for n in 1..=3 {
            let seq = split_sequence(n, &g).unwrap();
            assert!(seq.full.dim() <= 55);
            let unit = seq.full.unit().expect("unital").clone();
            // Σ_i δ_(i,e,i) + (1 − |I|) δ_ø
            let s = seq.semigroup.clone();
            let mut expected = SparseVec::single(s.zero_index(), Rational::from_integer(1 - n as i64));
            for i in 0..n {
                let t = s.index_of(morita_core::structures::BrandtElement::Triple(i, g.identity(), i));
                expected = expected.add(&SparseVec::unit(t));
            }
            assert_eq!(unit, expected);
        }
    }
}

#[test]
fn witnesses_are_symmetric_and_compose() {
    let c2 = cyclic_group(2).unwrap();
    for (i, j) in [(1, 2), (2, 3)] {
        let w = witness_brandt_full(i, j, &c2).unwrap();
        assert!(verify_witness(&w).passed());
        assert!(verify_witness(&w.swapped()).passed());
        assert!(verify_witness(&witness_brandt_contracted(i, j, &c2).unwrap()).passed());
    }
    for full in [false, true] {
        let c = comparison_map(1, 2, 3, &c2, full).unwrap();
        assert!(c.bijective);
        assert_eq!(c.composed_dim, c.direct_dim);
    }
}

#[test]
fn hochschild_betti_agree_across_equivalent_algebras() {
    // ℓ¹(B(I,G)) for different |I| are equivalent, so H_0 and H_1 agree.
    for g in [cyclic_group(2).unwrap(), cyclic_group(3).unwrap()] {
        let betti: Vec<Vec<usize>> = (1..=3)
            .map(|n| {
                let a = semigroup_algebra(&brandt(n, &g).unwrap());
                (0..=1)
                    .map(|k| {
                        hochschild_homology(&a, &regular_bimodule(&a), k, DEFAULT_SIZE_LIMIT)
                            .unwrap()
                            .betti
                    })
                    .collect()
            })
            .collect();
        assert!(betti.windows(2).all(|w| w[0] == w[1]), "{betti:?}");
        // class count of an abelian group plus the corner at ø
        assert_eq!(betti[0][0], g.order() + 1);
    }
    let s3 = symmetric_group(3).unwrap();
    for n in 1..=2 {
        let a = semigroup_algebra(&brandt(n, &s3).unwrap());
        let h0 = hochschild_homology(&a, &regular_bimodule(&a), 0, DEFAULT_SIZE_LIMIT).unwrap();
        assert_eq!(h0.betti, 4);
    }
}

#[test]
fn diagonal_implies_vanishing() {
    for (n, g) in [(1, 2), (2, 1), (2, 2), (1, 3)] {
        let a = semigroup_algebra(&brandt(n, &cyclic_group(g).unwrap()).unwrap());
        let d = diagonal_check(&a).unwrap().expect("diagonal exists");
        assert!(verify_diagonal(&a, &d.element));
        let report = vanishing_suite(&a, &[regular_bimodule(&a)], 2, DEFAULT_SIZE_LIMIT).unwrap();
        assert!(report.passed());
    }
}

#[test]
fn dual_numbers_have_no_diagonal_and_do_not_vanish() {
    let d = std::sync::Arc::new(
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
        .unwrap(),
    );
    assert_eq!(diagonal_check(&d).unwrap(), None);
    let t = hochschild_table(&d, &regular_bimodule(&d), 1, DEFAULT_SIZE_LIMIT).unwrap();
    assert!(t.homology[1].betti > 0);
}

#[test]
fn zero_iso_is_detected() {
    let w = witness_brandt_full(1, 2, &cyclic_group(1).unwrap())
        .unwrap()
        .with_zero_iso_pq();
    let r = verify_witness(&w);
    assert!(!r.passed());
    let c = r.condition("iso_pq").unwrap();
    assert!(!c.passed);
    assert_eq!(r.norm_iso_pq, Rational::zero());
}

#[test]
fn corrupted_action_is_detected() {
    let w = witness_brandt_full(1, 2, &cyclic_group(2).unwrap()).unwrap();
    let bad = w.with_corrupted_p(Side::Left, 0, 0, 0, Rational::from_integer(7));
    let r = verify_witness(&bad);
    assert!(!r.passed());
    let f = r.first_failure().unwrap();
    assert!(
        f.detail.as_deref().is_some_and(|d| d.contains("bimodule axioms")),
        "{:?}",
        f.detail
    );
    assert!(matches!(
        bad.p.check_axioms(),
        Err(BimoduleError::LeftNotHomomorphism { .. })
    ));
}

#[test]
fn non_associative_cayley_table_is_rejected() {
    let text = "order 5\n1 0 3 4 2\n0 1 4 2 3\n2 3 0 1 4\n3 4 2 0 1\n4 2 1 3 0\n";
    assert_eq!(parse_cayley(text), Err(StructureError::NotAssociative(0, 1, 2)));
    let table: Vec<Vec<usize>> = text
        .lines()
        .skip(1)
        .map(|l| l.split_whitespace().map(|x| x.parse().unwrap()).collect())
        .collect();
    assert_eq!(
        group_from_cayley(&table, None),
        Err(StructureError::NotAssociative(0, 1, 2))
    );
}

#[test]
fn size_limit_is_reported() {
    let a = semigroup_algebra(&brandt(2, &symmetric_group(3).unwrap()).unwrap());
    match hochschild_table(&a, &regular_bimodule(&a), 3, DEFAULT_SIZE_LIMIT) {
        Err(HomologyError::SizeLimit { degree, .. }) => assert_eq!(degree, 4),
        other => panic!("expected SizeLimit, got {:?}", other.map(|t| t.homology.len())),
    }
}
