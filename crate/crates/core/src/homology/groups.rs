use rayon::prelude::*;
use serde::Serialize;

use super::complex::{check_coefficients, check_size};
use super::{bar_complex, coboundary_columns, ChainComplex, HomologyError};
use crate::bimodules::{dual_bimodule, Bimodule};
use crate::exactla::{certified_rank, Echelon, RankCertificate, SparseVec};
use crate::structures::AlgebraRef;

/// `H_n` (or `H^n`) with its ranks; `cycle_reps` spans a complement of the
/// boundaries inside the cycles.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyResult {
    pub degree: usize,
    pub betti: usize,
    pub cycle_rank: usize,
    pub boundary_rank: usize,
    #[serde(skip)]
    pub cycle_reps: Vec<SparseVec>,
    pub rank_certificates: Vec<RankCertificate>,
}

/// Ranks of a sequence of maps `f_k` (given by column images) with
/// `f_{k+1} ∘ f_k = 0`; each rank is capped by the nullity of the previous.
fn sequential_ranks(source_dims: &[usize], target_dims: &[usize], cols: &[&[SparseVec]]) -> Vec<RankCertificate> {
    let mut out: Vec<RankCertificate> = Vec::with_capacity(cols.len());
    for k in 0..cols.len() {
        let bound = source_dims[k] - out.last().map_or(0, |c| c.rank);
        out.push(certified_rank(target_dims[k], cols[k], bound));
    }
    out
}

fn representatives(dim: usize, cycles: Vec<SparseVec>, boundaries: &[SparseVec], betti: usize) -> Vec<SparseVec> {
    if betti == 0 {
        return Vec::new();
    }
    let mut e = Echelon::new(dim);
    for b in boundaries {
        e.insert(b.clone());
    }
    let mut reps = Vec::new();
    for z in cycles {
        if reps.len() == betti {
            break;
        }
        if e.insert(z.clone()) {
            reps.push(z);
        }
    }
    reps
}

/// `H_n` for `n = 0..=upto` from a complex built to degree `upto + 1`.
pub fn homology_of_complex(cx: &ChainComplex, upto: usize) -> Vec<HomologyResult> {
    assert!(cx.top_degree() > upto, "complex too short");
    let maps = upto + 1;
    let cols: Vec<&[SparseVec]> = (1..=maps).map(|n| cx.boundary_columns(n)).collect();
    let src: Vec<usize> = (1..=maps).map(|n| cx.dims[n]).collect();
    let tgt: Vec<usize> = (1..=maps).map(|n| cx.dims[n - 1]).collect();
    // ranks[k] = rank b_{k+1}; the cap for b_1 is dim C_0
    let mut ranks: Vec<RankCertificate> = Vec::with_capacity(maps);
    for k in 0..maps {
        let bound = if k == 0 { tgt[0] } else { src[k - 1] - ranks[k - 1].rank };
        ranks.push(certified_rank(tgt[k], cols[k], bound.min(src[k])));
    }
    (0..=upto)
        .map(|n| {
            let in_rank = if n == 0 { 0 } else { ranks[n - 1].rank };
            let out_rank = ranks[n].rank;
            let cycle_rank = cx.dims[n] - in_rank;
            let betti = cycle_rank - out_rank;
            let reps = if betti == 0 {
                Vec::new()
            } else {
                let cycles = if n == 0 {
                    (0..cx.dims[0]).map(SparseVec::unit).collect()
                } else {
                    crate::exactla::kernel(cx.boundary(n)).basis_vectors().to_vec()
                };
                representatives(cx.dims[n], cycles, cols[n], betti)
            };
            let mut certs = vec![ranks[n]];
            if n > 0 {
                certs.insert(0, ranks[n - 1]);
            }
            HomologyResult {
                degree: n,
                betti,
                cycle_rank,
                boundary_rank: out_rank,
                cycle_reps: reps,
                rank_certificates: certs,
            }
        })
        .collect()
}

fn cohomology_from_columns(dims: &[usize], coboundaries: &[Vec<SparseVec>], upto: usize) -> Vec<HomologyResult> {
    let cols: Vec<&[SparseVec]> = coboundaries.iter().map(Vec::as_slice).collect();
    let src = &dims[..=upto];
    let tgt = &dims[1..=upto + 1];
    let ranks = sequential_ranks(src, tgt, &cols);
    (0..=upto)
        .map(|n| {
            let in_rank = if n == 0 { 0 } else { ranks[n - 1].rank };
            let out_rank = ranks[n].rank;
            let cocycle_rank = dims[n] - out_rank;
            let betti = cocycle_rank - in_rank;
            let reps = if betti == 0 {
                Vec::new()
            } else {
                let d = crate::exactla::LinearMap::new(crate::exactla::RationalMatrix::from_columns(
                    dims[n + 1],
                    &coboundaries[n],
                ));
                let cocycles = crate::exactla::kernel(&d).basis_vectors().to_vec();
                let prev: &[SparseVec] = if n == 0 { &[] } else { &coboundaries[n - 1] };
                representatives(dims[n], cocycles, prev, betti)
            };
            let mut certs = vec![ranks[n]];
            if n > 0 {
                certs.insert(0, ranks[n - 1]);
            }
            HomologyResult {
                degree: n,
                betti,
                cycle_rank: cocycle_rank,
                boundary_rank: in_rank,
                cycle_reps: reps,
                rank_certificates: certs,
            }
        })
        .collect()
}

/// `H^n(A, M)` for `n = 0..=upto`, built directly from the cochain formula.
pub fn cohomology_with_coefficients(
    a: &AlgebraRef,
    m: &Bimodule,
    upto: usize,
    size_limit: u128,
) -> Result<Vec<HomologyResult>, HomologyError> {
    check_coefficients(a, m)?;
    check_size(a.dim(), m.dim(), upto + 1, size_limit)?;
    let dims: Vec<usize> = (0..=upto + 1).map(|k| m.dim() * a.dim().pow(k as u32)).collect();
    let cob: Vec<Vec<SparseVec>> = (0..=upto)
        .into_par_iter()
        .map(|n| coboundary_columns(a, m, n))
        .collect();
    Ok(cohomology_from_columns(&dims, &cob, upto))
}

/// Homology with coefficients E and cohomology with coefficients E* in degrees `0..=n_max`.
#[derive(Clone, Debug, Serialize)]
pub struct HochschildTable {
    pub algebra: String,
    pub module: String,
    pub module_dim: usize,
    pub chain_dims: Vec<usize>,
    pub homology: Vec<HomologyResult>,
    pub cohomology: Vec<HomologyResult>,
}

/// Computes both sides, checks `δ^n = b_{n+1}ᵀ` exactly, and requires
/// `betti(H^n(A,E*)) = betti(H_n(A,E))` in every degree.
pub fn hochschild_table(
    a: &AlgebraRef,
    e: &Bimodule,
    n_max: usize,
    size_limit: u128,
) -> Result<HochschildTable, HomologyError> {
    let cx = bar_complex(a, e, n_max, size_limit)?;
    let dual = dual_bimodule(e);
    let cob: Vec<Vec<SparseVec>> = (0..=n_max)
        .into_par_iter()
        .map(|n| coboundary_columns(a, &dual, n))
        .collect();
    for (n, cols) in cob.iter().enumerate() {
        let rows = cx.boundary(n + 1).matrix().row_vecs();
        if rows.len() != cols.len() || rows.iter().zip(cols).any(|(r, c)| r != c) {
            return Err(HomologyError::CochainMismatch { degree: n });
        }
    }
    let (homology, cohomology) = rayon::join(
        || homology_of_complex(&cx, n_max),
        || cohomology_from_columns(&cx.dims, &cob, n_max),
    );
    for (h, c) in homology.iter().zip(&cohomology) {
        if h.betti != c.betti {
            return Err(HomologyError::DualityMismatch {
                degree: h.degree,
                homology: h.betti,
                cohomology: c.betti,
            });
        }
    }
    Ok(HochschildTable {
        algebra: a.name().to_string(),
        module: e.name().to_string(),
        module_dim: e.dim(),
        chain_dims: cx.dims.clone(),
        homology,
        cohomology,
    })
}

pub fn hochschild_homology(
    a: &AlgebraRef,
    e: &Bimodule,
    n: usize,
    size_limit: u128,
) -> Result<HomologyResult, HomologyError> {
    let cx = bar_complex(a, e, n, size_limit)?;
    Ok(homology_of_complex(&cx, n).pop().expect("degree n present"))
}

/// `H^n(A, E*)` with dual coefficients, cross-checked against `H_n(A, E)`.
pub fn hochschild_cohomology(
    a: &AlgebraRef,
    e: &Bimodule,
    n: usize,
    size_limit: u128,
) -> Result<HomologyResult, HomologyError> {
    let mut t = hochschild_table(a, e, n, size_limit)?;
    Ok(t.cohomology.pop().expect("degree n present"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bimodules::regular_bimodule;
    use crate::homology::DEFAULT_SIZE_LIMIT;
    use crate::structures::{brandt, cyclic_group, matrix_algebra, scalars, semigroup_algebra};

    #[test]
    fn scalar_coefficients() {
        let c = scalars();
        let r = regular_bimodule(&c);
        assert_eq!(hochschild_homology(&c, &r, 0, DEFAULT_SIZE_LIMIT).unwrap().betti, 1);
        assert_eq!(hochschild_cohomology(&c, &r, 0, DEFAULT_SIZE_LIMIT).unwrap().betti, 1);
    }

    #[test]
    fn matrix_algebra_m2() {
        let m2 = matrix_algebra(2).unwrap();
        let r = regular_bimodule(&m2);
        let t = hochschild_table(&m2, &r, 2, DEFAULT_SIZE_LIMIT).unwrap();
        let betti: Vec<usize> = t.homology.iter().map(|h| h.betti).collect();
        assert_eq!(betti, vec![1, 0, 0]);
        assert_eq!(t.homology[0].cycle_reps.len(), 1);
        // [M_2, M_2] has dimension 3
        assert_eq!(t.homology[0].boundary_rank, 3);
    }

    #[test]
    fn small_brandt_dual_regular() {
        let a = semigroup_algebra(&brandt(1, &cyclic_group(2).unwrap()).unwrap());
        assert_eq!(a.dim(), 3);
        let r = regular_bimodule(&a);
        assert_eq!(hochschild_cohomology(&a, &r, 1, DEFAULT_SIZE_LIMIT).unwrap().betti, 0);
    }
}
