use rayon::prelude::*;

use super::HomologyError;
use crate::bimodules::Bimodule;
use crate::exactla::{LinearMap, RationalMatrix, SparseVec};
use crate::structures::{same_algebra, AlgebraRef};

pub const DEFAULT_SIZE_LIMIT: u128 = 10_000_000;

/// Estimated number of stored entries of `b_k`: `dim E · (dim A)^k · (k+1)`,
/// one term per face of every basis chain.
pub fn boundary_size(algebra_dim: usize, module_dim: usize, k: usize) -> u128 {
    (module_dim as u128)
        .saturating_mul((algebra_dim as u128).saturating_pow(k as u32))
        .saturating_mul(k as u128 + 1)
}

pub(crate) fn check_size(a: usize, e: usize, top: usize, limit: u128) -> Result<(), HomologyError> {
    for k in 1..=top {
        let size = boundary_size(a, e, k);
        if size > limit {
            return Err(HomologyError::SizeLimit { degree: k, size, limit });
        }
    }
    Ok(())
}

pub(crate) fn check_coefficients(a: &AlgebraRef, e: &Bimodule) -> Result<(), HomologyError> {
    if !same_algebra(e.left_algebra(), a) || !same_algebra(e.right_algebra(), a) {
        return Err(HomologyError::NotAnABimodule(e.name().to_string()));
    }
    Ok(())
}

/// The bar complex `C_n = E ⊗ A^{⊗n}`.
///
/// Basis chain `x ⊗ e_{i_1} ⊗ … ⊗ e_{i_n}` has index `x·dⁿ + Σ i_j d^{n−j}`.
#[derive(Clone, Debug)]
pub struct ChainComplex {
    pub dims: Vec<usize>,
    /// `boundaries[n − 1]` is `b_n: C_n → C_{n−1}`.
    pub boundaries: Vec<LinearMap>,
    columns: Vec<Vec<SparseVec>>,
}

impl ChainComplex {
    pub fn top_degree(&self) -> usize {
        self.boundaries.len()
    }

    pub fn boundary(&self, n: usize) -> &LinearMap {
        &self.boundaries[n - 1]
    }

    /// Images of the basis chains of `C_n` under `b_n`.
    pub fn boundary_columns(&self, n: usize) -> &[SparseVec] {
        &self.columns[n - 1]
    }
}

fn digits(mut t: usize, d: usize, n: usize) -> Vec<usize> {
    let mut out = vec![0; n];
    for k in (0..n).rev() {
        out[k] = t % d;
        t /= d;
    }
    out
}

fn undigits(ds: impl IntoIterator<Item = usize>, d: usize) -> usize {
    ds.into_iter().fold(0, |acc, x| acc * d + x)
}

fn sign(k: usize) -> i64 {
    if k.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Images of all basis chains of `C_n` under the Hochschild boundary.
fn boundary_columns(a: &AlgebraRef, e: &Bimodule, n: usize) -> Vec<SparseVec> {
    let d = a.dim();
    let de = e.dim();
    let dn = d.pow(n as u32);
    let dn1 = dn / d;
    let rcols: Vec<Vec<SparseVec>> = e
        .right_action()
        .iter()
        .map(|m| (0..de).map(|x| m.column(x)).collect())
        .collect();
    let lcols: Vec<Vec<SparseVec>> = e
        .left_action()
        .iter()
        .map(|m| (0..de).map(|x| m.column(x)).collect())
        .collect();
    (0..de * dn)
        .into_par_iter()
        .map(|idx| {
            let (x, t) = (idx / dn, idx % dn);
            let ds = digits(t, d, n);
            let mut terms = Vec::new();
            // x·a_1 ⊗ a_2 ⊗ … ⊗ a_n
            let tail = t % dn1;
            for (y, c) in rcols[ds[0]][x].iter() {
                terms.push((y * dn1 + tail, c.clone()));
            }
            // (−1)^j x ⊗ … ⊗ a_j a_{j+1} ⊗ …
            for j in 1..n {
                let s = crate::exactla::Rational::from_integer(sign(j));
                for (k, c) in a.basis_product(ds[j - 1], ds[j]).iter() {
                    let merged = ds[..j - 1]
                        .iter()
                        .copied()
                        .chain([k])
                        .chain(ds[j + 1..].iter().copied());
                    terms.push((x * dn1 + undigits(merged, d), c * &s));
                }
            }
            // (−1)^n a_n·x ⊗ a_1 ⊗ … ⊗ a_{n−1}
            let s = crate::exactla::Rational::from_integer(sign(n));
            let init = t / d;
            for (y, c) in lcols[ds[n - 1]][x].iter() {
                terms.push((y * dn1 + init, c * &s));
            }
            SparseVec::from_pairs(terms)
        })
        .collect()
}

/// Builds `b_1, …, b_{n_max+1}` and verifies `b_{n−1} ∘ b_n = 0`.
pub fn bar_complex(
    a: &AlgebraRef,
    e: &Bimodule,
    n_max: usize,
    size_limit: u128,
) -> Result<ChainComplex, HomologyError> {
    check_coefficients(a, e)?;
    let top = n_max + 1;
    check_size(a.dim(), e.dim(), top, size_limit)?;
    let dims: Vec<usize> = (0..=top).map(|k| e.dim() * a.dim().pow(k as u32)).collect();
    let columns: Vec<Vec<SparseVec>> = (1..=top).into_par_iter().map(|n| boundary_columns(a, e, n)).collect();
    let boundaries: Vec<LinearMap> = columns
        .par_iter()
        .enumerate()
        .map(|(k, cols)| LinearMap::new(RationalMatrix::from_columns(dims[k], cols)))
        .collect();
    for n in 2..=top {
        // b_{n−1}(b_n(c)) = 0 for every basis chain c
        let prev = &boundaries[n - 2];
        let ok = columns[n - 1].par_iter().all(|v| prev.apply(v).is_zero());
        if !ok {
            return Err(HomologyError::BoundaryNotZero { degree: n });
        }
    }
    Ok(ChainComplex {
        dims,
        boundaries,
        columns,
    })
}

/// Coboundaries `δ^n: Hom(A^{⊗n}, M) → Hom(A^{⊗(n+1)}, M)` for `n = 0..=n_max`,
/// built from
/// `(δφ)(a_1,…,a_{n+1}) = a_1·φ(a_2,…) + Σ(−1)^i φ(…,a_i a_{i+1},…) + (−1)^{n+1} φ(a_1,…,a_n)·a_{n+1}`.
///
/// Returned as the images of basis cochains; basis cochain `(x, t)` sends
/// the basis tuple `t` to `e_x` and every other tuple to 0.
pub fn coboundary_columns(a: &AlgebraRef, m: &Bimodule, n: usize) -> Vec<SparseVec> {
    let d = a.dim();
    let dm = m.dim();
    let dn = d.pow(n as u32);
    let dn1 = dn * d;
    // preimages[k] = all (p, q, c) with c = coefficient of e_k in e_p e_q
    let mut preimages: Vec<Vec<(usize, usize, crate::exactla::Rational)>> = vec![Vec::new(); d];
    for p in 0..d {
        for q in 0..d {
            for (k, c) in a.basis_product(p, q).iter() {
                preimages[k].push((p, q, c.clone()));
            }
        }
    }
    let lcols: Vec<Vec<SparseVec>> = m
        .left_action()
        .iter()
        .map(|mm| (0..dm).map(|x| mm.column(x)).collect())
        .collect();
    let rcols: Vec<Vec<SparseVec>> = m
        .right_action()
        .iter()
        .map(|mm| (0..dm).map(|x| mm.column(x)).collect())
        .collect();
    (0..dm * dn)
        .into_par_iter()
        .map(|idx| {
            let (x, t) = (idx / dn, idx % dn);
            let ds = digits(t, d, n);
            let mut terms = Vec::new();
            for (j, cols) in lcols.iter().enumerate() {
                for (y, c) in cols[x].iter() {
                    terms.push((y * dn1 + j * dn + t, c.clone()));
                }
            }
            for i in 1..=n {
                let s = crate::exactla::Rational::from_integer(sign(i));
                for (p, q, c) in &preimages[ds[i - 1]] {
                    let tuple = ds[..i - 1]
                        .iter()
                        .copied()
                        .chain([*p, *q])
                        .chain(ds[i..].iter().copied());
                    terms.push((x * dn1 + undigits(tuple, d), c * &s));
                }
            }
            let s = crate::exactla::Rational::from_integer(sign(n + 1));
            for (j, cols) in rcols.iter().enumerate() {
                for (y, c) in cols[x].iter() {
                    terms.push((y * dn1 + t * d + j, c * &s));
                }
            }
            SparseVec::from_pairs(terms)
        })
        .collect()
}
