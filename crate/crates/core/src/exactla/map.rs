use serde::{Deserialize, Serialize};

use super::echelon::{echelon_of_rows, rank};
use super::{Rational, RationalMatrix, SparseVec, Subspace};

/// A linear map between coordinate spaces; column `j` is the image of basis vector `j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearMap {
    source_dim: usize,
    target_dim: usize,
    matrix: RationalMatrix,
}

impl LinearMap {
    /// `matrix` must be `target_dim × source_dim`.
    pub fn new(matrix: RationalMatrix) -> Self {
        Self {
            source_dim: matrix.cols(),
            target_dim: matrix.rows(),
            matrix,
        }
    }

    /// Map with the given images of the source basis vectors.
    pub fn from_images(target_dim: usize, images: &[SparseVec]) -> Self {
        Self::new(RationalMatrix::from_columns(target_dim, images))
    }

    pub fn zero(source_dim: usize, target_dim: usize) -> Self {
        Self::new(RationalMatrix::zeros(target_dim, source_dim))
    }

    pub fn identity(n: usize) -> Self {
        Self::new(RationalMatrix::identity(n))
    }

    pub fn source_dim(&self) -> usize {
        self.source_dim
    }

    pub fn target_dim(&self) -> usize {
        self.target_dim
    }

    pub fn matrix(&self) -> &RationalMatrix {
        &self.matrix
    }

    pub fn apply(&self, x: &SparseVec) -> SparseVec {
        self.matrix.mul_vec(x)
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &LinearMap) -> LinearMap {
        assert_eq!(inner.target_dim, self.source_dim, "composition dimension mismatch");
        LinearMap::new(self.matrix.mul(&inner.matrix))
    }

    pub fn transpose(&self) -> LinearMap {
        LinearMap::new(self.matrix.transpose())
    }

    pub fn rank(&self) -> usize {
        rank(&self.matrix)
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    pub fn is_injective(&self) -> bool {
        self.rank() == self.source_dim
    }

    pub fn is_surjective(&self) -> bool {
        self.rank() == self.target_dim
    }

    pub fn is_bijective(&self) -> bool {
        self.source_dim == self.target_dim && self.rank() == self.source_dim
    }

    /// Two-sided inverse, if the map is bijective.
    pub fn inverse(&self) -> Option<LinearMap> {
        if self.source_dim != self.target_dim {
            return None;
        }
        let n = self.source_dim;
        // Row-reduce [M | I]; the right block becomes M⁻¹.
        let rows: Vec<SparseVec> = (0..n)
            .map(|r| {
                let left = self.matrix.row(r).clone();
                left.add(&SparseVec::unit(n + r))
            })
            .collect();
        let e = echelon_of_rows(2 * n, &rows);
        let r = e.into_rref();
        if r.rows() < n || (0..n).any(|i| r.row(i).leading().map(|(c, _)| c) != Some(i)) {
            return None;
        }
        let inv_rows = (0..n)
            .map(|i| {
                SparseVec::from_pairs(
                    r.row(i)
                        .iter()
                        .filter(|(c, _)| *c >= n)
                        .map(|(c, v)| (c - n, v.clone())),
                )
            })
            .collect();
        Some(LinearMap::new(RationalMatrix::from_rows(n, inv_rows)))
    }
}

/// Null space in canonical form.
pub fn kernel(f: &LinearMap) -> Subspace {
    let n = f.source_dim();
    let r = echelon_of_rows(n, f.matrix().row_vecs()).into_rref();
    let pivots: Vec<usize> = r
        .row_vecs()
        .iter()
        .map(|row| row.leading().expect("rref rows are nonzero").0)
        .collect();
    let mut is_pivot = vec![false; n];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let basis: Vec<SparseVec> = (0..n)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut pairs = vec![(free, Rational::one())];
            for (row, &p) in r.row_vecs().iter().zip(&pivots) {
                let v = row.get(free);
                if !v.is_zero() {
                    pairs.push((p, -v));
                }
            }
            SparseVec::from_pairs(pairs)
        })
        .collect();
    Subspace::span(n, &basis)
}

/// Column space in canonical form.
pub fn image(f: &LinearMap) -> Subspace {
    Subspace::row_space(&f.matrix().transpose())
}

/// One exact solution of `f(x) = target` (free variables set to zero), or `None`.
pub fn solve(f: &LinearMap, target: &SparseVec) -> Option<SparseVec> {
    let n = f.source_dim();
    assert!(
        target.max_index().is_none_or(|m| m < f.target_dim()),
        "target length exceeds target_dim"
    );
    // Augmented rows [M_r | t_r].
    let rows: Vec<SparseVec> = (0..f.target_dim())
        .map(|r| {
            let t = target.get(r);
            f.matrix().row(r).add(&SparseVec::single(n, t))
        })
        .collect();
    let r = echelon_of_rows(n + 1, &rows).into_rref();
    let mut x = Vec::new();
    for row in r.row_vecs() {
        let (p, _) = row.leading().expect("nonzero rref row");
        if p == n {
            return None;
        }
        let rhs = row.get(n);
        if !rhs.is_zero() {
            x.push((p, rhs));
        }
    }
    Some(SparseVec::from_pairs(x))
}

/// Canonical quotient `ambient / n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quotient {
    pub proj: LinearMap,
    pub section: LinearMap,
    pub dim: usize,
}

/// Quotient by `n`, with coordinates on the free columns of `n`'s RREF basis.
///
/// `proj` reduces a vector modulo `n` and reads off the free coordinates;
/// `section` sends quotient basis vector `k` to the `k`-th free unit vector.
pub fn quotient(ambient_dim: usize, n: &Subspace) -> Quotient {
    assert_eq!(n.ambient_dim(), ambient_dim, "subspace ambient dimension mismatch");
    let free = n.free_columns();
    let mut pos = vec![usize::MAX; ambient_dim];
    for (k, &c) in free.iter().enumerate() {
        pos[c] = k;
    }
    let images: Vec<SparseVec> = (0..ambient_dim)
        .map(|c| {
            let red = n.reduce(&SparseVec::unit(c));
            SparseVec::from_pairs(red.iter().map(|(i, v)| (pos[i], v.clone())))
        })
        .collect();
    let proj = LinearMap::from_images(free.len(), &images);
    let section_images: Vec<SparseVec> = free.iter().map(|&c| SparseVec::unit(c)).collect();
    let section = LinearMap::from_images(ambient_dim, &section_images);
    Quotient {
        proj,
        section,
        dim: free.len(),
    }
}

/// Operator norm for the ℓ¹ norms on the standard bases: the largest absolute column sum.
pub fn l1_operator_norm(f: &LinearMap) -> Rational {
    let mut sums = vec![Rational::zero(); f.source_dim()];
    for (_, c, v) in f.matrix().triplets() {
        sums[c] += &v.abs();
    }
    sums.into_iter().max().unwrap_or_else(Rational::zero)
}

/// `f ⊗ g` in the lexicographic product basis.
pub fn kronecker(f: &LinearMap, g: &LinearMap) -> LinearMap {
    LinearMap::new(f.matrix().kronecker(g.matrix()))
}
