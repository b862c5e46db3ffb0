use serde::{Deserialize, Serialize};

use super::echelon::{echelon_of_rows, Echelon};
use super::{RationalMatrix, SparseVec};

/// A linear subspace in canonical form: its basis is the RREF of any spanning set.
///
/// The canonical form is unique, so derived equality is equality of spaces.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Subspace {
    ambient_dim: usize,
    basis: RationalMatrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Self {
            ambient_dim,
            basis: RationalMatrix::zeros(0, ambient_dim),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Self {
            ambient_dim,
            basis: RationalMatrix::identity(ambient_dim),
            pivots: (0..ambient_dim).collect(),
        }
    }

    pub fn span<'a>(ambient_dim: usize, vectors: impl IntoIterator<Item = &'a SparseVec>) -> Self {
        Self::from_echelon(echelon_of_rows(ambient_dim, vectors))
    }

    pub fn span_owned(ambient_dim: usize, vectors: impl IntoIterator<Item = SparseVec>) -> Self {
        let mut e = Echelon::new(ambient_dim);
        for v in vectors {
            if e.rank() == ambient_dim {
                break;
            }
            e.insert(v);
        }
        Self::from_echelon(e)
    }

    pub fn row_space(m: &RationalMatrix) -> Self {
        Self::span(m.cols(), m.row_vecs())
    }

    pub(crate) fn from_echelon(e: Echelon) -> Self {
        let ambient_dim = e.dim();
        let pivots = e.pivot_columns();
        let basis = e.into_rref();
        Self {
            ambient_dim,
            basis,
            pivots,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn is_zero(&self) -> bool {
        self.pivots.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient_dim
    }

    /// RREF basis, one vector per row.
    pub fn basis(&self) -> &RationalMatrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> &[SparseVec] {
        self.basis.row_vecs()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Reduces `v` modulo the subspace; the result vanishes on every pivot column.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut out = v.clone();
        for (row, &p) in self.basis.row_vecs().iter().zip(&self.pivots) {
            let c = out.get(p);
            if !c.is_zero() {
                out = out.axpy(&-c, row);
            }
        }
        out
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_zero()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        assert_eq!(self.ambient_dim, other.ambient_dim);
        other.basis_vectors().iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient_dim, other.ambient_dim);
        Subspace::span(
            self.ambient_dim,
            self.basis_vectors().iter().chain(other.basis_vectors()),
        )
    }

    /// Coordinates of `v` in the RREF basis, or `None` when `v` is not in the subspace.
    pub fn coordinates(&self, v: &SparseVec) -> Option<SparseVec> {
        let coords = SparseVec::from_pairs(self.pivots.iter().enumerate().map(|(k, &p)| (k, v.get(p))));
        let rebuilt = self.basis.vec_mul(&coords);
        (rebuilt == *v).then_some(coords)
    }

    /// Free (non-pivot) columns; these index the canonical quotient basis.
    pub fn free_columns(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ambient_dim];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ambient_dim).filter(|&c| !is_pivot[c]).collect()
    }
}

/// True iff the canonical bases coincide.
pub fn subspace_equal(a: &Subspace, b: &Subspace) -> bool {
    assert_eq!(a.ambient_dim, b.ambient_dim, "ambient dimensions differ");
    a == b
}
