//! Incremental sparse Gaussian elimination.

use std::collections::HashMap;

use super::{RationalMatrix, SparseVec};

/// A row-echelon basis grown one vector at a time.
///
/// Every stored row has leading coefficient 1 at its pivot column and no
/// other stored row has the same pivot. Rows are not kept reduced against
/// each other until [`Echelon::into_rref`].
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    dim: usize,
    pivots: HashMap<usize, SparseVec>,
}

impl Echelon {
    pub fn new(dim: usize) -> Self {
        Self {
            dim,
            pivots: HashMap::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Eliminates the leading entry of `v` until it lands on a free column.
    fn reduce_leading(&self, mut v: SparseVec) -> SparseVec {
        while let Some((lead, c)) = v.leading() {
            match self.pivots.get(&lead) {
                Some(p) => {
                    let c = -c.clone();
                    v = v.axpy(&c, p);
                }
                None => break,
            }
        }
        v
    }

    /// Eliminates every pivot-column entry of `v`.
    pub fn reduce(&self, mut v: SparseVec) -> SparseVec {
        let mut cursor = 0usize;
        loop {
            let hit = v
                .iter()
                .find(|(i, _)| *i >= cursor && self.pivots.contains_key(i))
                .map(|(i, c)| (i, c.clone()));
            match hit {
                Some((i, c)) => {
                    v = v.axpy(&-c, &self.pivots[&i]);
                    cursor = i + 1;
                }
                None => return v,
            }
        }
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v.clone()).is_zero()
    }

    /// Adds `v` to the span. Returns true when it raised the rank.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        if let Some(m) = v.max_index() {
            assert!(m < self.dim, "vector index {m} outside dimension {}", self.dim);
        }
        let r = self.reduce_leading(v);
        match r.leading() {
            None => false,
            Some((lead, c)) => {
                let inv = c.recip();
                let r = r.scale(&inv);
                self.pivots.insert(lead, r);
                true
            }
        }
    }

    /// Sorted pivot columns.
    pub fn pivot_columns(&self) -> Vec<usize> {
        let mut p: Vec<usize> = self.pivots.keys().copied().collect();
        p.sort_unstable();
        p
    }

    /// Back-substitutes into the unique reduced row echelon form.
    pub fn into_rref(self) -> RationalMatrix {
        let cols = self.pivot_columns();
        let mut pivots = self.pivots;
        let mut done: HashMap<usize, SparseVec> = HashMap::with_capacity(cols.len());
        for &c in cols.iter().rev() {
            let mut row = pivots.remove(&c).expect("pivot row");
            // Entries to the right of the pivot that sit on later pivot
            // columns are cleared using already reduced rows.
            let hits: Vec<(usize, _)> = row
                .iter()
                .filter(|(i, _)| *i > c && done.contains_key(i))
                .map(|(i, v)| (i, v.clone()))
                .collect();
            for (i, v) in hits {
                row = row.axpy(&-v, &done[&i]);
            }
            done.insert(c, row);
        }
        let rows = cols.iter().map(|c| done.remove(c).unwrap()).collect();
        RationalMatrix::from_rows(self.dim, rows)
    }
}

/// Inserts rows fewest-nonzeros first; sparse rows make better pivots.
pub(crate) fn echelon_of_rows<'a>(dim: usize, rows: impl IntoIterator<Item = &'a SparseVec>) -> Echelon {
    let mut rows: Vec<&SparseVec> = rows.into_iter().collect();
    rows.sort_by_key(|r| r.nnz());
    let mut e = Echelon::new(dim);
    for r in rows {
        if e.rank() == dim {
            break;
        }
        e.insert(r.clone());
    }
    e
}

/// Reduced row echelon form and rank. The input is not modified.
pub fn rref(m: &RationalMatrix) -> (RationalMatrix, usize) {
    let e = echelon_of_rows(m.cols(), m.row_vecs());
    let rank = e.rank();
    let mut r = e.into_rref();
    // Keep the row count of the input: zero rows pad the bottom.
    let mut rows = r.clone().into_row_vecs();
    rows.resize(m.rows().max(rank), SparseVec::new());
    r = RationalMatrix::from_rows(m.cols(), rows);
    (r, rank)
}

pub fn rank(m: &RationalMatrix) -> usize {
    echelon_of_rows(m.cols(), m.row_vecs()).rank()
}

/// Rank of the span of `vectors`, stopping once `cap` is reached.
///
/// `cap` must be a proven upper bound on the rank (for example the
/// dimension of a subspace known to contain every vector); the result is
/// then exact.
pub fn rank_of_vectors_capped(dim: usize, vectors: impl IntoIterator<Item = SparseVec>, cap: usize) -> usize {
    let cap = cap.min(dim);
    let mut e = Echelon::new(dim);
    if cap == 0 {
        return 0;
    }
    for v in vectors {
        e.insert(v);
        if e.rank() == cap {
            break;
        }
    }
    e.rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::Rational;
    use proptest::prelude::*;

    #[test]
    fn identity_is_fixed() {
        let id = RationalMatrix::identity(2);
        assert_eq!(rref(&id), (id.clone(), 2));
    }

    #[test]
    fn dependent_rows() {
        let m = RationalMatrix::from_i64(&[&[1, 2], &[2, 4]]);
        let (r, k) = rref(&m);
        assert_eq!(k, 1);
        assert_eq!(r, RationalMatrix::from_i64(&[&[1, 2], &[0, 0]]));
    }

    #[test]
    fn fractional_pivots() {
        let m = RationalMatrix::from_i64(&[&[2, 1, 0], &[0, 3, 1]]);
        let (r, k) = rref(&m);
        assert_eq!(k, 2);
        assert_eq!(r.get(0, 0), Rational::one());
        assert_eq!(r.get(0, 1), Rational::zero());
        assert_eq!(r.get(0, 2), Rational::new(-1, 6));
        assert_eq!(r.get(1, 2), Rational::new(1, 3));
    }

    #[test]
    fn capped_rank_stops_early() {
        let vs = (0..10).map(|i| SparseVec::unit(i % 3));
        assert_eq!(rank_of_vectors_capped(3, vs, 3), 3);
        assert_eq!(rank_of_vectors_capped(3, std::iter::empty(), 0), 0);
    }

    fn arb_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
        (1usize..6, 1usize..6).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-3i64..4, c), r))
    }

    fn to_matrix(rows: &[Vec<i64>]) -> RationalMatrix {
        let refs: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
        RationalMatrix::from_i64(&refs)
    }

    proptest! {
        #[test]
        fn rref_is_idempotent(rows in arb_matrix()) {
            let m = to_matrix(&rows);
            let (r1, k1) = rref(&m);
            let (r2, k2) = rref(&r1);
            prop_assert_eq!(k1, k2);
            prop_assert_eq!(r1, r2);
        }

        #[test]
        fn rref_independent_of_row_order(rows in arb_matrix()) {
            let m = to_matrix(&rows);
            let mut rev = rows.clone();
            rev.reverse();
            let (a, _) = rref(&m);
            let (b, _) = rref(&to_matrix(&rev));
            prop_assert_eq!(a, b);
        }

        #[test]
        fn rank_of_transpose(rows in arb_matrix()) {
            let m = to_matrix(&rows);
            prop_assert_eq!(rank(&m), rank(&m.transpose()));
        }
    }
}
