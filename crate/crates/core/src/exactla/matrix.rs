use std::fmt;

use serde::{Deserialize, Serialize};

use super::{Rational, SparseVec};

/// Sparse rational matrix stored as rows.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<SparseVec>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![SparseVec::new(); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            rows: n,
            cols: n,
            data: (0..n).map(SparseVec::unit).collect(),
        }
    }

    /// Panics if a row has an entry outside `0..cols`.
    pub fn from_rows(cols: usize, rows: Vec<SparseVec>) -> Self {
        for r in &rows {
            if let Some(m) = r.max_index() {
                assert!(m < cols, "row entry {m} out of bounds for {cols} columns");
            }
        }
        Self {
            rows: rows.len(),
            cols,
            data: rows,
        }
    }

    /// Matrix whose columns are `cols`.
    pub fn from_columns(rows: usize, cols: &[SparseVec]) -> Self {
        Self::from_rows(rows, cols.to_vec()).transpose()
    }

    /// Builds from `(row, col, value)` triplets, summing duplicates.
    pub fn from_triplets(
        rows: usize,
        cols: usize,
        triplets: impl IntoIterator<Item = (usize, usize, Rational)>,
    ) -> Self {
        let mut buckets: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); rows];
        for (r, c, v) in triplets {
            assert!(r < rows && c < cols, "triplet ({r},{c}) out of bounds");
            buckets[r].push((c, v));
        }
        Self {
            rows,
            cols,
            data: buckets.into_iter().map(SparseVec::from_pairs).collect(),
        }
    }

    pub fn from_dense(rows: &[Vec<Rational>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == cols), "ragged dense input");
        Self {
            rows: rows.len(),
            cols,
            data: rows.iter().map(|r| SparseVec::from_dense(r)).collect(),
        }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let dense: Vec<Vec<Rational>> = rows
            .iter()
            .map(|r| r.iter().map(|&v| Rational::from_integer(v)).collect())
            .collect();
        Self::from_dense(&dense)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &SparseVec {
        &self.data[r]
    }

    pub fn row_vecs(&self) -> &[SparseVec] {
        &self.data
    }

    pub fn into_row_vecs(self) -> Vec<SparseVec> {
        self.data
    }

    pub fn get(&self, r: usize, c: usize) -> Rational {
        self.data[r].get(c)
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(SparseVec::nnz).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(SparseVec::is_zero)
    }

    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, &Rational)> + '_ {
        self.data
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().map(move |(c, v)| (r, c, v)))
    }

    pub fn transpose(&self) -> Self {
        let mut buckets: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); self.cols];
        for (r, row) in self.data.iter().enumerate() {
            for (c, v) in row.iter() {
                buckets[c].push((r, v.clone()));
            }
        }
        Self {
            rows: self.cols,
            cols: self.rows,
            data: buckets.into_iter().map(SparseVec::from_sorted_unchecked).collect(),
        }
    }

    /// Column `c` as a sparse vector (linear scan over rows).
    pub fn column(&self, c: usize) -> SparseVec {
        let pairs = self
            .data
            .iter()
            .enumerate()
            .filter_map(|(r, row)| {
                let v = row.get(c);
                (!v.is_zero()).then_some((r, v))
            })
            .collect();
        SparseVec::from_sorted_unchecked(pairs)
    }

    pub fn mul_vec(&self, x: &SparseVec) -> SparseVec {
        let pairs = self
            .data
            .iter()
            .enumerate()
            .filter_map(|(r, row)| {
                let v = row.dot(x);
                (!v.is_zero()).then_some((r, v))
            })
            .collect();
        SparseVec::from_sorted_unchecked(pairs)
    }

    /// `x^T · self` for a row vector `x` of length `rows`.
    pub fn vec_mul(&self, x: &SparseVec) -> SparseVec {
        let mut acc = SparseVec::new();
        for (r, c) in x.iter() {
            acc = acc.axpy(c, &self.data[r]);
        }
        acc
    }

    pub fn mul(&self, rhs: &RationalMatrix) -> RationalMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in product");
        let data = self.data.iter().map(|row| rhs.vec_mul(row)).collect();
        RationalMatrix {
            rows: self.rows,
            cols: rhs.cols,
            data,
        }
    }

    pub fn add(&self, rhs: &RationalMatrix) -> RationalMatrix {
        self.axpy(&Rational::one(), rhs)
    }

    pub fn sub(&self, rhs: &RationalMatrix) -> RationalMatrix {
        self.axpy(&-Rational::one(), rhs)
    }

    /// `self + c * rhs`.
    pub fn axpy(&self, c: &Rational, rhs: &RationalMatrix) -> RationalMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        RationalMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a.axpy(c, b)).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> RationalMatrix {
        RationalMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|r| r.scale(c)).collect(),
        }
    }

    pub fn kronecker(&self, rhs: &RationalMatrix) -> RationalMatrix {
        let mut data = Vec::with_capacity(self.rows * rhs.rows);
        for a in &self.data {
            for b in &rhs.data {
                data.push(a.kron(b, rhs.cols));
            }
        }
        RationalMatrix {
            rows: self.rows * rhs.rows,
            cols: self.cols * rhs.cols,
            data,
        }
    }

    /// Selects `cols` (in the given order) as the new column set.
    pub fn select_columns(&self, cols: &[usize]) -> RationalMatrix {
        let mut pos = vec![usize::MAX; self.cols];
        for (k, &c) in cols.iter().enumerate() {
            pos[c] = k;
        }
        let data = self
            .data
            .iter()
            .map(|row| {
                SparseVec::from_pairs(
                    row.iter()
                        .filter(|(c, _)| pos[*c] != usize::MAX)
                        .map(|(c, v)| (pos[c], v.clone())),
                )
            })
            .collect();
        RationalMatrix {
            rows: self.rows,
            cols: cols.len(),
            data,
        }
    }

    /// Stacks `self` on top of `other`.
    pub fn vstack(&self, other: &RationalMatrix) -> RationalMatrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        RationalMatrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    /// Returns a copy with entry `(r, c)` replaced.
    pub fn with_entry(&self, r: usize, c: usize, value: Rational) -> RationalMatrix {
        let mut out = self.clone();
        let row = &out.data[r];
        let cur = row.get(c);
        out.data[r] = row.axpy(&Rational::one(), &SparseVec::single(c, value - cur));
        out
    }

    pub fn to_dense(&self) -> Vec<Vec<Rational>> {
        self.data.iter().map(|r| r.to_dense(self.cols)).collect()
    }
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RationalMatrix {}x{} [", self.rows, self.cols)?;
        if self.rows * self.cols <= 400 {
            for row in self.to_dense() {
                let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
                writeln!(f, "  [{}]", cells.join(", "))?;
            }
        } else {
            writeln!(f, "  {} nonzeros", self.nnz())?;
        }
        write!(f, "]")
    }
}
