//! Exact rational linear algebra on finitely based spaces.
//!
//! Matrices are sparse and row-major. Subspaces are kept in reduced row
//! echelon form so that equality of spaces is equality of values. All
//! values are immutable once built and can be shared across threads.
//!
//! Scalars are rationals. Every matrix built here has rational entries, and
//! the rank of such a matrix is the same over ℚ and over ℂ, so ranks,
//! kernels and bijectivity computed here hold over ℂ as well.

mod echelon;
mod map;
mod matrix;
mod modular;
mod rational;
mod sparse;
mod subspace;

pub use echelon::{rank, rank_of_vectors_capped, rref, Echelon};
pub use map::{image, kernel, kronecker, l1_operator_norm, quotient, solve, LinearMap, Quotient};
pub use matrix::RationalMatrix;
pub use modular::{certified_rank, modular_rank_capped, reduce_mod_p, RankCertificate, RankMethod, MODULUS};
pub use rational::{ParseRationalError, Rational};
pub use sparse::SparseVec;
pub use subspace::{subspace_equal, Subspace};
