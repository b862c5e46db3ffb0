//! Hochschild homology and cohomology through the bar complex, derivations,
//! and separability diagonals.

mod complex;
mod derivations;
mod diagonal;
mod groups;
mod suite;

pub use complex::{bar_complex, boundary_size, coboundary_columns, ChainComplex, DEFAULT_SIZE_LIMIT};
pub use derivations::{derivation_space, DerivationSpace};
pub use diagonal::{diagonal_check, verify_diagonal, Diagonal};
pub use groups::{
    cohomology_with_coefficients, hochschild_cohomology, hochschild_homology, hochschild_table, homology_of_complex,
    HochschildTable, HomologyResult,
};
pub use suite::{vanishing_suite, VanishingEntry, VanishingReport};

use crate::bimodules::BimoduleError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HomologyError {
    #[error("SizeLimit: b_{degree} would hold about {size} entries (limit {limit})")]
    SizeLimit { degree: usize, size: u128, limit: u128 },
    #[error("coefficient module {0} is not a bimodule over the algebra")]
    NotAnABimodule(String),
    #[error("b_{} ∘ b_{degree} is not zero", degree - 1)]
    BoundaryNotZero { degree: usize },
    #[error("coboundary δ^{degree} differs from the transpose of b_{}", degree + 1)]
    CochainMismatch { degree: usize },
    #[error("duality fails in degree {degree}: homology betti {homology}, cohomology betti {cohomology}")]
    DualityMismatch {
        degree: usize,
        homology: usize,
        cohomology: usize,
    },
    #[error("NotUnital: {0} has no unit")]
    NotUnital(String),
    #[error(transparent)]
    Bimodule(#[from] BimoduleError),
}
