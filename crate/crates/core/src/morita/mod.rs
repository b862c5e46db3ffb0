//! Morita witnesses: pairs of two-sided induced bimodules whose balanced
//! tensor products recover the two algebras, plus the splitting of ℓ¹(S).

mod split;
mod witness;

pub use split::{split_maps, split_sequence, verify_split, SplitReport, SplitSequence};
pub use witness::{
    comparison_map, verify_witness, witness_brandt_contracted, witness_brandt_full, witness_matrix_vs_scalars,
    Composition, ConditionReport, MoritaWitness, WitnessReport,
};

use crate::bimodules::BimoduleError;
use crate::structures::StructureError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MoritaError {
    #[error("VerificationFailed: {0}")]
    VerificationFailed(String),
    #[error(transparent)]
    Bimodule(#[from] BimoduleError),
    #[error(transparent)]
    Structure(#[from] StructureError),
}
