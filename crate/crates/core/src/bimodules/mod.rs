//! Bimodules over structure-constant algebras, balanced tensor products and
//! induced-module certification.

mod induced;
mod map;
mod module;
mod tensor;

pub use induced::{
    induced_completion, is_induced, is_self_induced, mu_map, rebracketing, right_mu_map, InducedStatus, Rebracketing,
};
pub use map::BimoduleMap;
pub use module::{
    block_sum, column_module, dual_bimodule, left_ideal_module, module_sum, random_bimodule, regular_bimodule,
    restrict, right_ideal_module, row_module, zero_action_module, Bimodule, BimoduleRef, Side,
};
pub use tensor::{balanced_tensor, balancing_subspace, tensor, BalancedTensor};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BimoduleError {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("algebra mismatch: {0}")]
    AlgebraMismatch(String),
    #[error("left action is not a homomorphism at basis pair ({p},{q})")]
    LeftNotHomomorphism { p: usize, q: usize },
    #[error("right action is not compatible at basis pair ({p},{q})")]
    RightNotHomomorphism { p: usize, q: usize },
    #[error("left and right actions do not commute at basis pair ({p},{q})")]
    ActionsDoNotCommute { p: usize, q: usize },
    #[error("ActionNotWellDefined: {side} action of basis {basis} does not preserve the balancing subspace")]
    ActionNotWellDefined { side: Side, basis: usize },
    #[error("map does not intertwine the {side} action of basis {basis}")]
    NotIntertwining { side: Side, basis: usize },
    #[error("map does not vanish on the balancing subspace")]
    DescentFailed,
    #[error("module {0} is not two-sided induced")]
    NotInduced(String),
    #[error("rebracketing fails: {0}")]
    Rebracketing(String),
}
