//! Finite groups, Brandt semigroups, and the structure-constant algebras
//! built from them.

mod algebra;
mod brandt;
mod error;
mod group;

pub use algebra::{
    algebra_tensor, contracted_brandt_algebra, direct_sum, find_unit, group_algebra, is_multiplicative, matrix_algebra,
    matrix_group_to_contracted, same_algebra, scalars, semigroup_algebra, AlgebraElement, AlgebraRef,
    AssociativityCheck, StructureAlgebra, EXHAUSTIVE_ASSOCIATIVITY_LIMIT,
};
pub use brandt::{brandt, BrandtElement, BrandtSemigroup};
pub use error::StructureError;
pub use group::{cyclic_group, group_from_cayley, klein_four, parse_cayley, symmetric_group, FiniteGroup};
