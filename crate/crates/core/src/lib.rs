//! Finite-dimensional certification of Morita equivalence for Brandt
//! semigroup algebras.
//!
//! Everything is exact rational linear algebra: algebras are given by
//! structure constants, bimodules by action matrices, balanced tensor
//! products by canonical quotients, and Hochschild (co)homology by ranks of
//! bar-complex boundaries.

pub mod bimodules;
pub mod exactla;
pub mod homology;
pub mod morita;
pub mod structures;
