use rayon::prelude::*;

use super::{BimoduleError, BimoduleRef, Side};
use crate::exactla::{l1_operator_norm, LinearMap, Rational};
use crate::structures::same_algebra;

/// A linear map between bimodules over the same algebras that commutes with
/// both actions. Construction checks this on every algebra basis vector.
#[derive(Clone, Debug)]
pub struct BimoduleMap {
    source: BimoduleRef,
    target: BimoduleRef,
    map: LinearMap,
}

impl BimoduleMap {
    pub fn new(source: &BimoduleRef, target: &BimoduleRef, map: LinearMap) -> Result<Self, BimoduleError> {
        if map.source_dim() != source.dim() || map.target_dim() != target.dim() {
            return Err(BimoduleError::Shape(format!(
                "map is {}x{}, modules have dimensions {} and {}",
                map.target_dim(),
                map.source_dim(),
                source.dim(),
                target.dim()
            )));
        }
        if !same_algebra(source.left_algebra(), target.left_algebra())
            || !same_algebra(source.right_algebra(), target.right_algebra())
        {
            return Err(BimoduleError::AlgebraMismatch(format!(
                "{} and {} are not over the same algebras",
                source.name(),
                target.name()
            )));
        }
        for side in [Side::Left, Side::Right] {
            let (s, t) = (source.action(side), target.action(side));
            let bad = (0..s.len())
                .into_par_iter()
                .find_first(|&p| map.matrix().mul(&s[p]) != t[p].mul(map.matrix()));
            if let Some(basis) = bad {
                return Err(BimoduleError::NotIntertwining { side, basis });
            }
        }
        Ok(Self {
            source: source.clone(),
            target: target.clone(),
            map,
        })
    }

    pub fn source(&self) -> &BimoduleRef {
        &self.source
    }

    pub fn target(&self) -> &BimoduleRef {
        &self.target
    }

    pub fn map(&self) -> &LinearMap {
        &self.map
    }

    pub fn is_bijective(&self) -> bool {
        self.map.is_bijective()
    }

    pub fn norm(&self) -> Rational {
        l1_operator_norm(&self.map)
    }

    /// The inverse, which is automatically a bimodule map when it exists.
    pub fn inverse(&self) -> Option<BimoduleMap> {
        let inv = self.map.inverse()?;
        Some(Self {
            source: self.target.clone(),
            target: self.source.clone(),
            map: inv,
        })
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &BimoduleMap) -> Result<BimoduleMap, BimoduleError> {
        BimoduleMap::new(&inner.source, &self.target, self.map.compose(&inner.map))
    }
}
