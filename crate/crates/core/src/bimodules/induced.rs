use serde::Serialize;

use super::{balanced_tensor, regular_bimodule, BalancedTensor, Bimodule, BimoduleError, BimoduleMap, BimoduleRef};
use crate::exactla::{kronecker, LinearMap, RationalMatrix, SparseVec, Subspace};
use crate::structures::AlgebraRef;

fn multiplication_into(e: &Bimodule, bt: &BalancedTensor, left: bool) -> Result<BimoduleMap, BimoduleError> {
    let (da, de) = if left {
        (e.left_algebra().dim(), e.dim())
    } else {
        (e.right_algebra().dim(), e.dim())
    };
    let cols: Vec<SparseVec> = if left {
        // a_p ⊗ x_k at index p·dim E + k
        (0..da)
            .flat_map(|p| (0..de).map(move |k| (p, k)))
            .map(|(p, k)| e.left_action()[p].column(k))
            .collect()
    } else {
        // x_k ⊗ a_p at index k·dim A + p
        (0..de)
            .flat_map(|k| (0..da).map(move |p| (k, p)))
            .map(|(k, p)| e.right_action()[p].column(k))
            .collect()
    };
    let full = LinearMap::new(RationalMatrix::from_columns(de, &cols));
    let map = bt.descend(&full)?;
    let target: BimoduleRef = std::sync::Arc::new(e.clone());
    BimoduleMap::new(&bt.module, &target, map)
}

/// `μ_E: A ⊗_A E → E`, `a ⊗ x ↦ a·x`, with its balanced source.
pub fn mu_map(e: &BimoduleRef) -> Result<(BalancedTensor, BimoduleMap), BimoduleError> {
    let a = e.left_algebra();
    let bt = balanced_tensor(&regular_bimodule(a), e, a)?;
    let mu = multiplication_into(e, &bt, true)?;
    Ok((bt, mu))
}

/// The mirror map `E ⊗_A A → E`, `x ⊗ a ↦ x·a`.
pub fn right_mu_map(e: &BimoduleRef) -> Result<(BalancedTensor, BimoduleMap), BimoduleError> {
    let a = e.right_algebra();
    let bt = balanced_tensor(e, &regular_bimodule(a), a)?;
    let mu = multiplication_into(e, &bt, false)?;
    Ok((bt, mu))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct InducedStatus {
    pub left: bool,
    pub right: bool,
    pub two_sided: bool,
}

pub fn is_induced(e: &BimoduleRef) -> Result<InducedStatus, BimoduleError> {
    let left = mu_map(e)?.1.is_bijective();
    let right = right_mu_map(e)?.1.is_bijective();
    Ok(InducedStatus {
        left,
        right,
        two_sided: left && right,
    })
}

/// Whether multiplication `A ⊗_A A → A` is bijective.
pub fn is_self_induced(a: &AlgebraRef) -> bool {
    mu_map(&regular_bimodule(a))
        .map(|(_, mu)| mu.is_bijective())
        .unwrap_or(false)
}

/// `A ⊗_A F ⊗_A A`, certified two-sided induced.
pub fn induced_completion(a: &AlgebraRef, f: &BimoduleRef) -> Result<BimoduleRef, BimoduleError> {
    let reg = regular_bimodule(a);
    let inner = balanced_tensor(&reg, f, a)?;
    let outer = balanced_tensor(&inner.module, &reg, a)?;
    let module = std::sync::Arc::new(outer.module.as_ref().clone().with_name(format!(
        "{}⊗{}⊗{}",
        a.name(),
        f.name(),
        a.name()
    )));
    module.check_axioms()?;
    if !is_induced(&module)?.two_sided {
        return Err(BimoduleError::NotInduced(module.name().to_string()));
    }
    Ok(module)
}

/// The canonical isomorphism `(X ⊗_A E) ⊗_C Y → X ⊗_A (E ⊗_C Y)`.
#[derive(Clone, Debug)]
pub struct Rebracketing {
    pub left_first: BimoduleRef,
    pub right_first: BimoduleRef,
    pub map: BimoduleMap,
}

/// Both bracketings are quotients of `X ⊗ E ⊗ Y`; they agree iff the two
/// composite projections have the same row space (equivalently, kernel).
/// The rebracketing map is then `P₂ ∘ lift₁`, verified bijective and
/// intertwining.
pub fn rebracketing(x: &BimoduleRef, e: &BimoduleRef, y: &BimoduleRef) -> Result<Rebracketing, BimoduleError> {
    let xe = balanced_tensor(x, e, e.left_algebra())?;
    let xe_y = balanced_tensor(&xe.module, y, y.left_algebra())?;
    let ey = balanced_tensor(e, y, y.left_algebra())?;
    let x_ey = balanced_tensor(x, &ey.module, e.left_algebra())?;
    let id_x = LinearMap::identity(x.dim());
    let id_y = LinearMap::identity(y.dim());
    let p1 = xe_y.proj.map().compose(&kronecker(xe.proj.map(), &id_y));
    let p2 = x_ey.proj.map().compose(&kronecker(&id_x, ey.proj.map()));
    if Subspace::row_space(p1.matrix()) != Subspace::row_space(p2.matrix()) {
        return Err(BimoduleError::Rebracketing(
            "the two bracketings identify different subspaces".into(),
        ));
    }
    let lift1 = kronecker(&xe.section, &id_y).compose(&xe_y.section);
    let map = BimoduleMap::new(&xe_y.module, &x_ey.module, p2.compose(&lift1))?;
    if !map.is_bijective() {
        return Err(BimoduleError::Rebracketing("rebracketing map is not bijective".into()));
    }
    Ok(Rebracketing {
        left_first: xe_y.module.clone(),
        right_first: x_ey.module.clone(),
        map,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bimodules::{column_module, dual_bimodule, row_module, zero_action_module};
    use crate::exactla::Rational;
    use crate::structures::{brandt, cyclic_group, matrix_algebra, scalars, semigroup_algebra, StructureAlgebra};
    use std::sync::Arc;

    #[test]
    fn ell_one_is_induced_over_matrix_units() {
        let c = scalars();
        for n in 1..=3 {
            let m = matrix_algebra(n).unwrap();
            let col = column_module(&m, &c, n);
            let (bt, mu) = mu_map(&col).unwrap();
            assert_eq!(bt.dim(), n);
            assert!(mu.is_bijective());
            assert!(is_induced(&col).unwrap().two_sided);
            assert!(is_induced(&row_module(&c, &m, n)).unwrap().two_sided);
            assert!(is_self_induced(&m));
        }
    }

    #[test]
    fn zero_action_is_not_induced() {
        let m2 = matrix_algebra(2).unwrap();
        let z = zero_action_module(&m2, &m2, 2);
        let s = is_induced(&z).unwrap();
        assert!(!s.left && !s.right && !s.two_sided);
        assert!(mu_map(&z).unwrap().1.map().is_zero());
        assert_eq!(induced_completion(&m2, &z).unwrap().dim(), 0);
    }

    #[test]
    fn zero_multiplication_is_not_self_induced() {
        let z = Arc::new(StructureAlgebra::new("zero", vec!["z".into()], vec![SparseVec::new()], None, true).unwrap());
        assert!(!is_self_induced(&z));
    }

    #[test]
    fn brandt_algebras_are_self_induced() {
        for n in 1..=2 {
            for k in 1..=2 {
                let a = semigroup_algebra(&brandt(n, &cyclic_group(k).unwrap()).unwrap());
                assert!(is_self_induced(&a), "n={n} k={k}");
            }
        }
    }

    #[test]
    fn completion_of_dual_regular_is_induced() {
        let a = semigroup_algebra(&brandt(2, &cyclic_group(2).unwrap()).unwrap());
        let d = dual_bimodule(&regular_bimodule(&a));
        let comp = induced_completion(&a, &d).unwrap();
        assert!(is_induced(&comp).unwrap().two_sided);
        // the dual of a unital bimodule is already induced, so nothing is lost
        assert_eq!(comp.dim(), d.dim());
    }

    #[test]
    fn rebracketing_for_ell_one() {
        let c = scalars();
        let m2 = matrix_algebra(2).unwrap();
        let reg = regular_bimodule(&m2);
        let col = column_module(&m2, &c, 2);
        let row = row_module(&c, &m2, 2);
        let r = rebracketing(&reg, &col, &row.clone()).err();
        // col is M-ℂ, row is ℂ-M: (M⊗_M col)⊗_ℂ row
        assert!(r.is_none());
        let r = rebracketing(&reg, &reg, &reg).unwrap();
        assert_eq!(r.left_first.dim(), 4);
        assert_eq!(r.map.norm(), Rational::one());
    }
}
