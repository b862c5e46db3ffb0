use std::sync::Arc;

use rayon::prelude::*;

use super::{Bimodule, BimoduleError, BimoduleMap, BimoduleRef, Side};
use crate::exactla::{quotient, LinearMap, RationalMatrix, SparseVec, Subspace};
use crate::structures::{same_algebra, AlgebraRef};

/// Outer tensor product `E ⊗ F` with basis `(k, l) ↦ k·dim F + l`.
///
/// Axioms are inherited from the factors and are not re-checked here, so a
/// broken input surfaces later as a verification failure instead of a panic.
pub fn tensor(e: &Bimodule, f: &Bimodule) -> BimoduleRef {
    let ie = RationalMatrix::identity(e.dim());
    let i_f = RationalMatrix::identity(f.dim());
    let left = e.left_action().iter().map(|m| m.kronecker(&i_f)).collect();
    let right = f.right_action().iter().map(|m| ie.kronecker(m)).collect();
    let labels = e
        .labels()
        .iter()
        .flat_map(|a| f.labels().iter().map(move |b| format!("{a}⊗{b}")))
        .collect();
    Arc::new(
        Bimodule::from_parts_unchecked(
            format!("{}⊗{}", e.name(), f.name()),
            e.left_algebra(),
            f.right_algebra(),
            labels,
            left,
            right,
        )
        .expect("outer tensor shapes"),
    )
}

fn check_over(e: &Bimodule, f: &Bimodule, over: &AlgebraRef) -> Result<(), BimoduleError> {
    if !same_algebra(e.right_algebra(), over) || !same_algebra(f.left_algebra(), over) {
        return Err(BimoduleError::AlgebraMismatch(format!(
            "{} ⊗ {} over {}: right algebra {} and left algebra {} must both be {}",
            e.name(),
            f.name(),
            over.name(),
            e.right_algebra().name(),
            f.left_algebra().name(),
            over.name()
        )));
    }
    Ok(())
}

/// `N = span{x_p·a_q ⊗ y_r − x_p ⊗ a_q·y_r}` inside `E ⊗ F`.
pub fn balancing_subspace(e: &Bimodule, f: &Bimodule, over: &AlgebraRef) -> Result<Subspace, BimoduleError> {
    check_over(e, f, over)?;
    let (de, df) = (e.dim(), f.dim());
    let gens: Vec<SparseVec> = (0..over.dim())
        .into_par_iter()
        .flat_map_iter(|q| {
            let r_cols: Vec<SparseVec> = (0..de).map(|p| e.right_action()[q].column(p)).collect();
            let l_cols: Vec<SparseVec> = (0..df).map(|r| f.left_action()[q].column(r)).collect();
            (0..de).flat_map(move |p| {
                let r_cols = r_cols.clone();
                let l_cols = l_cols.clone();
                (0..df).map(move |r| {
                    let a = r_cols[p].kron(&SparseVec::unit(r), df);
                    let b = SparseVec::unit(p).kron(&l_cols[r], df);
                    a.sub(&b)
                })
            })
        })
        .filter(|v| !v.is_zero())
        .collect();
    Ok(Subspace::span_owned(de * df, gens))
}

/// `E ⊗_A F` realised as the canonical quotient of `E ⊗ F` by the balancing subspace.
#[derive(Clone, Debug)]
pub struct BalancedTensor {
    pub full: BimoduleRef,
    pub balancing: Subspace,
    pub module: BimoduleRef,
    /// Quotient map `E ⊗ F → E ⊗_A F`.
    pub proj: BimoduleMap,
    /// Linear section of `proj` onto the free coordinates.
    pub section: LinearMap,
}

impl BalancedTensor {
    /// Factors a map on `E ⊗ F` through the quotient; fails unless it kills `N`.
    pub fn descend(&self, full_map: &LinearMap) -> Result<LinearMap, BimoduleError> {
        if full_map.source_dim() != self.full.dim() {
            return Err(BimoduleError::Shape(format!(
                "map source dimension {} but tensor dimension {}",
                full_map.source_dim(),
                self.full.dim()
            )));
        }
        let kills = self
            .balancing
            .basis_vectors()
            .par_iter()
            .all(|v| full_map.apply(v).is_zero());
        if !kills {
            return Err(BimoduleError::DescentFailed);
        }
        Ok(full_map.compose(&self.section))
    }

    pub fn dim(&self) -> usize {
        self.module.dim()
    }
}

pub fn balanced_tensor(e: &Bimodule, f: &Bimodule, over: &AlgebraRef) -> Result<BalancedTensor, BimoduleError> {
    let n = balancing_subspace(e, f, over)?;
    let full = tensor(e, f);
    let q = quotient(full.dim(), &n);
    // Induced actions are proj ∘ A ∘ section, valid only if A(N) ⊆ N.
    let induce = |side: Side| -> Result<Vec<RationalMatrix>, BimoduleError> {
        full.action(side)
            .par_iter()
            .enumerate()
            .map(|(basis, m)| {
                let preserved = n.basis_vectors().iter().all(|v| n.contains(&m.mul_vec(v)));
                if !preserved {
                    return Err(BimoduleError::ActionNotWellDefined { side, basis });
                }
                Ok(q.proj.matrix().mul(m).mul(q.section.matrix()))
            })
            .collect()
    };
    let left = induce(Side::Left)?;
    let right = induce(Side::Right)?;
    let labels = n
        .free_columns()
        .iter()
        .map(|&c| format!("[{}]", full.labels()[c]))
        .collect();
    let module: BimoduleRef = Arc::new(Bimodule::from_parts_unchecked(
        format!("{}⊗_{}{}", e.name(), over.name(), f.name()),
        e.left_algebra(),
        f.right_algebra(),
        labels,
        left,
        right,
    )?);
    let proj = BimoduleMap::new(&full, &module, q.proj)?;
    Ok(BalancedTensor {
        full,
        balancing: n,
        module,
        proj,
        section: q.section,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bimodules::{column_module, regular_bimodule, row_module};
    use crate::exactla::Rational;
    use crate::structures::{matrix_algebra, scalars};

    #[test]
    fn over_scalars_nothing_is_identified() {
        let c = scalars();
        let r = regular_bimodule(&c);
        assert!(balancing_subspace(&r, &r, &c).unwrap().is_zero());
        let m2 = matrix_algebra(2).unwrap();
        let row = row_module(&c, &m2, 2);
        let col = column_module(&m2, &c, 2);
        let bt = balanced_tensor(&col, &row, &c).unwrap();
        assert_eq!(bt.dim(), 4);
    }

    #[test]
    fn lemma_style_numbers() {
        let c = scalars();
        for (n, expected) in [(2usize, 3usize), (3, 8)] {
            let m = matrix_algebra(n).unwrap();
            let row = row_module(&c, &m, n);
            let col = column_module(&m, &c, n);
            let bal = balancing_subspace(&row, &col, &m).unwrap();
            assert_eq!(bal.dim(), expected);
            assert_eq!(balanced_tensor(&row, &col, &m).unwrap().dim(), 1);
        }
        let m2 = matrix_algebra(2).unwrap();
        let bal = balancing_subspace(&row_module(&c, &m2, 2), &column_module(&m2, &c, 2), &m2).unwrap();
        // δ_1⊗δ_2 has index 1, δ_2⊗δ_2 − δ_1⊗δ_1 is e_3 − e_0
        assert!(bal.contains(&SparseVec::unit(1)));
        assert!(bal.contains(&SparseVec::from_pairs([(3, Rational::one()), (0, -Rational::one())])));
    }

    #[test]
    fn regular_self_tensor_of_m2() {
        let m2 = matrix_algebra(2).unwrap();
        let r = regular_bimodule(&m2);
        let bt = balanced_tensor(&r, &r, &m2).unwrap();
        assert_eq!(bt.dim(), 4);
        assert!(bt.module.check_axioms().is_ok());
    }

    #[test]
    fn mismatched_algebras_are_rejected() {
        let m2 = matrix_algebra(2).unwrap();
        let m3 = matrix_algebra(3).unwrap();
        let r2 = regular_bimodule(&m2);
        let r3 = regular_bimodule(&m3);
        assert!(matches!(
            balancing_subspace(&r2, &r3, &m2),
            Err(BimoduleError::AlgebraMismatch(_))
        ));
    }
}
