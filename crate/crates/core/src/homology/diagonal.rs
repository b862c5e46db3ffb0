use serde::Serialize;

use super::HomologyError;
use crate::exactla::{solve, LinearMap, Rational, RationalMatrix, SparseVec};
use crate::structures::{find_unit, AlgebraRef};

/// `m ∈ A ⊗ A` with `a·m = m·a` for all `a` and `π(m) = 1`, in the basis
/// `e_p ⊗ e_q ↦ p·dim A + q`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Diagonal {
    pub algebra: String,
    pub element: SparseVec,
    /// Readable form such as `1/2 g0⊗g0 + 1/2 g1⊗g1`.
    pub display: String,
}

fn display(a: &AlgebraRef, m: &SparseVec) -> String {
    if m.is_zero() {
        return "0".into();
    }
    let d = a.dim();
    m.iter()
        .map(|(k, c)| format!("{c} {}⊗{}", a.label(k / d), a.label(k % d)))
        .collect::<Vec<_>>()
        .join(" + ")
}

/// Checks both defining identities on every basis vector.
pub fn verify_diagonal(a: &AlgebraRef, m: &SparseVec) -> bool {
    let d = a.dim();
    let Some(unit) = a.unit() else { return false };
    let mut pi = SparseVec::new();
    for (k, c) in m.iter() {
        pi = pi.axpy(c, a.basis_product(k / d, k % d));
    }
    if pi != *unit {
        return false;
    }
    (0..d).all(|p| {
        let ep = SparseVec::unit(p);
        let mut left = SparseVec::new();
        let mut right = SparseVec::new();
        for (k, c) in m.iter() {
            let (x, y) = (SparseVec::unit(k / d), SparseVec::unit(k % d));
            left = left.axpy(c, &a.mul(&ep, &x).kron(&y, d));
            right = right.axpy(c, &x.kron(&a.mul(&y, &ep), d));
        }
        left == right
    })
}

/// Finds a diagonal by solving the linear system, or `Ok(None)` when none exists.
pub fn diagonal_check(a: &AlgebraRef) -> Result<Option<Diagonal>, HomologyError> {
    if find_unit(a).is_none() {
        return Err(HomologyError::NotUnital(a.name().to_string()));
    }
    let d = a.dim();
    let unit = a
        .unit()
        .cloned()
        .or_else(|| find_unit(a).map(|u| u.coeffs().clone()))
        .expect("unit");
    let mut triplets: Vec<(usize, usize, Rational)> = Vec::new();
    // rows p·d² + (r·d + s): coefficient of e_r⊗e_s in e_p·m − m·e_p
    for p in 0..d {
        for x in 0..d {
            for y in 0..d {
                let col = x * d + y;
                for (r, c) in a.basis_product(p, x).iter() {
                    triplets.push((p * d * d + r * d + y, col, c.clone()));
                }
                for (s, c) in a.basis_product(y, p).iter() {
                    triplets.push((p * d * d + x * d + s, col, -c.clone()));
                }
            }
        }
    }
    // rows d³ + r: π(m) = unit
    for x in 0..d {
        for y in 0..d {
            for (r, c) in a.basis_product(x, y).iter() {
                triplets.push((d * d * d + r, x * d + y, c.clone()));
            }
        }
    }
    let system = LinearMap::new(RationalMatrix::from_triplets(d * d * d + d, d * d, triplets));
    let target = SparseVec::from_pairs(unit.iter().map(|(r, c)| (d * d * d + r, c.clone())));
    let Some(m) = solve(&system, &target) else {
        return Ok(None);
    };
    assert!(verify_diagonal(a, &m), "solved diagonal must verify by substitution");
    Ok(Some(Diagonal {
        algebra: a.name().to_string(),
        display: display(a, &m),
        element: m,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structures::{brandt, cyclic_group, group_algebra, scalars, semigroup_algebra};

    #[test]
    fn scalars_and_c2() {
        let c = scalars();
        assert_eq!(diagonal_check(&c).unwrap().unwrap().element, SparseVec::unit(0));
        let a = group_algebra(&cyclic_group(2).unwrap());
        let m = diagonal_check(&a).unwrap().unwrap();
        let half = Rational::new(1, 2);
        assert_eq!(m.element, SparseVec::from_pairs([(0, half.clone()), (3, half)]));
    }

    #[test]
    fn brandt_has_diagonal() {
        let a = semigroup_algebra(&brandt(2, &cyclic_group(2).unwrap()).unwrap());
        let m = diagonal_check(&a).unwrap().unwrap();
        assert!(verify_diagonal(&a, &m.element));
    }

    #[test]
    fn non_unital_is_an_error() {
        let z = std::sync::Arc::new(
            crate::structures::StructureAlgebra::new("zero", vec!["z".into()], vec![SparseVec::new()], None, true)
                .unwrap(),
        );
        assert!(matches!(diagonal_check(&z), Err(HomologyError::NotUnital(_))));
    }
}
