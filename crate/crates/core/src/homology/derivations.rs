use serde::Serialize;

use super::complex::check_coefficients;
use super::{cohomology_with_coefficients, HomologyError, DEFAULT_SIZE_LIMIT};
use crate::bimodules::Bimodule;
use crate::exactla::{kernel, LinearMap, Rational, RationalMatrix, SparseVec, Subspace};
use crate::structures::AlgebraRef;

/// Derivations `A → M` and the inner ones, as subspaces of `Hom(A, M)`,
/// where `D` has coordinate `x·dim A + p` equal to the `x`-th component of `D(e_p)`.
#[derive(Clone, Debug, Serialize)]
pub struct DerivationSpace {
    #[serde(skip)]
    pub derivations: Subspace,
    #[serde(skip)]
    pub inner: Subspace,
    pub derivation_dim: usize,
    pub inner_dim: usize,
    /// `betti(H^1(A, M))` from the cochain complex.
    pub h1_betti: usize,
}

/// Solves `D(e_p e_q) = e_p·D(e_q) + D(e_p)·e_q` over all basis pairs.
pub fn derivation_space(a: &AlgebraRef, m: &Bimodule) -> Result<DerivationSpace, HomologyError> {
    check_coefficients(a, m)?;
    let (d, dm) = (a.dim(), m.dim());
    let unknown = |x: usize, p: usize| x * d + p;
    // equation (y, p, q) ↦ y·d² + p·d + q
    let mut triplets = Vec::new();
    for p in 0..d {
        for q in 0..d {
            let row = |y: usize| y * d * d + p * d + q;
            for (k, c) in a.basis_product(p, q).iter() {
                for x in 0..dm {
                    triplets.push((row(x), unknown(x, k), c.clone()));
                }
            }
            // − e_p·D(e_q): D(e_q) = Σ_x D_{x,q} e_x
            for (y, x, c) in m.left_action()[p].triplets() {
                triplets.push((row(y), unknown(x, q), -c.clone()));
            }
            // − D(e_p)·e_q
            for (y, x, c) in m.right_action()[q].triplets() {
                triplets.push((row(y), unknown(x, p), -c.clone()));
            }
        }
    }
    let system = LinearMap::new(RationalMatrix::from_triplets(dm * d * d, dm * d, triplets));
    let derivations = kernel(&system);
    let inner_gens: Vec<SparseVec> = (0..dm)
        .map(|x| {
            let ex = SparseVec::unit(x);
            let mut pairs: Vec<(usize, Rational)> = Vec::new();
            for p in 0..d {
                let v = m.left_action()[p].mul_vec(&ex).sub(&m.right_action()[p].mul_vec(&ex));
                pairs.extend(v.iter().map(|(y, c)| (unknown(y, p), c.clone())));
            }
            SparseVec::from_pairs(pairs)
        })
        .collect();
    let inner = Subspace::span(dm * d, &inner_gens);
    assert!(
        derivations.contains_subspace(&inner),
        "inner derivations must satisfy the derivation identity"
    );
    let h1 = cohomology_with_coefficients(a, m, 1, DEFAULT_SIZE_LIMIT)?;
    let out = DerivationSpace {
        derivation_dim: derivations.dim(),
        inner_dim: inner.dim(),
        h1_betti: h1[1].betti,
        derivations,
        inner,
    };
    assert_eq!(
        out.derivation_dim - out.inner_dim,
        out.h1_betti,
        "outer derivations must match H^1"
    );
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bimodules::{dual_bimodule, regular_bimodule};
    use crate::structures::{matrix_algebra, scalars};

    #[test]
    fn scalars_have_no_derivations() {
        let c = scalars();
        let s = derivation_space(&c, &regular_bimodule(&c)).unwrap();
        assert_eq!(s.derivation_dim, 0);
    }

    #[test]
    fn m2_into_dual_regular_all_inner() {
        let m2 = matrix_algebra(2).unwrap();
        let s = derivation_space(&m2, &dual_bimodule(&regular_bimodule(&m2))).unwrap();
        assert_eq!((s.derivation_dim, s.inner_dim), (3, 3));
        assert_eq!(s.h1_betti, 0);
    }
}
