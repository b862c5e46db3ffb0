use serde::Serialize;

use super::MoritaError;
use crate::exactla::{image, kernel, LinearMap, Rational, SparseVec, Subspace};
use crate::structures::{
    brandt, contracted_brandt_algebra, direct_sum, find_unit, is_multiplicative, scalars, semigroup_algebra,
    AlgebraRef, BrandtSemigroup, FiniteGroup,
};

/// `0 → ℓ¹(T) →u ℓ¹(S) →v ℂ → 0` split by the restriction `w`, together
/// with `θ = (w, v): ℓ¹(S) → ℓ¹(T) ⊕ ℂ` and its inverse.
#[derive(Clone, Debug)]
pub struct SplitSequence {
    pub semigroup: BrandtSemigroup,
    pub full: AlgebraRef,
    pub contracted: AlgebraRef,
    pub sum: AlgebraRef,
    pub u: LinearMap,
    pub v: LinearMap,
    pub w: LinearMap,
    pub theta: LinearMap,
    pub theta_inv: LinearMap,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SplitReport {
    pub u_multiplicative: bool,
    pub v_multiplicative: bool,
    pub w_multiplicative: bool,
    pub exact_at_middle: bool,
    pub u_injective: bool,
    pub v_surjective: bool,
    pub wu_identity: bool,
    pub vu_zero: bool,
    pub theta_bijective: bool,
    pub theta_multiplicative: bool,
    pub theta_inverse_formula: bool,
    pub theta_of_zero: bool,
    pub unit_transport: bool,
}

impl SplitReport {
    pub fn passed(&self) -> bool {
        self.failures().is_empty()
    }

    pub fn failures(&self) -> Vec<&'static str> {
        [
            ("u_multiplicative", self.u_multiplicative),
            ("v_multiplicative", self.v_multiplicative),
            ("w_multiplicative", self.w_multiplicative),
            ("exact_at_middle", self.exact_at_middle),
            ("u_injective", self.u_injective),
            ("v_surjective", self.v_surjective),
            ("wu_identity", self.wu_identity),
            ("vu_zero", self.vu_zero),
            ("theta_bijective", self.theta_bijective),
            ("theta_multiplicative", self.theta_multiplicative),
            ("theta_inverse_formula", self.theta_inverse_formula),
            ("theta_of_zero", self.theta_of_zero),
            ("unit_transport", self.unit_transport),
        ]
        .into_iter()
        .filter(|(_, ok)| !ok)
        .map(|(name, _)| name)
        .collect()
    }
}

/// Builds the maps without checking anything.
pub fn split_maps(index_size: usize, g: &FiniteGroup) -> Result<SplitSequence, MoritaError> {
    let s = brandt(index_size, g)?;
    let full = semigroup_algebra(&s);
    let contracted = contracted_brandt_algebra(index_size, g)?;
    let sum = direct_sum(&contracted, &scalars());
    let nt = s.triple_count();
    let zero = s.zero_index();
    let u_images: Vec<SparseVec> = (0..nt)
        .map(|t| SparseVec::from_pairs([(t, Rational::one()), (zero, -Rational::one())]))
        .collect();
    let u = LinearMap::from_images(nt + 1, &u_images);
    let v = LinearMap::from_images(1, &vec![SparseVec::unit(0); nt + 1]);
    let w_images: Vec<SparseVec> = (0..=nt)
        .map(|k| {
            if k == zero {
                SparseVec::new()
            } else {
                SparseVec::unit(k)
            }
        })
        .collect();
    let w = LinearMap::from_images(nt, &w_images);
    // θ(a) = (w(a), v(a)) with the ℂ coordinate last
    let theta_images: Vec<SparseVec> = (0..=nt)
        .map(|k| {
            let mut t = w_images[k].clone();
            t = t.add(&SparseVec::unit(nt));
            t
        })
        .collect();
    let theta = LinearMap::from_images(nt + 1, &theta_images);
    let theta_inv = theta
        .inverse()
        .ok_or_else(|| MoritaError::VerificationFailed("theta is not invertible".into()))?;
    Ok(SplitSequence {
        semigroup: s,
        full,
        contracted,
        sum,
        u,
        v,
        w,
        theta,
        theta_inv,
    })
}

/// Checks every invariant of the split sequence.
pub fn verify_split(seq: &SplitSequence) -> SplitReport {
    let nt = seq.semigroup.triple_count();
    let n = seq.semigroup.index_size();
    let c = scalars();
    let zero = seq.semigroup.zero_index();

    let theta_inverse_formula = (0..=nt).all(|k| {
        // θ⁻¹(b, z) = u(b) + z·δ_ø, tested on basis vectors of ℓ¹(T) ⊕ ℂ
        let expected = if k < nt {
            seq.u.apply(&SparseVec::unit(k))
        } else {
            SparseVec::unit(zero)
        };
        seq.theta_inv.apply(&SparseVec::unit(k)) == expected
    }) && seq.theta.compose(&seq.theta_inv) == LinearMap::identity(nt + 1)
        && seq.theta_inv.compose(&seq.theta) == LinearMap::identity(nt + 1);

    let expected_unit = SparseVec::from_pairs(
        (0..n)
            .map(|i| {
                (
                    seq.semigroup.index_of(crate::structures::BrandtElement::Triple(
                        i,
                        seq.semigroup.group().identity(),
                        i,
                    )),
                    Rational::one(),
                )
            })
            .chain([(zero, Rational::from_integer(1 - n as i64))]),
    );
    let unit_transport = match (find_unit(&seq.full), seq.contracted.unit()) {
        (Some(u), Some(ut)) => {
            *u.coeffs() == expected_unit && seq.theta.apply(u.coeffs()) == ut.add(&SparseVec::unit(nt))
        }
        _ => false,
    };

    SplitReport {
        u_multiplicative: is_multiplicative(&seq.u, &seq.contracted, &seq.full),
        v_multiplicative: is_multiplicative(&seq.v, &seq.full, &c),
        w_multiplicative: is_multiplicative(&seq.w, &seq.full, &seq.contracted),
        exact_at_middle: image(&seq.u) == kernel(&seq.v),
        u_injective: kernel(&seq.u) == Subspace::zero(nt),
        v_surjective: image(&seq.v) == Subspace::full(1),
        wu_identity: seq.w.compose(&seq.u) == LinearMap::identity(nt),
        vu_zero: seq.v.compose(&seq.u).is_zero(),
        theta_bijective: seq.theta.is_bijective(),
        theta_multiplicative: is_multiplicative(&seq.theta, &seq.full, &seq.sum),
        theta_inverse_formula,
        theta_of_zero: seq.theta.apply(&SparseVec::unit(zero)) == SparseVec::unit(nt),
        unit_transport,
    }
}

/// The verified split sequence for `B(I, G)` with `|I| = index_size`.
pub fn split_sequence(index_size: usize, g: &FiniteGroup) -> Result<SplitSequence, MoritaError> {
    let seq = split_maps(index_size, g)?;
    let report = verify_split(&seq);
    if !report.passed() {
        return Err(MoritaError::VerificationFailed(format!(
            "split sequence for |I|={index_size}, G={}: {}",
            g.name(),
            report.failures().join(", ")
        )));
    }
    Ok(seq)
}
