use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::BimoduleError;
use crate::exactla::{LinearMap, Rational, RationalMatrix, SparseVec, Subspace};
use crate::structures::{direct_sum as algebra_sum, same_algebra, AlgebraRef, StructureAlgebra};

/// Which side of a bimodule an action or failure refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize)]
pub enum Side {
    Left,
    Right,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Left => "left",
            Side::Right => "right",
        })
    }
}

/// A finite-dimensional left-A right-B bimodule.
///
/// `left_action[p]` is the matrix of `x ↦ e_p·x` for the p-th basis vector of
/// the left algebra; `right_action[q]` is the matrix of `x ↦ x·e_q`.
#[derive(Clone, PartialEq, Eq)]
pub struct Bimodule {
    name: String,
    left: AlgebraRef,
    right: AlgebraRef,
    labels: Vec<String>,
    left_action: Vec<RationalMatrix>,
    right_action: Vec<RationalMatrix>,
}

pub type BimoduleRef = Arc<Bimodule>;

impl fmt::Debug for Bimodule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Bimodule({}: {}-mod-{}, dim {})",
            self.name,
            self.left.name(),
            self.right.name(),
            self.dim()
        )
    }
}

impl Bimodule {
    /// Builds and verifies all bimodule axioms exhaustively on bases.
    pub fn new(
        name: impl Into<String>,
        left: &AlgebraRef,
        right: &AlgebraRef,
        labels: Vec<String>,
        left_action: Vec<RationalMatrix>,
        right_action: Vec<RationalMatrix>,
    ) -> Result<Self, BimoduleError> {
        let m = Self::from_parts_unchecked(name, left, right, labels, left_action, right_action)?;
        m.check_axioms()?;
        Ok(m)
    }

    /// Builds with shape checks only. Used for ingestion and fault injection;
    /// call [`Bimodule::check_axioms`] before trusting the result.
    pub fn from_parts_unchecked(
        name: impl Into<String>,
        left: &AlgebraRef,
        right: &AlgebraRef,
        labels: Vec<String>,
        left_action: Vec<RationalMatrix>,
        right_action: Vec<RationalMatrix>,
    ) -> Result<Self, BimoduleError> {
        let dim = labels.len();
        let name = name.into();
        for (side, alg, mats) in [(Side::Left, left, &left_action), (Side::Right, right, &right_action)] {
            if mats.len() != alg.dim() {
                return Err(BimoduleError::Shape(format!(
                    "{name}: {side} action has {} matrices for an algebra of dimension {}",
                    mats.len(),
                    alg.dim()
                )));
            }
            if let Some(m) = mats.iter().find(|m| m.rows() != dim || m.cols() != dim) {
                return Err(BimoduleError::Shape(format!(
                    "{name}: {side} action matrix is {}x{}, module dimension {dim}",
                    m.rows(),
                    m.cols()
                )));
            }
        }
        Ok(Self {
            name,
            left: left.clone(),
            right: right.clone(),
            labels,
            left_action,
            right_action,
        })
    }

    /// Left homomorphism, right anti-homomorphism, and commutation, on all basis pairs.
    pub fn check_axioms(&self) -> Result<(), BimoduleError> {
        let left_bad = first_bad_pair(self.left.dim(), |p, q| {
            let lhs = self.left_action[p].mul(&self.left_action[q]);
            lhs == StructureAlgebra::combine(self.left.basis_product(p, q), &self.left_action)
        });
        if let Some((p, q)) = left_bad {
            return Err(BimoduleError::LeftNotHomomorphism { p, q });
        }
        let right_bad = first_bad_pair(self.right.dim(), |p, q| {
            // (x·e_p)·e_q = x·(e_p e_q)
            let lhs = self.right_action[q].mul(&self.right_action[p]);
            lhs == StructureAlgebra::combine(self.right.basis_product(p, q), &self.right_action)
        });
        if let Some((p, q)) = right_bad {
            return Err(BimoduleError::RightNotHomomorphism { p, q });
        }
        let bad = (0..self.left.dim()).into_par_iter().find_map_first(|p| {
            (0..self.right.dim()).find_map(|q| {
                let a = self.left_action[p].mul(&self.right_action[q]);
                let b = self.right_action[q].mul(&self.left_action[p]);
                (a != b).then_some((p, q))
            })
        });
        if let Some((p, q)) = bad {
            return Err(BimoduleError::ActionsDoNotCommute { p, q });
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn left_algebra(&self) -> &AlgebraRef {
        &self.left
    }

    pub fn right_algebra(&self) -> &AlgebraRef {
        &self.right
    }

    pub fn action(&self, side: Side) -> &[RationalMatrix] {
        match side {
            Side::Left => &self.left_action,
            Side::Right => &self.right_action,
        }
    }

    pub fn left_action(&self) -> &[RationalMatrix] {
        &self.left_action
    }

    pub fn right_action(&self) -> &[RationalMatrix] {
        &self.right_action
    }

    /// `a · x` for an element `a` of the left algebra.
    pub fn act_left(&self, a: &SparseVec, x: &SparseVec) -> SparseVec {
        let mut acc = SparseVec::new();
        for (p, c) in a.iter() {
            acc = acc.axpy(c, &self.left_action[p].mul_vec(x));
        }
        acc
    }

    /// `x · b` for an element `b` of the right algebra.
    pub fn act_right(&self, x: &SparseVec, b: &SparseVec) -> SparseVec {
        let mut acc = SparseVec::new();
        for (q, c) in b.iter() {
            acc = acc.axpy(c, &self.right_action[q].mul_vec(x));
        }
        acc
    }

    /// Copy with one action entry overwritten; the result is not re-verified.
    pub fn with_corrupted_entry(&self, side: Side, basis: usize, row: usize, col: usize, value: Rational) -> Self {
        let mut out = self.clone();
        let mats = match side {
            Side::Left => &mut out.left_action,
            Side::Right => &mut out.right_action,
        };
        mats[basis] = mats[basis].with_entry(row, col, value);
        out
    }

    /// Both actions vanish identically.
    pub fn has_zero_action(&self) -> bool {
        self.left_action
            .iter()
            .chain(&self.right_action)
            .all(RationalMatrix::is_zero)
    }
}

fn first_bad_pair(d: usize, ok: impl Fn(usize, usize) -> bool + Sync) -> Option<(usize, usize)> {
    (0..d)
        .into_par_iter()
        .find_map_first(|p| (0..d).find(|&q| !ok(p, q)).map(|q| (p, q)))
}

fn scalar_actions(alg: &AlgebraRef, dim: usize) -> Vec<RationalMatrix> {
    // ℂ acts by scalars: its single basis vector is the identity.
    assert_eq!(alg.dim(), 1, "scalar action requires a one-dimensional algebra");
    vec![RationalMatrix::identity(dim)]
}

/// A as a bimodule over itself.
pub fn regular_bimodule(a: &AlgebraRef) -> BimoduleRef {
    let left = (0..a.dim()).map(|p| a.left_mult(p)).collect();
    let right = (0..a.dim()).map(|p| a.right_mult(p)).collect();
    Arc::new(
        Bimodule::new(a.name().to_string(), a, a, a.labels().to_vec(), left, right)
            .expect("regular bimodule of an associative algebra"),
    )
}

/// `_ℂ ℓ¹(I)_{M_I}` with (b·a)(i) = Σ_k b(k) a(k,i).
pub fn row_module(scalars: &AlgebraRef, m: &AlgebraRef, index_size: usize) -> BimoduleRef {
    let n = index_size;
    assert_eq!(m.dim(), n * n, "matrix algebra dimension");
    let right = (0..n * n)
        .map(|ab| {
            let (a, b) = (ab / n, ab % n);
            RationalMatrix::from_triplets(n, n, [(b, a, Rational::one())])
        })
        .collect();
    let labels = (0..n).map(|i| format!("{}", i + 1)).collect();
    Arc::new(
        Bimodule::new(
            format!("row({n})"),
            scalars,
            m,
            labels,
            scalar_actions(scalars, n),
            right,
        )
        .expect("row module axioms"),
    )
}

/// `_{M_I} ℓ¹(I)_ℂ` with (a·b)(i) = Σ_k a(i,k) b(k).
pub fn column_module(m: &AlgebraRef, scalars: &AlgebraRef, index_size: usize) -> BimoduleRef {
    let n = index_size;
    assert_eq!(m.dim(), n * n, "matrix algebra dimension");
    let left = (0..n * n)
        .map(|ab| {
            let (a, b) = (ab / n, ab % n);
            RationalMatrix::from_triplets(n, n, [(a, b, Rational::one())])
        })
        .collect();
    let labels = (0..n).map(|i| format!("{}", i + 1)).collect();
    Arc::new(
        Bimodule::new(
            format!("col({n})"),
            m,
            scalars,
            labels,
            left,
            scalar_actions(scalars, n),
        )
        .expect("column module axioms"),
    )
}

/// A module of dimension `dim` on which both algebras act by zero.
pub fn zero_action_module(left: &AlgebraRef, right: &AlgebraRef, dim: usize) -> BimoduleRef {
    let zl = vec![RationalMatrix::zeros(dim, dim); left.dim()];
    let zr = vec![RationalMatrix::zeros(dim, dim); right.dim()];
    let labels = (0..dim).map(|k| format!("z{k}")).collect();
    Arc::new(Bimodule::new(format!("zero({dim})"), left, right, labels, zl, zr).expect("zero module"))
}

/// E* with (a·f)(x) = f(x·a) and (f·b)(x) = f(b·x).
pub fn dual_bimodule(e: &Bimodule) -> BimoduleRef {
    let left = e.right_action.iter().map(RationalMatrix::transpose).collect();
    let right = e.left_action.iter().map(RationalMatrix::transpose).collect();
    let labels = e.labels.iter().map(|l| format!("{l}*")).collect();
    Arc::new(
        Bimodule::from_parts_unchecked(format!("{}*", e.name), &e.right, &e.left, labels, left, right)
            .expect("dual shapes"),
    )
}

/// E ⊕ F over the same pair of algebras.
pub fn module_sum(e: &Bimodule, f: &Bimodule) -> Result<BimoduleRef, BimoduleError> {
    if !same_algebra(&e.left, &f.left) || !same_algebra(&e.right, &f.right) {
        return Err(BimoduleError::AlgebraMismatch(format!(
            "cannot add {} and {}: algebras differ",
            e.name, f.name
        )));
    }
    let block = |a: &RationalMatrix, b: &RationalMatrix| block_diag(a, b);
    let left = e
        .left_action
        .iter()
        .zip(&f.left_action)
        .map(|(a, b)| block(a, b))
        .collect();
    let right = e
        .right_action
        .iter()
        .zip(&f.right_action)
        .map(|(a, b)| block(a, b))
        .collect();
    let labels = e.labels.iter().chain(&f.labels).cloned().collect();
    Ok(Arc::new(Bimodule::new(
        format!("{}+{}", e.name, f.name),
        &e.left,
        &e.right,
        labels,
        left,
        right,
    )?))
}

/// `E ⊕ F` as an `(A⊕C)`-`(B⊕D)` bimodule with zero cross actions.
pub fn block_sum(e: &Bimodule, f: &Bimodule) -> BimoduleRef {
    let left_alg = algebra_sum(&e.left, &f.left);
    let right_alg = algebra_sum(&e.right, &f.right);
    let (de, df) = (e.dim(), f.dim());
    let pad_first = |m: &RationalMatrix| block_diag(m, &RationalMatrix::zeros(df, df));
    let pad_second = |m: &RationalMatrix| block_diag(&RationalMatrix::zeros(de, de), m);
    let left = e
        .left_action
        .iter()
        .map(pad_first)
        .chain(f.left_action.iter().map(pad_second))
        .collect();
    let right = e
        .right_action
        .iter()
        .map(pad_first)
        .chain(f.right_action.iter().map(pad_second))
        .collect();
    let labels = e.labels.iter().chain(&f.labels).cloned().collect();
    Arc::new(
        Bimodule::new(
            format!("{}⊞{}", e.name, f.name),
            &left_alg,
            &right_alg,
            labels,
            left,
            right,
        )
        .expect("block sum of bimodules"),
    )
}

/// Restriction of scalars along algebra homomorphisms `left_hom: A' → A`, `right_hom: B' → B`.
///
/// The homomorphism property of the maps is not assumed; the axioms of the
/// result are re-verified.
pub fn restrict(
    e: &Bimodule,
    new_left: &AlgebraRef,
    left_hom: &LinearMap,
    new_right: &AlgebraRef,
    right_hom: &LinearMap,
) -> Result<BimoduleRef, BimoduleError> {
    if left_hom.source_dim() != new_left.dim() || left_hom.target_dim() != e.left.dim() {
        return Err(BimoduleError::Shape("left homomorphism dimensions".into()));
    }
    if right_hom.source_dim() != new_right.dim() || right_hom.target_dim() != e.right.dim() {
        return Err(BimoduleError::Shape("right homomorphism dimensions".into()));
    }
    let pull = |hom: &LinearMap, mats: &[RationalMatrix], n: usize| -> Vec<RationalMatrix> {
        (0..n)
            .map(|p| StructureAlgebra::combine(&hom.apply(&SparseVec::unit(p)), mats))
            .collect()
    };
    let left = pull(left_hom, &e.left_action, new_left.dim());
    let right = pull(right_hom, &e.right_action, new_right.dim());
    Ok(Arc::new(Bimodule::new(
        e.name.clone(),
        new_left,
        new_right,
        e.labels.clone(),
        left,
        right,
    )?))
}

/// The left ideal `A·x` as an `A`-`ℂ` bimodule, in the RREF basis of the ideal.
pub fn left_ideal_module(a: &AlgebraRef, scalars: &AlgebraRef, x: &SparseVec) -> BimoduleRef {
    let gens: Vec<SparseVec> = (0..a.dim()).map(|p| a.mul(&SparseVec::unit(p), x)).collect();
    let ideal = Subspace::span(a.dim(), &gens);
    let act = |p: usize| -> RationalMatrix {
        let cols: Vec<SparseVec> = ideal
            .basis_vectors()
            .iter()
            .map(|v| {
                ideal
                    .coordinates(&a.mul(&SparseVec::unit(p), v))
                    .expect("left ideal is closed under left multiplication")
            })
            .collect();
        RationalMatrix::from_columns(ideal.dim(), &cols)
    };
    let left = (0..a.dim()).map(act).collect();
    let labels = (0..ideal.dim()).map(|k| format!("Ax{k}")).collect();
    let d = ideal.dim();
    Arc::new(
        Bimodule::new(
            format!("{}·x", a.name()),
            a,
            scalars,
            labels,
            left,
            scalar_actions(scalars, d),
        )
        .expect("left ideal module"),
    )
}

/// The right ideal `y·A` as a `ℂ`-`A` bimodule.
pub fn right_ideal_module(a: &AlgebraRef, scalars: &AlgebraRef, y: &SparseVec) -> BimoduleRef {
    let gens: Vec<SparseVec> = (0..a.dim()).map(|p| a.mul(y, &SparseVec::unit(p))).collect();
    let ideal = Subspace::span(a.dim(), &gens);
    let act = |p: usize| -> RationalMatrix {
        let cols: Vec<SparseVec> = ideal
            .basis_vectors()
            .iter()
            .map(|v| {
                ideal
                    .coordinates(&a.mul(v, &SparseVec::unit(p)))
                    .expect("right ideal is closed under right multiplication")
            })
            .collect();
        RationalMatrix::from_columns(ideal.dim(), &cols)
    };
    let right = (0..a.dim()).map(act).collect();
    let labels = (0..ideal.dim()).map(|k| format!("yA{k}")).collect();
    let d = ideal.dim();
    Arc::new(
        Bimodule::new(
            format!("y·{}", a.name()),
            scalars,
            a,
            labels,
            scalar_actions(scalars, d),
            right,
        )
        .expect("right ideal module"),
    )
}

/// A seeded pseudo-random `A`-bimodule of dimension at most `max_dim`.
///
/// Shape: `(A·x) ⊗ (y·A) ⊕ zero(k)` for random sparse `x, y` with small
/// integer coefficients and `k ∈ {1, 2}`. The zero summand makes the module
/// non-induced, so the induced completion has real work to do. Generators
/// are redrawn (deterministically) until the dimension fits.
pub fn random_bimodule(a: &AlgebraRef, seed: u64, max_dim: usize) -> BimoduleRef {
    let scalars = crate::structures::scalars();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let draw = |rng: &mut ChaCha8Rng| -> SparseVec {
        let terms = rng.gen_range(1..=2usize);
        SparseVec::from_pairs((0..terms).map(|_| {
            let mut c = rng.gen_range(-3i64..=3);
            if c == 0 {
                c = 1;
            }
            (rng.gen_range(0..a.dim()), Rational::from_integer(c))
        }))
    };
    for _ in 0..256 {
        let x = draw(&mut rng);
        let y = draw(&mut rng);
        let k = rng.gen_range(1..=2usize);
        let l = left_ideal_module(a, &scalars, &x);
        let r = right_ideal_module(a, &scalars, &y);
        let d = l.dim() * r.dim() + k;
        if d > max_dim || l.dim() == 0 || r.dim() == 0 {
            continue;
        }
        let t = super::tensor(&l, &r);
        let z = zero_action_module(a, a, k);
        return module_sum(&t, &z)
            .expect("same algebras")
            .as_ref()
            .clone()
            .with_name(format!("random(seed={seed})"))
            .into();
    }
    zero_action_module(a, a, 1.min(max_dim))
}

pub(crate) fn block_diag(a: &RationalMatrix, b: &RationalMatrix) -> RationalMatrix {
    let (ra, ca) = (a.rows(), a.cols());
    let triplets = a
        .triplets()
        .map(|(r, c, v)| (r, c, v.clone()))
        .chain(b.triplets().map(|(r, c, v)| (ra + r, ca + c, v.clone())));
    RationalMatrix::from_triplets(ra + b.rows(), ca + b.cols(), triplets)
}
