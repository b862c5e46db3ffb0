use std::sync::Arc;

use serde::Serialize;

use super::{split_sequence, MoritaError};
use crate::bimodules::{
    balanced_tensor, block_sum, column_module, is_induced, regular_bimodule, restrict, row_module, BalancedTensor,
    Bimodule, BimoduleMap, BimoduleRef, Side,
};
use crate::exactla::{l1_operator_norm, LinearMap, Rational, RationalMatrix, SparseVec};
use crate::structures::{
    contracted_brandt_algebra, matrix_algebra, same_algebra, scalars, semigroup_algebra, AlgebraRef, FiniteGroup,
};

/// Data for the criterion "P ⊗_A Q ≅ B and Q ⊗_B P ≅ A with P, Q two-sided induced".
///
/// `p` is a B-A bimodule, `q` an A-B bimodule.
#[derive(Clone, Debug)]
pub struct MoritaWitness {
    pub name: String,
    pub algebra_a: AlgebraRef,
    pub algebra_b: AlgebraRef,
    pub p: BimoduleRef,
    pub q: BimoduleRef,
    pub iso_pq: BimoduleMap,
    pub iso_qp: BimoduleMap,
    /// Free-form remark carried into reports.
    pub note: Option<String>,
}

impl MoritaWitness {
    /// The same equivalence read in the other direction.
    pub fn swapped(&self) -> MoritaWitness {
        MoritaWitness {
            name: format!("{} (swapped)", self.name),
            algebra_a: self.algebra_b.clone(),
            algebra_b: self.algebra_a.clone(),
            p: self.q.clone(),
            q: self.p.clone(),
            iso_pq: self.iso_qp.clone(),
            iso_qp: self.iso_pq.clone(),
            note: self.note.clone(),
        }
    }

    /// Replaces `iso_pq` by the zero map.
    pub fn with_zero_iso_pq(&self) -> MoritaWitness {
        let src = self.iso_pq.source();
        let tgt = self.iso_pq.target();
        let zero = LinearMap::zero(src.dim(), tgt.dim());
        let mut out = self.clone();
        out.iso_pq = BimoduleMap::new(src, tgt, zero).expect("the zero map intertwines");
        out
    }

    /// Overwrites one entry of an action matrix of `p`.
    pub fn with_corrupted_p(&self, side: Side, basis: usize, row: usize, col: usize, value: Rational) -> MoritaWitness {
        let mut out = self.clone();
        out.p = Arc::new(self.p.with_corrupted_entry(side, basis, row, col, value));
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConditionReport {
    pub name: &'static str,
    pub passed: bool,
    pub detail: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessReport {
    pub witness: String,
    pub dim_a: usize,
    pub dim_b: usize,
    pub dim_p: usize,
    pub dim_q: usize,
    pub dim_p_tensor_q: Option<usize>,
    pub dim_q_tensor_p: Option<usize>,
    pub rank_iso_pq: usize,
    pub rank_iso_qp: usize,
    pub norm_iso_pq: Rational,
    pub norm_iso_pq_inverse: Option<Rational>,
    pub norm_iso_qp: Rational,
    pub norm_iso_qp_inverse: Option<Rational>,
    pub conditions: Vec<ConditionReport>,
    pub note: Option<String>,
}

impl WitnessReport {
    pub fn passed(&self) -> bool {
        self.conditions.iter().all(|c| c.passed)
    }

    pub fn condition(&self, name: &str) -> Option<&ConditionReport> {
        self.conditions.iter().find(|c| c.name == name)
    }

    pub fn first_failure(&self) -> Option<&ConditionReport> {
        self.conditions.iter().find(|c| !c.passed)
    }
}

fn induced_condition(name: &'static str, m: &BimoduleRef, left: &AlgebraRef, right: &AlgebraRef) -> ConditionReport {
    let fail = |detail: String| ConditionReport {
        name,
        passed: false,
        detail: Some(detail),
    };
    if !same_algebra(m.left_algebra(), left) || !same_algebra(m.right_algebra(), right) {
        return fail(format!("{} is over the wrong algebras", m.name()));
    }
    if let Err(e) = m.check_axioms() {
        return fail(format!("bimodule axioms: {e}"));
    }
    match is_induced(m) {
        Ok(s) if s.two_sided => ConditionReport {
            name,
            passed: true,
            detail: None,
        },
        Ok(s) => fail(format!("left induced {}, right induced {}", s.left, s.right)),
        Err(e) => fail(e.to_string()),
    }
}

fn same_actions(a: &Bimodule, b: &Bimodule) -> bool {
    a.dim() == b.dim() && a.left_action() == b.left_action() && a.right_action() == b.right_action()
}

fn iso_condition(
    name: &'static str,
    iso: &BimoduleMap,
    x: &BimoduleRef,
    y: &BimoduleRef,
    over: &AlgebraRef,
    target_alg: &AlgebraRef,
) -> (ConditionReport, Option<usize>) {
    let fail = |detail: String, d: Option<usize>| {
        (
            ConditionReport {
                name,
                passed: false,
                detail: Some(detail),
            },
            d,
        )
    };
    let bt = match balanced_tensor(x, y, over) {
        Ok(bt) => bt,
        Err(e) => return fail(format!("balanced tensor: {e}"), None),
    };
    let d = Some(bt.dim());
    if !same_actions(iso.source(), &bt.module) {
        return fail("source is not the balanced tensor product".into(), d);
    }
    let target = regular_bimodule(target_alg);
    if !same_actions(iso.target(), &target) {
        return fail("target is not the regular bimodule".into(), d);
    }
    if let Err(e) = BimoduleMap::new(&bt.module, &target, iso.map().clone()) {
        return fail(e.to_string(), d);
    }
    if !iso.is_bijective() {
        return fail(
            format!(
                "not bijective: rank {} between dimensions {} and {}",
                iso.map().rank(),
                iso.map().source_dim(),
                iso.map().target_dim()
            ),
            d,
        );
    }
    (
        ConditionReport {
            name,
            passed: true,
            detail: None,
        },
        d,
    )
}

/// Re-checks all four conditions from scratch.
pub fn verify_witness(w: &MoritaWitness) -> WitnessReport {
    let (a, b) = (&w.algebra_a, &w.algebra_b);
    let ((cp, cq), ((cpq, dpq), (cqp, dqp))) = rayon::join(
        || {
            rayon::join(
                || induced_condition("p_induced", &w.p, b, a),
                || induced_condition("q_induced", &w.q, a, b),
            )
        },
        || {
            rayon::join(
                || iso_condition("iso_pq", &w.iso_pq, &w.p, &w.q, a, b),
                || iso_condition("iso_qp", &w.iso_qp, &w.q, &w.p, b, a),
            )
        },
    );
    let inv_norm = |m: &BimoduleMap| m.map().inverse().map(|i| l1_operator_norm(&i));
    WitnessReport {
        witness: w.name.clone(),
        dim_a: a.dim(),
        dim_b: b.dim(),
        dim_p: w.p.dim(),
        dim_q: w.q.dim(),
        dim_p_tensor_q: dpq,
        dim_q_tensor_p: dqp,
        rank_iso_pq: w.iso_pq.map().rank(),
        rank_iso_qp: w.iso_qp.map().rank(),
        norm_iso_pq: w.iso_pq.norm(),
        norm_iso_pq_inverse: inv_norm(&w.iso_pq),
        norm_iso_qp: w.iso_qp.norm(),
        norm_iso_qp_inverse: inv_norm(&w.iso_qp),
        conditions: vec![cp, cq, cpq, cqp],
        note: w.note.clone(),
    }
}

fn certified(w: MoritaWitness) -> Result<MoritaWitness, MoritaError> {
    let report = verify_witness(&w);
    match report.first_failure() {
        None => Ok(w),
        Some(c) => Err(MoritaError::VerificationFailed(format!(
            "{}: {} ({})",
            w.name,
            c.name,
            c.detail.as_deref().unwrap_or("")
        ))),
    }
}

/// Descends `x_a ⊗ y_b ↦ image(a, b)` to `X ⊗_over Y` and wraps it as a map into `target`.
fn pairing(
    x: &BimoduleRef,
    y: &BimoduleRef,
    over: &AlgebraRef,
    target: &BimoduleRef,
    image: impl Fn(usize, usize) -> SparseVec,
) -> Result<(BalancedTensor, BimoduleMap), MoritaError> {
    let bt = balanced_tensor(x, y, over)?;
    let cols: Vec<SparseVec> = (0..x.dim())
        .flat_map(|a| (0..y.dim()).map(move |b| (a, b)))
        .map(|(a, b)| image(a, b))
        .collect();
    let full = LinearMap::new(RationalMatrix::from_columns(target.dim(), &cols));
    let map = bt.descend(&full)?;
    let iso = BimoduleMap::new(&bt.module, target, map)?;
    Ok((bt, iso))
}

/// `P = _ℂ ℓ¹(I)_{M_I}`, `Q = _{M_I} ℓ¹(I)_ℂ` witnessing `M_I ≈ ℂ`, with
/// `A = M_I` and `B = ℂ`.
pub fn witness_matrix_vs_scalars(index_size: usize) -> Result<MoritaWitness, MoritaError> {
    let n = index_size;
    let c = scalars();
    let m = matrix_algebra(n)?;
    let p = row_module(&c, &m, n);
    let q = column_module(&m, &c, n);
    // ν(a ⊗ b) = Σ_i a(i) b(i)
    let (_, iso_pq) = pairing(&p, &q, &m, &regular_bimodule(&c), |i, j| {
        if i == j {
            SparseVec::unit(0)
        } else {
            SparseVec::new()
        }
    })?;
    // δ_i ⊗ δ_j ↦ δ_(i,j)
    let (_, iso_qp) = pairing(&q, &p, &c, &regular_bimodule(&m), |i, j| SparseVec::unit(i * n + j))?;
    certified(MoritaWitness {
        name: format!("M_{n} ~ C"),
        algebra_a: m,
        algebra_b: c,
        p,
        q,
        iso_pq,
        iso_qp,
        note: None,
    })
}

/// Index of `(r, g, c)` in the rectangular band `rows × G × cols`.
fn rect_index(order: usize, cols: usize, r: usize, g: usize, c: usize) -> usize {
    (r * order + g) * cols + c
}

fn rect_of(order: usize, cols: usize, idx: usize) -> (usize, usize, usize) {
    let c = idx % cols;
    let rest = idx / cols;
    (rest / order, rest % order, c)
}

/// `span(rows × G × cols)` with convolution actions of the contracted
/// algebras on `rows × G × rows` (left) and `cols × G × cols` (right).
fn rectangular_module(
    left: &AlgebraRef,
    right: &AlgebraRef,
    rows: usize,
    cols: usize,
    g: &FiniteGroup,
) -> Result<BimoduleRef, MoritaError> {
    let o = g.order();
    let dim = rows * o * cols;
    let left_action = (0..rows * o * rows)
        .map(|b| {
            let (r1, h, r2) = rect_of(o, rows, b);
            let trips = (0..dim).filter_map(|k| {
                let (r, x, c) = rect_of(o, cols, k);
                (r == r2).then(|| (rect_index(o, cols, r1, g.mul(h, x), c), k, Rational::one()))
            });
            RationalMatrix::from_triplets(dim, dim, trips)
        })
        .collect();
    let right_action = (0..cols * o * cols)
        .map(|a| {
            let (c1, h, c2) = rect_of(o, cols, a);
            let trips = (0..dim).filter_map(|k| {
                let (r, x, c) = rect_of(o, cols, k);
                (c == c1).then(|| (rect_index(o, cols, r, g.mul(x, h), c2), k, Rational::one()))
            });
            RationalMatrix::from_triplets(dim, dim, trips)
        })
        .collect();
    let labels = (0..dim)
        .map(|k| {
            let (r, x, c) = rect_of(o, cols, k);
            format!("({},g{},{})", r + 1, x, c + 1)
        })
        .collect();
    Ok(Arc::new(Bimodule::new(
        format!("band({rows}x{cols},{})", g.name()),
        left,
        right,
        labels,
        left_action,
        right_action,
    )?))
}

/// `(r, g, m) ⊗ (m', h, c) ↦ [m = m'] (r, gh, c)` as an index into `rows × G × cols`.
fn convolve(g: &FiniteGroup, mid: usize, cols: usize, x: usize, y: usize) -> Option<usize> {
    let o = g.order();
    let (r, a, m) = rect_of(o, mid, x);
    let (m2, b, c) = rect_of(o, cols, y);
    (m == m2).then(|| rect_index(o, cols, r, g.mul(a, b), c))
}

const CONSTRUCTED_NOTE: &str =
    "explicitly constructed witness; a failure would falsify the construction, not the theorem";

/// Witness between the contracted algebras `A = ℓ¹(T_I)` and `B = ℓ¹(T_J)`,
/// with `P = span(J×G×I)` and `Q = span(I×G×J)`.
pub fn witness_brandt_contracted(i_size: usize, j_size: usize, g: &FiniteGroup) -> Result<MoritaWitness, MoritaError> {
    let a = contracted_brandt_algebra(i_size, g)?;
    let b = contracted_brandt_algebra(j_size, g)?;
    let p = rectangular_module(&b, &a, j_size, i_size, g)?;
    let q = rectangular_module(&a, &b, i_size, j_size, g)?;
    let (_, iso_pq) = pairing(&p, &q, &a, &regular_bimodule(&b), |x, y| {
        convolve(g, i_size, j_size, x, y).map_or_else(SparseVec::new, SparseVec::unit)
    })?;
    let (_, iso_qp) = pairing(&q, &p, &b, &regular_bimodule(&a), |x, y| {
        convolve(g, j_size, i_size, x, y).map_or_else(SparseVec::new, SparseVec::unit)
    })?;
    certified(MoritaWitness {
        name: format!("l1(T({i_size},{0})) ~ l1(T({j_size},{0}))", g.name()),
        algebra_a: a,
        algebra_b: b,
        p,
        q,
        iso_pq,
        iso_qp,
        note: Some(CONSTRUCTED_NOTE.into()),
    })
}

/// Witness between `ℓ¹(B(I,G))` and `ℓ¹(B(J,G))` themselves.
///
/// The contracted witness is extended by one basis vector ⋆ on which only
/// the ℂ summands act, and all actions are pulled back along θ. The
/// pairings are `θ⁻¹ ∘ (pairing ⊕ id)`: band⊗band goes through the
/// contracted pairing, ⋆⊗⋆ ↦ δ_ø, cross terms vanish.
pub fn witness_brandt_full(i_size: usize, j_size: usize, g: &FiniteGroup) -> Result<MoritaWitness, MoritaError> {
    let split_i = split_sequence(i_size, g)?;
    let split_j = split_sequence(j_size, g)?;
    let a = semigroup_algebra(&split_i.semigroup);
    let b = semigroup_algebra(&split_j.semigroup);
    let contracted = witness_brandt_contracted(i_size, j_size, g)?;
    let c = scalars();
    let star = regular_bimodule(&c);
    let lift = |m: &BimoduleRef, left: &AlgebraRef, lh: &LinearMap, right: &AlgebraRef, rh: &LinearMap, name: &str| {
        let mut labels = m.labels().to_vec();
        labels.push("⋆".into());
        let summed = block_sum(m, &star);
        restrict(&summed, left, lh, right, rh).map(|r| {
            Arc::new(
                Bimodule::new(
                    name.to_string(),
                    left,
                    right,
                    labels,
                    r.left_action().to_vec(),
                    r.right_action().to_vec(),
                )
                .expect("relabelled module"),
            )
        })
    };
    let p = lift(&contracted.p, &b, &split_j.theta, &a, &split_i.theta, "P")?;
    let q = lift(&contracted.q, &a, &split_i.theta, &b, &split_j.theta, "Q")?;

    let (_, iso_pq) = pairing(
        &p,
        &q,
        &a,
        &regular_bimodule(&b),
        transported(g, &split_j.theta_inv, i_size, j_size, p.dim(), q.dim()),
    )?;
    let (_, iso_qp) = pairing(
        &q,
        &p,
        &b,
        &regular_bimodule(&a),
        transported(g, &split_i.theta_inv, j_size, i_size, q.dim(), p.dim()),
    )?;
    certified(MoritaWitness {
        name: format!("l1(B({i_size},{0})) ~ l1(B({j_size},{0}))", g.name()),
        algebra_a: a,
        algebra_b: b,
        p,
        q,
        iso_pq,
        iso_qp,
        note: Some(CONSTRUCTED_NOTE.into()),
    })
}

fn transported<'a>(
    g: &'a FiniteGroup,
    theta_inv: &'a LinearMap,
    mid: usize,
    cols: usize,
    dx: usize,
    dy: usize,
) -> impl Fn(usize, usize) -> SparseVec + 'a {
    let nt = theta_inv.source_dim() - 1;
    move |x, y| {
        let in_sum = match (x == dx - 1, y == dy - 1) {
            (true, true) => SparseVec::unit(nt),
            (false, false) => convolve(g, mid, cols, x, y).map_or_else(SparseVec::new, SparseVec::unit),
            _ => SparseVec::new(),
        };
        theta_inv.apply(&in_sum)
    }
}

/// Outcome of composing the `(I,J)` and `(J,K)` witnesses.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Composition {
    pub composed_dim: usize,
    pub direct_dim: usize,
    pub bijective: bool,
}

/// Compares `P_JK ⊗ P_IJ` (balanced over the `J` algebra) with the direct
/// `P_IK` along the convolution map; `full` selects the unextended or the
/// ⋆-extended witnesses.
pub fn comparison_map(i: usize, j: usize, k: usize, g: &FiniteGroup, full: bool) -> Result<Composition, MoritaError> {
    let build = |x, y| {
        if full {
            witness_brandt_full(x, y, g)
        } else {
            witness_brandt_contracted(x, y, g)
        }
    };
    let (wij, wjk, wik) = (build(i, j)?, build(j, k)?, build(i, k)?);
    let (outer, inner, direct) = (&wjk.p, &wij.p, &wik.p);
    let (dxo, dyi) = (outer.dim(), inner.dim());
    let (_, map) = pairing(outer, inner, &wjk.algebra_a, direct, |x, y| {
        if full {
            match (x == dxo - 1, y == dyi - 1) {
                (true, true) => return SparseVec::unit(direct.dim() - 1),
                (false, false) => {}
                _ => return SparseVec::new(),
            }
        }
        convolve(g, j, i, x, y).map_or_else(SparseVec::new, SparseVec::unit)
    })?;
    Ok(Composition {
        composed_dim: map.source().dim(),
        direct_dim: direct.dim(),
        bijective: map.is_bijective(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structures::cyclic_group;

    #[test]
    fn matrix_witness_dimensions() {
        for n in 1..=3 {
            let w = witness_matrix_vs_scalars(n).unwrap();
            let r = verify_witness(&w);
            assert!(r.passed(), "{:?}", r.first_failure());
            assert_eq!(r.dim_p_tensor_q, Some(1));
            assert_eq!(r.dim_q_tensor_p, Some(n * n));
            assert_eq!(r.norm_iso_qp, Rational::one());
        }
    }

    #[test]
    fn contracted_witness_dimensions() {
        let c1 = cyclic_group(1).unwrap();
        let w = witness_brandt_contracted(1, 2, &c1).unwrap();
        assert_eq!(w.p.dim(), 2);
        assert_eq!(verify_witness(&w).dim_p_tensor_q, Some(4));
        let c2 = cyclic_group(2).unwrap();
        let w = witness_brandt_contracted(2, 3, &c2).unwrap();
        assert_eq!(verify_witness(&w).dim_p_tensor_q, Some(18));
    }

    #[test]
    fn full_witness_small() {
        let c1 = cyclic_group(1).unwrap();
        let w = witness_brandt_full(1, 1, &c1).unwrap();
        assert_eq!((w.algebra_a.dim(), w.algebra_b.dim()), (2, 2));
        let w = witness_brandt_full(1, 2, &c1).unwrap();
        assert_eq!((w.algebra_a.dim(), w.algebra_b.dim(), w.p.dim()), (2, 5, 3));
        assert!(verify_witness(&w.swapped()).passed());
    }

    #[test]
    fn injected_faults() {
        let w = witness_matrix_vs_scalars(2).unwrap();
        let r = verify_witness(&w.with_zero_iso_pq());
        assert!(!r.condition("iso_pq").unwrap().passed);
        assert!(r.condition("p_induced").unwrap().passed);
        assert!(r.condition("q_induced").unwrap().passed);
        assert!(r.condition("iso_qp").unwrap().passed);

        let bad = w.with_corrupted_p(Side::Right, 1, 0, 0, Rational::from_integer(5));
        let r = verify_witness(&bad);
        let c = r.condition("p_induced").unwrap();
        assert!(!c.passed);
        assert!(c.detail.as_deref().unwrap().contains("bimodule axioms"));
    }

    #[test]
    fn composition_matches_direct() {
        for g in [cyclic_group(1).unwrap(), cyclic_group(2).unwrap()] {
            for full in [false, true] {
                let c = comparison_map(1, 2, 2, &g, full).unwrap();
                assert_eq!(c.composed_dim, c.direct_dim);
                assert!(c.bijective);
            }
        }
    }
}
