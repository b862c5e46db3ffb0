use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::brandt::{triple_index, triple_label};
use super::{BrandtSemigroup, FiniteGroup, StructureError};
use crate::exactla::{solve, LinearMap, Rational, RationalMatrix, SparseVec};

/// Algebras above this dimension get a sampled associativity check unless strict.
pub const EXHAUSTIVE_ASSOCIATIVITY_LIMIT: usize = 200;
const SAMPLED_TRIPLES: usize = 20_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum AssociativityCheck {
    Exhaustive,
    Sampled(usize),
}

/// A finite-dimensional associative algebra given by structure constants.
#[derive(Clone)]
pub struct StructureAlgebra {
    name: String,
    labels: Vec<String>,
    // products[p * dim + q] = e_p · e_q
    products: Vec<SparseVec>,
    unit: Option<SparseVec>,
    checked: AssociativityCheck,
}

pub type AlgebraRef = Arc<StructureAlgebra>;

impl PartialEq for StructureAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.products == other.products
    }
}

impl Eq for StructureAlgebra {}

impl fmt::Debug for StructureAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "StructureAlgebra({}, dim {})", self.name, self.dim())
    }
}

/// Structural equality with a pointer fast path.
pub fn same_algebra(a: &AlgebraRef, b: &AlgebraRef) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl StructureAlgebra {
    /// Validates shape and associativity, and the unit if one is given.
    pub fn new(
        name: impl Into<String>,
        labels: Vec<String>,
        products: Vec<SparseVec>,
        unit: Option<SparseVec>,
        strict: bool,
    ) -> Result<Self, StructureError> {
        let dim = labels.len();
        if products.len() != dim * dim {
            return Err(StructureError::TableShape {
                got: products.len(),
                expected: dim * dim,
            });
        }
        for (k, v) in products.iter().enumerate() {
            if v.max_index().is_some_and(|m| m >= dim) {
                return Err(StructureError::ProductOutOfRange {
                    p: k / dim,
                    q: k % dim,
                    dim,
                });
            }
        }
        let mut alg = Self {
            name: name.into(),
            labels,
            products,
            unit: None,
            checked: AssociativityCheck::Exhaustive,
        };
        alg.checked = alg.check_associativity(strict)?;
        if let Some(u) = unit {
            alg.check_unit(&u)?;
            alg.unit = Some(u);
        }
        Ok(alg)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, p: usize) -> &str {
        &self.labels[p]
    }

    pub fn unit(&self) -> Option<&SparseVec> {
        self.unit.as_ref()
    }

    pub fn associativity_check(&self) -> AssociativityCheck {
        self.checked
    }

    /// `e_p · e_q`.
    pub fn basis_product(&self, p: usize, q: usize) -> &SparseVec {
        &self.products[p * self.dim() + q]
    }

    pub fn mul(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let mut acc = SparseVec::new();
        for (p, a) in x.iter() {
            for (q, b) in y.iter() {
                acc = acc.axpy(&(a * b), self.basis_product(p, q));
            }
        }
        acc
    }

    /// Matrix of `x ↦ e_p · x`.
    pub fn left_mult(&self, p: usize) -> RationalMatrix {
        let cols: Vec<SparseVec> = (0..self.dim()).map(|q| self.basis_product(p, q).clone()).collect();
        RationalMatrix::from_columns(self.dim(), &cols)
    }

    /// Matrix of `x ↦ x · e_p`.
    pub fn right_mult(&self, p: usize) -> RationalMatrix {
        let cols: Vec<SparseVec> = (0..self.dim()).map(|q| self.basis_product(q, p).clone()).collect();
        RationalMatrix::from_columns(self.dim(), &cols)
    }

    /// Linear combination `Σ c_k M_k` of per-basis matrices weighted by `x`.
    pub fn combine(x: &SparseVec, mats: &[RationalMatrix]) -> RationalMatrix {
        let (rows, cols) = mats.first().map_or((0, 0), |m| (m.rows(), m.cols()));
        let mut acc = RationalMatrix::zeros(rows, cols);
        for (k, c) in x.iter() {
            acc = acc.axpy(c, &mats[k]);
        }
        acc
    }

    fn triple_ok(&self, p: usize, q: usize, r: usize) -> bool {
        let left = self.mul(self.basis_product(p, q), &SparseVec::unit(r));
        let right = self.mul(&SparseVec::unit(p), self.basis_product(q, r));
        left == right
    }

    fn check_associativity(&self, strict: bool) -> Result<AssociativityCheck, StructureError> {
        let d = self.dim();
        if strict || d <= EXHAUSTIVE_ASSOCIATIVITY_LIMIT {
            let bad = (0..d).into_par_iter().find_map_first(|p| {
                for q in 0..d {
                    for r in 0..d {
                        if !self.triple_ok(p, q, r) {
                            return Some((p, q, r));
                        }
                    }
                }
                None
            });
            match bad {
                Some((p, q, r)) => Err(StructureError::NotAssociative(p, q, r)),
                None => Ok(AssociativityCheck::Exhaustive),
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(d as u64);
            for _ in 0..SAMPLED_TRIPLES {
                let (p, q, r) = (rng.gen_range(0..d), rng.gen_range(0..d), rng.gen_range(0..d));
                if !self.triple_ok(p, q, r) {
                    return Err(StructureError::NotAssociative(p, q, r));
                }
            }
            Ok(AssociativityCheck::Sampled(SAMPLED_TRIPLES))
        }
    }

    fn check_unit(&self, u: &SparseVec) -> Result<(), StructureError> {
        for p in 0..self.dim() {
            let e = SparseVec::unit(p);
            if self.mul(u, &e) != e || self.mul(&e, u) != e {
                return Err(StructureError::BadUnit(p));
            }
        }
        Ok(())
    }

    pub fn is_commutative(&self) -> bool {
        let d = self.dim();
        (0..d).all(|p| (0..p).all(|q| self.basis_product(p, q) == self.basis_product(q, p)))
    }

    pub fn element(self: &Arc<Self>, coeffs: SparseVec) -> AlgebraElement {
        AlgebraElement::new(self, coeffs)
    }

    pub fn delta(self: &Arc<Self>, p: usize) -> AlgebraElement {
        AlgebraElement::new(self, SparseVec::unit(p))
    }
}

/// An element of a structure algebra as a coefficient vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraElement {
    algebra: AlgebraRef,
    coeffs: SparseVec,
}

impl AlgebraElement {
    pub fn new(algebra: &AlgebraRef, coeffs: SparseVec) -> Self {
        assert!(
            coeffs.max_index().is_none_or(|m| m < algebra.dim()),
            "coefficient vector longer than algebra dimension"
        );
        Self {
            algebra: algebra.clone(),
            coeffs,
        }
    }

    pub fn algebra(&self) -> &AlgebraRef {
        &self.algebra
    }

    pub fn coeffs(&self) -> &SparseVec {
        &self.coeffs
    }

    pub fn mul(&self, other: &AlgebraElement) -> AlgebraElement {
        assert!(same_algebra(&self.algebra, &other.algebra));
        AlgebraElement::new(&self.algebra, self.algebra.mul(&self.coeffs, &other.coeffs))
    }

    pub fn add(&self, other: &AlgebraElement) -> AlgebraElement {
        AlgebraElement::new(&self.algebra, self.coeffs.add(&other.coeffs))
    }

    pub fn scale(&self, c: &Rational) -> AlgebraElement {
        AlgebraElement::new(&self.algebra, self.coeffs.scale(c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_zero()
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .map(|(p, c)| format!("{c}·δ{}", self.algebra.label(p)))
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

fn build(
    name: String,
    labels: Vec<String>,
    products: Vec<SparseVec>,
    unit: Option<SparseVec>,
) -> Result<AlgebraRef, StructureError> {
    StructureAlgebra::new(name, labels, products, unit, false).map(Arc::new)
}

/// The one-dimensional algebra ℂ (over the rationals).
pub fn scalars() -> AlgebraRef {
    build(
        "C".into(),
        vec!["1".into()],
        vec![SparseVec::unit(0)],
        Some(SparseVec::unit(0)),
    )
    .expect("scalars")
}

/// M_I: basis δ_(i,j) with δ_(i,p)δ_(q,j) = [p=q] δ_(i,j).
pub fn matrix_algebra(index_size: usize) -> Result<AlgebraRef, StructureError> {
    if index_size == 0 {
        return Err(StructureError::EmptyIndexSet);
    }
    let n = index_size;
    let labels = (0..n * n).map(|k| format!("({},{})", k / n + 1, k % n + 1)).collect();
    let mut products = Vec::with_capacity(n.pow(4));
    for a in 0..n * n {
        for b in 0..n * n {
            let (i, p) = (a / n, a % n);
            let (q, j) = (b / n, b % n);
            products.push(if p == q {
                SparseVec::unit(i * n + j)
            } else {
                SparseVec::new()
            });
        }
    }
    let unit = SparseVec::from_pairs((0..n).map(|i| (i * n + i, Rational::one())));
    build(format!("M_{n}"), labels, products, Some(unit))
}

/// ℓ¹(G): basis G with δ_g δ_h = δ_{gh}.
pub fn group_algebra(g: &FiniteGroup) -> AlgebraRef {
    let n = g.order();
    let labels = (0..n).map(|k| format!("g{k}")).collect();
    let products = (0..n * n).map(|k| SparseVec::unit(g.mul(k / n, k % n))).collect();
    build(
        format!("l1({})", g.name()),
        labels,
        products,
        Some(SparseVec::unit(g.identity())),
    )
    .expect("group algebra is associative")
}

/// ℓ¹(T) for T = I×G×I with products landing on ø identified with 0.
pub fn contracted_brandt_algebra(index_size: usize, g: &FiniteGroup) -> Result<AlgebraRef, StructureError> {
    if index_size == 0 {
        return Err(StructureError::EmptyIndexSet);
    }
    let (n, o) = (index_size, g.order());
    let dim = n * n * o;
    let labels: Vec<String> = (0..dim)
        .map(|k| {
            let (i, h, j) = super::brandt::triple_of(n, o, k);
            triple_label(i, h, j)
        })
        .collect();
    let mut products = Vec::with_capacity(dim * dim);
    for a in 0..dim {
        let (i, gg, k) = super::brandt::triple_of(n, o, a);
        for b in 0..dim {
            let (k2, h, j) = super::brandt::triple_of(n, o, b);
            products.push(if k == k2 {
                SparseVec::unit(triple_index(n, o, i, g.mul(gg, h), j))
            } else {
                SparseVec::new()
            });
        }
    }
    let unit = SparseVec::from_pairs((0..n).map(|i| (triple_index(n, o, i, g.identity(), i), Rational::one())));
    build(format!("l1(T({n},{}))", g.name()), labels, products, Some(unit))
}

/// ℓ¹(S) for the Brandt semigroup S, with δ_ø kept as a basis vector.
pub fn semigroup_algebra(s: &BrandtSemigroup) -> AlgebraRef {
    let n = s.len();
    let labels = (0..n).map(|k| s.label(k)).collect();
    let products = (0..n * n).map(|k| SparseVec::unit(s.mul_index(k / n, k % n))).collect();
    let alg = build(
        format!("l1(B({},{}))", s.index_size(), s.group().name()),
        labels,
        products,
        None,
    )
    .expect("semigroup algebra is associative");
    attach_found_unit(alg)
}

fn attach_found_unit(alg: AlgebraRef) -> AlgebraRef {
    match find_unit(&alg) {
        Some(u) => {
            let mut a = (*alg).clone();
            a.unit = Some(u.coeffs().clone());
            Arc::new(a)
        }
        None => alg,
    }
}

/// A ⊕ B with coordinatewise multiplication.
pub fn direct_sum(a: &AlgebraRef, b: &AlgebraRef) -> AlgebraRef {
    let (da, db) = (a.dim(), b.dim());
    let d = da + db;
    let labels = a
        .labels()
        .iter()
        .map(|l| format!("{l}⊕0"))
        .chain(b.labels().iter().map(|l| format!("0⊕{l}")))
        .collect();
    let mut products = vec![SparseVec::new(); d * d];
    for p in 0..da {
        for q in 0..da {
            products[p * d + q] = a.basis_product(p, q).clone();
        }
    }
    for p in 0..db {
        for q in 0..db {
            products[(da + p) * d + da + q] = b.basis_product(p, q).remap(|k| k + da);
        }
    }
    let unit = match (a.unit(), b.unit()) {
        (Some(ua), Some(ub)) => Some(ua.add(&ub.remap(|k| k + da))),
        _ => None,
    };
    build(format!("{}+{}", a.name(), b.name()), labels, products, unit).expect("direct sum")
}

/// A ⊗ B with (x⊗y)(x'⊗y') = xx'⊗yy' in the lexicographic basis.
pub fn algebra_tensor(a: &AlgebraRef, b: &AlgebraRef) -> AlgebraRef {
    let (da, db) = (a.dim(), b.dim());
    let d = da * db;
    let labels = (0..d)
        .map(|k| format!("{}⊗{}", a.label(k / db), b.label(k % db)))
        .collect();
    let mut products = Vec::with_capacity(d * d);
    for s in 0..d {
        for t in 0..d {
            let x = a.basis_product(s / db, t / db);
            let y = b.basis_product(s % db, t % db);
            products.push(x.kron(y, db));
        }
    }
    let unit = match (a.unit(), b.unit()) {
        (Some(ua), Some(ub)) => Some(ua.kron(ub, db)),
        _ => None,
    };
    build(format!("{}⊗{}", a.name(), b.name()), labels, products, unit).expect("tensor algebra")
}

/// Solves u·e_p = e_p·u = e_p for all p and verifies the solution by substitution.
pub fn find_unit(a: &AlgebraRef) -> Option<AlgebraElement> {
    let d = a.dim();
    let mut triplets = Vec::new();
    let mut target = Vec::new();
    // Row layout: (side, p, s) -> side * d² + p * d + s.
    for p in 0..d {
        for k in 0..d {
            for (s, c) in a.basis_product(k, p).iter() {
                triplets.push((p * d + s, k, c.clone()));
            }
            for (s, c) in a.basis_product(p, k).iter() {
                triplets.push((d * d + p * d + s, k, c.clone()));
            }
        }
        target.push((p * d + p, Rational::one()));
        target.push((d * d + p * d + p, Rational::one()));
    }
    let system = LinearMap::new(RationalMatrix::from_triplets(2 * d * d, d, triplets));
    let u = solve(&system, &SparseVec::from_pairs(target))?;
    a.check_unit(&u).ok()?;
    Some(AlgebraElement::new(a, u))
}

/// Basis bijection δ_(i,j)⊗δ_g ⟼ δ_(i,g,j) from M_I ⊗ ℓ¹(G) onto ℓ¹(T).
pub fn matrix_group_to_contracted(index_size: usize, g: &FiniteGroup) -> LinearMap {
    let (n, o) = (index_size, g.order());
    let images: Vec<SparseVec> = (0..n * n * o)
        .map(|k| {
            let (ij, h) = (k / o, k % o);
            SparseVec::unit(triple_index(n, o, ij / n, h, ij % n))
        })
        .collect();
    LinearMap::from_images(n * n * o, &images)
}

/// True when `f: A → B` satisfies f(e_p e_q) = f(e_p) f(e_q) on all basis pairs.
pub fn is_multiplicative(f: &LinearMap, a: &StructureAlgebra, b: &StructureAlgebra) -> bool {
    if f.source_dim() != a.dim() || f.target_dim() != b.dim() {
        return false;
    }
    let images: Vec<SparseVec> = (0..a.dim()).map(|p| f.apply(&SparseVec::unit(p))).collect();
    (0..a.dim())
        .into_par_iter()
        .all(|p| (0..a.dim()).all(|q| f.apply(a.basis_product(p, q)) == b.mul(&images[p], &images[q])))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::l1_operator_norm;
    use crate::structures::{brandt, cyclic_group, symmetric_group, BrandtElement};

    fn q(n: i64) -> Rational {
        Rational::from_integer(n)
    }

    #[test]
    fn matrix_units() {
        let m3 = matrix_algebra(3).unwrap();
        let idx = |i: usize, j: usize| (i - 1) * 3 + (j - 1);
        assert_eq!(m3.basis_product(idx(1, 2), idx(2, 3)), &SparseVec::unit(idx(1, 3)));
        assert!(m3.basis_product(idx(1, 2), idx(1, 2)).is_zero());
        let m2 = matrix_algebra(2).unwrap();
        for a in 0..4 {
            for b in 0..4 {
                let expect = if a % 2 == b / 2 {
                    SparseVec::unit((a / 2) * 2 + b % 2)
                } else {
                    SparseVec::new()
                };
                assert_eq!(m2.basis_product(a, b), &expect);
            }
        }
        assert_eq!(
            find_unit(&m2).unwrap().coeffs(),
            &SparseVec::from_pairs([(0, q(1)), (3, q(1))])
        );
    }

    #[test]
    fn group_algebras() {
        let c1 = group_algebra(&cyclic_group(1).unwrap());
        assert_eq!(c1.dim(), 1);
        assert_eq!(c1.basis_product(0, 0), &SparseVec::unit(0));
        let c2 = group_algebra(&cyclic_group(2).unwrap());
        assert_eq!(c2.basis_product(1, 1), &SparseVec::unit(0));
        let s3 = group_algebra(&symmetric_group(3).unwrap());
        assert!(!s3.is_commutative());
    }

    #[test]
    fn contracted_rule() {
        let c2 = cyclic_group(2).unwrap();
        let t = contracted_brandt_algebra(2, &c2).unwrap();
        let ix = |i, g, j| triple_index(2, 2, i, g, j);
        assert_eq!(t.basis_product(ix(0, 1, 1), ix(1, 1, 0)), &SparseVec::unit(ix(0, 0, 0)));
        assert!(t.basis_product(ix(0, 1, 1), ix(0, 1, 1)).is_zero());
    }

    #[test]
    fn semigroup_algebra_keeps_zero() {
        let c2 = cyclic_group(2).unwrap();
        let s = brandt(2, &c2).unwrap();
        let a = semigroup_algebra(&s);
        assert_eq!(a.dim(), 9);
        let z = s.zero_index();
        let x = s.index_of(BrandtElement::Triple(0, 1, 1));
        let y = s.index_of(BrandtElement::Triple(0, 0, 1));
        assert_eq!(a.basis_product(x, y), &SparseVec::unit(z));
        assert_eq!(a.basis_product(z, z), &SparseVec::unit(z));
    }

    #[test]
    fn brandt_unit_formula() {
        let c1 = cyclic_group(1).unwrap();
        let s = brandt(2, &c1).unwrap();
        let a = semigroup_algebra(&s);
        let u = find_unit(&a).unwrap();
        let expect = SparseVec::from_pairs([
            (s.index_of(BrandtElement::Triple(0, 0, 0)), q(1)),
            (s.index_of(BrandtElement::Triple(1, 0, 1)), q(1)),
            (s.zero_index(), q(-1)),
        ]);
        assert_eq!(u.coeffs(), &expect);
        assert_eq!(a.unit(), Some(&expect));
    }

    #[test]
    fn zero_product_algebra_has_no_unit() {
        let z = Arc::new(
            StructureAlgebra::new(
                "Z",
                vec!["x".into(), "y".into()],
                vec![SparseVec::new(); 4],
                None,
                false,
            )
            .unwrap(),
        );
        assert!(find_unit(&z).is_none());
    }

    #[test]
    fn non_associative_table_is_rejected() {
        // e0·e0 = e1, everything else zero except e1·e0 = e0: (e0e0)e0 = e0, e0(e0e0) = 0.
        let mut products = vec![SparseVec::new(); 4];
        products[0] = SparseVec::unit(1);
        products[2] = SparseVec::unit(0);
        let err = StructureAlgebra::new("bad", vec!["a".into(), "b".into()], products, None, false).unwrap_err();
        assert_eq!(err, StructureError::NotAssociative(0, 0, 0));
    }

    #[test]
    fn sums_and_tensors() {
        let c1 = cyclic_group(1).unwrap();
        let t = contracted_brandt_algebra(2, &c1).unwrap();
        let ts = direct_sum(&t, &scalars());
        assert_eq!(ts.dim(), 5);
        let expect = SparseVec::from_pairs([(0, q(1)), (3, q(1)), (4, q(1))]);
        assert_eq!(find_unit(&ts).unwrap().coeffs(), &expect);
        // (a,0)(0,b) = 0
        assert!(ts.basis_product(1, 4).is_zero());

        let m2 = matrix_algebra(2).unwrap();
        let c2 = cyclic_group(2).unwrap();
        let tens = algebra_tensor(&m2, &group_algebra(&c2));
        assert_eq!(tens.dim(), 8);
        assert_eq!(tens.associativity_check(), AssociativityCheck::Exhaustive);
        let u = find_unit(&tens).unwrap();
        assert_eq!(Some(u.coeffs()), tens.unit());

        let c_tensor = algebra_tensor(&scalars(), &m2);
        assert_eq!(*c_tensor, *m2);
    }

    #[test]
    fn matrix_group_iso_is_isometric() {
        for (n, g) in [(2, cyclic_group(2).unwrap()), (3, symmetric_group(3).unwrap())] {
            let m = algebra_tensor(&matrix_algebra(n).unwrap(), &group_algebra(&g));
            let t = contracted_brandt_algebra(n, &g).unwrap();
            let f = matrix_group_to_contracted(n, &g);
            assert!(f.is_bijective());
            assert!(is_multiplicative(&f, &m, &t));
            let inv = f.inverse().unwrap();
            assert!(is_multiplicative(&inv, &t, &m));
            assert_eq!(l1_operator_norm(&f), q(1));
            assert_eq!(l1_operator_norm(&inv), q(1));
        }
    }
}
