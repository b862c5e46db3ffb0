use serde::{Deserialize, Serialize};

use super::{FiniteGroup, StructureError};

/// An element of B(I,G): a triple `(i, g, j)` with 0-based `i, j`, or the zero ø.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BrandtElement {
    Triple(usize, usize, usize),
    Zero,
}

/// The Brandt semigroup over a finite group with index set `{1..n}`.
///
/// Elements are numbered lexicographically by `(i, g, j)`; ø comes last.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BrandtSemigroup {
    index_size: usize,
    group: FiniteGroup,
}

pub fn brandt(index_size: usize, group: &FiniteGroup) -> Result<BrandtSemigroup, StructureError> {
    if index_size == 0 {
        return Err(StructureError::EmptyIndexSet);
    }
    Ok(BrandtSemigroup {
        index_size,
        group: group.clone(),
    })
}

impl BrandtSemigroup {
    pub fn index_size(&self) -> usize {
        self.index_size
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    /// |T| = |I|²·|G|.
    pub fn triple_count(&self) -> usize {
        self.index_size * self.index_size * self.group.order()
    }

    /// |S| = |T| + 1.
    pub fn len(&self) -> usize {
        self.triple_count() + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn zero_index(&self) -> usize {
        self.triple_count()
    }

    pub fn index_of(&self, e: BrandtElement) -> usize {
        match e {
            BrandtElement::Triple(i, g, j) => triple_index(self.index_size, self.group.order(), i, g, j),
            BrandtElement::Zero => self.zero_index(),
        }
    }

    pub fn element(&self, idx: usize) -> BrandtElement {
        if idx == self.zero_index() {
            return BrandtElement::Zero;
        }
        let (i, g, j) = triple_of(self.index_size, self.group.order(), idx);
        BrandtElement::Triple(i, g, j)
    }

    pub fn mul(&self, a: BrandtElement, b: BrandtElement) -> BrandtElement {
        match (a, b) {
            (BrandtElement::Triple(i, g, j), BrandtElement::Triple(i2, h, j2)) if j == i2 => {
                BrandtElement::Triple(i, self.group.mul(g, h), j2)
            }
            _ => BrandtElement::Zero,
        }
    }

    pub fn mul_index(&self, a: usize, b: usize) -> usize {
        self.index_of(self.mul(self.element(a), self.element(b)))
    }

    /// Full multiplication table on element indices.
    pub fn table(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        (0..n).map(|a| (0..n).map(|b| self.mul_index(a, b)).collect()).collect()
    }

    pub fn label(&self, idx: usize) -> String {
        match self.element(idx) {
            BrandtElement::Triple(i, g, j) => triple_label(i, g, j),
            BrandtElement::Zero => "ø".to_string(),
        }
    }
}

pub(crate) fn triple_index(n: usize, order: usize, i: usize, g: usize, j: usize) -> usize {
    (i * order + g) * n + j
}

pub(crate) fn triple_of(n: usize, order: usize, idx: usize) -> (usize, usize, usize) {
    let j = idx % n;
    let rest = idx / n;
    (rest / order, rest % order, j)
}

/// 1-based display label for the triple `(i, g, j)`.
pub(crate) fn triple_label(i: usize, g: usize, j: usize) -> String {
    format!("({},g{},{})", i + 1, g, j + 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structures::cyclic_group;

    #[test]
    fn counting_and_rule() {
        let c3 = cyclic_group(3).unwrap();
        let s = brandt(2, &c3).unwrap();
        assert_eq!(s.len(), 13);
        // (1,g,2)(1,h,2) = ø
        assert_eq!(
            s.mul(BrandtElement::Triple(0, 1, 1), BrandtElement::Triple(0, 2, 1)),
            BrandtElement::Zero
        );
        let s1 = brandt(1, &c3).unwrap();
        assert_eq!(
            s1.mul(BrandtElement::Triple(0, 1, 0), BrandtElement::Triple(0, 2, 0)),
            BrandtElement::Triple(0, 0, 0)
        );
        assert_eq!(brandt(0, &c3), Err(StructureError::EmptyIndexSet));
    }

    #[test]
    fn zero_absorbs_and_table_is_associative() {
        let s = brandt(2, &cyclic_group(2).unwrap()).unwrap();
        let z = s.zero_index();
        let t = s.table();
        for a in 0..s.len() {
            assert_eq!(t[a][z], z);
            assert_eq!(t[z][a], z);
            for b in 0..s.len() {
                for c in 0..s.len() {
                    assert_eq!(t[t[a][b]][c], t[a][t[b][c]]);
                }
            }
        }
    }

    #[test]
    fn index_roundtrip() {
        let s = brandt(3, &cyclic_group(2).unwrap()).unwrap();
        for idx in 0..s.len() {
            assert_eq!(s.index_of(s.element(idx)), idx);
        }
        assert_eq!(s.label(s.zero_index()), "ø");
        assert_eq!(s.label(s.index_of(BrandtElement::Triple(0, 1, 2))), "(1,g1,3)");
    }
}
