//! Element subsets: principal one-sided ideals, annihilators and unit sets.

use fixedbitset::FixedBitSet;
use serde::{Serialize, Serializer};

use crate::error::Result;
use crate::ring::{Elem, FiniteRing, Side};

/// A set of elements of one ring, stored as a membership bit vector.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ElementSubset {
    bits: FixedBitSet,
}

impl ElementSubset {
    pub fn empty(order: usize) -> Self {
        ElementSubset { bits: FixedBitSet::with_capacity(order) }
    }

    pub fn full(order: usize) -> Self {
        let mut bits = FixedBitSet::with_capacity(order);
        bits.insert_range(..);
        ElementSubset { bits }
    }

    pub fn from_elements(order: usize, elems: impl IntoIterator<Item = Elem>) -> Self {
        let mut s = Self::empty(order);
        for e in elems {
            s.insert(e);
        }
        s
    }

    pub fn insert(&mut self, e: Elem) {
        self.bits.insert(e);
    }

    #[inline]
    pub fn contains(&self, e: Elem) -> bool {
        self.bits.contains(e)
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    pub fn iter(&self) -> impl Iterator<Item = Elem> + '_ {
        self.bits.ones()
    }

    pub fn to_vec(&self) -> Vec<Elem> {
        self.iter().collect()
    }

    pub fn union(&self, other: &Self) -> Self {
        let mut bits = self.bits.clone();
        bits.union_with(&other.bits);
        ElementSubset { bits }
    }

    pub fn intersection(&self, other: &Self) -> Self {
        let mut bits = self.bits.clone();
        bits.intersect_with(&other.bits);
        ElementSubset { bits }
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.bits.is_subset(&other.bits)
    }

    /// Closed under `+` and under multiplication by every ring element from `side`.
    pub fn is_ideal(&self, r: &FiniteRing, side: Side) -> bool {
        self.contains(r.zero())
            && self.iter().all(|x| {
                self.iter().all(|y| self.contains(r.add(x, y)))
                    && r.elements().all(|s| self.contains(r.act(side, s, x)))
            })
    }
}

impl Serialize for ElementSubset {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

/// `Ra` for the left side, `aR` for the right side.
pub fn principal(r: &FiniteRing, a: Elem, side: Side) -> Result<ElementSubset> {
    r.check_index(a)?;
    Ok(principal_unchecked(r, a, side))
}

pub(crate) fn principal_unchecked(r: &FiniteRing, a: Elem, side: Side) -> ElementSubset {
    ElementSubset::from_elements(r.order(), r.elements().map(|x| r.act(side, x, a)))
}

/// `{x : x·a = 0}` for the left side, `{x : a·x = 0}` for the right side.
pub fn annihilator(r: &FiniteRing, a: Elem, side: Side) -> Result<ElementSubset> {
    r.check_index(a)?;
    Ok(annihilator_unchecked(r, a, side))
}

pub(crate) fn annihilator_unchecked(r: &FiniteRing, a: Elem, side: Side) -> ElementSubset {
    ElementSubset::from_elements(
        r.order(),
        r.elements().filter(|&x| r.act(side, x, a) == r.zero()),
    )
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum UnitKind {
    Left,
    Right,
    TwoSided,
}

impl From<Side> for UnitKind {
    fn from(side: Side) -> Self {
        match side {
            Side::Left => UnitKind::Left,
            Side::Right => UnitKind::Right,
        }
    }
}

/// Left units `{u : ∃v, vu = 1}`, right units `{u : ∃v, uv = 1}`, or both.
pub fn units(r: &FiniteRing, kind: UnitKind) -> ElementSubset {
    let one = r.one();
    let left = || r.elements().filter(|&u| r.elements().any(|v| r.mul(v, u) == one));
    let right = || r.elements().filter(|&u| r.elements().any(|v| r.mul(u, v) == one));
    match kind {
        UnitKind::Left => ElementSubset::from_elements(r.order(), left()),
        UnitKind::Right => ElementSubset::from_elements(r.order(), right()),
        UnitKind::TwoSided => ElementSubset::from_elements(r.order(), left())
            .intersection(&ElementSubset::from_elements(r.order(), right())),
    }
}

/// All principal ideals (or annihilators) on one side, sorted and deduplicated.
pub fn principal_family(r: &FiniteRing, side: Side) -> Vec<ElementSubset> {
    canonical_family(r.elements().map(|a| principal_unchecked(r, a, side)))
}

pub fn annihilator_family(r: &FiniteRing, side: Side) -> Vec<ElementSubset> {
    canonical_family(r.elements().map(|a| annihilator_unchecked(r, a, side)))
}

fn canonical_family(sets: impl Iterator<Item = ElementSubset>) -> Vec<ElementSubset> {
    let mut v: Vec<_> = sets.collect();
    v.sort();
    v.dedup();
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spec::{construct, RingSpec};

    const E11: Elem = 0b100;
    const E12: Elem = 0b010;
    const E22: Elem = 0b001;

    fn t2f2() -> FiniteRing {
        construct(&RingSpec::triangular(RingSpec::zn(2), 2)).unwrap()
    }

    #[test]
    fn principal_ideals_in_z6() {
        let z6 = construct(&RingSpec::zn(6)).unwrap();
        assert_eq!(principal(&z6, 2, Side::Left).unwrap().to_vec(), vec![0, 2, 4]);
        assert_eq!(principal(&z6, 1, Side::Left).unwrap().len(), 6);
        assert_eq!(principal(&z6, 0, Side::Left).unwrap().to_vec(), vec![0]);
        assert!(principal(&z6, 6, Side::Left).is_err());
    }

    #[test]
    fn triangular_principal_and_annihilator() {
        let t = t2f2();
        // [[a,b],[0,c]]·[[0,1],[0,0]] = [[0,a],[0,0]]
        assert_eq!(principal(&t, E12, Side::Left).unwrap().to_vec(), vec![0, E12]);
        // [[a,b],[0,c]]·[[0,0],[0,1]] = [[0,b],[0,c]]
        assert_eq!(annihilator(&t, E22, Side::Left).unwrap().to_vec(), vec![0, E11]);
        assert!(annihilator(&t, 8, Side::Left).is_err());
    }

    #[test]
    fn annihilators_in_z6() {
        let z6 = construct(&RingSpec::zn(6)).unwrap();
        assert_eq!(annihilator(&z6, 2, Side::Left).unwrap().to_vec(), vec![0, 3]);
        assert_eq!(annihilator(&z6, 0, Side::Left).unwrap().len(), 6);
    }

    #[test]
    fn unit_counts() {
        let z6 = construct(&RingSpec::zn(6)).unwrap();
        assert_eq!(units(&z6, UnitKind::TwoSided).to_vec(), vec![1, 5]);

        let m2 = construct(&RingSpec::matrix(RingSpec::zn(2), 2)).unwrap();
        // brute force: invertible 2x2 matrices over F2 have odd determinant
        let det_one = (0..16usize)
            .filter(|&i| {
                let (a, b, c, d) = (i >> 3 & 1, i >> 2 & 1, i >> 1 & 1, i & 1);
                (a * d + b * c) % 2 == 1
            })
            .count();
        assert_eq!(det_one, 6);
        assert_eq!(units(&m2, UnitKind::TwoSided).len(), det_one);

        let t = t2f2();
        assert_eq!(units(&t, UnitKind::TwoSided).to_vec(), vec![t.one(), t.one() | E12]);
    }

    #[test]
    fn family_canonicalization_dedups() {
        let z6 = construct(&RingSpec::zn(6)).unwrap();
        let fam = principal_family(&z6, Side::Left);
        // {0}, {0,3}, {0,2,4}, Z/6
        assert_eq!(fam.len(), 4);
        assert!(fam.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn subset_ops() {
        let a = ElementSubset::from_elements(8, [0, 2, 4]);
        let b = ElementSubset::from_elements(8, [0, 4, 6]);
        assert_eq!(a.union(&b).to_vec(), vec![0, 2, 4, 6]);
        assert_eq!(a.intersection(&b).to_vec(), vec![0, 4]);
        assert!(a.intersection(&b).is_subset(&a));
        assert!(!a.is_subset(&b));
        assert_eq!(ElementSubset::full(3).to_vec(), vec![0, 1, 2]);
        assert!(ElementSubset::empty(3).is_empty());
        assert_eq!(serde_json::to_string(&a).unwrap(), "[0,2,4]");
    }
}
