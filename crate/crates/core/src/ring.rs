//! Finite unital rings stored as complete operation tables.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Result, RingError};
use crate::validate::validate;

/// Index of an element inside a [`FiniteRing`].
pub type Elem = usize;

/// Which side a ring element multiplies from.
///
/// `Left` reads `r·a` (the left ideal `Ra`, left annihilators, left units);
/// `Right` reads `a·r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub const BOTH: [Side; 2] = [Side::Left, Side::Right];

    pub fn mirror(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Left => "left",
            Side::Right => "right",
        })
    }
}

/// A finite ring with identity, immutable once built.
///
/// Both tables are stored flat in row-major order; `add[a * n + b]` is `a + b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteRing {
    order: usize,
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    zero: Elem,
    one: Elem,
    label: String,
}

impl FiniteRing {
    /// Builds a ring from nested tables, rejecting anything that fails [`validate`].
    pub fn from_tables(
        order: usize,
        add: &[Vec<usize>],
        mul: &[Vec<usize>],
        zero: Elem,
        one: Elem,
        label: impl Into<String>,
    ) -> Result<Self> {
        let report = validate(add, mul, zero, one, order);
        if !report.ok {
            return Err(RingError::InvalidTable(report));
        }
        let flatten = |t: &[Vec<usize>]| t.iter().flatten().map(|&x| x as u32).collect();
        Ok(Self::from_flat(order, flatten(add), flatten(mul), zero, one, label.into()))
    }

    /// Assembles a ring from flat tables that are known to satisfy the axioms
    /// (outputs of the structured constructors).
    pub(crate) fn from_flat(
        order: usize,
        add: Vec<u32>,
        mul: Vec<u32>,
        zero: Elem,
        one: Elem,
        label: String,
    ) -> Self {
        debug_assert_eq!(add.len(), order * order);
        debug_assert_eq!(mul.len(), order * order);
        let mut neg = vec![0u32; order];
        for a in 0..order {
            let row = &add[a * order..(a + 1) * order];
            neg[a] = row
                .iter()
                .position(|&s| s as usize == zero)
                .expect("every element has an additive inverse") as u32;
        }
        FiniteRing { order, add, mul, neg, zero, one, label }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn zero(&self) -> Elem {
        self.zero
    }

    pub fn one(&self) -> Elem {
        self.one
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.order
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        self.add[a * self.order + b] as Elem
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.mul[a * self.order + b] as Elem
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        self.neg[a] as Elem
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    /// Product of `r` acting on `a` from `side`: `r·a` for left, `a·r` for right.
    #[inline]
    pub fn act(&self, side: Side, r: Elem, a: Elem) -> Elem {
        match side {
            Side::Left => self.mul(r, a),
            Side::Right => self.mul(a, r),
        }
    }

    pub fn check_index(&self, index: Elem) -> Result<()> {
        if index < self.order {
            Ok(())
        } else {
            Err(RingError::IndexOutOfRange { index, order: self.order })
        }
    }

    /// Additive order of `a`.
    pub fn additive_order(&self, a: Elem) -> usize {
        let mut k = 1;
        let mut acc = a;
        while acc != self.zero {
            acc = self.add(acc, a);
            k += 1;
        }
        k
    }

    pub fn add_rows(&self) -> Vec<Vec<usize>> {
        rows(&self.add, self.order)
    }

    pub fn mul_rows(&self) -> Vec<Vec<usize>> {
        rows(&self.mul, self.order)
    }



    pub fn is_commutative(&self) -> bool {
        self.elements()
            .all(|a| (a + 1..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// The opposite ring: same elements and addition, `a ∘ b = b·a`.
    pub fn opposite(&self) -> FiniteRing {
        let n = self.order;
        let mut mul = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                mul[a * n + b] = self.mul[b * n + a];
            }
        }
        FiniteRing {
            order: n,
            add: self.add.clone(),
            mul,
            neg: self.neg.clone(),
            zero: self.zero,
            one: self.one,
            label: opposite_label(&self.label),
        }
    }

    /// Relabels elements: element `a` of `self` becomes element `perm[a]`.
    pub fn relabel(&self, perm: &[Elem]) -> Result<FiniteRing> {
        let n = self.order;
        if perm.len() != n {
            return Err(RingError::MalformedSpec(format!(
                "relabeling has {} entries for a ring of order {n}",
                perm.len()
            )));
        }
        let mut seen = vec![false; n];
        for &p in perm {
            if p >= n || std::mem::replace(&mut seen[p], true) {
                return Err(RingError::MalformedSpec("relabeling is not a bijection".into()));
            }
        }
        let mut add = vec![0u32; n * n];
        let mut mul = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                add[perm[a] * n + perm[b]] = perm[self.add(a, b)] as u32;
                mul[perm[a] * n + perm[b]] = perm[self.mul(a, b)] as u32;
            }
        }
        Ok(FiniteRing::from_flat(
            n,
            add,
            mul,
            perm[self.zero],
            perm[self.one],
            self.label.clone(),
        ))
    }
}

fn rows(flat: &[u32], n: usize) -> Vec<Vec<usize>> {
    flat.chunks(n.max(1)).map(|r| r.iter().map(|&x| x as usize).collect()).collect()
}

fn opposite_label(label: &str) -> String {
    match label.strip_prefix("op(").and_then(|s| s.strip_suffix(')')) {
        Some(inner) if balanced(inner) => inner.to_string(),
        _ => format!("op({label})"),
    }
}

fn balanced(s: &str) -> bool {
    let mut depth = 0i32;
    for ch in s.chars() {
        match ch {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth < 0 {
                    return false;
                }
            }
            _ => {}
        }
    }
    depth == 0
}

impl fmt::Display for FiniteRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (order {})", self.label, self.order)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spec::{construct, RingSpec};

    #[test]
    fn opposite_label_round_trips() {
        assert_eq!(opposite_label("T2(Z/2)"), "op(T2(Z/2))");
        assert_eq!(opposite_label("op(T2(Z/2))"), "T2(Z/2)");
        assert_eq!(opposite_label("op(a)x(b)"), "op(op(a)x(b))");
    }

    #[test]
    fn opposite_of_commutative_ring_is_transpose() {
        let z6 = construct(&RingSpec::zn(6)).unwrap();
        let op = z6.opposite();
        for a in z6.elements() {
            for b in z6.elements() {
                assert_eq!(op.mul(a, b), z6.mul(b, a));
            }
        }
        assert_eq!(op.mul_rows(), z6.mul_rows());
    }

    #[test]
    fn triangular_opposite_transposes_mul() {
        let t = construct(&RingSpec::triangular(RingSpec::zn(2), 2)).unwrap();
        let op = t.opposite();
        assert!(!t.is_commutative());
        for a in t.elements() {
            for b in t.elements() {
                assert_eq!(op.mul(a, b), t.mul(b, a));
                assert_eq!(op.add(a, b), t.add(a, b));
            }
        }
        assert_eq!(op.opposite(), t);
    }

    #[test]
    fn additive_orders_in_z12() {
        let z12 = construct(&RingSpec::zn(12)).unwrap();
        let orders: Vec<_> = z12.elements().map(|a| z12.additive_order(a)).collect();
        assert_eq!(orders, vec![1, 12, 6, 4, 3, 12, 2, 12, 3, 4, 6, 12]);
    }

    #[test]
    fn relabel_rejects_non_bijection() {
        let z3 = construct(&RingSpec::zn(3)).unwrap();
        assert!(z3.relabel(&[0, 0, 1]).is_err());
        assert!(z3.relabel(&[0, 1]).is_err());
        let r = z3.relabel(&[0, 2, 1]).unwrap();
        assert_eq!(r.one(), 2);
        assert_eq!(r.mul(2, 2), 2);
        assert_eq!(r.add(2, 2), 1);
    }
}
