//! Exhaustive generation of unital rings of small order, up to isomorphism.
//!
//! The additive group is fixed to one of the abelian groups of the order,
//! written in invariant-factor form `Z/d1 x ... x Z/dk` with `d(i+1) | d(i)`.
//! A multiplication is biadditive, so it is determined by the products of the
//! generators. The identity of a unital ring has additive order equal to the
//! group exponent `d1`, and a cyclic subgroup of maximal order is a direct
//! summand, so up to isomorphism the identity is the first generator. Only
//! the products among the remaining generators are searched.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use sha2::{Digest, Sha256};

use crate::budget::{Deadline, Timeout};
use crate::error::{Result, RingError};
use crate::iso::{canonical_form, ring_from_canonical};
use crate::ring::FiniteRing;
use crate::spec::RingSpec;

pub const MAX_GROUP_ORDER: usize = 16;
pub const DEFAULT_MAX_RING_ORDER: usize = 8;
pub const DEFAULT_MAX_ASSIGNMENTS: u64 = 50_000_000;

/// A finite abelian group in invariant-factor form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianGroup {
    /// Cyclic factor orders, each dividing the previous one.
    pub invariants: Vec<usize>,
}

impl AbelianGroup {
    pub fn order(&self) -> usize {
        self.invariants.iter().product()
    }

    /// Coordinates of element `index`, first factor most significant.
    pub fn decode(&self, mut index: usize) -> Vec<usize> {
        let mut coords = vec![0; self.invariants.len()];
        for (c, &d) in coords.iter_mut().zip(&self.invariants).rev() {
            *c = index % d;
            index /= d;
        }
        coords
    }

    pub fn encode(&self, coords: &[usize]) -> usize {
        coords
            .iter()
            .zip(&self.invariants)
            .fold(0, |acc, (&c, &d)| acc * d + c % d)
    }

    pub fn add_table(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        let coords: Vec<_> = (0..n).map(|i| self.decode(i)).collect();
        (0..n)
            .map(|a| {
                (0..n)
                    .map(|b| {
                        let sum: Vec<usize> = coords[a].iter().zip(&coords[b]).map(|(x, y)| x + y).collect();
                        self.encode(&sum)
                    })
                    .collect()
            })
            .collect()
    }

    fn generator(&self, i: usize) -> Vec<usize> {
        let mut v = vec![0; self.invariants.len()];
        v[i] = 1;
        v
    }

    fn reduce(&self, v: &mut [usize]) {
        for (c, &d) in v.iter_mut().zip(&self.invariants) {
            *c %= d;
        }
    }

    /// Elements `z` with `m·z = 0`.
    fn torsion(&self, m: usize) -> Vec<Vec<usize>> {
        (0..self.order())
            .map(|i| self.decode(i))
            .filter(|z| z.iter().zip(&self.invariants).all(|(&c, &d)| (m * c) % d == 0))
            .collect()
    }
}

fn factorize(mut n: usize) -> Vec<(usize, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        let mut e = 0;
        while n % p == 0 {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Partitions of `e` into non-increasing parts, largest first part first.
fn partitions(e: u32) -> Vec<Vec<u32>> {
    fn go(rest: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rest == 0 {
            out.push(prefix.clone());
            return;
        }
        for part in (1..=rest.min(max)).rev() {
            prefix.push(part);
            go(rest - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(e, e, &mut Vec::new(), &mut out);
    out
}

/// One group per isomorphism class of abelian groups of order `n`, cyclic first.
pub fn abelian_groups(n: usize) -> Result<Vec<AbelianGroup>> {
    if n == 0 || n > MAX_GROUP_ORDER {
        return Err(RingError::OrderOutOfRange { order: n, min: 1, max: MAX_GROUP_ORDER });
    }
    let mut combos: Vec<Vec<(usize, Vec<u32>)>> = vec![Vec::new()];
    for (p, e) in factorize(n) {
        combos = combos
            .into_iter()
            .flat_map(|prefix| {
                partitions(e).into_iter().map(move |part| {
                    let mut next = prefix.clone();
                    next.push((p, part));
                    next
                })
            })
            .collect();
    }
    Ok(combos
        .into_iter()
        .map(|combo| {
            let len = combo.iter().map(|(_, part)| part.len()).max().unwrap_or(0);
            let invariants = (0..len)
                .map(|i| {
                    combo
                        .iter()
                        .map(|(p, part)| part.get(i).map_or(1, |&k| p.pow(k)))
                        .product()
                })
                .collect();
            AbelianGroup { invariants }
        })
        .collect())
}

#[derive(Clone, Copy, Debug)]
pub struct EnumerateOptions {
    pub max_order: usize,
    /// Cap on generator-product assignments tried per additive group.
    pub max_assignments: u64,
    pub deadline: Deadline,
}

impl Default for EnumerateOptions {
    fn default() -> Self {
        EnumerateOptions {
            max_order: DEFAULT_MAX_RING_ORDER,
            max_assignments: DEFAULT_MAX_ASSIGNMENTS,
            deadline: Deadline::none(),
        }
    }
}

/// Every unital ring of order `n` exactly once up to isomorphism, each in its
/// canonical labeling, sorted by canonical form.
pub fn enumerate_unital_rings(n: usize) -> Result<Vec<FiniteRing>> {
    enumerate_unital_rings_with(n, &EnumerateOptions::default())
}

pub fn enumerate_unital_rings_with(n: usize, options: &EnumerateOptions) -> Result<Vec<FiniteRing>> {
    let max = options.max_order.min(MAX_GROUP_ORDER);
    if n == 0 || n > max {
        return Err(RingError::OrderOutOfRange { order: n, min: 1, max });
    }
    let mut forms = BTreeSet::new();
    for group in abelian_groups(n)? {
        forms.extend(rings_over(&group, options)?);
    }
    forms
        .into_iter()
        .enumerate()
        .map(|(i, bytes)| ring_from_canonical(&bytes, format!("R{n}.{}", i + 1)))
        .collect()
}

/// Canonical forms of the unital rings with additive group `group`.
fn rings_over(group: &AbelianGroup, options: &EnumerateOptions) -> Result<BTreeSet<Vec<u8>>> {
    let k = group.invariants.len();
    if k == 0 {
        let zero_ring = FiniteRing::from_tables(1, &[vec![0]], &[vec![0]], 0, 0, "0")?;
        return Ok(BTreeSet::from([canonical_form(&zero_ring)?]));
    }
    let d = &group.invariants;
    let free: Vec<(usize, usize)> = (1..k).flat_map(|i| (1..k).map(move |j| (i, j))).collect();
    let choices: Vec<Vec<Vec<usize>>> = free
        .iter()
        .map(|&(i, j)| group.torsion(num_integer::gcd(d[i], d[j])))
        .collect();
    let total = choices
        .iter()
        .try_fold(1u64, |acc, c| acc.checked_mul(c.len() as u64))
        .filter(|&t| t <= options.max_assignments)
        .ok_or_else(|| {
            RingError::BudgetExceeded(format!(
                "additive group {:?} needs more than {} product assignments",
                group.invariants, options.max_assignments
            ))
        })?;
    let add = group.add_table();

    let found: Vec<Option<Vec<u8>>> = (0..total)
        .into_par_iter()
        .map(|index| -> Result<Option<Vec<u8>>> {
            if index % 1024 == 0 {
                options
                    .deadline
                    .check()
                    .map_err(|Timeout| RingError::BudgetExceeded("time budget exhausted".into()))?;
            }
            let mut consts = vec![vec![Vec::new(); k]; k];
            for i in 0..k {
                consts[0][i] = group.generator(i);
                consts[i][0] = group.generator(i);
            }
            let mut rest = index;
            for (slot, &(i, j)) in free.iter().enumerate().rev() {
                let options = &choices[slot];
                consts[i][j] = options[(rest % options.len() as u64) as usize].clone();
                rest /= options.len() as u64;
            }
            if !associative_on_generators(group, &consts) {
                return Ok(None);
            }
            let mul = multiplication_table(group, &consts);
            let ring = FiniteRing::from_tables(group.order(), &add, &mul, 0, group.encode(&group.generator(0)), "")?;
            canonical_form(&ring).map(Some)
        })
        .collect::<Result<_>>()?;
    Ok(found.into_iter().flatten().collect())
}

/// `x·y = Σ x_i y_j c_ij` in coordinates.
fn product(group: &AbelianGroup, consts: &[Vec<Vec<usize>>], x: &[usize], y: &[usize]) -> Vec<usize> {
    let k = x.len();
    let mut out = vec![0; k];
    for i in 0..k {
        for j in 0..k {
            let s = x[i] * y[j];
            if s == 0 {
                continue;
            }
            for (o, &c) in out.iter_mut().zip(&consts[i][j]) {
                *o += s * c;
            }
        }
    }
    group.reduce(&mut out);
    out
}

fn associative_on_generators(group: &AbelianGroup, consts: &[Vec<Vec<usize>>]) -> bool {
    let k = consts.len();
    (0..k).all(|i| {
        (0..k).all(|j| {
            (0..k).all(|l| {
                let left = product(group, consts, &consts[i][j], &group.generator(l));
                let right = product(group, consts, &group.generator(i), &consts[j][l]);
                left == right
            })
        })
    })
}

fn multiplication_table(group: &AbelianGroup, consts: &[Vec<Vec<usize>>]) -> Vec<Vec<usize>> {
    let n = group.order();
    let coords: Vec<_> = (0..n).map(|i| group.decode(i)).collect();
    (0..n)
        .map(|a| (0..n).map(|b| group.encode(&product(group, consts, &coords[a], &coords[b]))).collect())
        .collect()
}

/// Hex SHA-256 of a canonical form, used to name emitted files.
pub fn canonical_hash(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

/// Writes each ring as a table-literal spec named by the hash of its
/// canonical form. Returns the written paths in input order.
pub fn emit_rings(rings: &[FiniteRing], dir: &Path) -> std::io::Result<Vec<PathBuf>> {
    std::fs::create_dir_all(dir)?;
    rings
        .iter()
        .map(|ring| {
            let bytes = canonical_form(ring).map_err(std::io::Error::other)?;
            let path = dir.join(format!("{}.json", &canonical_hash(&bytes)[..16]));
            std::fs::write(&path, RingSpec::table_of(ring).to_json() + "\n")?;
            Ok(path)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::iso::isomorphic;
    use crate::subsets::{units, UnitKind};

    #[test]
    fn group_classification() {
        let inv = |n| abelian_groups(n).unwrap().into_iter().map(|g| g.invariants).collect::<Vec<_>>();
        assert_eq!(inv(1), vec![Vec::<usize>::new()]);
        assert_eq!(inv(4), vec![vec![4], vec![2, 2]]);
        assert_eq!(inv(6), vec![vec![6]]);
        assert_eq!(inv(8), vec![vec![8], vec![4, 2], vec![2, 2, 2]]);
        assert_eq!(inv(12), vec![vec![12], vec![6, 2]]);
        assert_eq!(inv(16).len(), 5);
        assert!(abelian_groups(0).is_err());
        assert!(abelian_groups(17).is_err());
    }

    #[test]
    fn group_tables_are_groups() {
        for n in 1..=16 {
            for g in abelian_groups(n).unwrap() {
                let t = g.add_table();
                assert_eq!(t.len(), n);
                for a in 0..n {
                    assert_eq!(t[a][0], a);
                    assert!((0..n).any(|b| t[a][b] == 0));
                }
            }
        }
    }

    #[test]
    fn small_counts() {
        let count = |n| enumerate_unital_rings(n).unwrap().len();
        assert_eq!(count(1), 1);
        assert_eq!(count(2), 1);
        assert_eq!(count(3), 1);
        assert_eq!(count(4), 4);
        assert_eq!(count(5), 1);
        assert_eq!(count(7), 1);
    }

    #[test]
    fn order_four_unit_profile() {
        let rings = enumerate_unital_rings(4).unwrap();
        let mut sizes: Vec<usize> = rings.iter().map(|r| units(r, UnitKind::TwoSided).len()).collect();
        sizes.sort();
        assert_eq!(sizes, vec![1, 2, 2, 3]);
        for (i, a) in rings.iter().enumerate() {
            for b in &rings[i + 1..] {
                assert!(isomorphic(a, b).is_none());
            }
        }
    }

    #[test]
    fn order_limits() {
        assert!(enumerate_unital_rings(0).is_err());
        assert!(enumerate_unital_rings(9).is_err());
        let opts = EnumerateOptions { max_order: 16, max_assignments: 10, ..Default::default() };
        assert!(matches!(enumerate_unital_rings_with(8, &opts), Err(RingError::BudgetExceeded(_))));
    }

    #[test]
    fn labels_are_positional() {
        let rings = enumerate_unital_rings(4).unwrap();
        let labels: Vec<_> = rings.iter().map(|r| r.label().to_string()).collect();
        assert_eq!(labels, vec!["R4.1", "R4.2", "R4.3", "R4.4"]);
    }
}
