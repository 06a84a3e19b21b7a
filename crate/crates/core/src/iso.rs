//! Ring isomorphism: an exhaustive lexicographically-least bijection search,
//! and a relabeling-invariant canonical form for small rings.

use std::collections::BTreeMap;

use crate::error::{Result, RingError};
use crate::ring::{Elem, FiniteRing};

pub const CANONICAL_MAX_ORDER: usize = 16;

/// Isomorphism-invariant data attached to each element, used only to prune.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct ElemSignature {
    additive_order: usize,
    mul_preperiod: usize,
    mul_period: usize,
    left_ann: usize,
    right_ann: usize,
    left_ideal: usize,
    right_ideal: usize,
}

fn signatures(r: &FiniteRing) -> Vec<ElemSignature> {
    let n = r.order();
    r.elements()
        .map(|a| {
            let (mul_preperiod, mul_period) = power_cycle(r, a);
            let mut seen_l = vec![false; n];
            let mut seen_r = vec![false; n];
            let (mut left_ann, mut right_ann) = (0, 0);
            for x in r.elements() {
                let xa = r.mul(x, a);
                let ax = r.mul(a, x);
                left_ann += usize::from(xa == r.zero());
                right_ann += usize::from(ax == r.zero());
                seen_l[xa] = true;
                seen_r[ax] = true;
            }
            ElemSignature {
                additive_order: r.additive_order(a),
                mul_preperiod,
                mul_period,
                left_ann,
                right_ann,
                left_ideal: seen_l.iter().filter(|&&s| s).count(),
                right_ideal: seen_r.iter().filter(|&&s| s).count(),
            }
        })
        .collect()
}

/// Tail length and cycle length of the sequence a, a^2, a^3, ...
fn power_cycle(r: &FiniteRing, a: Elem) -> (usize, usize) {
    let mut first_seen = vec![usize::MAX; r.order()];
    let mut p = a;
    let mut k = 0;
    loop {
        if first_seen[p] != usize::MAX {
            return (first_seen[p], k - first_seen[p]);
        }
        first_seen[p] = k;
        p = r.mul(p, a);
        k += 1;
    }
}

struct Matcher<'a> {
    r: &'a FiniteRing,
    s: &'a FiniteRing,
    sig_r: Vec<ElemSignature>,
    sig_s: Vec<ElemSignature>,
    map: Vec<Option<Elem>>,
    inv: Vec<Option<Elem>>,
    assigned: Vec<Elem>,
}

impl Matcher<'_> {
    /// Assigns `a -> b` and closes the partial map under `+` and `·`.
    /// On conflict returns false; the caller undoes via the trail length.
    fn assign(&mut self, a: Elem, b: Elem) -> bool {
        if !self.try_set(a, b) {
            return false;
        }
        let mut cursor = self.assigned.len() - 1;
        while cursor < self.assigned.len() {
            let x = self.assigned[cursor];
            let fx = self.map[x].unwrap();
            let mut i = 0;
            while i < self.assigned.len() {
                let y = self.assigned[i];
                let fy = self.map[y].unwrap();
                let forced = [
                    (self.r.add(x, y), self.s.add(fx, fy)),
                    (self.r.mul(x, y), self.s.mul(fx, fy)),
                    (self.r.mul(y, x), self.s.mul(fy, fx)),
                ];
                for (t, ft) in forced {
                    match self.map[t] {
                        Some(existing) if existing != ft => return false,
                        Some(_) => {}
                        None => {
                            if !self.try_set(t, ft) {
                                return false;
                            }
                        }
                    }
                }
                i += 1;
            }
            cursor += 1;
        }
        true
    }

    fn try_set(&mut self, a: Elem, b: Elem) -> bool {
        if self.inv[b].is_some() || self.sig_r[a] != self.sig_s[b] {
            return false;
        }
        self.map[a] = Some(b);
        self.inv[b] = Some(a);
        self.assigned.push(a);
        true
    }

    fn undo_to(&mut self, len: usize) {
        while self.assigned.len() > len {
            let a = self.assigned.pop().unwrap();
            let b = self.map[a].take().unwrap();
            self.inv[b] = None;
        }
    }

    fn search(&mut self) -> bool {
        let Some(next) = self.map.iter().position(Option::is_none) else {
            return true;
        };
        let mark = self.assigned.len();
        for candidate in 0..self.s.order() {
            if self.inv[candidate].is_some() || self.sig_r[next] != self.sig_s[candidate] {
                continue;
            }
            if self.assign(next, candidate) && self.search() {
                return true;
            }
            self.undo_to(mark);
        }
        false
    }
}

/// Finds the lexicographically least ring isomorphism `f: r -> s`, returned
/// as `f[a]` for every element `a` of `r`, or `None` if the rings differ.
pub fn isomorphic(r: &FiniteRing, s: &FiniteRing) -> Option<Vec<Elem>> {
    if r.order() != s.order() {
        return None;
    }
    let sig_r = signatures(r);
    let sig_s = signatures(s);
    let mut sorted_r = sig_r.clone();
    let mut sorted_s = sig_s.clone();
    sorted_r.sort();
    sorted_s.sort();
    if sorted_r != sorted_s {
        return None;
    }
    let n = r.order();
    let mut m = Matcher {
        r,
        s,
        sig_r,
        sig_s,
        map: vec![None; n],
        inv: vec![None; n],
        assigned: Vec::with_capacity(n),
    };
    if !m.assign(r.zero(), s.zero()) {
        return None;
    }
    if m.map[r.one()].is_none() && !m.assign(r.one(), s.one()) {
        return None;
    }
    if m.map[r.one()] != Some(s.one()) {
        return None;
    }
    if !m.search() {
        return None;
    }
    Some(m.map.into_iter().map(Option::unwrap).collect())
}

/// Relabeling-invariant serialization: byte 0 is the order, followed by the
/// addition and multiplication tables row-major, one byte per entry, under
/// the least labeling (zero -> 0, one -> 1) reachable by color refinement
/// and individualization. Equal outputs exactly when the rings are isomorphic.
pub fn canonical_form(r: &FiniteRing) -> Result<Vec<u8>> {
    canonical_labeling(r).map(|(bytes, _)| bytes)
}

/// The ring relabeled into its canonical form.
pub fn canonical_ring(r: &FiniteRing) -> Result<FiniteRing> {
    let (_, perm) = canonical_labeling(r)?;
    r.relabel(&perm)
}

/// Canonical bytes together with the labeling `perm[a]` that produces them.
pub fn canonical_labeling(r: &FiniteRing) -> Result<(Vec<u8>, Vec<Elem>)> {
    let n = r.order();
    if n == 0 || n > CANONICAL_MAX_ORDER {
        return Err(RingError::OrderOutOfRange { order: n, min: 1, max: CANONICAL_MAX_ORDER });
    }
    let initial: Vec<u32> = r
        .elements()
        .map(|a| if a == r.zero() { 0 } else if a == r.one() { 1 } else { 2 })
        .collect();
    let mut best: Option<(Vec<u8>, Vec<Elem>)> = None;
    descend(r, rerank(&initial), &mut best);
    Ok(best.expect("refinement always reaches a discrete partition"))
}

fn descend(r: &FiniteRing, colors: Vec<u32>, best: &mut Option<(Vec<u8>, Vec<Elem>)>) {
    let colors = refine(r, colors);
    let n = r.order();
    let mut cell_size = vec![0usize; n];
    for &c in &colors {
        cell_size[c as usize] += 1;
    }
    let Some(target) = cell_size.iter().position(|&s| s > 1) else {
        let perm: Vec<Elem> = colors.iter().map(|&c| c as Elem).collect();
        let bytes = serialize(r, &perm);
        if best.as_ref().is_none_or(|(b, _)| bytes < *b) {
            *best = Some((bytes, perm));
        }
        return;
    };
    for v in r.elements().filter(|&v| colors[v] as usize == target) {
        let split: Vec<u64> = r
            .elements()
            .map(|a| 2 * u64::from(colors[a]) + u64::from(a != v))
            .collect();
        descend(r, rerank(&split), best);
    }
}

/// One-dimensional color refinement over the addition and multiplication
/// tables until the partition is stable. Colors stay ordered consistently with
/// the input coloring.
fn refine(r: &FiniteRing, mut colors: Vec<u32>) -> Vec<u32> {
    let mut classes = count_distinct(&colors);
    loop {
        let keys: Vec<(u32, Vec<[u32; 4]>)> = r
            .elements()
            .map(|a| {
                let mut nb: Vec<[u32; 4]> = r
                    .elements()
                    .map(|b| {
                        [colors[b], colors[r.add(a, b)], colors[r.mul(a, b)], colors[r.mul(b, a)]]
                    })
                    .collect();
                nb.sort_unstable();
                (colors[a], nb)
            })
            .collect();
        let next = rerank(&keys);
        let next_classes = count_distinct(&next);
        colors = next;
        if next_classes == classes {
            return colors;
        }
        classes = next_classes;
    }
}

fn rerank<K: Ord + Clone>(keys: &[K]) -> Vec<u32> {
    let ranks: BTreeMap<K, u32> = {
        let mut distinct: Vec<K> = keys.to_vec();
        distinct.sort();
        distinct.dedup();
        distinct.into_iter().enumerate().map(|(i, k)| (k, i as u32)).collect()
    };
    keys.iter().map(|k| ranks[k]).collect()
}

fn count_distinct(colors: &[u32]) -> usize {
    let mut c = colors.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

fn serialize(r: &FiniteRing, perm: &[Elem]) -> Vec<u8> {
    let n = r.order();
    let mut inv = vec![0; n];
    for (a, &p) in perm.iter().enumerate() {
        inv[p] = a;
    }
    let mut out = Vec::with_capacity(1 + 2 * n * n);
    out.push(n as u8);
    for op in [FiniteRing::add, FiniteRing::mul] {
        for i in 0..n {
            for j in 0..n {
                out.push(perm[op(r, inv[i], inv[j])] as u8);
            }
        }
    }
    out
}

/// Rebuilds the ring encoded by [`canonical_form`] bytes.
pub fn ring_from_canonical(bytes: &[u8], label: impl Into<String>) -> Result<FiniteRing> {
    let n = *bytes.first().ok_or_else(|| RingError::MalformedSpec("empty canonical form".into()))? as usize;
    if bytes.len() != 1 + 2 * n * n {
        return Err(RingError::MalformedSpec("canonical form has the wrong length".into()));
    }
    let table = |offset: usize| -> Vec<Vec<usize>> {
        (0..n)
            .map(|i| (0..n).map(|j| bytes[offset + i * n + j] as usize).collect())
            .collect()
    };
    let one = if n == 1 { 0 } else { 1 };
    FiniteRing::from_tables(n, &table(1), &table(1 + n * n), 0, one, label)
}
