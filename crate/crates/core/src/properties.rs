//! Deciders for the ring properties, each returning either a self-checking
//! counterexample or a count showing the whole quantifier domain was searched.
//!
//! Quantifiers are searched row-major over element indices, so the first
//! failing tuple is the reported witness.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::budget::{Deadline, Timeout};
use crate::ring::{Elem, FiniteRing, Side};
use crate::subsets::{
    annihilator_family, annihilator_unchecked, principal_family, principal_unchecked, units,
    ElementSubset, UnitKind,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Property {
    DirectlyFinite,
    StableRangeOne,
    UnitLifting,
    QuasiMorphic,
    PrincipalAreAnnihilators,
    UniquelyGenerated,
}

impl Property {
    pub const ALL: [Property; 6] = [
        Property::DirectlyFinite,
        Property::StableRangeOne,
        Property::UnitLifting,
        Property::QuasiMorphic,
        Property::PrincipalAreAnnihilators,
        Property::UniquelyGenerated,
    ];

    pub fn is_sided(self) -> bool {
        !matches!(self, Property::DirectlyFinite | Property::StableRangeOne)
    }

    pub fn name(self) -> &'static str {
        match self {
            Property::DirectlyFinite => "directly_finite",
            Property::StableRangeOne => "stable_range_one",
            Property::UnitLifting => "unit_lifting",
            Property::QuasiMorphic => "quasi_morphic",
            Property::PrincipalAreAnnihilators => "principal_are_annihilators",
            Property::UniquelyGenerated => "uniquely_generated",
        }
    }

    /// Number of tuples an exhaustive search over a ring of order `n` examines.
    pub fn domain_size(self, n: usize) -> u64 {
        let n = n as u64;
        match self {
            Property::QuasiMorphic => 2 * n,
            Property::PrincipalAreAnnihilators => n,
            _ => n * n,
        }
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Error)]
#[error("unknown property {0:?}")]
pub struct UnknownProperty(String);

impl FromStr for Property {
    type Err = UnknownProperty;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Property::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| UnknownProperty(s.to_string()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Role {
    pub role: String,
    pub index: Elem,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub roles: Vec<Role>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Witness {
    pub fn new(roles: &[(&str, Elem)]) -> Self {
        Witness {
            roles: roles.iter().map(|&(r, i)| Role { role: r.to_string(), index: i }).collect(),
            note: None,
        }
    }

    fn with_note(mut self, note: &str) -> Self {
        self.note = Some(note.to_string());
        self
    }

    pub fn get(&self, role: &str) -> Option<Elem> {
        self.roles.iter().find(|r| r.role == role).map(|r| r.index)
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, r) in self.roles.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}={}", r.role, r.index)?;
        }
        f.write_str(")")?;
        if let Some(note) = &self.note {
            write!(f, " {note}")?;
        }
        Ok(())
    }
}

pub const PRINCIPAL_NOT_ANNIHILATOR: &str = "principal ideal is not an annihilator";
pub const ANNIHILATOR_NOT_PRINCIPAL: &str = "annihilator is not a principal ideal";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyResult {
    pub property: Property,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub side: Option<Side>,
    pub holds: bool,
    pub witness: Option<Witness>,
    pub search_space: u64,
}

impl PropertyResult {
    fn holds(property: Property, side: Option<Side>, n: usize) -> Self {
        PropertyResult {
            property,
            side,
            holds: true,
            witness: None,
            search_space: property.domain_size(n),
        }
    }

    fn fails(
        r: &FiniteRing,
        property: Property,
        side: Option<Side>,
        witness: Witness,
        examined: u64,
    ) -> Self {
        let res = PropertyResult { property, side, holds: false, witness: Some(witness), search_space: examined };
        debug_assert!(replay(r, &res), "non-replaying witness for {property} on {}", r.label());
        res
    }

    /// Display name including the side, e.g. `unit_lifting[left]`.
    pub fn key(&self) -> String {
        match self.side {
            Some(s) => format!("{}[{s}]", self.property),
            None => self.property.to_string(),
        }
    }
}

impl fmt::Display for PropertyResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.key(), if self.holds { "holds" } else { "fails" })?;
        match &self.witness {
            Some(w) => write!(f, " witness {w} after {} tuples", self.search_space),
            None => write!(f, " ({} tuples exhausted)", self.search_space),
        }
    }
}

/// Decides `property` on `r`; `side` is ignored for unsided properties.
pub fn evaluate(r: &FiniteRing, property: Property, side: Side) -> PropertyResult {
    evaluate_within(r, property, side, &Deadline::none()).expect("no deadline")
}

pub fn evaluate_within(
    r: &FiniteRing,
    property: Property,
    side: Side,
    deadline: &Deadline,
) -> Result<PropertyResult, Timeout> {
    match property {
        Property::DirectlyFinite => directly_finite_within(r, deadline),
        Property::StableRangeOne => stable_range_one_within(r, deadline),
        Property::UnitLifting => unit_lifting_within(r, side, deadline),
        Property::QuasiMorphic => quasi_morphic_within(r, side, deadline),
        Property::PrincipalAreAnnihilators => principal_are_annihilators_within(r, side, deadline),
        Property::UniquelyGenerated => uniquely_generated_within(r, side, deadline),
    }
}

/// Every property, sided ones for both sides, in a fixed order.
pub fn property_vector(r: &FiniteRing, deadline: &Deadline) -> Result<Vec<PropertyResult>, Timeout> {
    let mut out = Vec::with_capacity(10);
    for p in Property::ALL {
        if p.is_sided() {
            for side in Side::BOTH {
                out.push(evaluate_within(r, p, side, deadline)?);
            }
        } else {
            out.push(evaluate_within(r, p, Side::Left, deadline)?);
        }
    }
    Ok(out)
}

pub fn directly_finite(r: &FiniteRing) -> PropertyResult {
    directly_finite_within(r, &Deadline::none()).expect("no deadline")
}

fn directly_finite_within(r: &FiniteRing, deadline: &Deadline) -> Result<PropertyResult, Timeout> {
    let p = Property::DirectlyFinite;
    let mut examined = 0;
    for a in r.elements() {
        deadline.check()?;
        for b in r.elements() {
            examined += 1;
            if r.mul(a, b) == r.one() && r.mul(b, a) != r.one() {
                return Ok(PropertyResult::fails(r, p, None, Witness::new(&[("a", a), ("b", b)]), examined));
            }
        }
    }
    Ok(PropertyResult::holds(p, None, r.order()))
}

/// Whenever `a·x + b = 1`, some `y` makes `a + b·y` a two-sided unit.
/// `b` is determined by `(a, x)`, so the domain is the `n²` pairs `(a, x)`.
pub fn stable_range_one(r: &FiniteRing) -> PropertyResult {
    stable_range_one_within(r, &Deadline::none()).expect("no deadline")
}

fn stable_range_one_within(r: &FiniteRing, deadline: &Deadline) -> Result<PropertyResult, Timeout> {
    let p = Property::StableRangeOne;
    let u = units(r, UnitKind::TwoSided);
    let mut examined = 0;
    for a in r.elements() {
        deadline.check()?;
        for x in r.elements() {
            examined += 1;
            let b = r.sub(r.one(), r.mul(a, x));
            if !r.elements().any(|y| u.contains(r.add(a, r.mul(b, y)))) {
                let w = Witness::new(&[("a", a), ("x", x), ("b", b)]);
                return Ok(PropertyResult::fails(r, p, None, w, examined));
            }
        }
    }
    Ok(PropertyResult::holds(p, None, r.order()))
}

/// Left: every `b` that is a left unit modulo some `Rc` (some `a` has
/// `a·b − 1 ∈ Rc`) is congruent modulo `Rc` to a genuine left unit `u`.
/// Right is the mirror statement with `cR` and right units.
pub fn unit_lifting(r: &FiniteRing, side: Side) -> PropertyResult {
    unit_lifting_within(r, side, &Deadline::none()).expect("no deadline")
}

fn unit_lifting_within(r: &FiniteRing, side: Side, deadline: &Deadline) -> Result<PropertyResult, Timeout> {
    let p = Property::UnitLifting;
    let n = r.order();
    let one_sided = units(r, side.into());
    let mut ideals = Vec::with_capacity(n);
    let mut unit_mod = Vec::with_capacity(n);
    let mut liftable = Vec::with_capacity(n);
    for c in r.elements() {
        deadline.check()?;
        let ideal = principal_unchecked(r, c, side);
        let pre = ElementSubset::from_elements(
            n,
            r.elements().filter(|&b| {
                r.elements().any(|a| ideal.contains(r.sub(r.act(side, a, b), r.one())))
            }),
        );
        let mut lift = ElementSubset::empty(n);
        for u in one_sided.iter() {
            for i in ideal.iter() {
                lift.insert(r.add(u, i));
            }
        }
        ideals.push(ideal);
        unit_mod.push(pre);
        liftable.push(lift);
    }
    let mut examined = 0;
    for b in r.elements() {
        for c in r.elements() {
            examined += 1;
            if unit_mod[c].contains(b) && !liftable[c].contains(b) {
                let w = Witness::new(&[("b", b), ("c", c)]);
                return Ok(PropertyResult::fails(r, p, Some(side), w, examined));
            }
        }
    }
    Ok(PropertyResult::holds(p, Some(side), n))
}

/// The family of principal ideals equals the family of annihilators.
pub fn quasi_morphic(r: &FiniteRing, side: Side) -> PropertyResult {
    quasi_morphic_within(r, side, &Deadline::none()).expect("no deadline")
}

fn quasi_morphic_within(r: &FiniteRing, side: Side, deadline: &Deadline) -> Result<PropertyResult, Timeout> {
    let p = Property::QuasiMorphic;
    deadline.check()?;
    let principals = principal_family(r, side);
    let annihilators = annihilator_family(r, side);
    let mut examined = 0;
    for a in r.elements() {
        examined += 1;
        if annihilators.binary_search(&principal_unchecked(r, a, side)).is_err() {
            let w = Witness::new(&[("a", a)]).with_note(PRINCIPAL_NOT_ANNIHILATOR);
            return Ok(PropertyResult::fails(r, p, Some(side), w, examined));
        }
    }
    deadline.check()?;
    for a in r.elements() {
        examined += 1;
        if principals.binary_search(&annihilator_unchecked(r, a, side)).is_err() {
            let w = Witness::new(&[("a", a)]).with_note(ANNIHILATOR_NOT_PRINCIPAL);
            return Ok(PropertyResult::fails(r, p, Some(side), w, examined));
        }
    }
    Ok(PropertyResult::holds(p, Some(side), r.order()))
}

/// Every principal ideal is an annihilator (one inclusion of quasi-morphic).
pub fn principal_are_annihilators(r: &FiniteRing, side: Side) -> PropertyResult {
    principal_are_annihilators_within(r, side, &Deadline::none()).expect("no deadline")
}

fn principal_are_annihilators_within(
    r: &FiniteRing,
    side: Side,
    deadline: &Deadline,
) -> Result<PropertyResult, Timeout> {
    let p = Property::PrincipalAreAnnihilators;
    deadline.check()?;
    let annihilators = annihilator_family(r, side);
    let mut examined = 0;
    for a in r.elements() {
        examined += 1;
        if annihilators.binary_search(&principal_unchecked(r, a, side)).is_err() {
            let w = Witness::new(&[("a", a)]);
            return Ok(PropertyResult::fails(r, p, Some(side), w, examined));
        }
    }
    Ok(PropertyResult::holds(p, Some(side), r.order()))
}

/// Left: `Ra = Rb` forces `a = u·b` for a two-sided unit `u`.
/// Right: `aR = bR` forces `a = b·u`.
pub fn uniquely_generated(r: &FiniteRing, side: Side) -> PropertyResult {
    uniquely_generated_within(r, side, &Deadline::none()).expect("no deadline")
}

fn uniquely_generated_within(r: &FiniteRing, side: Side, deadline: &Deadline) -> Result<PropertyResult, Timeout> {
    let p = Property::UniquelyGenerated;
    let u = units(r, UnitKind::TwoSided);
    let ideals: Vec<_> = r.elements().map(|a| principal_unchecked(r, a, side)).collect();
    let mut examined = 0;
    for a in r.elements() {
        deadline.check()?;
        for b in r.elements() {
            examined += 1;
            if ideals[a] == ideals[b] && !u.iter().any(|unit| r.act(side, unit, b) == a) {
                let w = Witness::new(&[("a", a), ("b", b)]);
                return Ok(PropertyResult::fails(r, p, Some(side), w, examined));
            }
        }
    }
    Ok(PropertyResult::holds(p, Some(side), r.order()))
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum TransferError {
    #[error("precondition violated: {0}")]
    Precondition(String),
    /// No `y` exists although the preconditions hold; the transfer lemma
    /// says this cannot happen, so it signals a defect somewhere.
    #[error("discrepancy: no y makes b + y·c a unit (a={a}, b={b}, c={c}, x={x})")]
    Discrepancy { a: Elem, b: Elem, c: Elem, x: Elem },
}

/// Given `a·b + c = 1` with `a + c·x` a unit, returns the least `y` such that
/// `b + y·c` is a unit.
pub fn vasershtein_transfer(
    r: &FiniteRing,
    a: Elem,
    b: Elem,
    c: Elem,
    x: Elem,
) -> Result<Elem, TransferError> {
    for (role, e) in [("a", a), ("b", b), ("c", c), ("x", x)] {
        r.check_index(e)
            .map_err(|_| TransferError::Precondition(format!("{role}={e} is not an element")))?;
    }
    let u = units(r, UnitKind::TwoSided);
    transfer_with_units(r, &u, a, b, c, x)
}

pub(crate) fn transfer_with_units(
    r: &FiniteRing,
    u: &ElementSubset,
    a: Elem,
    b: Elem,
    c: Elem,
    x: Elem,
) -> Result<Elem, TransferError> {
    if r.add(r.mul(a, b), c) != r.one() {
        return Err(TransferError::Precondition(format!("a·b + c != 1 for a={a}, b={b}, c={c}")));
    }
    if !u.contains(r.add(a, r.mul(c, x))) {
        return Err(TransferError::Precondition(format!("a + c·x is not a unit for a={a}, c={c}, x={x}")));
    }
    r.elements()
        .find(|&y| u.contains(r.add(b, r.mul(y, c))))
        .ok_or(TransferError::Discrepancy { a, b, c, x })
}

fn is_two_sided_unit(r: &FiniteRing, w: Elem) -> bool {
    r.elements().any(|v| r.mul(v, w) == r.one()) && r.elements().any(|v| r.mul(w, v) == r.one())
}

fn is_side_unit(r: &FiniteRing, side: Side, w: Elem) -> bool {
    r.elements().any(|v| r.act(side, v, w) == r.one())
}

fn in_principal(r: &FiniteRing, side: Side, c: Elem, z: Elem) -> bool {
    r.elements().any(|s| r.act(side, s, c) == z)
}

fn principal_vec(r: &FiniteRing, side: Side, a: Elem) -> Vec<bool> {
    let mut v = vec![false; r.order()];
    for s in r.elements() {
        v[r.act(side, s, a)] = true;
    }
    v
}

fn annihilator_vec(r: &FiniteRing, side: Side, a: Elem) -> Vec<bool> {
    r.elements().map(|s| r.act(side, s, a) == r.zero()).collect()
}

/// Re-evaluates the defining formula directly (no cached subsets) and checks
/// that the result is self-consistent: a failing result's witness really
/// violates the property, and a holding result covered its whole domain.
pub fn replay(r: &FiniteRing, result: &PropertyResult) -> bool {
    let Some(w) = &result.witness else {
        return result.holds && result.search_space == result.property.domain_size(r.order());
    };
    if result.holds {
        return false;
    }
    let side = result.side.unwrap_or(Side::Left);
    if result.property.is_sided() != result.side.is_some() {
        return false;
    }
    let get = |role: &str| w.get(role).filter(|&e| e < r.order());
    match result.property {
        Property::DirectlyFinite => match (get("a"), get("b")) {
            (Some(a), Some(b)) => r.mul(a, b) == r.one() && r.mul(b, a) != r.one(),
            _ => false,
        },
        Property::StableRangeOne => match (get("a"), get("x"), get("b")) {
            (Some(a), Some(x), Some(b)) => {
                r.add(r.mul(a, x), b) == r.one()
                    && r.elements().all(|y| !is_two_sided_unit(r, r.add(a, r.mul(b, y))))
            }
            _ => false,
        },
        Property::UnitLifting => match (get("b"), get("c")) {
            (Some(b), Some(c)) => {
                let unit_mod_c = r
                    .elements()
                    .any(|a| in_principal(r, side, c, r.sub(r.act(side, a, b), r.one())));
                let lifts = r
                    .elements()
                    .any(|u| is_side_unit(r, side, u) && in_principal(r, side, c, r.sub(b, u)));
                unit_mod_c && !lifts
            }
            _ => false,
        },
        Property::QuasiMorphic => {
            let Some(a) = get("a") else { return false };
            match w.note.as_deref() {
                Some(PRINCIPAL_NOT_ANNIHILATOR) => {
                    let p = principal_vec(r, side, a);
                    r.elements().all(|b| annihilator_vec(r, side, b) != p)
                }
                Some(ANNIHILATOR_NOT_PRINCIPAL) => {
                    let q = annihilator_vec(r, side, a);
                    r.elements().all(|b| principal_vec(r, side, b) != q)
                }
                _ => false,
            }
        }
        Property::PrincipalAreAnnihilators => {
            let Some(a) = get("a") else { return false };
            let p = principal_vec(r, side, a);
            r.elements().all(|b| annihilator_vec(r, side, b) != p)
        }
        Property::UniquelyGenerated => match (get("a"), get("b")) {
            (Some(a), Some(b)) => {
                principal_vec(r, side, a) == principal_vec(r, side, b)
                    && r.elements().all(|u| !(is_two_sided_unit(r, u) && r.act(side, u, b) == a))
            }
            _ => false,
        },
    }
}
