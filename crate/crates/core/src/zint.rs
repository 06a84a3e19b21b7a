//! Exact decisions over the integers, the one infinite ring handled here.
//!
//! The units of Z are ±1, so every existential over units reduces to a
//! divisibility test. All arithmetic is arbitrary precision.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::properties::Property;
use crate::ring::Side;
use crate::theorems::{Check, CheckOutcome, Verdict};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ZError {
    #[error("precondition violated: {0}")]
    Precondition(String),
}

fn serialize_decimal<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}

/// `divisor | dividend`, with `0 | m` meaning `m = 0`.
pub fn divides(divisor: &BigInt, dividend: &BigInt) -> bool {
    if divisor.is_zero() {
        dividend.is_zero()
    } else {
        dividend.is_multiple_of(divisor)
    }
}

/// One divisibility fact used to justify a verdict.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DivFact {
    #[serde(serialize_with = "serialize_decimal")]
    pub divisor: BigInt,
    #[serde(serialize_with = "serialize_decimal")]
    pub dividend: BigInt,
    pub divides: bool,
}

impl DivFact {
    fn new(divisor: BigInt, dividend: BigInt) -> Self {
        let divides = divides(&divisor, &dividend);
        DivFact { divisor, dividend, divides }
    }

    pub fn replays(&self) -> bool {
        divides(&self.divisor, &self.dividend) == self.divides
    }
}

impl fmt::Display for DivFact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rel = if self.divides { "|" } else { "∤" };
        write!(f, "{} {rel} {}", self.divisor, self.dividend)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ZClaim {
    /// `a·x + b = 1` but no `y` makes `a + b·y` a unit.
    StableRangeOneFails,
    /// `b` is a unit modulo `cZ` but no unit is congruent to it.
    UnitLiftingFails,
    /// `2Z` is neither `0` nor `Z`, the only annihilators.
    PrincipalNotAnnihilator,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ZRole {
    pub role: String,
    #[serde(serialize_with = "serialize_decimal")]
    pub value: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ZWitness {
    pub claim: ZClaim,
    pub roles: Vec<ZRole>,
    pub trace: Vec<DivFact>,
}

impl ZWitness {
    fn new(claim: ZClaim, roles: &[(&str, &BigInt)], trace: Vec<DivFact>) -> Self {
        ZWitness {
            claim,
            roles: roles.iter().map(|(r, v)| ZRole { role: r.to_string(), value: (*v).clone() }).collect(),
            trace,
        }
    }

    pub fn get(&self, role: &str) -> Option<&BigInt> {
        self.roles.iter().find(|r| r.role == role).map(|r| &r.value)
    }

    /// Recomputes every fact in the trace and confirms they establish the claim.
    pub fn replay(&self) -> bool {
        if !self.trace.iter().all(DivFact::replays) {
            return false;
        }
        let one = BigInt::one();
        let unit_targets = |base: &BigInt| [&one - base, -&one - base];
        match self.claim {
            ZClaim::StableRangeOneFails => {
                let (Some(a), Some(x), Some(b)) = (self.get("a"), self.get("x"), self.get("b")) else {
                    return false;
                };
                a * x + b == one
                    && unit_targets(a).iter().all(|t| {
                        self.trace.iter().any(|f| &f.divisor == b && &f.dividend == t && !f.divides)
                    })
            }
            ZClaim::UnitLiftingFails => {
                let (Some(b), Some(c)) = (self.get("b"), self.get("c")) else {
                    return false;
                };
                b.gcd(c).is_one()
                    && [b - &one, b + &one].iter().all(|t| {
                        self.trace.iter().any(|f| &f.divisor == c && &f.dividend == t && !f.divides)
                    })
            }
            ZClaim::PrincipalNotAnnihilator => {
                // aZ is an annihilator only when it is 0 or Z, i.e. a in {0, ±1}.
                let Some(a) = self.get("a") else { return false };
                a.abs() > one
            }
        }
    }
}

impl fmt::Display for ZWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let roles: Vec<String> = self.roles.iter().map(|r| format!("{}={}", r.role, r.value)).collect();
        let trace: Vec<String> = self.trace.iter().map(ToString::to_string).collect();
        write!(f, "({}) [{}]", roles.join(", "), trace.join(", "))
    }
}

/// Decides stable range one at `(a, x, b)`: a `y` with `a + b·y = ±1`.
///
/// For `b != 0` such a `y` exists iff `b | 1 − a` or `b | −1 − a`; for `b = 0`
/// iff `a = ±1`. The `+1` target is tried first.
pub fn z_sr1_decide(a: &BigInt, x: &BigInt, b: &BigInt) -> Result<Option<BigInt>, ZError> {
    if a * x + b != BigInt::one() {
        return Err(ZError::Precondition(format!("{a}·{x} + {b} != 1")));
    }
    let one = BigInt::one();
    for target in [&one - a, -&one - a] {
        if b.is_zero() {
            if target.is_zero() {
                return Ok(Some(BigInt::zero()));
            }
        } else if target.is_multiple_of(b) {
            return Ok(Some(target / b));
        }
    }
    Ok(None)
}

/// For `b` a unit modulo `cZ` (`gcd(b, c) = 1`), the unit `u = ±1` with
/// `c | b − u`, if any. `u = 1` is preferred.
pub fn z_unit_lift_decide(b: &BigInt, c: &BigInt) -> Result<Option<BigInt>, ZError> {
    if !b.gcd(c).is_one() {
        return Err(ZError::Precondition(format!("gcd({b}, {c}) != 1")));
    }
    let one = BigInt::one();
    Ok([one.clone(), -one].into_iter().find(|u| divides(c, &(b - u))))
}

/// For `aZ = bZ` (`|a| = |b|`), the unit `u` with `a = u·b`.
pub fn z_ug_decide(a: &BigInt, b: &BigInt) -> Result<Option<BigInt>, ZError> {
    if a.abs() != b.abs() {
        return Err(ZError::Precondition(format!("{a}Z != {b}Z")));
    }
    let u = if a == b { BigInt::one() } else { -BigInt::one() };
    debug_assert_eq!(&u * b, *a);
    Ok(Some(u))
}

/// Position of `v` in the enumeration 0, 1, −1, 2, −2, …
fn enum_key(v: i64) -> (u64, bool) {
    (v.unsigned_abs(), v < 0)
}

/// Witness order: largest absolute value first, then each coordinate in
/// enumeration order.
fn witness_cmp(a: &[i64], b: &[i64]) -> Ordering {
    let height = |t: &[i64]| t.iter().map(|v| v.unsigned_abs()).max().unwrap_or(0);
    height(a)
        .cmp(&height(b))
        .then_with(|| a.iter().map(|&v| enum_key(v)).cmp(b.iter().map(|&v| enum_key(v))))
}

fn least(best: &mut Option<Vec<i64>>, candidate: Vec<i64>) {
    if best.as_ref().is_none_or(|b| witness_cmp(&candidate, b) == Ordering::Less) {
        *best = Some(candidate);
    }
}

fn sr1_witness(a: &BigInt, x: &BigInt, b: &BigInt) -> ZWitness {
    let one = BigInt::one();
    let trace = vec![DivFact::new(b.clone(), &one - a), DivFact::new(b.clone(), -&one - a)];
    ZWitness::new(ZClaim::StableRangeOneFails, &[("a", a), ("x", x), ("b", b)], trace)
}

fn lift_witness(b: &BigInt, c: &BigInt) -> ZWitness {
    let one = BigInt::one();
    let trace = vec![DivFact::new(c.clone(), b - &one), DivFact::new(c.clone(), b + &one)];
    ZWitness::new(ZClaim::UnitLiftingFails, &[("b", b), ("c", c)], trace)
}

#[derive(Clone, Debug, Serialize)]
pub struct ZPropertyResult {
    pub property: Property,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub side: Option<Side>,
    pub holds: bool,
    pub witness: Option<ZWitness>,
    /// How the verdict was reached.
    pub basis: String,
}

impl fmt::Display for ZPropertyResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.side {
            Some(s) => write!(f, "{}[{s}]", self.property)?,
            None => write!(f, "{}", self.property)?,
        }
        write!(f, ": {}", if self.holds { "holds" } else { "fails" })?;
        if let Some(w) = &self.witness {
            write!(f, " witness {w}")?;
        }
        write!(f, " ({})", self.basis)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ZSweep {
    /// `(a, x, b)` with `a·x + b = 1` inside the bound.
    pub sr1_triples: u64,
    pub sr1_failures: u64,
    /// `(b, c)` with `gcd(b, c) = 1` inside the bound.
    pub lift_pairs: u64,
    pub lift_failures: u64,
    /// `(a, b)` with `aZ = bZ` inside the bound.
    pub ug_pairs: u64,
    pub ug_failures: u64,
    /// Cases where the divisibility decision and the bounded search disagree.
    pub decision_search_mismatches: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct ZReport {
    pub label: String,
    pub bound: u64,
    pub properties: Vec<ZPropertyResult>,
    pub checks: Vec<CheckOutcome>,
    pub sweep: ZSweep,
}

impl ZReport {
    pub fn property(&self, property: Property, side: Option<Side>) -> &ZPropertyResult {
        self.properties
            .iter()
            .find(|p| p.property == property && p.side == side)
            .expect("Z report carries every property")
    }

    pub fn has_discrepancy(&self) -> bool {
        self.sweep.decision_search_mismatches > 0
            || self.sweep.ug_failures > 0
            || self.checks.iter().any(|c| c.verdict.is_discrepancy())
    }
}

impl fmt::Display for ZReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} (|values| <= {})", self.label, self.bound)?;
        for p in &self.properties {
            writeln!(f, "  {p}")?;
        }
        for c in &self.checks {
            writeln!(f, "  check {}: {}", c.check, c.verdict)?;
        }
        let s = &self.sweep;
        writeln!(
            f,
            "  sweep: {} sr1 triples ({} failing), {} lifting pairs ({} failing), {} equal-ideal pairs ({} failing), {} decision/search mismatches",
            s.sr1_triples, s.sr1_failures, s.lift_pairs, s.lift_failures, s.ug_pairs, s.ug_failures, s.decision_search_mismatches
        )
    }
}

fn bounded_y_search(a: i64, b: i64, y_bound: i64) -> bool {
    (-y_bound..=y_bound).any(|y| {
        let v = i128::from(a) + i128::from(b) * i128::from(y);
        v == 1 || v == -1
    })
}

fn bounded_lift_search(b: i64, c: i64, v_bound: i64) -> bool {
    [1i128, -1].iter().any(|&u| {
        (-v_bound..=v_bound).any(|v| i128::from(b) - u == i128::from(c) * i128::from(v))
    })
}

/// Sweeps every tuple with entries in `[-bound, bound]`, cross-checking the
/// divisibility decisions against bounded searches and collecting the least
/// failing witnesses.
pub fn z_remark6_report(bound: u64) -> Result<ZReport, ZError> {
    if bound < 5 {
        return Err(ZError::Precondition(format!("bound {bound} < 5")));
    }
    let b_max = i64::try_from(bound).map_err(|_| ZError::Precondition("bound too large".into()))?;
    let y_bound = 2 * b_max * b_max;
    let mut sweep = ZSweep::default();
    let mut sr1_least = None;
    let mut lift_least = None;

    for a in -b_max..=b_max {
        for x in -b_max..=b_max {
            let b = 1 - a * x;
            if b.abs() > b_max {
                continue;
            }
            sweep.sr1_triples += 1;
            let decided = z_sr1_decide(&a.into(), &x.into(), &b.into())?;
            if decided.is_some() != bounded_y_search(a, b, y_bound) {
                sweep.decision_search_mismatches += 1;
            }
            if decided.is_none() {
                sweep.sr1_failures += 1;
                least(&mut sr1_least, vec![a, x, b]);
            }
        }
    }
    for b in -b_max..=b_max {
        for c in -b_max..=b_max {
            if b.gcd(&c) != 1 {
                continue;
            }
            sweep.lift_pairs += 1;
            let decided = z_unit_lift_decide(&b.into(), &c.into())?;
            if decided.is_some() != bounded_lift_search(b, c, 2 * b_max) {
                sweep.decision_search_mismatches += 1;
            }
            if decided.is_none() {
                sweep.lift_failures += 1;
                least(&mut lift_least, vec![b, c]);
            }
        }
    }
    for a in -b_max..=b_max {
        for b in [-a, a] {
            if b == -a && a == 0 {
                continue;
            }
            sweep.ug_pairs += 1;
            match z_ug_decide(&a.into(), &b.into())? {
                Some(u) if &u * BigInt::from(b) == BigInt::from(a) => {}
                _ => sweep.ug_failures += 1,
            }
        }
    }

    let swept = format!("exact divisibility decision over |values| <= {bound}");
    let sr1 = ZPropertyResult {
        property: Property::StableRangeOne,
        side: None,
        holds: sr1_least.is_none(),
        witness: sr1_least.map(|t| sr1_witness(&t[0].into(), &t[1].into(), &t[2].into())),
        basis: swept.clone(),
    };
    let lift_witness = lift_least.map(|t| lift_witness(&t[0].into(), &t[1].into()));
    let lift = |side| ZPropertyResult {
        property: Property::UnitLifting,
        side: Some(side),
        holds: lift_witness.is_none(),
        witness: lift_witness.clone(),
        basis: if side == Side::Left { swept.clone() } else { "commutative: same as left".into() },
    };
    let ug = |side| ZPropertyResult {
        property: Property::UniquelyGenerated,
        side: Some(side),
        holds: sweep.ug_failures == 0,
        witness: None,
        basis: "aZ = bZ forces a = ±b".into(),
    };
    let two = BigInt::from(2);
    let pa = ZPropertyResult {
        property: Property::PrincipalAreAnnihilators,
        side: Some(Side::Left),
        holds: false,
        witness: Some(ZWitness::new(ZClaim::PrincipalNotAnnihilator, &[("a", &two)], Vec::new())),
        basis: "annihilators of Z are 0 and Z only".into(),
    };
    let df = ZPropertyResult {
        property: Property::DirectlyFinite,
        side: None,
        holds: true,
        witness: None,
        basis: "commutative (recorded, not searched)".into(),
    };
    let properties = vec![df, sr1, lift(Side::Left), lift(Side::Right), pa, ug(Side::Left), ug(Side::Right)];

    let mut report = ZReport { label: "Z".into(), bound, properties, checks: Vec::new(), sweep };
    report.checks = z_checks(&report);
    Ok(report)
}

fn z_checks(report: &ZReport) -> Vec<CheckOutcome> {
    let holds = |p, s| report.property(p, s).holds;
    let (l, r) = (Some(Side::Left), Some(Side::Right));
    let df = holds(Property::DirectlyFinite, None);
    let sr1 = holds(Property::StableRangeOne, None);
    let lift = [holds(Property::UnitLifting, l), holds(Property::UnitLifting, r)];
    let ug = [holds(Property::UniquelyGenerated, l), holds(Property::UniquelyGenerated, r)];
    let pa = holds(Property::PrincipalAreAnnihilators, l);
    let verdict = |ok: bool, details: &str| {
        if ok {
            Verdict::Consistent
        } else {
            Verdict::Discrepancy { details: details.to_string(), witness: None }
        }
    };
    let outcome = |check, verdict| CheckOutcome { check, verdict, tuples: None, elapsed: Default::default() };
    vec![
        outcome(
            Check::LiftingImpliesDirectlyFinite,
            verdict(lift.iter().all(|&l| !l || df), "unit lifting without direct finiteness"),
        ),
        outcome(
            Check::Sr1IffUnitLifting,
            verdict(sr1 == lift[0] && lift[0] == lift[1], "stable range one and unit lifting disagree"),
        ),
        outcome(
            Check::UgIffSr1UnderAnnihilatorHypothesis,
            verdict((!pa || ug[0] == sr1) && (!sr1 || (ug[0] && ug[1])), "unique generation and stable range one disagree"),
        ),
        outcome(
            Check::Sr1ImpliesUgImpliesDf,
            verdict((!sr1 || (ug[0] && ug[1])) && ug.iter().all(|&u| !u || df), "implication chain broken"),
        ),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn sr1_decisions() {
        assert_eq!(z_sr1_decide(&z(2), &z(-2), &z(5)), Ok(None));
        assert_eq!(z_sr1_decide(&z(3), &z(-1), &z(4)), Ok(Some(z(-1))));
        assert_eq!(z_sr1_decide(&z(1), &z(1), &z(0)), Ok(Some(z(0))));
        assert_eq!(z_sr1_decide(&z(-1), &z(-1), &z(0)), Ok(Some(z(0))));
        assert!(z_sr1_decide(&z(2), &z(2), &z(2)).is_err());
    }

    #[test]
    fn lift_decisions() {
        assert_eq!(z_unit_lift_decide(&z(2), &z(5)), Ok(None));
        assert_eq!(z_unit_lift_decide(&z(4), &z(5)), Ok(Some(z(-1))));
        for c in -7..=7 {
            assert_eq!(z_unit_lift_decide(&z(1), &z(c)), Ok(Some(z(1))));
        }
        assert!(z_unit_lift_decide(&z(2), &z(4)).is_err());
        assert!(z_unit_lift_decide(&z(3), &z(0)).is_err());
    }

    #[test]
    fn ug_decisions() {
        assert_eq!(z_ug_decide(&z(2), &z(-2)), Ok(Some(z(-1))));
        assert_eq!(z_ug_decide(&z(0), &z(0)), Ok(Some(z(1))));
        assert!(z_ug_decide(&z(2), &z(3)).is_err());
    }

    #[test]
    fn huge_values_stay_exact() {
        let big: BigInt = "123456789012345678901234567890".parse().unwrap();
        // a = big, x = 1, b = 1 - big: y = 1 gives a + b = 1.
        let b = BigInt::one() - &big;
        assert_eq!(z_sr1_decide(&big, &BigInt::one(), &b), Ok(Some(BigInt::one())));
    }

    #[test]
    fn witness_order_prefers_small_then_enumeration_order() {
        assert_eq!(witness_cmp(&[2, -2, 5], &[-3, -2, -5]), Ordering::Less);
        assert_eq!(witness_cmp(&[2, -2, 5], &[2, 3, -5]), Ordering::Less);
        assert_eq!(witness_cmp(&[1, 1, 9], &[2, -2, 5]), Ordering::Greater);
    }

    #[test]
    fn report_rejects_small_bound() {
        assert!(z_remark6_report(4).is_err());
    }

    #[test]
    fn witnesses_replay() {
        let w = sr1_witness(&z(2), &z(-2), &z(5));
        assert!(w.replay());
        let mut bad = w.clone();
        bad.trace[0].divides = true;
        assert!(!bad.replay());
        assert!(!sr1_witness(&z(3), &z(-1), &z(4)).replay());
        assert!(lift_witness(&z(2), &z(5)).replay());
        assert!(!lift_witness(&z(4), &z(5)).replay());
    }
}
