//! Cross-checks of the implications and equivalences between the ring
//! properties, run ring by ring over a catalog.
//!
//! Every check consumes property results that were computed independently,
//! so an equivalence is only reported consistent when separate deciders agree.

use std::fmt;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::budget::{Deadline, Timeout};
use crate::properties::{property_vector, transfer_with_units, Property, PropertyResult, TransferError, Witness};
use crate::ring::{FiniteRing, Side};
use crate::spec::{construct_with_cap, RingSpec, DEFAULT_ORDER_CAP};
use crate::subsets::{units, UnitKind};

pub const DEFAULT_TIME_BUDGET: Duration = Duration::from_secs(30);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Check {
    /// `ab + c = 1` and `a + cx` a unit give some `y` with `b + yc` a unit.
    VasershteinTransfer,
    /// Unit lifting on either side forces direct finiteness.
    LiftingImpliesDirectlyFinite,
    /// Stable range one, left lifting and right lifting coincide.
    Sr1IffUnitLifting,
    /// When every left principal ideal is a left annihilator, left unique
    /// generation coincides with stable range one; stable range one always
    /// gives unique generation on both sides.
    UgIffSr1UnderAnnihilatorHypothesis,
    /// Stable range one gives unique generation on both sides, and either
    /// unique generation gives direct finiteness.
    Sr1ImpliesUgImpliesDf,
}

impl Check {
    pub const ALL: [Check; 5] = [
        Check::VasershteinTransfer,
        Check::LiftingImpliesDirectlyFinite,
        Check::Sr1IffUnitLifting,
        Check::UgIffSr1UnderAnnihilatorHypothesis,
        Check::Sr1ImpliesUgImpliesDf,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::VasershteinTransfer => "vasershtein_transfer",
            Check::LiftingImpliesDirectlyFinite => "lifting_implies_directly_finite",
            Check::Sr1IffUnitLifting => "sr1_iff_unit_lifting",
            Check::UgIffSr1UnderAnnihilatorHypothesis => "ug_iff_sr1_under_annihilator_hypothesis",
            Check::Sr1ImpliesUgImpliesDf => "sr1_implies_ug_implies_df",
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Verdict {
    Consistent,
    Discrepancy {
        details: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        witness: Option<Witness>,
    },
    Skipped {
        reason: String,
    },
}

impl Verdict {
    pub fn is_consistent(&self) -> bool {
        matches!(self, Verdict::Consistent)
    }

    pub fn is_discrepancy(&self) -> bool {
        matches!(self, Verdict::Discrepancy { .. })
    }

    fn discrepancy(details: impl Into<String>, witness: Option<&Witness>) -> Self {
        Verdict::Discrepancy { details: details.into(), witness: witness.cloned() }
    }

    fn budget_skip() -> Self {
        Verdict::Skipped { reason: "time budget exhausted".into() }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Consistent => f.write_str("consistent"),
            Verdict::Discrepancy { details, witness: Some(w) } => write!(f, "DISCREPANCY: {details} witness {w}"),
            Verdict::Discrepancy { details, witness: None } => write!(f, "DISCREPANCY: {details}"),
            Verdict::Skipped { reason } => write!(f, "skipped ({reason})"),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub check: Check,
    pub verdict: Verdict,
    /// Tuples swept, for checks that run their own search.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tuples: Option<u64>,
    /// Wall time; kept out of the machine format so reports stay reproducible.
    #[serde(skip)]
    pub elapsed: Duration,
}

/// Lookup over a property vector.
#[derive(Clone, Copy)]
pub struct Props<'a>(pub &'a [PropertyResult]);

impl<'a> Props<'a> {
    pub fn get(&self, property: Property, side: Option<Side>) -> &'a PropertyResult {
        self.0
            .iter()
            .find(|r| r.property == property && r.side == side)
            .unwrap_or_else(|| panic!("property vector lacks {property} {side:?}"))
    }

    fn df(&self) -> &'a PropertyResult {
        self.get(Property::DirectlyFinite, None)
    }

    fn sr1(&self) -> &'a PropertyResult {
        self.get(Property::StableRangeOne, None)
    }

    fn sided(&self, property: Property, side: Side) -> &'a PropertyResult {
        self.get(property, Some(side))
    }
}

/// `p ⇒ q` over results; on failure names both and carries `q`'s witness.
fn implication(p: &PropertyResult, q: &PropertyResult) -> Option<Verdict> {
    (p.holds && !q.holds).then(|| {
        Verdict::discrepancy(format!("{} holds but {} fails", p.key(), q.key()), q.witness.as_ref())
    })
}

fn first_discrepancy(parts: impl IntoIterator<Item = Option<Verdict>>) -> Verdict {
    parts.into_iter().flatten().next().unwrap_or(Verdict::Consistent)
}

pub fn lifting_implies_df_verdict(props: Props<'_>) -> Verdict {
    first_discrepancy(
        Side::BOTH.map(|side| implication(props.sided(Property::UnitLifting, side), props.df())),
    )
}

pub fn theorem3_verdict(props: Props<'_>) -> Verdict {
    let sr1 = props.sr1();
    let left = props.sided(Property::UnitLifting, Side::Left);
    let right = props.sided(Property::UnitLifting, Side::Right);
    if sr1.holds == left.holds && left.holds == right.holds {
        return Verdict::Consistent;
    }
    let witness = [sr1, left, right].into_iter().find_map(|r| r.witness.as_ref());
    Verdict::discrepancy(
        format!(
            "{}={} {}={} {}={}",
            sr1.key(),
            sr1.holds,
            left.key(),
            left.holds,
            right.key(),
            right.holds
        ),
        witness,
    )
}

pub fn theorem5_verdict(props: Props<'_>) -> Verdict {
    let pa = props.sided(Property::PrincipalAreAnnihilators, Side::Left);
    let ug_left = props.sided(Property::UniquelyGenerated, Side::Left);
    let ug_right = props.sided(Property::UniquelyGenerated, Side::Right);
    let sr1 = props.sr1();
    let conditional = (pa.holds && ug_left.holds != sr1.holds).then(|| {
        let witness = [ug_left, sr1].into_iter().find_map(|r| r.witness.as_ref());
        Verdict::discrepancy(
            format!(
                "{} holds yet {}={} while {}={}",
                pa.key(),
                ug_left.key(),
                ug_left.holds,
                sr1.key(),
                sr1.holds
            ),
            witness,
        )
    });
    first_discrepancy([conditional, implication(sr1, ug_left), implication(sr1, ug_right)])
}

pub fn remark6_verdict(props: Props<'_>) -> Verdict {
    let sr1 = props.sr1();
    let ug_left = props.sided(Property::UniquelyGenerated, Side::Left);
    let ug_right = props.sided(Property::UniquelyGenerated, Side::Right);
    first_discrepancy([
        implication(sr1, ug_left),
        implication(sr1, ug_right),
        implication(ug_left, props.df()),
        implication(ug_right, props.df()),
    ])
}

/// Outcome of the exhaustive transfer sweep.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransferSweep {
    pub verdict: Verdict,
    /// All `(a, b, c, x)` quadruples visited.
    pub tuples: u64,
    /// Quadruples meeting both preconditions.
    pub applicable: u64,
}

/// Runs the transfer on every quadruple `(a, b, c, x)` of `r`.
pub fn check_vasershtein(r: &FiniteRing) -> TransferSweep {
    vasershtein_sweep(r, &Deadline::none()).expect("no deadline")
}

fn vasershtein_sweep(r: &FiniteRing, deadline: &Deadline) -> Result<TransferSweep, Timeout> {
    let u = units(r, UnitKind::TwoSided);
    let mut tuples = 0u64;
    let mut applicable = 0u64;
    for a in r.elements() {
        deadline.check()?;
        for b in r.elements() {
            for c in r.elements() {
                for x in r.elements() {
                    tuples += 1;
                    match transfer_with_units(r, &u, a, b, c, x) {
                        Ok(_) => applicable += 1,
                        Err(TransferError::Precondition(_)) => {}
                        Err(TransferError::Discrepancy { .. }) => {
                            let w = Witness::new(&[("a", a), ("b", b), ("c", c), ("x", x)]);
                            return Ok(TransferSweep {
                                verdict: Verdict::discrepancy("no y makes b + y·c a unit", Some(&w)),
                                tuples,
                                applicable,
                            });
                        }
                    }
                }
            }
        }
    }
    Ok(TransferSweep { verdict: Verdict::Consistent, tuples, applicable })
}

fn fresh_props(r: &FiniteRing) -> Vec<PropertyResult> {
    property_vector(r, &Deadline::none()).expect("no deadline")
}

pub fn check_lifting_implies_df(r: &FiniteRing) -> Verdict {
    lifting_implies_df_verdict(Props(&fresh_props(r)))
}

pub fn check_theorem3(r: &FiniteRing) -> Verdict {
    theorem3_verdict(Props(&fresh_props(r)))
}

pub fn check_theorem5(r: &FiniteRing) -> Verdict {
    theorem5_verdict(Props(&fresh_props(r)))
}

pub fn check_remark6(r: &FiniteRing) -> Verdict {
    remark6_verdict(Props(&fresh_props(r)))
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TheoremReport {
    pub label: String,
    /// Where the entry came from (catalog file name or caller-supplied name).
    pub source: String,
    /// The spec document the ring was built from.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spec: Option<RingSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<usize>,
    pub properties: Vec<PropertyResult>,
    pub checks: Vec<CheckOutcome>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl TheoremReport {
    pub fn has_discrepancy(&self) -> bool {
        self.checks.iter().any(|c| c.verdict.is_discrepancy())
    }

    pub fn is_error(&self) -> bool {
        self.error.is_some()
    }

    pub fn outcome(&self, check: Check) -> Option<&CheckOutcome> {
        self.checks.iter().find(|c| c.check == check)
    }

    pub fn props(&self) -> Props<'_> {
        Props(&self.properties)
    }
}

impl fmt::Display for TheoremReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (&self.error, self.order) {
            (Some(e), _) => return writeln!(f, "{} [{}]: ERROR {e}", self.label, self.source),
            (None, Some(n)) => writeln!(f, "{} [{}] order {n}", self.label, self.source)?,
            (None, None) => writeln!(f, "{} [{}]", self.label, self.source)?,
        }
        for p in &self.properties {
            writeln!(f, "  {p}")?;
        }
        for c in &self.checks {
            write!(f, "  check {}: {}", c.check, c.verdict)?;
            if let Some(t) = c.tuples {
                write!(f, " [{t} tuples]")?;
            }
            writeln!(f, " ({:.3}s)", c.elapsed.as_secs_f64())?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug)]
pub struct SuiteOptions {
    pub time_budget: Duration,
    pub order_cap: usize,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions { time_budget: DEFAULT_TIME_BUDGET, order_cap: DEFAULT_ORDER_CAP }
    }
}

/// Runs every property and every check on one ring.
pub fn verify_ring(r: &FiniteRing, source: &str, spec: Option<RingSpec>, options: &SuiteOptions) -> TheoremReport {
    let deadline = Deadline::after(options.time_budget);
    let mut report = TheoremReport {
        label: r.label().to_string(),
        source: source.to_string(),
        spec,
        order: Some(r.order()),
        properties: Vec::new(),
        checks: Vec::new(),
        error: None,
    };

    let start = Instant::now();
    let sweep = vasershtein_sweep(r, &deadline);
    report.checks.push(CheckOutcome {
        check: Check::VasershteinTransfer,
        verdict: sweep.as_ref().map_or_else(|_| Verdict::budget_skip(), |s| s.verdict.clone()),
        tuples: sweep.as_ref().ok().map(|s| s.tuples),
        elapsed: start.elapsed(),
    });

    let start = Instant::now();
    let props = property_vector(r, &deadline);
    let props_elapsed = start.elapsed();
    let derived: [(Check, fn(Props<'_>) -> Verdict); 4] = [
        (Check::LiftingImpliesDirectlyFinite, lifting_implies_df_verdict),
        (Check::Sr1IffUnitLifting, theorem3_verdict),
        (Check::UgIffSr1UnderAnnihilatorHypothesis, theorem5_verdict),
        (Check::Sr1ImpliesUgImpliesDf, remark6_verdict),
    ];
    for (check, decide) in derived {
        let verdict = match &props {
            Ok(p) => decide(Props(p)),
            Err(Timeout) => Verdict::budget_skip(),
        };
        report.checks.push(CheckOutcome { check, verdict, tuples: None, elapsed: props_elapsed });
    }
    report.properties = props.unwrap_or_default();
    report
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub spec: Result<RingSpec, String>,
}

/// Ordered list of ring specs to verify.
#[derive(Clone, Debug, Default)]
pub struct Catalog {
    pub entries: Vec<CatalogEntry>,
}

impl Catalog {
    pub fn from_specs<I, S>(specs: I) -> Self
    where
        I: IntoIterator<Item = (S, RingSpec)>,
        S: Into<String>,
    {
        Catalog {
            entries: specs
                .into_iter()
                .map(|(name, spec)| CatalogEntry { name: name.into(), spec: Ok(spec) })
                .collect(),
        }
    }

    /// Catalog shipped with the repository.
    pub fn default_dir() -> PathBuf {
        Path::new(env!("CARGO_MANIFEST_DIR")).join("../../catalog")
    }

    /// Loads every `*.json` file under `dir`, recursively, in path order.
    /// Files that fail to parse become error entries rather than aborting.
    pub fn load_dir(dir: &Path) -> std::io::Result<Catalog> {
        if !dir.is_dir() {
            return Err(std::io::Error::new(
                std::io::ErrorKind::NotFound,
                format!("catalog directory {} not found", dir.display()),
            ));
        }
        let mut entries = Vec::new();
        for item in walkdir::WalkDir::new(dir).sort_by_file_name() {
            let item = item.map_err(std::io::Error::other)?;
            let path = item.path();
            if !item.file_type().is_file() || path.extension().is_none_or(|e| e != "json") {
                continue;
            }
            let name = path
                .strip_prefix(dir)
                .unwrap_or(path)
                .to_string_lossy()
                .replace('\\', "/");
            let spec = std::fs::read_to_string(path)
                .map_err(|e| e.to_string())
                .and_then(|text| RingSpec::from_json(&text).map_err(|e| e.to_string()));
            entries.push(CatalogEntry { name, spec });
        }
        Ok(Catalog { entries })
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SuiteReport {
    pub reports: Vec<TheoremReport>,
    pub rings: usize,
    pub discrepancies: usize,
    pub errors: usize,
    pub skipped: usize,
    pub consistent: bool,
}

impl SuiteReport {
    fn from_reports(reports: Vec<TheoremReport>) -> Self {
        let discrepancies = reports.iter().filter(|r| r.has_discrepancy()).count();
        let errors = reports.iter().filter(|r| r.is_error()).count();
        let skipped = reports
            .iter()
            .flat_map(|r| &r.checks)
            .filter(|c| matches!(c.verdict, Verdict::Skipped { .. }))
            .count();
        SuiteReport {
            rings: reports.len(),
            consistent: discrepancies == 0,
            reports,
            discrepancies,
            errors,
            skipped,
        }
    }

    /// 0 when every check is consistent, 1 on any discrepancy, 2 when an
    /// entry could not be loaded or built.
    pub fn exit_code(&self) -> i32 {
        if self.discrepancies > 0 {
            1
        } else if self.errors > 0 {
            2
        } else {
            0
        }
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.reports {
            write!(f, "{r}")?;
        }
        writeln!(
            f,
            "{} rings: {} with discrepancies, {} errors, {} skipped checks -> {}",
            self.rings,
            self.discrepancies,
            self.errors,
            self.skipped,
            if self.consistent { "all consistent" } else { "DISCREPANCIES FOUND" }
        )
    }
}

/// Verifies every catalog entry; rings run in parallel but reports keep
/// catalog order.
pub fn run_suite(catalog: &Catalog, options: &SuiteOptions) -> SuiteReport {
    let reports = catalog
        .entries
        .par_iter()
        .map(|entry| {
            let built = entry
                .spec
                .clone()
                .and_then(|spec| construct_with_cap(&spec, options.order_cap).map(|r| (r, spec)).map_err(|e| e.to_string()));
            match built {
                Ok((ring, spec)) => verify_ring(&ring, &entry.name, Some(spec), options),
                Err(error) => TheoremReport {
                    label: entry.name.clone(),
                    source: entry.name.clone(),
                    spec: entry.spec.clone().ok(),
                    order: None,
                    properties: Vec::new(),
                    checks: Vec::new(),
                    error: Some(error),
                },
            }
        })
        .collect();
    SuiteReport::from_reports(reports)
}
