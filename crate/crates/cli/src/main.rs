use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use ringlab::enumerate::{canonical_hash, emit_rings, enumerate_unital_rings_with, EnumerateOptions};
use ringlab::properties::evaluate_within;
use ringlab::spec::DEFAULT_ORDER_CAP;
use ringlab::zint::z_remark6_report;
use ringlab::{
    canonical_form, construct_with_cap, run_suite, units, validate, Catalog, Deadline, Property, RingSpec,
    Side, SuiteOptions, UnitKind,
};

#[derive(Parser, Debug)]
#[command(name = "ringlab", version, about = "Decide and cross-check ring properties on finite rings")]
struct Cli {
    /// Report format: a human summary or one JSON document.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    /// Per-ring time budget in seconds for exhaustive checks.
    #[arg(long, env = "RINGLAB_TIME_BUDGET", default_value_t = 30, global = true)]
    budget: u64,

    /// Largest ring order accepted when building from a spec.
    #[arg(long, default_value_t = DEFAULT_ORDER_CAP, global = true)]
    max_order: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Machine,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum SideArg {
    Left,
    Right,
}

impl From<SideArg> for Side {
    fn from(s: SideArg) -> Self {
        match s {
            SideArg::Left => Side::Left,
            SideArg::Right => Side::Right,
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "snake_case")]
enum PropertyArg {
    DirectlyFinite,
    StableRangeOne,
    UnitLifting,
    QuasiMorphic,
    PrincipalAreAnnihilators,
    UniquelyGenerated,
}

impl From<PropertyArg> for Property {
    fn from(p: PropertyArg) -> Self {
        match p {
            PropertyArg::DirectlyFinite => Property::DirectlyFinite,
            PropertyArg::StableRangeOne => Property::StableRangeOne,
            PropertyArg::UnitLifting => Property::UnitLifting,
            PropertyArg::QuasiMorphic => Property::QuasiMorphic,
            PropertyArg::PrincipalAreAnnihilators => Property::PrincipalAreAnnihilators,
            PropertyArg::UniquelyGenerated => Property::UniquelyGenerated,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check a spec's tables against the ring axioms.
    Validate { spec: PathBuf },
    /// Decide properties of one ring.
    Props {
        spec: PathBuf,
        #[arg(long = "property", value_enum)]
        properties: Vec<PropertyArg>,
        #[arg(long, value_enum)]
        side: Option<SideArg>,
    },
    /// Run every cross-check on one ring or on the catalog.
    Check {
        /// Ring spec file.
        #[arg(required_unless_present = "catalog", conflicts_with = "catalog")]
        spec: Option<PathBuf>,
        /// Check every spec in the catalog directory.
        #[arg(long)]
        catalog: bool,
        /// Catalog directory (defaults to the one shipped with the repository).
        #[arg(long, env = "RINGLAB_CATALOG_DIR")]
        catalog_dir: Option<PathBuf>,
    },
    /// List every unital ring of an order up to isomorphism.
    Enumerate {
        #[arg(long)]
        order: usize,
        /// Write each ring as a table-literal spec into this directory.
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Exact checks over the integers.
    Zdemo {
        #[arg(long, default_value_t = 10)]
        bound: u64,
    },
}

struct Output {
    code: u8,
    text: String,
    machine: serde_json::Value,
}

fn read_spec(path: &Path) -> Result<RingSpec> {
    let text = std::fs::read_to_string(path).with_context(|| format!("cannot read spec {}", path.display()))?;
    RingSpec::from_json(&text).with_context(|| format!("spec {}", path.display()))
}

fn to_value<T: Serialize>(v: &T) -> serde_json::Value {
    serde_json::to_value(v).expect("reports serialize")
}

fn run(cli: &Cli) -> Result<Output> {
    let budget = Duration::from_secs(cli.budget);
    match &cli.command {
        Command::Validate { spec } => {
            let doc = read_spec(spec)?;
            let report = match &doc {
                RingSpec::Table { order, add, mul, zero, one, .. } => validate(add, mul, *zero, *one, *order),
                other => {
                    let r = construct_with_cap(other, cli.max_order)?;
                    validate(&r.add_rows(), &r.mul_rows(), r.zero(), r.one(), r.order())
                }
            };
            Ok(Output {
                code: if report.ok { 0 } else { 1 },
                text: format!("{}: {report}\n", spec.display()),
                machine: json!({ "command": "validate", "spec": to_value(&doc), "report": to_value(&report) }),
            })
        }
        Command::Props { spec, properties, side } => {
            let doc = read_spec(spec)?;
            let ring = construct_with_cap(&doc, cli.max_order)?;
            let wanted: Vec<Property> = if properties.is_empty() {
                Property::ALL.to_vec()
            } else {
                properties.iter().map(|&p| p.into()).collect()
            };
            let sides: Vec<Side> = side.map_or(Side::BOTH.to_vec(), |s| vec![s.into()]);
            let deadline = Deadline::after(budget);
            let mut results = Vec::new();
            for p in wanted {
                let on = if p.is_sided() { sides.clone() } else { vec![Side::Left] };
                for s in on {
                    match evaluate_within(&ring, p, s, &deadline) {
                        Ok(r) => results.push(r),
                        Err(_) => bail!("time budget of {}s exhausted while deciding {p}", cli.budget),
                    }
                }
            }
            let mut text = format!("{ring}\n");
            for r in &results {
                text.push_str(&format!("  {r}\n"));
            }
            Ok(Output {
                code: 0,
                text,
                machine: json!({
                    "command": "props",
                    "spec": to_value(&doc),
                    "ring": { "label": ring.label(), "order": ring.order() },
                    "results": to_value(&results),
                }),
            })
        }
        Command::Check { spec, catalog_dir, .. } => {
            let catalog = match spec {
                Some(path) => Catalog::from_specs([(path.display().to_string(), read_spec(path)?)]),
                None => {
                    let dir = catalog_dir.clone().unwrap_or_else(Catalog::default_dir);
                    Catalog::load_dir(&dir).with_context(|| format!("cannot load catalog {}", dir.display()))?
                }
            };
            let options = SuiteOptions { time_budget: budget, order_cap: cli.max_order };
            let suite = run_suite(&catalog, &options);
            Ok(Output {
                code: suite.exit_code() as u8,
                text: suite.to_string(),
                machine: json!({ "command": "check", "suite": to_value(&suite) }),
            })
        }
        Command::Enumerate { order, emit } => {
            let options = EnumerateOptions { deadline: Deadline::after(budget), ..EnumerateOptions::default() };
            let rings = enumerate_unital_rings_with(*order, &options)?;
            let emitted = match emit {
                Some(dir) => emit_rings(&rings, dir).with_context(|| format!("cannot write to {}", dir.display()))?,
                None => Vec::new(),
            };
            let mut text = format!("{} unital rings of order {order}\n", rings.len());
            let mut listed = Vec::new();
            for r in &rings {
                let hash = canonical_hash(&canonical_form(r)?);
                let unit_count = units(r, UnitKind::TwoSided).len();
                text.push_str(&format!("  {} units={unit_count} commutative={} hash={}\n", r.label(), r.is_commutative(), &hash[..16]));
                listed.push(json!({
                    "label": r.label(),
                    "units": unit_count,
                    "commutative": r.is_commutative(),
                    "canonical_hash": hash,
                    "spec": to_value(&RingSpec::table_of(r)),
                }));
            }
            for p in &emitted {
                text.push_str(&format!("wrote {}\n", p.display()));
            }
            let emitted: Vec<String> = emitted.iter().map(|p| p.display().to_string()).collect();
            Ok(Output {
                code: 0,
                text,
                machine: json!({ "command": "enumerate", "order": order, "count": rings.len(), "rings": listed, "emitted": emitted }),
            })
        }
        Command::Zdemo { bound } => {
            let report = z_remark6_report(*bound)?;
            Ok(Output {
                code: u8::from(report.has_discrepancy()),
                text: report.to_string(),
                machine: json!({ "command": "zdemo", "bound": bound, "report": to_value(&report) }),
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            match cli.format {
                Format::Text => print!("{}", out.text),
                Format::Machine => println!("{}", serde_json::to_string_pretty(&out.machine).expect("json")),
            }
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
