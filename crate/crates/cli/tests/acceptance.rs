//! Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any failure.

#[path = "../../core/tests/support/oracle.rs"]
mod oracle;

use std::process::{Command, ExitCode};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use ringlab::enumerate::enumerate_unital_rings;
use ringlab::properties::{principal_are_annihilators, property_vector};
use ringlab::theorems::{check_theorem3, check_theorem5, check_vasershtein};
use ringlab::zint::z_remark6_report;
use ringlab::{
    construct, isomorphic, replay, units, validate, Catalog, Deadline, FiniteRing, Property, RingSpec, Side,
    UnitKind,
};

type Outcome = Result<String, String>;

fn catalog() -> Vec<FiniteRing> {
    let cat = Catalog::load_dir(&Catalog::default_dir()).expect("catalog directory");
    cat.entries
        .into_iter()
        .map(|e| construct(&e.spec.expect("catalog spec parses")).expect("catalog spec constructs"))
        .collect()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn theorem3(rings: &[FiniteRing]) -> Outcome {
    let mut small = Vec::new();
    for n in 1..=4 {
        small.extend(enumerate_unital_rings(n).map_err(|e| e.to_string())?);
    }
    let all: Vec<&FiniteRing> = rings.iter().chain(small.iter()).collect();
    for r in &all {
        let v = check_theorem3(r);
        ensure(v.is_consistent(), || format!("{}: {v}", r.label()))?;
        let props = property_vector(r, &Deadline::none()).map_err(|e| e.to_string())?;
        let holds = |p: Property, s: Option<Side>| props.iter().any(|x| x.property == p && x.side == s && x.holds);
        ensure(
            holds(Property::StableRangeOne, None)
                && holds(Property::UnitLifting, Some(Side::Left))
                && holds(Property::UnitLifting, Some(Side::Right)),
            || format!("{}: expected all three verdicts true", r.label()),
        )?;
    }
    Ok(format!("{} rings, 0 discrepancies", all.len()))
}

fn vasershtein(rings: &[FiniteRing]) -> Outcome {
    let mut tuples = 0u64;
    let mut largest = 0u64;
    for r in rings.iter().filter(|r| r.order() <= 16) {
        let sweep = check_vasershtein(r);
        ensure(sweep.verdict.is_consistent(), || format!("{}: {}", r.label(), sweep.verdict))?;
        let expected = (r.order() as u64).pow(4);
        ensure(sweep.tuples == expected, || format!("{}: {} of {expected} tuples", r.label(), sweep.tuples))?;
        tuples += sweep.tuples;
        largest = largest.max(sweep.tuples);
    }
    ensure(largest == 65_536, || format!("largest sweep covered {largest} tuples"))?;
    Ok(format!("{tuples} tuples swept, largest 65536"))
}

fn theorem5(rings: &[FiniteRing]) -> Outcome {
    for r in rings {
        let v = check_theorem5(r);
        ensure(v.is_consistent(), || format!("{}: {v}", r.label()))?;
    }
    let t2 = construct(&RingSpec::triangular(RingSpec::zn(2), 2)).map_err(|e| e.to_string())?;
    // e12 located independently: the only nonzero element squaring to zero.
    let nilpotent: Vec<usize> = t2.elements().filter(|&a| a != t2.zero() && t2.mul(a, a) == t2.zero()).collect();
    ensure(nilpotent.len() == 1, || format!("nilpotents {nilpotent:?}"))?;
    let e12 = nilpotent[0];
    let pa = principal_are_annihilators(&t2, Side::Left);
    ensure(!pa.holds, || "T2(Z/2) reported left PA".into())?;
    let w = pa.witness.as_ref().ok_or("no witness")?;
    ensure(w.get("a") == Some(e12), || format!("witness {w:?}, expected a = {e12}"))?;
    ensure(replay(&t2, &pa), || "witness does not replay".into())?;
    Ok(format!("{} rings consistent, T2(Z/2) left PA fails at e12 = {e12}", rings.len()))
}

fn remark6() -> Outcome {
    use num_bigint::BigInt;
    let rep = z_remark6_report(10).map_err(|e| e.to_string())?;
    let vals = |w: &ringlab::zint::ZWitness| w.roles.iter().map(|r| r.value.clone()).collect::<Vec<BigInt>>();
    let ints = |v: &[i64]| v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
    let sr1 = rep.property(Property::StableRangeOne, None);
    let w = sr1.witness.as_ref().ok_or("no SR1 witness")?;
    ensure(!sr1.holds && vals(w) == ints(&[2, -2, 5]) && w.replay(), || format!("SR1 witness {w:?}"))?;
    for side in Side::BOTH {
        let lift = rep.property(Property::UnitLifting, Some(side));
        let w = lift.witness.as_ref().ok_or("no lifting witness")?;
        ensure(!lift.holds && vals(w) == ints(&[2, 5]) && w.replay(), || format!("lifting witness {w:?}"))?;
        ensure(rep.property(Property::UniquelyGenerated, Some(side)).holds, || format!("UG {side} failed"))?;
    }
    ensure(rep.sweep.ug_failures == 0, || format!("{} UG failures", rep.sweep.ug_failures))?;
    ensure(rep.property(Property::DirectlyFinite, None).holds, || "DF not recorded true".into())?;
    ensure(!rep.has_discrepancy(), || "report carries a discrepancy".into())?;
    Ok(format!("SR1 witness (2,-2,5), lifting witness (2,5), {} UG pairs hold", rep.sweep.ug_pairs))
}

fn duality(rings: &[FiniteRing]) -> Outcome {
    let mut compared = 0;
    for r in rings {
        let on_r = property_vector(r, &Deadline::none()).map_err(|e| e.to_string())?;
        let on_op = property_vector(&r.opposite(), &Deadline::none()).map_err(|e| e.to_string())?;
        for right in on_r.iter().filter(|p| p.side == Some(Side::Right)) {
            let left = on_op
                .iter()
                .find(|q| q.property == right.property && q.side == Some(Side::Left))
                .ok_or("missing left predicate")?;
            ensure(right.holds == left.holds && right.witness == left.witness, || {
                format!("{} {}: {right} vs {left}", r.label(), right.key())
            })?;
            compared += 1;
        }
    }
    Ok(format!("{compared} predicate pairs, 0 mismatches"))
}

fn enumeration_counts() -> Outcome {
    let mut counts = Vec::new();
    for n in 1..=5 {
        let fast = enumerate_unital_rings(n).map_err(|e| e.to_string())?;
        let naive = oracle::naive_unital_rings(n);
        ensure(fast.len() == naive.len(), || format!("order {n}: {} vs oracle {}", fast.len(), naive.len()))?;
        for r in &naive {
            ensure(fast.iter().any(|s| isomorphic(r, s).is_some()), || format!("order {n}: oracle ring missing"))?;
        }
        counts.push(fast.len());
    }
    ensure(counts == [1, 1, 1, 4, 1], || format!("counts {counts:?}"))?;
    let mut profile: Vec<usize> = enumerate_unital_rings(4)
        .map_err(|e| e.to_string())?
        .iter()
        .map(|r| r.elements().filter(|&u| r.elements().any(|v| r.mul(u, v) == r.one() && r.mul(v, u) == r.one())).count())
        .collect();
    profile.sort_unstable();
    ensure(profile == [1, 2, 2, 3], || format!("order-4 unit profile {profile:?}"))?;
    Ok(format!("counts {counts:?}, order-4 unit sizes {profile:?}"))
}

fn unit_spot_checks() -> Outcome {
    let sizes: Vec<usize> = [
        RingSpec::zn(6),
        RingSpec::matrix(RingSpec::zn(2), 2),
        RingSpec::triangular(RingSpec::zn(2), 2),
    ]
    .iter()
    .map(|s| units(&construct(s).unwrap(), UnitKind::TwoSided).len())
    .collect();
    // Independent counts: coprime residues mod 6, invertible 2x2 matrices over F2, unit diagonals.
    let phi6 = (1..6u32).filter(|k| num_integer::gcd(*k, 6) == 1).count();
    let gl2 = (0..16u32).filter(|m| ((m >> 3) & (m & 1)) ^ ((m >> 2 & 1) & (m >> 1 & 1)) == 1).count();
    let t2 = 2;
    ensure(sizes == [phi6, gl2, t2] && sizes == [2, 6, 2], || format!("sizes {sizes:?}"))?;
    Ok(format!("|U| = {sizes:?}"))
}

fn mutation_self_check(rings: &[FiniteRing]) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let (mut rejected, mut accepted, mut replayed) = (0, 0, 0);
    for _ in 0..100 {
        let base = &rings[rng.random_range(0..rings.len())];
        let n = base.order();
        let (mut add, mut mul) = (base.add_rows(), base.mul_rows());
        let table = if rng.random_bool(0.5) { &mut add } else { &mut mul };
        let (i, j) = (rng.random_range(0..n), rng.random_range(0..n));
        table[i][j] = rng.random_range(0..n);
        let report = validate(&add, &mul, base.zero(), base.one(), n);
        if !report.ok {
            rejected += 1;
            continue;
        }
        accepted += 1;
        let r = FiniteRing::from_tables(n, &add, &mul, base.zero(), base.one(), "mutant").map_err(|e| e.to_string())?;
        for p in property_vector(&r, &Deadline::none()).map_err(|e| e.to_string())? {
            ensure(replay(&r, &p), || format!("{} on mutant of {}: witness does not replay", p.key(), base.label()))?;
            replayed += 1;
        }
    }
    Ok(format!("{rejected} rejected, {accepted} still valid, {replayed} results replayed"))
}

fn determinism() -> Outcome {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_ringlab"))
            .args(["--format", "machine", "check", "--catalog"])
            .output()
            .map_err(|e| e.to_string())
    };
    let (a, b) = (run()?, run()?);
    ensure(a.status.success(), || format!("exit {:?}: {}", a.status.code(), String::from_utf8_lossy(&a.stderr)))?;
    ensure(!a.stdout.is_empty() && a.stdout == b.stdout, || "machine reports differ".into())?;
    Ok(format!("{} identical bytes", a.stdout.len()))
}

fn main() -> ExitCode {
    let start = Instant::now();
    let rings = catalog();
    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome + '_>)> = vec![
        ("1 sr1 and unit lifting agree", Box::new(|| theorem3(&rings))),
        ("2 transfer sweep", Box::new(|| vasershtein(&rings))),
        ("3 unique generation under annihilator hypothesis", Box::new(|| theorem5(&rings))),
        ("4 integers: uniquely generated without sr1", Box::new(remark6)),
        ("5 side duality via opposite ring", Box::new(|| duality(&rings))),
        ("6 enumeration counts", Box::new(enumeration_counts)),
        ("7 unit group sizes", Box::new(unit_spot_checks)),
        ("8 mutated tables self-check", Box::new(|| mutation_self_check(&rings))),
        ("9 deterministic machine report", Box::new(determinism)),
    ];
    let mut failed = 0;
    for (name, run) in &criteria {
        match run() {
            Ok(detail) => println!("PASS  {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL  {name}: {detail}");
            }
        }
    }
    println!("{} of {} criteria passed in {:.2?}", criteria.len() - failed, criteria.len(), start.elapsed());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
