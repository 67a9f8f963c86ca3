//! Acceptance run: one PASS/FAIL line per criterion, with the failing
//! sub-checks listed underneath.
//!
//! A sub-check whose expected value the computation does not reproduce is
//! listed in `KNOWN_GAPS`. It still prints as FAIL; the run only exits
//! nonzero on an unlisted failure, or when a listed gap starts passing.

use std::process::ExitCode;
use std::time::Instant;

use singequiv::fixtures::FixtureId;
use singequiv::harness;
use singequiv::verify::{self, Outcome, E33_TABULATED_DIM};
use singequiv::{Claim, Options};

/// `(criterion, check, reason)`.
const KNOWN_GAPS: &[(&str, &str, &str)] = &[(
    "e33-extension",
    "dim-tabulated",
    "the presentation gives dim 30 (18 for the base plus 4 per peeled vertex); \
     the tabulated 27 is not reproduced",
)];

struct Check {
    label: String,
    ok: bool,
    detail: String,
}

impl Check {
    fn new(label: impl Into<String>, ok: bool, detail: impl Into<String>) -> Check {
        Check { label: label.into(), ok, detail: detail.into() }
    }

    fn claim(c: &Claim) -> Check {
        Check::new(&c.id, c.passed, &c.detail)
    }
}

fn claims(out: &Outcome, prefixes: &[&str]) -> Vec<Check> {
    let checks: Vec<Check> = prefixes
        .iter()
        .flat_map(|p| out.group(p))
        .map(Check::claim)
        .collect();
    assert!(!checks.is_empty(), "no claims under {prefixes:?}");
    checks
}

fn known_gap(criterion: &str, check: &str) -> Option<&'static str> {
    KNOWN_GAPS
        .iter()
        .find(|(c, k, _)| *c == criterion && *k == check)
        .map(|(_, _, why)| *why)
}

fn e31(o: &Options) -> Vec<Check> {
    let out = verify::verify_e31(o).unwrap();
    claims(&out, &["core."])
}

fn e31_evidence(o: &Options) -> Vec<Check> {
    let out = verify::verify_e31(o).unwrap();
    claims(&out, &["evidence."])
}

fn e32(o: &Options) -> Vec<Check> {
    let out = verify::verify_e32(o).unwrap();
    claims(&out, &["core."])
}

fn e33(o: &Options) -> Vec<Check> {
    let out = verify::verify_e33(2, o).unwrap();
    let mut checks = claims(&out, &["core."]);
    let pa = verify::build(&FixtureId::E33(2).source(), None).unwrap();
    let dim = pa.algebra().dim();
    checks.push(Check::new(
        "dim-tabulated",
        dim == E33_TABULATED_DIM,
        format!("expected {E33_TABULATED_DIM}, computed {dim}"),
    ));
    checks
}

fn shadow(o: &Options) -> Vec<Check> {
    let e33 = verify::verify_e33(2, o).unwrap();
    let mut checks = claims(&e33, &["shadow."]);
    checks.push(Check::new(
        "e33-cell-count",
        e33.group("shadow.cells").iter().all(|c| c.detail.starts_with("45/45 ")),
        e33.group("shadow.cells").iter().map(|c| c.detail.clone()).collect::<Vec<_>>().join("; "),
    ));
    checks.extend(claims(&verify::verify_a2(o).unwrap(), &["shadow."]));
    checks.extend(claims(&verify::verify_dual(o).unwrap(), &["shadow."]));
    checks
}

fn oracles() -> Vec<Check> {
    let s = harness::run(42, 50, harness::DEFAULT_BOUND);
    let mut checks = vec![Check::new("harness-violations", s.violations() == 0, format!("{} violations", s.violations()))];
    for (property, min) in [
        ("lemma-vs-direct-conclusive", 50),
        ("round-trip", 50),
        ("ideal-dimension-iff-injective", 50),
        ("non-injective-rejected", 1),
        ("non-injective-fails-exactly-injectivity", 1),
    ] {
        let n = s.checked(property);
        checks.push(Check::new(property, n >= min, format!("{n} checked, need {min}")));
    }
    for (name, text) in verify::all_fixture_texts() {
        checks.push(Check::claim(&verify::tor_balance(name, &text, 5).unwrap()));
    }
    checks
}

fn sanity(o: &Options) -> Vec<Check> {
    let dual = verify::verify_dual(o).unwrap();
    let mut checks = claims(&dual, &["homology.tor", "homology.dsg"]);
    for (name, text) in verify::all_fixture_texts() {
        checks.push(Check::claim(&verify::resolution_invariants(name, &text, 5).unwrap()));
    }
    for id in FixtureId::all_small() {
        checks.push(Check::claim(&verify::field_comparison(id).unwrap()));
    }
    checks
}

type Criterion<'a> = (&'static str, Box<dyn Fn() -> Vec<Check> + 'a>);

fn main() -> ExitCode {
    let o = Options::default();
    let criteria: Vec<Criterion> = vec![
        ("e31-structure", Box::new(|| e31(&o))),
        ("e31-evidence", Box::new(|| e31_evidence(&o))),
        ("e32-peel-chain", Box::new(|| e32(&o))),
        ("e33-extension", Box::new(|| e33(&o))),
        ("equivalence-shadow", Box::new(|| shadow(&o))),
        ("oracle-cross-checks", Box::new(oracles)),
        ("homological-sanity", Box::new(|| sanity(&o))),
    ];
    let mut unexpected = 0;
    for (name, run) in &criteria {
        let start = Instant::now();
        let checks = run();
        let failed: Vec<&Check> = checks.iter().filter(|c| !c.ok).collect();
        let status = if failed.is_empty() { "PASS" } else { "FAIL" };
        println!(
            "{status} {name}: {}/{} checks ({:.1}s)",
            checks.len() - failed.len(),
            checks.len(),
            start.elapsed().as_secs_f64()
        );
        for c in &failed {
            match known_gap(name, &c.label) {
                Some(why) => println!("    known gap {}: {} ({why})", c.label, c.detail),
                None => {
                    println!("    {}: {}", c.label, c.detail);
                    unexpected += 1;
                }
            }
        }
        for c in checks.iter().filter(|c| c.ok && known_gap(name, &c.label).is_some()) {
            println!("    listed gap {} now passes: {}", c.label, c.detail);
            unexpected += 1;
        }
    }
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{unexpected} unexpected result(s)");
        ExitCode::FAILURE
    }
}
