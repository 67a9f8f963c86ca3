//! One function per subcommand. Each returns a [`Report`]; printing and
//! exit codes are left to the binary.

use std::fmt;
use std::path::Path as FsPath;
use std::sync::Arc;

use serde::Serialize;
use singequiv_core::bimodule::{is_hereditary_ideal, theorem_hypothesis_check, Conclusion};
use singequiv_core::dsg::{shadow_with, simple_pairs, CellVerdict, DsgOptions};
use singequiv_core::extension::peel_chain;
use singequiv_core::linalg::FieldSpec;
use singequiv_core::module::{
    min_resolution, projective_dimension, tor_range, tor_range_resolving_left, Module, Side,
};
use singequiv_core::quiver::{parse_presentation, PathAlgebra};
use singequiv_core::{Algebra, Ideal};

use crate::fixtures::FixtureId;
use crate::report::{Claim, ClaimKind, Report};
use crate::{harness, verify};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    /// Unreadable or invalid input; exit code 2.
    Input(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(s) => f.write_str(s),
        }
    }
}

impl std::error::Error for CliError {}

impl From<singequiv_core::Error> for CliError {
    fn from(e: singequiv_core::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

pub type CliResult<T> = Result<T, CliError>;

/// Overrides shared by all commands.
#[derive(Clone, Debug, Default)]
pub struct Options {
    pub field: Option<FieldSpec>,
    pub bound: Option<usize>,
    pub window: Option<usize>,
    /// Echoed into the report.
    pub command: Vec<String>,
}

impl Options {
    pub fn bound_or(&self, default: usize) -> usize {
        self.bound.unwrap_or(default)
    }

    pub fn dsg(&self) -> DsgOptions {
        let d = DsgOptions::default();
        DsgOptions {
            bound: self.bound.unwrap_or(d.bound),
            window: self.window.unwrap_or(d.window),
            ..d
        }
    }
}

pub fn parse_field(s: &str) -> CliResult<FieldSpec> {
    let t = s.trim();
    if t.eq_ignore_ascii_case("q") {
        return Ok(FieldSpec::Rationals);
    }
    let digits = t
        .trim_start_matches(['F', 'f'])
        .trim_start_matches(['_', ' '])
        .trim();
    let p: u32 = digits.parse().map_err(|_| CliError::Input(format!("unknown field '{s}'")))?;
    Ok(FieldSpec::prime(p)?)
}

/// Presentation text with a display name: a file path or a fixture id.
#[derive(Clone, Debug)]
pub struct Input {
    pub name: String,
    pub text: String,
}

impl Input {
    pub fn load(arg: &str) -> CliResult<Input> {
        if FsPath::new(arg).is_file() {
            let text = std::fs::read_to_string(arg).map_err(|e| CliError::Input(format!("{arg}: {e}")))?;
            return Ok(Input {
                name: arg.into(),
                text,
            });
        }
        match arg.parse::<FixtureId>() {
            Ok(id) => Ok(Input {
                name: id.to_string(),
                text: id.source(),
            }),
            Err(_) => Err(CliError::Input(format!("{arg}: no such file or fixture"))),
        }
    }

    pub fn build(&self, field: Option<FieldSpec>) -> CliResult<PathAlgebra> {
        let ctx = |e: singequiv_core::Error| CliError::Input(format!("{}: {e}", self.name));
        let mut p = parse_presentation(&self.text).map_err(ctx)?;
        if let Some(f) = field {
            p = p.with_field(f).map_err(ctx)?;
        }
        PathAlgebra::build(&p).map_err(ctx)
    }
}

fn vertex(a: &Algebra, label: &str) -> CliResult<usize> {
    a.vertex_index(label)
        .ok_or_else(|| CliError::Input(format!("no vertex named '{label}'")))
}

/// `S:v`, `P:v`, `I:v` or `A` (the regular module).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModuleSpec {
    Simple(String),
    Projective(String),
    Injective(String),
    Regular,
}

impl std::str::FromStr for ModuleSpec {
    type Err = CliError;

    fn from_str(s: &str) -> CliResult<ModuleSpec> {
        if s == "A" || s == "regular" {
            return Ok(ModuleSpec::Regular);
        }
        let (kind, v) = s
            .split_once(':')
            .ok_or_else(|| CliError::Input(format!("module spec '{s}' is not KIND:vertex")))?;
        let v = v.trim().to_string();
        match kind.trim() {
            "S" => Ok(ModuleSpec::Simple(v)),
            "P" => Ok(ModuleSpec::Projective(v)),
            "I" => Ok(ModuleSpec::Injective(v)),
            k => Err(CliError::Input(format!("unknown module kind '{k}'"))),
        }
    }
}

impl ModuleSpec {
    pub fn build(&self, a: &Arc<Algebra>, side: Side) -> CliResult<Module> {
        Ok(match self {
            ModuleSpec::Simple(v) => Module::simple(a, vertex(a, v)?, side)?,
            ModuleSpec::Projective(v) => Module::projective(a, vertex(a, v)?, side)?,
            ModuleSpec::Injective(v) => Module::injective(a, vertex(a, v)?, side)?,
            ModuleSpec::Regular => Module::regular(a, side),
        })
    }
}

/// `vertex:1,2` (the ideal generated by those idempotents) or `gens:x; y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IdealSpec {
    Vertices(Vec<String>),
    Generators(Vec<String>),
}

impl std::str::FromStr for IdealSpec {
    type Err = CliError;

    fn from_str(s: &str) -> CliResult<IdealSpec> {
        let (kind, rest) = s
            .split_once(':')
            .ok_or_else(|| CliError::Input(format!("ideal spec '{s}' is not vertex:... or gens:...")))?;
        let items: Vec<String> = rest
            .split([',', ';'])
            .map(|t| t.trim().to_string())
            .filter(|t| !t.is_empty())
            .collect();
        if items.is_empty() {
            return Err(CliError::Input(format!("ideal spec '{s}' is empty")));
        }
        match kind.trim() {
            "vertex" | "vertices" => Ok(IdealSpec::Vertices(items)),
            "gens" => Ok(IdealSpec::Generators(items)),
            k => Err(CliError::Input(format!("unknown ideal kind '{k}'"))),
        }
    }
}

impl IdealSpec {
    pub fn build(&self, pa: &PathAlgebra) -> CliResult<Ideal> {
        let a = pa.algebra();
        match self {
            IdealSpec::Vertices(vs) => {
                let idx = vs.iter().map(|v| vertex(a, v)).collect::<CliResult<Vec<_>>>()?;
                Ok(a.vertex_ideal(&idx))
            }
            IdealSpec::Generators(gs) => {
                let elems = gs
                    .iter()
                    .map(|g| pa.parse_element(g).map_err(CliError::from))
                    .collect::<CliResult<Vec<_>>>()?;
                Ok(a.ideal_generated(&elems))
            }
        }
    }
}

/// `-2..2` (inclusive) or a comma list.
pub fn parse_shifts(s: &str) -> CliResult<Vec<i64>> {
    let bad = || CliError::Input(format!("bad shift list '{s}'"));
    if let Some((lo, hi)) = s.split_once("..") {
        let lo: i64 = lo.trim().parse().map_err(|_| bad())?;
        let hi: i64 = hi.trim().parse().map_err(|_| bad())?;
        if lo > hi {
            return Err(bad());
        }
        return Ok((lo..=hi).collect());
    }
    s.split(',').map(|t| t.trim().parse().map_err(|_| bad())).collect()
}

fn side_name(side: Side) -> &'static str {
    match side {
        Side::Left => "left",
        Side::Right => "right",
    }
}

fn summands_label(a: &Algebra, mult: &[usize]) -> String {
    let parts: Vec<String> = mult
        .iter()
        .enumerate()
        .filter(|(_, &m)| m > 0)
        .map(|(v, &m)| {
            let p = format!("P_{}", a.vertex_labels()[v]);
            if m == 1 {
                p
            } else {
                format!("{p}^{m}")
            }
        })
        .collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

#[derive(Serialize)]
struct BasisElement {
    label: String,
    left_vertex: String,
    right_vertex: String,
}

#[derive(Serialize)]
struct BasisData {
    field: String,
    dim: usize,
    vertices: Vec<String>,
    basis: Vec<BasisElement>,
    nilpotency_bound: usize,
    nilpotency_paths_checked: usize,
}

pub fn cmd_basis(input: &Input, o: &Options) -> CliResult<Report> {
    let pa = input.build(o.field)?;
    let a = pa.algebra();
    let vl = a.vertex_labels();
    let basis: Vec<BasisElement> = (0..a.dim())
        .map(|b| BasisElement {
            label: a.label(b).to_string(),
            left_vertex: vl[a.left_vertex(b)].clone(),
            right_vertex: vl[a.right_vertex(b)].clone(),
        })
        .collect();
    let cert = pa.certificate();
    let mut r = Report::new(&o.command).with_input(&input.text);
    r.line(format!("{}: dim {} over {:?}", input.name, a.dim(), a.field()));
    r.line(format!(
        "nilpotency {} certified ({} paths of that length avoid the monomial relations)",
        cert.bound, cert.paths_checked
    ));
    for e in &basis {
        r.line(format!("  {}  ({} <- {})", e.label, e.left_vertex, e.right_vertex));
    }
    r.set_data(&BasisData {
        field: format!("{:?}", a.field()),
        dim: a.dim(),
        vertices: vl.to_vec(),
        basis,
        nilpotency_bound: cert.bound,
        nilpotency_paths_checked: cert.paths_checked,
    });
    Ok(r)
}

#[derive(Serialize)]
struct ResolveData {
    module: String,
    side: &'static str,
    module_dim: usize,
    term_dims: Vec<usize>,
    multiplicities: Vec<Vec<usize>>,
    terms: Vec<String>,
    projective_dimension: String,
}

pub fn cmd_resolve(input: &Input, spec: &ModuleSpec, side: Side, degree: usize, o: &Options) -> CliResult<Report> {
    let pa = input.build(o.field)?;
    let a = pa.algebra();
    let m = spec.build(a, side)?;
    let res = min_resolution(&m, degree);
    let mult = res.multiplicities();
    let terms: Vec<String> = mult.iter().map(|v| summands_label(&res.resolved.acting_algebra(), v)).collect();
    let pd = projective_dimension(&m, o.bound_or(20));
    let mut r = Report::new(&o.command).with_input(&input.text);
    r.line(format!("minimal resolution of {spec:?} ({} module, dim {})", side_name(side), m.dim()));
    for (n, (t, p)) in terms.iter().zip(&res.terms).enumerate() {
        r.line(format!("  P_{n} = {t}  (dim {})", p.dim()));
    }
    r.line(format!("projective dimension {pd}"));
    let check = res.check();
    r.push(Claim::new(
        "resolution-invariants",
        ClaimKind::Oracle,
        check.all(),
        format!("{check:?}"),
    ));
    r.set_data(&ResolveData {
        module: format!("{spec:?}"),
        side: side_name(side),
        module_dim: m.dim(),
        term_dims: res.terms.iter().map(|p| p.dim()).collect(),
        multiplicities: mult,
        terms,
        projective_dimension: pd.to_string(),
    });
    Ok(r)
}

#[derive(Serialize)]
struct TorData {
    ideal_dim: usize,
    /// `dim Tor_i(J, A/J)` for `i = 0..=max`.
    tor_ideal_quotient: Vec<usize>,
    /// `dim Tor_i(A/J, A/J)`.
    tor_quotient_quotient: Vec<usize>,
}

pub fn cmd_tor(input: &Input, spec: &IdealSpec, max: usize, o: &Options) -> CliResult<Report> {
    let pa = input.build(o.field)?;
    let a = pa.algebra();
    let j = spec.build(&pa)?;
    let (j_right, _) = Module::from_ideal(a, &j, Side::Right)?;
    let (b_right, _) = Module::quotient_by_ideal(a, &j, Side::Right)?;
    let (b_left, _) = Module::quotient_by_ideal(a, &j, Side::Left)?;
    let tj = tor_range(&j_right, &b_left, max)?;
    let tb = tor_range(&b_right, &b_left, max)?;
    let mut r = Report::new(&o.command).with_input(&input.text);
    r.line(format!("J = {spec:?}, dim {}", j.dim()));
    r.line("  i  Tor_i(J, A/J)  Tor_i(A/J, A/J)");
    for i in 0..=max {
        r.line(format!("{i:>3}  {:>13}  {:>15}", tj[i], tb[i]));
    }
    let lj = tor_range_resolving_left(&j_right, &b_left, max)?;
    let lb = tor_range_resolving_left(&b_right, &b_left, max)?;
    r.push(Claim::new(
        "tor-balance",
        ClaimKind::Oracle,
        lj == tj && lb == tb,
        "same dimensions resolving either argument",
    ));
    r.set_data(&TorData {
        ideal_dim: j.dim(),
        tor_ideal_quotient: tj,
        tor_quotient_quotient: tb,
    });
    Ok(r)
}

#[derive(Serialize)]
struct CheckData<'a> {
    ideal_dim: usize,
    hereditary: &'a singequiv_core::bimodule::HereditaryCertificate,
    theorem: &'a singequiv_core::bimodule::TheoremReport,
}

pub fn cmd_check(input: &Input, spec: &IdealSpec, o: &Options) -> CliResult<Report> {
    let pa = input.build(o.field)?;
    let a = pa.algebra();
    let j = spec.build(&pa)?;
    let bound = o.bound_or(20);
    let her = is_hereditary_ideal(a, &j)?;
    let th = theorem_hypothesis_check(a, &j, bound)?;
    let h = &th.homological;
    let mut r = Report::new(&o.command).with_input(&input.text);
    r.line(format!("J = {spec:?}, dim {} of {}", j.dim(), a.dim()));
    r.line(format!("idempotent (J^2 = J): {}", h.idempotent));
    r.line(format!(
        "hereditary: {} (cover dim {}, kernel dim {})",
        her.passed, her.cover_dim, her.cover_kernel_dim
    ));
    r.line(format!(
        "homological: {} (pd A/J = {}, pd J_A = {}, Tor_i(J, A/J) = {:?})",
        h.verdict, h.pd_quotient_left, h.pd_ideal_right, h.tor
    ));
    r.line(format!(
        "direct check: {} (multiplication bijective {}, Tor_i(A/J, A/J) = {:?})",
        h.cross.verdict, h.cross.multiplication_bijective, h.cross.tor
    ));
    r.line(format!("bimodule pd: {}", th.bimodule_pd));
    r.line(match th.conclusion {
        Conclusion::SingularEquivalenceCertified => "conclusion: CERTIFIED".to_string(),
        Conclusion::NotCertified => "conclusion: NOT CERTIFIED".to_string(),
    });
    r.push(Claim::new(
        "homological-oracles-agree",
        ClaimKind::Oracle,
        h.agree,
        format!("{} vs {}", h.verdict, h.cross.verdict),
    ));
    r.set_data(&CheckData {
        ideal_dim: j.dim(),
        hereditary: &her,
        theorem: &th,
    });
    Ok(r)
}

fn split_labels(at: &str) -> Vec<String> {
    at.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect()
}

#[derive(Serialize)]
struct PeelData<'a> {
    certificates: Vec<&'a singequiv_core::extension::PeelCertificate>,
    dims: Vec<usize>,
    final_basis: Vec<String>,
}

pub fn cmd_peel(input: &Input, at: &str, o: &Options) -> CliResult<Report> {
    let pa = input.build(o.field)?;
    let a = pa.algebra();
    let labels = split_labels(at);
    let refs: Vec<&str> = labels.iter().map(String::as_str).collect();
    let mut r = Report::new(&o.command).with_input(&input.text);
    let (last, steps) = match peel_chain(a, &refs, o.bound_or(20)) {
        Ok(x) => x,
        Err(e) => {
            r.push(Claim::new("peel-applicable", ClaimKind::Claim, false, e.to_string()));
            return Ok(r);
        }
    };
    let mut dims = vec![a.dim()];
    for s in &steps {
        let c = &s.certificate;
        dims.push(s.quotient.dim());
        r.line(format!(
            "peel {}: dim {} = {} + {} + {} + 1, ideal dim {}, quotient dim {}",
            c.vertex, c.dim_gamma, c.dim_a, c.dim_m, c.dim_n, c.ideal_dim, c.quotient_dim
        ));
        for (m, n, v) in &c.phi {
            r.line(format!("  phi({m} (x) {n}) = {v}"));
        }
        r.push(Claim::new(
            &format!("peel-{}", c.vertex),
            ClaimKind::Claim,
            c.passed,
            format!("hereditary {}, homological {}", c.hereditary.passed, c.homological),
        ));
    }
    let chain: Vec<String> = dims.iter().map(usize::to_string).collect();
    r.line(format!("dimensions: {}", chain.join(" -> ")));
    r.set_data(&PeelData {
        certificates: steps.iter().map(|s| &s.certificate).collect(),
        dims,
        final_basis: last.labels().to_vec(),
    });
    Ok(r)
}

pub fn cmd_shadow(input: &Input, at: &str, shifts: &[i64], o: &Options) -> CliResult<Report> {
    let pa = input.build(o.field)?;
    let a = pa.algebra();
    let labels = split_labels(at);
    let idx = labels.iter().map(|l| vertex(a, l)).collect::<CliResult<Vec<_>>>()?;
    let j = a.vertex_ideal(&idx);
    let opts = o.dsg();
    let hypotheses = theorem_hypothesis_check(a, &j, opts.bound.max(20))?;
    let (b, projection) = a.quotient(&j)?;
    let pairs = simple_pairs(&b);
    let report = shadow_with(a, &b, &projection, hypotheses, &pairs, shifts, opts)?;
    let mut r = Report::new(&o.command).with_input(&input.text);
    r.line(format!("quotient by {labels:?}: dim {} -> {}", a.dim(), b.dim()));
    r.line(format!("hypotheses: {:?}", report.label));
    r.line(format!(
        "Gorenstein: algebra {:?}, quotient {:?}",
        report.gorenstein_algebra.verdict, report.gorenstein_quotient.verdict
    ));
    r.line("  source  target  shift  quotient  restricted  verdict");
    for c in &report.cells {
        let show = |v: Option<usize>| v.map_or("?".to_string(), |x| x.to_string());
        r.line(format!(
            "  {:<6}  {:<6}  {:>5}  {:>8}  {:>10}  {:?}",
            c.source,
            c.target,
            c.shift,
            show(c.quotient.value),
            show(c.restricted.value),
            c.verdict
        ));
        r.push(Claim::new(
            &format!("{}-{}-{}", c.source, c.target, c.shift),
            ClaimKind::Oracle,
            c.verdict == CellVerdict::Match,
            format!("{} / {}", c.quotient.status, c.restricted.status),
        ));
    }
    r.set_data(&serde_json::json!({
        "label": report.label,
        "gorenstein_algebra": report.gorenstein_algebra,
        "gorenstein_quotient": report.gorenstein_quotient,
        "cells": report.cells,
        "hypotheses": report.hypotheses,
    }));
    Ok(r)
}

pub fn cmd_verify_example(id: FixtureId, o: &Options) -> CliResult<Report> {
    let mut r = Report::new(&o.command).with_input(&id.source());
    let outcome = verify::verify(id, o)?;
    r.line(format!("verifying {id}"));
    for c in outcome.claims {
        r.push(c);
    }
    r.notes = outcome.notes;
    Ok(r)
}

pub fn cmd_harness(seed: u64, count: usize, o: &Options) -> CliResult<Report> {
    let summary = harness::run(seed, count, o.bound_or(harness::DEFAULT_BOUND));
    let mut r = Report::new(&o.command);
    r.seed = Some(seed);
    r.line(format!("harness: seed {seed}, {count} instances"));
    for (name, stat) in &summary.properties {
        r.line(format!("  {name}: {} checked, {} violations", stat.checked, stat.violations.len()));
        r.push(Claim::new(
            name,
            ClaimKind::Oracle,
            stat.violations.is_empty(),
            match stat.violations.first() {
                None => format!("{} checked", stat.checked),
                Some(v) => format!("replay seed {}: {}", v.seed, v.message),
            },
        ));
    }
    r.set_data(&summary);
    Ok(r)
}

/// Runs one harness instance by its own seed.
pub fn cmd_harness_replay(instance_seed: u64, o: &Options) -> CliResult<Report> {
    let results = harness::run_instance(instance_seed, o.bound_or(harness::DEFAULT_BOUND));
    let mut r = Report::new(&o.command);
    r.seed = Some(instance_seed);
    r.line(format!("harness replay: instance seed {instance_seed}"));
    for (name, outcome) in results {
        r.push(Claim::new(
            name,
            ClaimKind::Oracle,
            outcome.is_ok(),
            outcome.err().unwrap_or_default(),
        ));
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn specs_parse() {
        assert_eq!("S:v".parse::<ModuleSpec>().unwrap(), ModuleSpec::Simple("v".into()));
        assert_eq!(
            "vertex:1,2".parse::<IdealSpec>().unwrap(),
            IdealSpec::Vertices(vec!["1".into(), "2".into()])
        );
        assert_eq!(
            "gens:x; alpha beta".parse::<IdealSpec>().unwrap(),
            IdealSpec::Generators(vec!["x".into(), "alpha beta".into()])
        );
        assert_eq!(parse_shifts("-2..2").unwrap(), vec![-2, -1, 0, 1, 2]);
        assert_eq!(parse_shifts("0,3").unwrap(), vec![0, 3]);
        assert!(parse_shifts("2..1").is_err());
        assert_eq!(parse_field("F2").unwrap(), FieldSpec::Prime(2));
        assert_eq!(parse_field("Q").unwrap(), FieldSpec::Rationals);
        assert!(parse_field("F4").is_err());
    }

    #[test]
    fn fixture_ids_load() {
        let i = Input::load("e31").unwrap();
        assert_eq!(i.build(None).unwrap().algebra().dim(), 9);
        assert!(Input::load("nope").is_err());
    }
}
