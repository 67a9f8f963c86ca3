//! Randomized property harness: random monomial algebras, vertex ideals and
//! triangular extension data, each checked against an independent oracle.
//!
//! Instances are seeded individually from the run seed, so a violation can
//! be replayed with [`run_instance`] alone.

use std::collections::{BTreeMap, HashSet};
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use singequiv_core::bimodule::{is_hereditary_ideal, is_homological_ideal, Bimodule, Verdict};
use singequiv_core::extension::{
    build_gamma, build_gamma_unchecked, extension_at, peel, validate_extension, ExtensionData,
};
use singequiv_core::linalg::{FieldSpec, Matrix, Subspace};
use singequiv_core::module::{min_resolution, tor_range, tor_range_resolving_left, Module, Side};
use singequiv_core::quiver::{parse_presentation, PathAlgebra};
use singequiv_core::Algebra;

/// Search bound for homological dimensions in random instances.
pub const DEFAULT_BOUND: usize = 6;

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Violation {
    pub seed: u64,
    pub message: String,
}

#[derive(Clone, Debug, Default, Serialize, PartialEq, Eq)]
pub struct PropertyStat {
    pub checked: usize,
    pub violations: Vec<Violation>,
}

#[derive(Clone, Debug, Default, Serialize, PartialEq, Eq)]
pub struct Summary {
    pub seed: u64,
    pub count: usize,
    pub instance_seeds: Vec<u64>,
    pub properties: BTreeMap<String, PropertyStat>,
}

impl Summary {
    pub fn violations(&self) -> usize {
        self.properties.values().map(|p| p.violations.len()).sum()
    }

    pub fn checked(&self, property: &str) -> usize {
        self.properties.get(property).map_or(0, |p| p.checked)
    }
}

/// Outcomes of one instance: `(property, Ok(()) | Err(message))`.
pub type InstanceResult = Vec<(&'static str, Result<(), String>)>;

pub fn run(seed: u64, count: usize, bound: usize) -> Summary {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let seeds: Vec<u64> = (0..count).map(|_| rng.gen()).collect();
    let results: Vec<InstanceResult> = seeds.par_iter().map(|&s| run_instance(s, bound)).collect();
    let mut properties: BTreeMap<String, PropertyStat> = BTreeMap::new();
    for (&s, res) in seeds.iter().zip(results) {
        for (name, outcome) in res {
            let stat = properties.entry(name.to_string()).or_default();
            stat.checked += 1;
            if let Err(message) = outcome {
                stat.violations.push(Violation { seed: s, message });
            }
        }
    }
    Summary {
        seed,
        count,
        instance_seeds: seeds,
        properties,
    }
}

pub fn run_instance(seed: u64, bound: usize) -> InstanceResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = InstanceResult::new();
    let m = random_monomial(&mut rng, 3, 12);
    out.push(("monomial-dimension-oracle", check(m.oracle_dim == m.algebra.algebra().dim(), || {
        format!("built {} but paths give {}:\n{}", m.algebra.algebra().dim(), m.oracle_dim, m.text)
    })));
    let a = m.algebra.algebra().clone();
    vertex_ideal_checks(&mut rng, &a, bound, &mut out);
    homology_checks(&a, &mut out);
    extension_checks(&mut rng, bound, &mut out);
    out
}

fn check(ok: bool, message: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(message())
    }
}

pub struct RandomMonomial {
    pub text: String,
    pub algebra: PathAlgebra,
    /// Path count from a separate enumeration.
    pub oracle_dim: usize,
}

/// A random bound quiver with monomial relations and `dim ≤ max_dim`: a
/// random set of length-two relations plus every surviving path of the
/// nilpotency length.
pub fn random_monomial(rng: &mut ChaCha8Rng, max_vertices: usize, max_dim: usize) -> RandomMonomial {
    loop {
        let n = rng.gen_range(1..=max_vertices);
        // four loops already give syzygies growing like 5^n
        let arrows: Vec<(usize, usize)> = (0..rng.gen_range(1..=3))
            .map(|_| (rng.gen_range(0..n), rng.gen_range(0..n)))
            .collect();
        let len = rng.gen_range(2..=3usize);
        // words in traversal order
        let mut relations: Vec<Vec<usize>> = Vec::new();
        for (a, &(_, ta)) in arrows.iter().enumerate() {
            for (b, &(sb, _)) in arrows.iter().enumerate() {
                if ta == sb && rng.gen_bool(0.5) {
                    relations.push(vec![a, b]);
                }
            }
        }
        let short: HashSet<Vec<usize>> = relations.iter().cloned().collect();
        let survivors = |k: usize| paths_avoiding(&arrows, n, &short, k);
        if len == 3 {
            relations.extend(survivors(3).into_iter().filter(|w| w.len() == 3));
        } else {
            relations.extend(survivors(2).into_iter().filter(|w| w.len() == 2 && !short.contains(w)));
        }
        let all: HashSet<Vec<usize>> = relations.iter().cloned().collect();
        let oracle_dim = paths_avoiding(&arrows, n, &all, len - 1).len() + n;
        if oracle_dim > max_dim {
            continue;
        }
        let mut text = String::from("field Q\ncomposition diagram\nvertices ");
        text.push_str(&(1..=n).map(|v| format!("v{v}")).collect::<Vec<_>>().join(", "));
        text.push('\n');
        for (a, &(s, t)) in arrows.iter().enumerate() {
            text.push_str(&format!("arrow a{}: v{} -> v{}\n", a + 1, s + 1, t + 1));
        }
        for w in &relations {
            let word: Vec<String> = w.iter().map(|a| format!("a{}", a + 1)).collect();
            text.push_str(&format!("relation {}\n", word.join(" ")));
        }
        text.push_str(&format!("nilpotency {len}\n"));
        let p = parse_presentation(&text).expect("generated presentation parses");
        let algebra = PathAlgebra::build(&p).expect("generated presentation builds");
        return RandomMonomial {
            text,
            algebra,
            oracle_dim,
        };
    }
}

/// Nontrivial paths (traversal order) of length `≤ max_len` with no
/// subword in `forbidden`.
fn paths_avoiding(arrows: &[(usize, usize)], _n: usize, forbidden: &HashSet<Vec<usize>>, max_len: usize) -> Vec<Vec<usize>> {
    let bad = |w: &[usize]| (0..w.len()).any(|i| (i + 1..=w.len()).any(|j| forbidden.contains(&w[i..j])));
    let mut out = Vec::new();
    let mut layer: Vec<Vec<usize>> = (0..arrows.len()).map(|a| vec![a]).filter(|w| !bad(w)).collect();
    for _ in 0..max_len {
        out.extend(layer.iter().cloned());
        let mut next = Vec::new();
        for w in &layer {
            let end = arrows[*w.last().expect("nonempty")].1;
            for (b, &(s, _)) in arrows.iter().enumerate() {
                if s == end {
                    let mut v = w.clone();
                    v.push(b);
                    if !bad(&v) {
                        next.push(v);
                    }
                }
            }
        }
        layer = next;
    }
    out
}

fn vertex_ideal_checks(rng: &mut ChaCha8Rng, a: &Arc<Algebra>, bound: usize, out: &mut InstanceResult) {
    let n = a.num_vertices();
    if n < 2 {
        return;
    }
    // two distinct proper vertex subsets per instance
    let mut seen: Vec<Vec<usize>> = Vec::new();
    for _ in 0..2 {
        let mut vs: Vec<usize> = (0..n).collect();
        vs.shuffle(rng);
        vs.truncate(rng.gen_range(1..n));
        vs.sort_unstable();
        if seen.contains(&vs) {
            continue;
        }
        vertex_ideal_check(a, &vs, bound, out);
        seen.push(vs);
    }
}

fn vertex_ideal_check(a: &Arc<Algebra>, vs: &[usize], bound: usize, out: &mut InstanceResult) {
    let j = a.vertex_ideal(vs);
    let h = match is_homological_ideal(a, &j, bound) {
        Ok(h) => h,
        Err(e) => {
            out.push(("lemma-vs-direct", Err(e.to_string())));
            return;
        }
    };
    out.push(("lemma-vs-direct", check(h.agree, || format!("{} vs {} at {vs:?}", h.verdict, h.cross.verdict))));
    if h.verdict != Verdict::Inconclusive && h.cross.verdict != Verdict::Inconclusive {
        out.push(("lemma-vs-direct-conclusive", Ok(())));
    }
    match is_hereditary_ideal(a, &j) {
        Ok(c) if c.passed => out.push((
            "hereditary-implies-homological",
            check(h.verdict == Verdict::Yes, || format!("hereditary but {} at {vs:?}", h.verdict)),
        )),
        Ok(_) => {}
        Err(e) => out.push(("hereditary-implies-homological", Err(e.to_string()))),
    }
}

fn homology_checks(a: &Arc<Algebra>, out: &mut InstanceResult) {
    for u in 0..a.num_vertices() {
        let x = Module::simple(a, u, Side::Right).expect("vertex");
        // random algebras can have syzygies growing like 4^n; stay shallow
        let res = min_resolution(&x, 2);
        out.push(("resolution-invariants", check(res.check().all(), || format!("{:?}", res.check()))));
        for v in 0..a.num_vertices() {
            let y = Module::simple(a, v, Side::Left).expect("vertex");
            let (t1, t2) = (tor_range(&x, &y, 2), tor_range_resolving_left(&x, &y, 2));
            out.push(("tor-balance", check(t1.is_ok() && t1 == t2, || format!("S{u}, S{v}: {t1:?} vs {t2:?}"))));
        }
    }
}

/// Random left (or right) module of dimension 1 or 2: a simple, a sum of two
/// simples, or a two-dimensional uniserial quotient of a projective.
fn random_module(rng: &mut ChaCha8Rng, a: &Arc<Algebra>, side: Side) -> Module {
    let n = a.num_vertices();
    let v = rng.gen_range(0..n);
    // arrows leaving v (left) or entering v (right)
    let arrows: Vec<usize> = a
        .arrow_generators()
        .iter()
        .copied()
        .filter(|&g| match side {
            Side::Left => a.right_vertex(g) == v,
            Side::Right => a.left_vertex(g) == v,
        })
        .collect();
    match rng.gen_range(0..3) {
        0 => Module::simple(a, v, side).expect("vertex"),
        1 => {
            let w = rng.gen_range(0..n);
            let s = Module::simple(a, v, side).expect("vertex");
            s.direct_sum(&Module::simple(a, w, side).expect("vertex")).expect("same algebra")
        }
        _ if arrows.is_empty() => Module::simple(a, v, side).expect("vertex"),
        _ => {
            let keep = *arrows.choose(rng).expect("nonempty");
            let p = Module::projective(a, v, side).expect("vertex");
            let f = a.field();
            // basis of P_v is the algebra basis elements at v, in order
            let elements: Vec<usize> = (0..a.dim())
                .filter(|&b| match side {
                    Side::Left => a.right_vertex(b) == v,
                    Side::Right => a.left_vertex(b) == v,
                })
                .collect();
            let gens: Vec<_> = elements
                .iter()
                .enumerate()
                .filter(|&(_, &b)| b != keep && b != a.idempotent(v))
                .map(|(i, _)| f.unit_vector(p.dim(), i))
                .collect();
            let u = Subspace::from_vectors(f, p.dim(), &gens);
            p.quotient(&u).expect("graded submodule").0
        }
    }
}

/// All `φ` satisfying every extension condition except injectivity.
fn admissible_phis(a: &Arc<Algebra>, m: &Module, n: &Module) -> Vec<Matrix> {
    let f = a.field();
    let t = Bimodule::tensor(m, n).expect("left and right");
    let reg = Bimodule::regular(a);
    let (da, d) = (a.dim(), m.dim() * n.dim());
    let unknowns = da * d;
    let var = |k: usize, x: usize| k * d + x;
    let mut rows: Vec<Vec<singequiv_core::linalg::Scalar>> = Vec::new();
    let gens: Vec<usize> = a.idempotents().iter().chain(a.arrow_generators()).copied().collect();
    for &g in &gens {
        for (la, lt) in [(reg.left_action(g), t.left_action(g)), (reg.right_action(g), t.right_action(g))] {
            // (la φ − φ lt)[k, x] = 0
            for k in 0..da {
                for x in 0..d {
                    let mut row = f.zeros(unknowns);
                    for l in 0..da {
                        let c = la.get(k, l);
                        if !c.is_zero() {
                            row[var(l, x)] = &row[var(l, x)] + c;
                        }
                    }
                    for y in 0..d {
                        let c = lt.get(y, x);
                        if !c.is_zero() {
                            row[var(k, y)] = &row[var(k, y)] - c;
                        }
                    }
                    rows.push(row);
                }
            }
        }
    }
    // the image kills M and N: Σ_k φ[k, x] act(k) = 0
    for module in [m, n] {
        for x in 0..d {
            for r in 0..module.dim() {
                for c in 0..module.dim() {
                    let mut row = f.zeros(unknowns);
                    for k in 0..da {
                        row[var(k, x)] = module.action(k).get(r, c).clone();
                    }
                    rows.push(row);
                }
            }
        }
    }
    for &e in a.idempotents() {
        for x in 0..d {
            rows.push(f.unit_vector(unknowns, var(e, x)));
        }
    }
    let system = Matrix::from_rows(f, unknowns, rows);
    system
        .kernel()
        .basis_vectors()
        .iter()
        .map(|v| Matrix::from_rows(f, d, (0..da).map(|k| v[k * d..(k + 1) * d].to_vec()).collect()))
        .collect()
}

fn combine(rng: &mut ChaCha8Rng, f: FieldSpec, rows: usize, cols: usize, basis: &[Matrix]) -> Matrix {
    let mut acc = Matrix::zeros(f, rows, cols);
    for b in basis {
        let c = f.from_i64(rng.gen_range(-2..=2));
        acc = acc.add(&b.scale(&c));
    }
    acc
}

struct RandomExtension {
    data: ExtensionData,
    /// Some admissible `φ` of lower rank, when one exists.
    degenerate: Matrix,
}

/// Random extension data with injective `φ`: a monomial algebra on at most
/// three vertices and `dim ≤ 8`, and modules of dimension 1 or 2.
fn random_extension(rng: &mut ChaCha8Rng) -> Option<RandomExtension> {
    for _ in 0..40 {
        let a = random_monomial(rng, 3, 8).algebra.algebra().clone();
        let f = a.field();
        let m = random_module(rng, &a, Side::Left);
        let n = random_module(rng, &a, Side::Right);
        let d = m.dim() * n.dim();
        let basis = admissible_phis(&a, &m, &n);
        let phi = if d == 0 {
            Matrix::zeros(f, a.dim(), 0)
        } else {
            combine(rng, f, a.dim(), d, &basis)
        };
        if phi.rank() != d {
            continue;
        }
        let degenerate = basis
            .iter()
            .find(|b| b.rank() < d)
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(f, a.dim(), d));
        return Some(RandomExtension {
            data: ExtensionData::new(a, m, n, phi),
            degenerate,
        });
    }
    None
}

fn same_data(x: &ExtensionData, y: &ExtensionData) -> Result<(), String> {
    let (a, b) = (&x.algebra, &y.algebra);
    if a.dim() != b.dim() {
        return Err(format!("algebra dim {} vs {}", a.dim(), b.dim()));
    }
    for i in 0..a.dim() {
        for j in 0..a.dim() {
            if a.product(i, j) != b.product(i, j) {
                return Err(format!("products differ at ({i}, {j})"));
            }
        }
    }
    if x.m.actions() != y.m.actions() {
        return Err("left module actions differ".into());
    }
    if x.n.actions() != y.n.actions() {
        return Err("right module actions differ".into());
    }
    if x.phi != y.phi {
        return Err("phi differs".into());
    }
    Ok(())
}

fn extension_checks(rng: &mut ChaCha8Rng, bound: usize, out: &mut InstanceResult) {
    let Some(ext) = random_extension(rng) else {
        out.push(("extension-generated", Err("no injective extension data in 40 tries".into())));
        return;
    };
    let d = &ext.data;
    let (da, dm, dn) = (d.algebra.dim(), d.m.dim(), d.n.dim());
    let v = validate_extension(d);
    out.push(("extension-valid", check(v.passed(), || v.failures.join("; "))));
    let gamma = match build_gamma(d) {
        Ok(g) => g,
        Err(e) => {
            out.push(("round-trip", Err(e.to_string())));
            return;
        }
    };
    let g = &gamma.algebra;
    out.push(("gamma-dimension", check(g.dim() == da + dm + dn + 1, || format!("dim {}", g.dim()))));
    let ideal = g.vertex_ideal(&[gamma.vertex]).dim();
    out.push((
        "ideal-dimension-iff-injective",
        check(ideal == (dm + 1) * (dn + 1), || format!("injective phi but ideal dim {ideal}")),
    ));
    let round = extension_at(g, gamma.vertex)
        .map_err(|e| e.to_string())
        .and_then(|(back, _)| same_data(d, &back));
    out.push(("round-trip", round));
    if g.num_vertices() >= 2 {
        match peel(g, gamma.vertex, bound) {
            Ok(p) => {
                let c = &p.certificate;
                out.push((
                    "peel-certified",
                    check(c.passed && c.homological == Verdict::Yes, || format!("{c:?}")),
                ));
            }
            Err(e) => out.push(("peel-certified", Err(e.to_string()))),
        }
    }

    // the same modules with a non-injective map
    if dm * dn > 0 {
        let bad = ExtensionData::new(d.algebra.clone(), d.m.clone(), d.n.clone(), ext.degenerate.clone());
        let v = validate_extension(&bad);
        let exactly = !v.injective
            && v.shapes
            && v.bimodule_hom
            && v.kills_m
            && v.kills_n
            && v.image_is_ideal
            && v.image_in_radical
            && v.image_square_zero;
        out.push(("non-injective-fails-exactly-injectivity", check(exactly, || format!("{v:?}"))));
        out.push(("non-injective-rejected", check(build_gamma(&bad).is_err(), || "accepted".into())));
        match build_gamma_unchecked(&bad) {
            Ok(gb) => {
                let ideal = gb.algebra.vertex_ideal(&[gb.vertex]).dim();
                out.push((
                    "ideal-dimension-iff-injective",
                    check(ideal != (dm + 1) * (dn + 1), || format!("non-injective phi but ideal dim {ideal}")),
                ));
                out.push((
                    "gamma-dimension",
                    check(gb.algebra.dim() == da + dm + dn + 1, || format!("dim {}", gb.algebra.dim())),
                ));
            }
            Err(e) => out.push(("ideal-dimension-iff-injective", Err(e.to_string()))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn runs_are_deterministic() {
        let a = run(7, 4, 8);
        let b = run(7, 4, 8);
        assert_eq!(a, b);
        assert_eq!(a.violations(), 0, "{:#?}", a.properties);
    }

    #[test]
    fn paths_avoiding_counts() {
        // a loop with x^2 forbidden: only x survives
        let forbidden: HashSet<Vec<usize>> = [vec![0, 0]].into_iter().collect();
        assert_eq!(paths_avoiding(&[(0, 0)], 1, &forbidden, 5), vec![vec![0]]);
        // a 2-cycle with nothing forbidden: 2 paths of each length
        assert_eq!(paths_avoiding(&[(0, 1), (1, 0)], 2, &HashSet::new(), 3).len(), 6);
    }
}
