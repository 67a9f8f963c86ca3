//! Numerical invariants of singularity categories.
//!
//! `Hom(M, N[i])` in `D_sg(A)` is the colimit of the stable Hom spaces
//! `Hom(Ωⁿ M, Ωⁿ⁻ⁱ N)` along `f ↦ Ωf`. For a Gorenstein algebra of
//! self-injective dimension `d` the sequence is constant from
//! `n = d + |i| + 1` on, which gives a proof of stabilization; otherwise only
//! a run of bijective transition maps is reported, and labelled heuristic.

use std::sync::Arc;

use serde::Serialize;

use crate::algebra::{same_algebra, Algebra, AlgebraMorphism, Ideal};
use crate::bimodule::{theorem_hypothesis_check, Conclusion, TheoremReport};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::module::{
    injective_dimension, omega_map_with, projective_cover, projective_dimension, syzygy_dims, Cover,
    HomologicalDimension, Module, Side, StableHom,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "value", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Perfectness {
    Perfect(usize),
    NotWithin(usize),
}

/// A module is perfect (zero in `D_sg`) iff its projective dimension is finite.
pub fn is_perfect_module(m: &Module, bound: usize) -> Perfectness {
    match projective_dimension(m, bound) {
        HomologicalDimension::Finite(n) => Perfectness::Perfect(n),
        HomologicalDimension::AtLeast(_) => Perfectness::NotWithin(bound),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "value", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum GorensteinVerdict {
    Gorenstein(usize),
    NotCertified,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GorensteinReport {
    pub injdim_left: HomologicalDimension,
    pub injdim_right: HomologicalDimension,
    pub verdict: GorensteinVerdict,
}

impl GorensteinReport {
    pub fn dimension(&self) -> Option<usize> {
        match self.verdict {
            GorensteinVerdict::Gorenstein(d) => Some(d),
            GorensteinVerdict::NotCertified => None,
        }
    }
}

/// Injective dimensions of both regular modules. `NotCertified` only says
/// the bound was exhausted.
pub fn gorenstein(a: &Arc<Algebra>, bound: usize) -> GorensteinReport {
    let injdim_left = injective_dimension(&Module::regular(a, Side::Left), bound);
    let injdim_right = injective_dimension(&Module::regular(a, Side::Right), bound);
    let verdict = match (injdim_left, injdim_right) {
        (HomologicalDimension::Finite(l), HomologicalDimension::Finite(r)) if l == r => GorensteinVerdict::Gorenstein(l),
        _ => GorensteinVerdict::NotCertified,
    };
    GorensteinReport {
        injdim_left,
        injdim_right,
        verdict,
    }
}

pub fn is_selfinjective(a: &Arc<Algebra>) -> bool {
    [Side::Left, Side::Right]
        .iter()
        .all(|&s| injective_dimension(&Module::regular(a, s), 0) == HomologicalDimension::Finite(0))
}

/// Every indecomposable projective, on both sides, is uniserial.
pub fn is_nakayama(a: &Arc<Algebra>) -> bool {
    [Side::Left, Side::Right].iter().all(|&s| {
        (0..a.num_vertices()).all(|v| {
            Module::projective(a, v, s)
                .expect("vertex in range")
                .radical_layers()
                .iter()
                .all(|&l| l <= 1)
        })
    })
}

pub fn syzygy_growth(m: &Module, n: usize) -> Vec<usize> {
    syzygy_dims(m, n)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Stability {
    ProvablyStable,
    HeuristicallyStable,
    NotStabilized,
}

impl std::fmt::Display for Stability {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Stability::ProvablyStable => "PROVABLY_STABLE",
            Stability::HeuristicallyStable => "HEURISTICALLY_STABLE",
            Stability::NotStabilized => "NOT_STABILIZED",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DsgHomReport {
    pub shift: i64,
    /// First `n` of the sequence, `max(0, i)`.
    pub start: usize,
    /// `dim stable Hom(Ωⁿ M, Ωⁿ⁻ⁱ N)` for `n = start, start+1, ...`.
    pub dims: Vec<usize>,
    /// Rank of the transition map from step `n` to `n + 1`.
    pub transition_ranks: Vec<usize>,
    pub status: Stability,
    pub value: Option<usize>,
    /// The computation stopped early because a syzygy exceeded the size cap.
    pub truncated: bool,
}

#[derive(Clone, Copy, Debug)]
pub struct DsgOptions {
    pub bound: usize,
    pub window: usize,
    /// Largest syzygy dimension computed with.
    pub max_module_dim: usize,
}

impl Default for DsgOptions {
    fn default() -> Self {
        DsgOptions {
            bound: 12,
            window: 3,
            max_module_dim: 40,
        }
    }
}

/// Syzygies of a module with their covers, computed on demand.
struct SyzygyChain {
    covers: Vec<Cover>,
    modules: Vec<Module>,
}

impl SyzygyChain {
    fn new(m: &Module) -> Self {
        SyzygyChain {
            covers: Vec::new(),
            modules: vec![m.clone()],
        }
    }

    /// Makes `Ωᵏ` and its cover available; `false` if too large.
    fn reach(&mut self, k: usize, cap: usize) -> bool {
        while self.covers.len() <= k {
            let last = self.modules.last().expect("nonempty");
            if last.dim() > cap {
                return false;
            }
            let c = projective_cover(last);
            self.modules.push(c.kernel.clone());
            self.covers.push(c);
        }
        self.modules[k].dim() <= cap
    }
}

/// `Hom_{D_sg}(M, N[shift])` using a precomputed Gorenstein report of the
/// algebra.
pub fn dsg_hom_dim_with(
    m: &Module,
    n: &Module,
    shift: i64,
    gor: &GorensteinReport,
    opts: DsgOptions,
) -> Result<DsgHomReport> {
    if m.side() != n.side() || !same_algebra(m.algebra(), n.algebra()) {
        return Err(Error::AlgebraMismatch);
    }
    let start = shift.max(0) as usize;
    let provable_from = gor.dimension().map(|d| d + shift.unsigned_abs() as usize + 1);
    let (mut cm, mut cn) = (SyzygyChain::new(m), SyzygyChain::new(n));
    let mut dims = Vec::new();
    let mut ranks = Vec::new();
    let mut truncated = false;
    let mut previous: Option<(StableHom, usize, usize)> = None;
    for step in start..=opts.bound.max(start) {
        let t = (step as i64 - shift) as usize;
        if !cm.reach(step, opts.max_module_dim) || !cn.reach(t, opts.max_module_dim) {
            truncated = true;
            break;
        }
        let st = StableHom::with_cover(&cm.modules[step], &cn.modules[t], &cn.covers[t])?;
        if let Some((prev, ps, pt)) = &previous {
            // Ω of each representative, expressed in the new quotient
            let cols: Vec<Vec<_>> = prev
                .representatives
                .iter()
                .map(|r| {
                    let f = prev.hom.to_matrix(r);
                    let g = omega_map_with(&f, &cm.covers[*ps], &cn.covers[*pt])?;
                    Ok(st.class_of(&g))
                })
                .collect::<Result<_>>()?;
            let rank = if cols.is_empty() || st.dim() == 0 {
                0
            } else {
                Matrix::from_columns(m.field(), cols[0].len(), &cols).rank()
            };
            ranks.push(rank);
        }
        dims.push(st.dim());
        previous = Some((st, step, t));
    }
    let at = |k: usize| dims.get(k - start).copied();
    let (status, value) = match provable_from {
        Some(p) if at(p.max(start)).is_some() => (Stability::ProvablyStable, at(p.max(start))),
        _ => {
            // a run of `window` bijective transitions ending at the last step
            let bijective = |k: usize| ranks[k] == dims[k] && dims[k] == dims[k + 1];
            let w = opts.window.max(1);
            if ranks.len() >= w && (ranks.len() - w..ranks.len()).all(bijective) {
                (Stability::HeuristicallyStable, dims.last().copied())
            } else {
                (Stability::NotStabilized, None)
            }
        }
    };
    Ok(DsgHomReport {
        shift,
        start,
        dims,
        transition_ranks: ranks,
        status,
        value,
        truncated,
    })
}

pub fn dsg_hom_dim(m: &Module, n: &Module, shift: i64, opts: DsgOptions) -> Result<DsgHomReport> {
    let gor = gorenstein(m.algebra(), opts.bound);
    dsg_hom_dim_with(m, n, shift, &gor, opts)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum CellVerdict {
    Match,
    Mismatch,
    Unresolved,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ShadowCell {
    pub source: String,
    pub target: String,
    pub shift: i64,
    pub quotient: DsgHomReport,
    pub restricted: DsgHomReport,
    pub verdict: CellVerdict,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ShadowLabel {
    Certified,
    Uncertified,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ShadowReport {
    pub label: ShadowLabel,
    pub hypotheses: TheoremReport,
    pub gorenstein_algebra: GorensteinReport,
    pub gorenstein_quotient: GorensteinReport,
    pub cells: Vec<ShadowCell>,
}

impl ShadowReport {
    pub fn all_match(&self) -> bool {
        self.cells.iter().all(|c| c.verdict == CellVerdict::Match)
    }
}

/// Compares `D_sg` Hom dimensions over `B = A/J` with those of the
/// restricted modules over `A`, for the given named pairs of `B`-modules.
pub fn equivalence_shadow(
    a: &Arc<Algebra>,
    ideal: &Ideal,
    pairs: &[(String, Module, String, Module)],
    shifts: &[i64],
    opts: DsgOptions,
) -> Result<ShadowReport> {
    let hypotheses = theorem_hypothesis_check(a, ideal, opts.bound.max(20))?;
    let (b, projection) = a.quotient(ideal)?;
    shadow_with(a, &b, &projection, hypotheses, pairs, shifts, opts)
}

/// Like [`equivalence_shadow`], with the quotient map already built.
pub fn shadow_with(
    a: &Arc<Algebra>,
    b: &Arc<Algebra>,
    projection: &AlgebraMorphism,
    hypotheses: TheoremReport,
    pairs: &[(String, Module, String, Module)],
    shifts: &[i64],
    opts: DsgOptions,
) -> Result<ShadowReport> {
    let label = if hypotheses.conclusion == Conclusion::SingularEquivalenceCertified {
        ShadowLabel::Certified
    } else {
        ShadowLabel::Uncertified
    };
    let gorenstein_algebra = gorenstein(a, opts.bound);
    let gorenstein_quotient = gorenstein(b, opts.bound);
    let mut cells = Vec::new();
    for (xl, x, yl, y) in pairs {
        if !same_algebra(x.algebra(), b) || !same_algebra(y.algebra(), b) {
            return Err(Error::AlgebraMismatch);
        }
        let (rx, ry) = (x.restrict_scalars(projection)?, y.restrict_scalars(projection)?);
        for &t in shifts {
            let quotient = dsg_hom_dim_with(x, y, t, &gorenstein_quotient, opts)?;
            let restricted = dsg_hom_dim_with(&rx, &ry, t, &gorenstein_algebra, opts)?;
            let stable = |r: &DsgHomReport| r.status != Stability::NotStabilized;
            let verdict = if !stable(&quotient) || !stable(&restricted) {
                CellVerdict::Unresolved
            } else if quotient.value == restricted.value {
                CellVerdict::Match
            } else {
                CellVerdict::Mismatch
            };
            cells.push(ShadowCell {
                source: xl.clone(),
                target: yl.clone(),
                shift: t,
                quotient,
                restricted,
                verdict,
            });
        }
    }
    Ok(ShadowReport {
        label,
        hypotheses,
        gorenstein_algebra,
        gorenstein_quotient,
        cells,
    })
}

/// All ordered pairs of simple left modules, named by vertex.
pub fn simple_pairs(b: &Arc<Algebra>) -> Vec<(String, Module, String, Module)> {
    let simples: Vec<(String, Module)> = (0..b.num_vertices())
        .map(|v| (format!("S_{}", b.vertex_labels()[v]), Module::simple(b, v, Side::Left).expect("vertex")))
        .collect();
    let mut out = Vec::new();
    for (xl, x) in &simples {
        for (yl, y) in &simples {
            out.push((xl.clone(), x.clone(), yl.clone(), y.clone()));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::{parse_presentation, PathAlgebra};

    fn algebra(text: &str) -> Arc<Algebra> {
        PathAlgebra::build(&parse_presentation(text).unwrap()).unwrap().algebra().clone()
    }

    const DUAL: &str = "vertices v\narrow x: v -> v\nrelation x x\nnilpotency 2\n";
    const A2: &str = "vertices 1, 2\narrow a: 1 -> 2\nnilpotency 2\n";

    #[test]
    fn dual_numbers_singularity_homs() {
        let a = algebra(DUAL);
        assert_eq!(gorenstein(&a, 20).verdict, GorensteinVerdict::Gorenstein(0));
        assert!(is_selfinjective(&a) && is_nakayama(&a));
        let s = Module::simple(&a, 0, Side::Left).unwrap();
        assert_eq!(is_perfect_module(&s, 20), Perfectness::NotWithin(20));
        for i in -3..=3 {
            let r = dsg_hom_dim(&s, &s, i, DsgOptions::default()).unwrap();
            assert_eq!(r.status, Stability::ProvablyStable);
            assert_eq!(r.value, Some(1), "shift {i}");
        }
        let p = Module::regular(&a, Side::Left);
        assert_eq!(is_perfect_module(&p, 3), Perfectness::Perfect(0));
        assert_eq!(dsg_hom_dim(&p, &s, 0, DsgOptions::default()).unwrap().value, Some(0));
    }

    #[test]
    fn finite_global_dimension_is_trivial() {
        let a = algebra(A2);
        assert!(is_nakayama(&a) && !is_selfinjective(&a));
        let s = Module::simple(&a, 0, Side::Left).unwrap();
        assert_eq!(is_perfect_module(&s, 5), Perfectness::Perfect(1));
        let r = dsg_hom_dim(&s, &s, 0, DsgOptions::default()).unwrap();
        assert_eq!((r.status, r.value), (Stability::ProvablyStable, Some(0)));
        let j = a.vertex_ideal(&[1]);
        let report = equivalence_shadow(&a, &j, &simple_pairs(&a.quotient(&j).unwrap().0), &[-1, 0, 1], DsgOptions::default()).unwrap();
        assert_eq!(report.label, ShadowLabel::Certified);
        assert!(report.all_match());
    }

    #[test]
    fn projective_growth_stops() {
        let a = algebra(A2);
        let p = Module::projective(&a, 0, Side::Left).unwrap();
        assert_eq!(syzygy_growth(&p, 3), vec![2, 0, 0, 0]);
    }
}
