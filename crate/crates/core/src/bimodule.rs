//! Bimodules as paired commuting actions, bimodule projective covers, and
//! the hereditary / homological ideal certificates.
//!
//! The enveloping algebra is never built. A bimodule keeps a left and a
//! right action matrix per algebra basis element, on a basis where every
//! vector lies in a single `e_i X e_j`.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use crate::algebra::{same_algebra, Algebra, Ideal};
use crate::error::{Error, Result};
use crate::linalg::{FieldSpec, Matrix, Scalar, Subspace};
use crate::module::{projective_dimension, tensor_over_algebra, tor_range, HomologicalDimension, Module, Side};

#[derive(Clone)]
pub struct Bimodule {
    algebra: Arc<Algebra>,
    left: Vec<Matrix>,
    /// Matrix of `x ↦ x·b`.
    right: Vec<Matrix>,
    /// `(i, j)` with the basis vector in `e_i X e_j`.
    support: Vec<(usize, usize)>,
}

impl std::fmt::Debug for Bimodule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Bimodule").field("dim", &self.dim()).finish()
    }
}

impl Bimodule {
    pub fn new(algebra: Arc<Algebra>, left: Vec<Matrix>, right: Vec<Matrix>) -> Result<Bimodule> {
        let support = adapted_support(&algebra, &left, &right)?;
        let x = Bimodule {
            algebra,
            left,
            right,
            support,
        };
        x.validate()?;
        Ok(x)
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn field(&self) -> FieldSpec {
        self.algebra.field()
    }

    pub fn dim(&self) -> usize {
        self.support.len()
    }

    pub fn is_zero(&self) -> bool {
        self.support.is_empty()
    }

    pub fn left_action(&self, b: usize) -> &Matrix {
        &self.left[b]
    }

    pub fn right_action(&self, b: usize) -> &Matrix {
        &self.right[b]
    }

    pub fn support(&self) -> &[(usize, usize)] {
        &self.support
    }

    /// Checks both actions against the structure constants, the unit laws,
    /// that the actions commute, and that the basis is adapted.
    pub fn validate(&self) -> Result<()> {
        let a = &self.algebra;
        let f = self.field();
        let d = self.dim();
        if self.left.len() != a.dim() || self.right.len() != a.dim() {
            return Err(Error::InvalidModule("wrong number of action matrices".into()));
        }
        let id = Matrix::identity(f, d);
        let sum = |acts: &[Matrix]| {
            a.idempotents()
                .iter()
                .fold(Matrix::zeros(f, d, d), |acc, &e| acc.add(&acts[e]))
        };
        if sum(&self.left) != id || sum(&self.right) != id {
            return Err(Error::InvalidModule("the unit does not act as the identity".into()));
        }
        for i in 0..a.dim() {
            for j in 0..a.dim() {
                let combo = |acts: &[Matrix]| {
                    a.product(i, j)
                        .iter()
                        .fold(Matrix::zeros(f, d, d), |acc, (k, c)| acc.add(&acts[*k].scale(c)))
                };
                if self.left[i].mul(&self.left[j]) != combo(&self.left) {
                    return Err(Error::InvalidModule(format!("left action does not respect {}·{}", a.label(i), a.label(j))));
                }
                // x·(ij) = (x·i)·j
                if self.right[j].mul(&self.right[i]) != combo(&self.right) {
                    return Err(Error::InvalidModule(format!("right action does not respect {}·{}", a.label(i), a.label(j))));
                }
                if self.left[i].mul(&self.right[j]) != self.right[j].mul(&self.left[i]) {
                    return Err(Error::InvalidModule(format!(
                        "actions of {} and {} do not commute",
                        a.label(i),
                        a.label(j)
                    )));
                }
            }
        }
        if adapted_support(a, &self.left, &self.right)? != self.support {
            return Err(Error::InvalidModule("basis is not adapted".into()));
        }
        Ok(())
    }

    /// `A` acting on itself from both sides.
    pub fn regular(algebra: &Arc<Algebra>) -> Bimodule {
        let f = algebra.field();
        let n = algebra.dim();
        let mut left = Vec::with_capacity(n);
        let mut right = Vec::with_capacity(n);
        for b in 0..n {
            let mut l = Matrix::zeros(f, n, n);
            let mut r = Matrix::zeros(f, n, n);
            for j in 0..n {
                for (k, c) in algebra.product(b, j) {
                    l.set(*k, j, c.clone());
                }
                for (k, c) in algebra.product(j, b) {
                    r.set(*k, j, c.clone());
                }
            }
            left.push(l);
            right.push(r);
        }
        let support = (0..n).map(|b| (algebra.left_vertex(b), algebra.right_vertex(b))).collect();
        Bimodule {
            algebra: algebra.clone(),
            left,
            right,
            support,
        }
    }

    /// An ideal with the multiplication actions, on an adapted basis; also
    /// returns the inclusion into `A`.
    pub fn from_ideal(algebra: &Arc<Algebra>, ideal: &Ideal) -> Result<(Bimodule, Matrix)> {
        Bimodule::regular(algebra).submodule(ideal.space())
    }

    /// `M ⊗_k N` for a left module `M` and a right module `N`, with the
    /// Kronecker basis order (`M` index major).
    pub fn tensor(m: &Module, n: &Module) -> Result<Bimodule> {
        if m.side() != Side::Left || n.side() != Side::Right {
            return Err(Error::InvalidArgument("tensor bimodule needs a left and a right module".into()));
        }
        if !same_algebra(m.algebra(), n.algebra()) {
            return Err(Error::AlgebraMismatch);
        }
        let f = m.field();
        let (im, in_) = (Matrix::identity(f, m.dim()), Matrix::identity(f, n.dim()));
        let a = m.algebra();
        let left = (0..a.dim()).map(|b| m.action(b).kronecker(&in_)).collect();
        let right = (0..a.dim()).map(|b| im.kronecker(n.action(b))).collect();
        let mut support = Vec::with_capacity(m.dim() * n.dim());
        for &i in m.vertices() {
            for &j in n.vertices() {
                support.push((i, j));
            }
        }
        Ok(Bimodule {
            algebra: a.clone(),
            left,
            right,
            support,
        })
    }

    /// The projective bimodule `⊕_g A e_{i_g} ⊗ e_{j_g} A`, basis
    /// `(b, c, g)` for `b ∈ A e_i`, `c ∈ e_j A`, generator-major.
    pub fn projective(algebra: &Arc<Algebra>, summands: &[(usize, usize)]) -> Bimodule {
        let a = algebra;
        let f = a.field();
        let mut elements = Vec::new();
        let mut index = BTreeMap::new();
        for (g, &(i, j)) in summands.iter().enumerate() {
            for b in (0..a.dim()).filter(|&b| a.right_vertex(b) == i) {
                for c in (0..a.dim()).filter(|&c| a.left_vertex(c) == j) {
                    index.insert((b, c, g), elements.len());
                    elements.push((b, c, g));
                }
            }
        }
        let d = elements.len();
        let mut left = Vec::with_capacity(a.dim());
        let mut right = Vec::with_capacity(a.dim());
        for x in 0..a.dim() {
            let mut l = Matrix::zeros(f, d, d);
            let mut r = Matrix::zeros(f, d, d);
            for (col, &(b, c, g)) in elements.iter().enumerate() {
                for (k, s) in a.product(x, b) {
                    l.set(index[&(*k, c, g)], col, s.clone());
                }
                for (k, s) in a.product(c, x) {
                    r.set(index[&(b, *k, g)], col, s.clone());
                }
            }
            left.push(l);
            right.push(r);
        }
        let support = elements.iter().map(|&(b, c, _)| (a.left_vertex(b), a.right_vertex(c))).collect();
        Bimodule {
            algebra: algebra.clone(),
            left,
            right,
            support,
        }
    }

    /// `rad(A)·X + X·rad(A)`.
    pub fn radical(&self) -> Subspace {
        let mut vectors = Vec::new();
        for &g in self.algebra.arrow_generators() {
            vectors.extend(self.left[g].transpose().row_vectors());
            vectors.extend(self.right[g].transpose().row_vectors());
        }
        Subspace::from_vectors(self.field(), self.dim(), &vectors)
    }

    /// The sub-bimodule spanned by `space` on an adapted basis, with its
    /// inclusion matrix.
    pub fn submodule(&self, space: &Subspace) -> Result<(Bimodule, Matrix)> {
        let f = self.field();
        let a = &self.algebra;
        let mut blocks: BTreeMap<(usize, usize), Subspace> = BTreeMap::new();
        for i in 0..a.num_vertices() {
            for j in 0..a.num_vertices() {
                let (ei, ej) = (&self.left[a.idempotent(i)], &self.right[a.idempotent(j)]);
                let projected: Vec<Vec<Scalar>> = space.basis_vectors().iter().map(|x| ej.mul_vec(&ei.mul_vec(x))).collect();
                let s = Subspace::from_vectors(f, self.dim(), &projected);
                if s.dim() > 0 {
                    blocks.insert((i, j), s);
                }
            }
        }
        if blocks.values().map(Subspace::dim).sum::<usize>() != space.dim() {
            return Err(Error::InvalidArgument("subspace is not closed under the idempotents".into()));
        }
        self.restrict(blocks)
    }

    /// Restriction to a sub-bimodule given by its `e_i X e_j` pieces.
    fn restrict(&self, blocks: BTreeMap<(usize, usize), Subspace>) -> Result<(Bimodule, Matrix)> {
        let f = self.field();
        let a = &self.algebra;
        let mut offsets = BTreeMap::new();
        let mut columns = Vec::new();
        let mut support = Vec::new();
        for (&key, s) in &blocks {
            offsets.insert(key, columns.len());
            for x in s.basis_vectors() {
                columns.push(x);
                support.push(key);
            }
        }
        let d = columns.len();
        let not_sub = || Error::InvalidArgument("subspace is not a sub-bimodule".into());
        let mut left = Vec::with_capacity(a.dim());
        let mut right = Vec::with_capacity(a.dim());
        for b in 0..a.dim() {
            let (t, s) = (a.left_vertex(b), a.right_vertex(b));
            let mut l = Matrix::zeros(f, d, d);
            let mut r = Matrix::zeros(f, d, d);
            for (col, (x, &(i, j))) in columns.iter().zip(&support).enumerate() {
                if i == s {
                    let y = self.left[b].mul_vec(x);
                    if y.iter().any(|c| !c.is_zero()) {
                        let target = blocks.get(&(t, j)).ok_or_else(not_sub)?;
                        let c = target.coords(&y).ok_or_else(not_sub)?;
                        for (k, v) in c.into_iter().enumerate() {
                            l.set(offsets[&(t, j)] + k, col, v);
                        }
                    }
                }
                if j == t {
                    let y = self.right[b].mul_vec(x);
                    if y.iter().any(|c| !c.is_zero()) {
                        let target = blocks.get(&(i, s)).ok_or_else(not_sub)?;
                        let c = target.coords(&y).ok_or_else(not_sub)?;
                        for (k, v) in c.into_iter().enumerate() {
                            r.set(offsets[&(i, s)] + k, col, v);
                        }
                    }
                }
            }
            left.push(l);
            right.push(r);
        }
        let inclusion = Matrix::from_columns(f, self.dim(), &columns);
        Ok((
            Bimodule {
                algebra: a.clone(),
                left,
                right,
                support,
            },
            inclusion,
        ))
    }
}

/// The support of each basis vector, or an error if some vector is not
/// fixed by exactly one idempotent on each side.
fn adapted_support(a: &Algebra, left: &[Matrix], right: &[Matrix]) -> Result<Vec<(usize, usize)>> {
    if left.len() != a.dim() || right.len() != a.dim() {
        return Err(Error::InvalidModule("wrong number of action matrices".into()));
    }
    let d = left.first().map_or(0, Matrix::rows);
    let side = |acts: &[Matrix]| -> Result<Vec<usize>> {
        let mut vertex = vec![usize::MAX; d];
        for v in 0..a.num_vertices() {
            let e = &acts[a.idempotent(v)];
            if e.rows() != d || e.cols() != d {
                return Err(Error::InvalidModule("action matrix of the wrong size".into()));
            }
            for (i, slot) in vertex.iter_mut().enumerate() {
                if e.get(i, i).is_one() {
                    *slot = v;
                }
            }
        }
        if vertex.contains(&usize::MAX) {
            return Err(Error::InvalidModule("basis is not adapted to the idempotents".into()));
        }
        Ok(vertex)
    };
    let (l, r) = (side(left)?, side(right)?);
    Ok(l.into_iter().zip(r).collect())
}

/// A minimal projective cover of a bimodule, `⊕ A e_i ⊗ e_j A → X`.
#[derive(Clone, Debug)]
pub struct BimoduleCover {
    pub summands: Vec<(usize, usize)>,
    pub projective: Bimodule,
    pub epi: Matrix,
    pub kernel: Bimodule,
    pub inclusion: Matrix,
}

impl BimoduleCover {
    /// Multiplicity of `A e_i ⊗ e_j A`, indexed `[i][j]`.
    pub fn multiplicities(&self) -> Vec<Vec<usize>> {
        let n = self.projective.algebra.num_vertices();
        let mut m = vec![vec![0; n]; n];
        for &(i, j) in &self.summands {
            m[i][j] += 1;
        }
        m
    }
}

pub fn bimodule_projective_cover(x: &Bimodule) -> BimoduleCover {
    let f = x.field();
    let a = &x.algebra;
    let rad = x.radical();
    let mut summands = Vec::new();
    let mut generators = Vec::new();
    let mut span = rad;
    for (k, &key) in x.support.iter().enumerate() {
        let v = f.unit_vector(x.dim(), k);
        if !span.contains(&v) {
            span = span.sum(&Subspace::from_vectors(f, x.dim(), std::slice::from_ref(&v)));
            summands.push(key);
            generators.push(v);
        }
    }
    // keep summands grouped as generated; sort by vertex pair for a stable order
    let mut order: Vec<usize> = (0..summands.len()).collect();
    order.sort_by_key(|&g| summands[g]);
    let summands: Vec<(usize, usize)> = order.iter().map(|&g| summands[g]).collect();
    let generators: Vec<Vec<Scalar>> = order.iter().map(|&g| generators[g].clone()).collect();

    let p = Bimodule::projective(a, &summands);
    let mut cols = Vec::with_capacity(p.dim());
    for (g, &(i, j)) in summands.iter().enumerate() {
        for b in (0..a.dim()).filter(|&b| a.right_vertex(b) == i) {
            for c in (0..a.dim()).filter(|&c| a.left_vertex(c) == j) {
                cols.push(x.right[c].mul_vec(&x.left[b].mul_vec(&generators[g])));
            }
        }
    }
    let epi = Matrix::from_columns(f, x.dim(), &cols);
    // the epi preserves supports, so the kernel splits block by block
    let mut blocks = BTreeMap::new();
    let mut keys: Vec<(usize, usize)> = p.support.clone();
    keys.sort();
    keys.dedup();
    for key in keys {
        let pcols: Vec<usize> = (0..p.dim()).filter(|&c| p.support[c] == key).collect();
        let xrows: Vec<usize> = (0..x.dim()).filter(|&r| x.support[r] == key).collect();
        let sub = Matrix::from_rows(
            f,
            pcols.len(),
            xrows.iter().map(|&r| pcols.iter().map(|&c| epi.get(r, c).clone()).collect()).collect(),
        );
        let ker = sub.kernel();
        if ker.dim() == 0 {
            continue;
        }
        let full: Vec<Vec<Scalar>> = ker
            .basis_vectors()
            .into_iter()
            .map(|v| {
                let mut y = f.zeros(p.dim());
                for (c, val) in pcols.iter().zip(v) {
                    y[*c] = val;
                }
                y
            })
            .collect();
        blocks.insert(key, Subspace::from_vectors(f, p.dim(), &full));
    }
    let (kernel, inclusion) = p.restrict(blocks).expect("kernel of a bimodule map is a sub-bimodule");
    BimoduleCover {
        summands,
        projective: p,
        epi,
        kernel,
        inclusion,
    }
}

/// Projective dimension as a bimodule, by syzygy iteration.
pub fn bimodule_pd(x: &Bimodule, bound: usize) -> HomologicalDimension {
    let mut current = x.clone();
    for n in 0..=bound {
        if current.is_zero() {
            return HomologicalDimension::Finite(n.saturating_sub(1));
        }
        let cover = bimodule_projective_cover(&current);
        if cover.kernel.is_zero() {
            return HomologicalDimension::Finite(n);
        }
        current = cover.kernel;
    }
    HomologicalDimension::AtLeast(bound + 1)
}

pub fn is_idempotent_ideal(a: &Algebra, ideal: &Ideal) -> bool {
    ideal.product(a, ideal) == *ideal.space()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HereditaryCertificate {
    pub idempotent: bool,
    pub ideal_dim: usize,
    /// Summands `A e_i ⊗ e_j A` of the bimodule cover.
    pub cover_summands: Vec<(usize, usize)>,
    pub cover_dim: usize,
    pub cover_kernel_dim: usize,
    pub passed: bool,
}

pub fn is_hereditary_ideal(a: &Arc<Algebra>, ideal: &Ideal) -> Result<HereditaryCertificate> {
    let idempotent = is_idempotent_ideal(a, ideal);
    let (x, _) = Bimodule::from_ideal(a, ideal)?;
    let cover = bimodule_projective_cover(&x);
    let kernel_dim = cover.kernel.dim();
    Ok(HereditaryCertificate {
        idempotent,
        ideal_dim: ideal.dim(),
        cover_summands: cover.summands.clone(),
        cover_dim: cover.projective.dim(),
        cover_kernel_dim: kernel_dim,
        passed: idempotent && kernel_dim == 0,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Yes,
    No,
    Inconclusive,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Yes => "YES",
            Verdict::No => "NO",
            Verdict::Inconclusive => "INCONCLUSIVE",
        })
    }
}

/// The direct test: `B ⊗_A B → B` bijective and `Tor_i(B, B) = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EpimorphismCheck {
    pub multiplication_bijective: bool,
    /// `dim Tor_i(B, B)` for `i = 1, 2, ...`, truncated as for the ideal.
    pub tor: Vec<usize>,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologicalIdealReport {
    pub idempotent: bool,
    /// `dim Tor_i(J, A/J)` for `i = 1, 2, ...` as far as needed (empty when
    /// `J² ≠ J`): up to the bound, or to a projective dimension certificate,
    /// or to the first nonzero value in a short probe.
    pub tor: Vec<usize>,
    pub pd_quotient_left: HomologicalDimension,
    pub pd_ideal_right: HomologicalDimension,
    pub verdict: Verdict,
    pub cross: EpimorphismCheck,
    /// The two verdicts agree whenever both are conclusive.
    pub agree: bool,
}

/// Decides whether `A → A/J` is a homological epimorphism, as far as the
/// bound allows: vanishing in a window only counts as a proof when a
/// projective dimension certificate bounds the degrees that can be nonzero.
pub fn is_homological_ideal(a: &Arc<Algebra>, ideal: &Ideal, bound: usize) -> Result<HomologicalIdealReport> {
    if ideal.dim() == a.dim() {
        return Err(Error::InvalidArgument("the ideal is the whole algebra".into()));
    }
    let f = a.field();
    let idempotent = is_idempotent_ideal(a, ideal);
    let (b_left, proj_left) = Module::quotient_by_ideal(a, ideal, Side::Left)?;
    let (b_right, proj_right) = Module::quotient_by_ideal(a, ideal, Side::Right)?;
    let (j_right, _) = Module::from_ideal(a, ideal, Side::Right)?;
    let pd_quotient_left = projective_dimension(&b_left, bound);
    let pd_ideal_right = projective_dimension(&j_right, bound);
    let certified = pd_quotient_left.is_finite() || pd_ideal_right.is_finite();

    let windowed = |tor: &[usize], base: bool| {
        if !base || tor.iter().any(|&t| t != 0) {
            Verdict::No
        } else if certified {
            Verdict::Yes
        } else {
            Verdict::Inconclusive
        }
    };

    // Tor_i(-, A/J) vanishes above pd(A/J), and Tor_i(J, -) above pd(J)
    let window = [
        pd_quotient_left.finite(),
        pd_ideal_right.finite(),
    ]
    .into_iter()
    .flatten()
    .min()
    .map_or(bound, |d| d.min(bound));
    let tor = if idempotent {
        tor_window(&j_right, &b_left, window)?
    } else {
        Vec::new()
    };
    let verdict = windowed(&tor, idempotent);

    // cross-oracle: multiplication B ⊗_A B → B and Tor(B, B)
    let reps = |proj: &Matrix| -> Vec<Vec<Scalar>> {
        (0..proj.rows())
            .map(|i| proj.solve(&f.unit_vector(proj.rows(), i)).expect("projection is onto"))
            .collect()
    };
    let (rr, rl) = (reps(&proj_right), reps(&proj_left));
    let t = tensor_over_algebra(&b_right, &b_left)?;
    let rank = t.induced_rank(f, b_left.dim(), |i, j| proj_left.mul_vec(&a.multiply(&rr[i], &rl[j]).expect("dims")));
    let multiplication_bijective = t.dim == b_left.dim() && rank == Some(b_left.dim());
    // pd(A/J as right module) ≤ pd(J_A) + 1
    let window_bb = [pd_quotient_left.finite(), pd_ideal_right.finite().map(|d| d + 1)]
        .into_iter()
        .flatten()
        .min()
        .map_or(bound, |d| d.min(bound));
    let tor_bb = tor_window(&b_right, &b_left, window_bb)?;
    let cross = EpimorphismCheck {
        verdict: windowed(&tor_bb, multiplication_bijective),
        multiplication_bijective,
        tor: tor_bb,
    };
    let agree = verdict == Verdict::Inconclusive || cross.verdict == Verdict::Inconclusive || verdict == cross.verdict;
    Ok(HomologicalIdealReport {
        idempotent,
        tor,
        pd_quotient_left,
        pd_ideal_right,
        verdict,
        cross,
        agree,
    })
}

/// `dim Tor_i(X, Y)` for `i = 1..=max`. Low degrees are tried first, since
/// resolutions can grow exponentially and one nonzero value already
/// decides the question; the result is then shorter than `max`.
fn tor_window(x: &Module, y: &Module, max: usize) -> Result<Vec<usize>> {
    const PROBE: usize = 2;
    if max > PROBE {
        let early = tor_range(x, y, PROBE)?;
        if early[1..].iter().any(|&t| t != 0) {
            return Ok(early[1..].to_vec());
        }
    }
    Ok(tor_range(x, y, max)?[1..].to_vec())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Conclusion {
    SingularEquivalenceCertified,
    NotCertified,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TheoremReport {
    pub homological: HomologicalIdealReport,
    pub bimodule_pd: HomologicalDimension,
    pub conclusion: Conclusion,
}

/// Both hypotheses for a singular equivalence between `A` and `A/J`: `J`
/// homological and of finite projective dimension as a bimodule.
pub fn theorem_hypothesis_check(a: &Arc<Algebra>, ideal: &Ideal, bound: usize) -> Result<TheoremReport> {
    let homological = is_homological_ideal(a, ideal, bound)?;
    let (x, _) = Bimodule::from_ideal(a, ideal)?;
    // irrelevant to the conclusion unless J is homological; keep it cheap
    let pd_bound = if homological.verdict == Verdict::Yes { bound } else { bound.min(2) };
    let bimodule_pd = bimodule_pd(&x, pd_bound);
    let conclusion = if homological.verdict == Verdict::Yes && bimodule_pd.is_finite() {
        Conclusion::SingularEquivalenceCertified
    } else {
        Conclusion::NotCertified
    };
    Ok(TheoremReport {
        homological,
        bimodule_pd,
        conclusion,
    })
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
    fn regular_and_projective_bimodules_validate() {
        let a = algebra(A2);
        Bimodule::regular(&a).validate().unwrap();
        for i in 0..2 {
            for j in 0..2 {
                let p = Bimodule::projective(&a, &[(i, j)]);
                p.validate().unwrap();
                let left = Module::projective(&a, i, Side::Left).unwrap().dim();
                let right = Module::projective(&a, j, Side::Right).unwrap().dim();
                assert_eq!(p.dim(), left * right);
                assert_eq!(bimodule_pd(&p, 3), HomologicalDimension::Finite(0));
            }
        }
    }

    #[test]
    fn a2_vertex_ideal_is_hereditary_and_homological() {
        let a = algebra(A2);
        let j = a.vertex_ideal(&[1]);
        let (x, _) = Bimodule::from_ideal(&a, &j).unwrap();
        x.validate().unwrap();
        assert_eq!(x.dim(), 2);
        let cert = is_hereditary_ideal(&a, &j).unwrap();
        assert!(cert.passed);
        assert_eq!(cert.cover_summands, vec![(1, 1)]);
        let report = is_homological_ideal(&a, &j, 5).unwrap();
        assert_eq!(report.verdict, Verdict::Yes);
        assert!(report.tor.iter().all(|&t| t == 0));
        assert_eq!(report.cross.verdict, Verdict::Yes);
        assert!(report.agree);
    }

    #[test]
    fn dual_radical_is_not_homological() {
        let a = algebra(DUAL);
        let j = a.ideal_generated(&[a.basis_vector(1)]);
        assert!(!is_idempotent_ideal(&a, &j));
        assert!(!is_hereditary_ideal(&a, &j).unwrap().passed);
        let (x, _) = Bimodule::from_ideal(&a, &j).unwrap();
        assert_eq!(bimodule_pd(&x, 10), HomologicalDimension::AtLeast(11));
        let report = theorem_hypothesis_check(&a, &j, 6).unwrap();
        assert_eq!(report.homological.verdict, Verdict::No);
        assert_eq!(report.homological.cross.verdict, Verdict::No);
        assert_eq!(report.conclusion, Conclusion::NotCertified);
    }

    #[test]
    fn trivial_ideals_are_idempotent() {
        let a = algebra(DUAL);
        let zero = a.ideal_generated(&[]);
        let whole = a.ideal_generated(&[a.unit()]);
        assert!(is_idempotent_ideal(&a, &zero));
        assert!(is_idempotent_ideal(&a, &whole));
    }

    #[test]
    fn tensor_bimodule_validates() {
        let a = algebra(A2);
        let m = Module::projective(&a, 0, Side::Left).unwrap();
        let n = Module::projective(&a, 0, Side::Right).unwrap();
        let x = Bimodule::tensor(&m, &n).unwrap();
        x.validate().unwrap();
        assert_eq!(x.dim(), m.dim() * n.dim());
    }
}
