use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use super::{acting, Module, Side};
use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Scalar, Subspace};

/// `⊕_k A e_{v_k}` with its standard basis: summand-major, and inside each
/// summand the algebra basis elements of `A e_v` in algebra order.
#[derive(Clone, Debug)]
pub struct Projective {
    summands: Vec<usize>,
    /// Basis element of the acting algebra and owning summand, per position.
    elements: Vec<(usize, usize)>,
    offsets: Vec<usize>,
    /// Position of each algebra basis element inside a summand at vertex `v`.
    local: Vec<HashMap<usize, usize>>,
    module: Module,
}

impl Projective {
    pub fn new(algebra: &Arc<Algebra>, side: Side, summands: Vec<usize>) -> Projective {
        let op = acting(algebra, side);
        let f = algebra.field();
        let n = op.num_vertices();
        let per_vertex: Vec<Vec<usize>> = (0..n)
            .map(|v| (0..op.dim()).filter(|&b| op.right_vertex(b) == v).collect())
            .collect();
        let local: Vec<HashMap<usize, usize>> = per_vertex
            .iter()
            .map(|bs| bs.iter().enumerate().map(|(i, &b)| (b, i)).collect())
            .collect();
        let mut elements = Vec::new();
        let mut offsets = Vec::new();
        for (k, &v) in summands.iter().enumerate() {
            offsets.push(elements.len());
            elements.extend(per_vertex[v].iter().map(|&b| (b, k)));
        }
        let dim = elements.len();
        let mut actions = Vec::with_capacity(op.dim());
        for a in 0..op.dim() {
            let mut m = Matrix::zeros(f, dim, dim);
            for (j, &(b, k)) in elements.iter().enumerate() {
                for (c, x) in op.product(a, b) {
                    let i = offsets[k] + local[summands[k]][c];
                    m.set(i, j, x.clone());
                }
            }
            actions.push(m);
        }
        let vertex = elements.iter().map(|&(b, _)| op.left_vertex(b)).collect();
        let module = Module::from_parts(algebra.clone(), side, actions, vertex);
        Projective {
            summands,
            elements,
            offsets,
            local,
            module,
        }
    }

    pub fn module(&self) -> &Module {
        &self.module
    }

    pub fn summands(&self) -> &[usize] {
        &self.summands
    }

    /// Multiplicity of `P_v` for each vertex.
    pub fn multiplicities(&self) -> Vec<usize> {
        let mut m = vec![0; self.module.algebra().num_vertices()];
        for &v in &self.summands {
            m[v] += 1;
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.elements.len()
    }

    /// Position of the generator `e_v` of summand `k`.
    pub fn generator(&self, k: usize) -> usize {
        let op = self.module.acting_algebra();
        let v = self.summands[k];
        self.offsets[k] + self.local[v][&op.idempotent(v)]
    }

    /// Position of algebra basis element `b` in summand `k`, if `b ∈ A e_{v_k}`.
    pub fn position(&self, k: usize, b: usize) -> Option<usize> {
        self.local[self.summands[k]].get(&b).map(|i| self.offsets[k] + i)
    }

    /// `(algebra basis element, summand)` at each position.
    pub fn elements(&self) -> &[(usize, usize)] {
        &self.elements
    }

    /// Whether a vector lies in `rad P`: no weight on any generator.
    pub fn in_radical(&self, x: &[Scalar]) -> bool {
        (0..self.summands.len()).all(|k| x[self.generator(k)].is_zero())
    }

    /// The homomorphism `P → N` sending generator `k` to `images[k]`
    /// (each `images[k]` must lie in `e_{v_k} N`).
    pub fn map_from_generators(&self, target: &Module, images: &[Vec<Scalar>]) -> Matrix {
        let f = target.field();
        let cols: Vec<Vec<Scalar>> = self
            .elements
            .iter()
            .map(|&(b, k)| target.action(b).mul_vec(&images[k]))
            .collect();
        Matrix::from_columns(f, target.dim(), &cols)
    }

    /// Component of `x ∈ P` in summand `k`, as an element of the algebra.
    pub fn component(&self, x: &[Scalar], k: usize) -> Vec<Scalar> {
        let op = self.module.acting_algebra();
        let mut out = op.field().zeros(op.dim());
        let v = self.summands[k];
        for (&b, &i) in &self.local[v] {
            out[b] = x[self.offsets[k] + i].clone();
        }
        out
    }
}

/// A minimal projective cover `P → M` with its kernel `ΩM ⊆ P`.
#[derive(Clone, Debug)]
pub struct Cover {
    pub projective: Projective,
    pub epi: Matrix,
    pub kernel: Module,
    /// Columns: the kernel's basis in `P`-coordinates.
    pub inclusion: Matrix,
    /// Top generators chosen in `M`, one per summand.
    pub generators: Vec<Vec<Scalar>>,
}

/// Computes the minimal projective cover of `m`: one copy of `P_v` for each
/// dimension of `e_v (M / rad M)`.
pub fn projective_cover(m: &Module) -> Cover {
    let f = m.field();
    let rad = m.radical();
    let mut summands = Vec::new();
    let mut generators = Vec::new();
    for v in 0..m.algebra().num_vertices() {
        let mut span = rad.clone();
        for i in m.vertex_block(v) {
            let x = f.unit_vector(m.dim(), i);
            if !span.contains(&x) {
                span = span.sum(&Subspace::from_vectors(f, m.dim(), std::slice::from_ref(&x)));
                summands.push(v);
                generators.push(x);
            }
        }
    }
    let projective = Projective::new(m.algebra(), m.side(), summands);
    let epi = projective.map_from_generators(m, &generators);
    let (kernel, inclusion) = kernel_module(&projective.module, &epi);
    Cover {
        projective,
        epi,
        kernel,
        inclusion,
        generators,
    }
}

/// Kernel of a homomorphism out of `p`, on a vertex-adapted basis.
pub(crate) fn kernel_module(p: &Module, map: &Matrix) -> (Module, Matrix) {
    let f = p.field();
    let op = p.acting_algebra();
    let n = op.num_vertices();
    // per-vertex kernels, embedded back into P coordinates
    let mut blocks: Vec<(Vec<usize>, Subspace)> = Vec::with_capacity(n);
    for v in 0..n {
        let cols = p.vertex_block(v);
        let rows: Vec<usize> = (0..map.rows()).filter(|&r| cols.iter().any(|&c| !map.get(r, c).is_zero())).collect();
        let sub = Matrix::from_rows(
            f,
            cols.len(),
            rows.iter().map(|&r| cols.iter().map(|&c| map.get(r, c).clone()).collect()).collect(),
        );
        blocks.push((cols, sub.kernel()));
    }
    let mut columns = Vec::new();
    let mut vertex = Vec::new();
    let mut offsets = Vec::with_capacity(n);
    for (v, (cols, ker)) in blocks.iter().enumerate() {
        offsets.push(columns.len());
        for x in ker.basis_vectors() {
            let mut full = f.zeros(p.dim());
            for (c, val) in cols.iter().zip(x) {
                full[*c] = val;
            }
            columns.push(full);
            vertex.push(v);
        }
    }
    let d = columns.len();
    let mut actions = Vec::with_capacity(op.dim());
    for b in 0..op.dim() {
        let mut m = Matrix::zeros(f, d, d);
        let (s, t) = (op.right_vertex(b), op.left_vertex(b));
        let (tcols, tker) = &blocks[t];
        for j in 0..blocks[s].1.dim() {
            let y = p.action(b).mul_vec(&columns[offsets[s] + j]);
            let restricted: Vec<Scalar> = tcols.iter().map(|&c| y[c].clone()).collect();
            if restricted.iter().all(Scalar::is_zero) {
                continue;
            }
            for (i, x) in tker.coords_unchecked(&restricted).into_iter().enumerate() {
                m.set(offsets[t] + i, offsets[s] + j, x);
            }
        }
        actions.push(m);
    }
    let inclusion = Matrix::from_columns(f, p.dim(), &columns);
    (Module::from_parts(p.algebra().clone(), p.side(), actions, vertex), inclusion)
}

/// `ΩM`, the kernel of the minimal projective cover.
pub fn syzygy(m: &Module) -> Module {
    projective_cover(m).kernel
}

/// `[dim Ω⁰M, ..., dim ΩⁿM]`.
pub fn syzygy_dims(m: &Module, n: usize) -> Vec<usize> {
    let mut out = vec![m.dim()];
    let mut current = m.clone();
    for _ in 0..n {
        current = syzygy(&current);
        out.push(current.dim());
    }
    out
}

/// A minimal projective resolution `P_n → … → P_0 → M → 0`.
#[derive(Clone, Debug)]
pub struct Resolution {
    pub resolved: Module,
    pub terms: Vec<Projective>,
    /// `differentials[n]` is `d_{n+1}: P_{n+1} → P_n`.
    pub differentials: Vec<Matrix>,
    pub augmentation: Matrix,
    /// `syzygies[n]` is `Ω^{n+1} M` with its inclusion into `P_n`.
    pub syzygies: Vec<(Module, Matrix)>,
    pub minimal: bool,
}

/// Computes the minimal resolution through degree `n` (terms `P_0..P_n`).
pub fn min_resolution(m: &Module, n: usize) -> Resolution {
    let cover = projective_cover(m);
    let mut terms = vec![cover.projective.clone()];
    let augmentation = cover.epi.clone();
    let mut syzygies = vec![(cover.kernel.clone(), cover.inclusion.clone())];
    let mut differentials = Vec::new();
    for _ in 0..n {
        let (k, incl) = syzygies.last().expect("nonempty").clone();
        let c = projective_cover(&k);
        differentials.push(incl.mul(&c.epi));
        terms.push(c.projective);
        syzygies.push((c.kernel, c.inclusion));
    }
    let res = Resolution {
        resolved: m.clone(),
        terms,
        differentials,
        augmentation,
        syzygies,
        minimal: true,
    };
    debug_assert!(res.check().all(), "resolution invariants: {:?}", res.check());
    res
}

/// Outcome of checking a resolution's defining properties.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResolutionCheck {
    pub squares_vanish: bool,
    pub exact: bool,
    pub radical_images: bool,
    pub homomorphisms: bool,
}

impl ResolutionCheck {
    pub fn all(&self) -> bool {
        self.squares_vanish && self.exact && self.radical_images && self.homomorphisms
    }
}

impl Resolution {
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Vertex multiplicities of each term.
    pub fn multiplicities(&self) -> Vec<Vec<usize>> {
        self.terms.iter().map(Projective::multiplicities).collect()
    }

    /// Checks `d² = 0`, exactness at every computed degree, that every
    /// differential lands in the radical, and that all maps are
    /// homomorphisms.
    pub fn check(&self) -> ResolutionCheck {
        let mut squares_vanish = true;
        let mut exact = true;
        let mut radical_images = true;
        let mut homomorphisms = is_hom(self.terms[0].module(), &self.resolved, &self.augmentation);
        // exactness at M: augmentation onto
        if self.augmentation.rank() != self.resolved.dim() {
            exact = false;
        }
        for (i, d) in self.differentials.iter().enumerate() {
            let (src, tgt) = (&self.terms[i + 1], &self.terms[i]);
            homomorphisms &= is_hom(src.module(), tgt.module(), d);
            let prev = if i == 0 { &self.augmentation } else { &self.differentials[i - 1] };
            if !prev.mul(d).is_zero() {
                squares_vanish = false;
            }
            if prev.cols() - prev.rank() != d.rank() {
                exact = false;
            }
            for c in 0..d.cols() {
                if !tgt.in_radical(&d.column(c)) {
                    radical_images = false;
                }
            }
        }
        ResolutionCheck {
            squares_vanish,
            exact,
            radical_images,
            homomorphisms,
        }
    }
}

pub(crate) fn is_hom(src: &Module, tgt: &Module, f: &Matrix) -> bool {
    let op = src.acting_algebra();
    let gens = op.idempotents().iter().chain(op.arrow_generators());
    for &g in gens {
        if f.mul(src.action(g)) != tgt.action(g).mul(f) {
            return false;
        }
    }
    true
}

/// A projective or injective dimension, exact when it is at most the search
/// bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum HomologicalDimension {
    Finite(usize),
    /// The dimension is at least this value (the bound was exhausted).
    AtLeast(usize),
}

impl HomologicalDimension {
    pub fn finite(&self) -> Option<usize> {
        match self {
            HomologicalDimension::Finite(n) => Some(*n),
            HomologicalDimension::AtLeast(_) => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, HomologicalDimension::Finite(_))
    }
}

impl fmt::Display for HomologicalDimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HomologicalDimension::Finite(n) => write!(f, "{n}"),
            HomologicalDimension::AtLeast(n) => write!(f, ">= {n}"),
        }
    }
}

#[derive(Clone, Copy, Debug)]
enum SimpleState {
    InProgress,
    Finite(usize),
    /// Exceeds the given budget.
    Beyond(usize),
    Infinite,
}

/// Projective dimension by syzygy iteration. Simple direct summands are
/// split off and memoized; a simple that reappears inside its own syzygies
/// proves infinite dimension early.
pub fn projective_dimension(m: &Module, bound: usize) -> HomologicalDimension {
    let mut memo = HashMap::new();
    match pd_rec(m, bound, &mut memo) {
        Some(n) => HomologicalDimension::Finite(n),
        None => HomologicalDimension::AtLeast(bound + 1),
    }
}

/// `id M = pd D(M)`.
pub fn injective_dimension(m: &Module, bound: usize) -> HomologicalDimension {
    projective_dimension(&m.dual(), bound)
}

fn pd_rec(m: &Module, budget: usize, memo: &mut HashMap<usize, SimpleState>) -> Option<usize> {
    if m.is_zero() {
        return Some(0);
    }
    let (counts, rest) = match m.split_simples() {
        Ok(x) => x,
        Err(_) => (vec![0; m.algebra().num_vertices()], m.clone()),
    };
    let mut best = 0;
    for (v, &c) in counts.iter().enumerate() {
        if c > 0 {
            best = best.max(pd_simple(m, v, budget, memo)?);
        }
    }
    if !rest.is_zero() {
        best = best.max(pd_generic(&rest, budget, memo)?);
    }
    Some(best)
}

fn pd_generic(m: &Module, budget: usize, memo: &mut HashMap<usize, SimpleState>) -> Option<usize> {
    let k = syzygy(m);
    if k.is_zero() {
        return Some(0);
    }
    if budget == 0 {
        return None;
    }
    pd_rec(&k, budget - 1, memo).map(|n| n + 1)
}

fn pd_simple(like: &Module, v: usize, budget: usize, memo: &mut HashMap<usize, SimpleState>) -> Option<usize> {
    match memo.get(&v) {
        Some(SimpleState::Finite(n)) => return (*n <= budget).then_some(*n),
        Some(SimpleState::Infinite) => return None,
        Some(SimpleState::Beyond(b)) if *b >= budget => return None,
        Some(SimpleState::InProgress) => {
            memo.insert(v, SimpleState::Infinite);
            return None;
        }
        _ => {}
    }
    memo.insert(v, SimpleState::InProgress);
    let s = Module::simple(like.algebra(), v, like.side()).expect("vertex in range");
    let r = pd_generic(&s, budget, memo);
    let state = match (r, memo.get(&v)) {
        (_, Some(SimpleState::Infinite)) => SimpleState::Infinite,
        (Some(n), _) => SimpleState::Finite(n),
        (None, _) => SimpleState::Beyond(budget),
    };
    memo.insert(v, state);
    match state {
        SimpleState::Finite(n) => Some(n),
        _ => None,
    }
}

/// Lifts `f: M → N` through covers `P → M`, `Q → N` to `f̃: P → Q`.
pub(crate) fn lift_through_covers(f: &Matrix, cm: &Cover, cn: &Cover) -> Result<Matrix> {
    let q = &cn.projective;
    let mut images = Vec::with_capacity(cm.generators.len());
    for g in &cm.generators {
        let y = f.mul_vec(g);
        // any preimage inside e_v Q works; solve on the whole space
        let x = cn
            .epi
            .solve(&y)
            .ok_or_else(|| Error::Internal("cover is not surjective".into()))?;
        images.push(x);
    }
    // images must be e_v-homogeneous: project with the idempotent
    let op = cm.projective.module().acting_algebra();
    let images: Vec<Vec<Scalar>> = images
        .into_iter()
        .zip(cm.projective.summands())
        .map(|(x, &v)| q.module().action(op.idempotent(v)).mul_vec(&x))
        .collect();
    Ok(cm.projective.map_from_generators(q.module(), &images))
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
    fn dual_numbers_simple_is_periodic() {
        let a = algebra(DUAL);
        let s = Module::simple(&a, 0, Side::Left).unwrap();
        let c = projective_cover(&s);
        assert_eq!(c.projective.dim(), 2);
        assert_eq!(c.kernel.dim(), 1);
        assert_eq!(syzygy_dims(&s, 10), vec![1; 11]);
        assert_eq!(projective_dimension(&s, 20), HomologicalDimension::AtLeast(21));
    }

    #[test]
    fn a2_dimensions() {
        let a = algebra(A2);
        let s1 = Module::simple(&a, 0, Side::Left).unwrap();
        assert_eq!(projective_dimension(&s1, 5), HomologicalDimension::Finite(1));
        let p = Module::projective(&a, 0, Side::Left).unwrap();
        assert_eq!(projective_dimension(&p, 5), HomologicalDimension::Finite(0));
        assert_eq!(projective_cover(&p).kernel.dim(), 0);
        let reg = Module::regular(&a, Side::Left);
        assert_eq!(injective_dimension(&reg, 5), HomologicalDimension::Finite(1));
    }

    #[test]
    fn resolution_invariants() {
        let a = algebra(A2);
        let s1 = Module::simple(&a, 0, Side::Left).unwrap();
        let r = min_resolution(&s1, 3);
        assert!(r.check().all());
        assert_eq!(r.multiplicities()[0], vec![1, 0]);
        assert_eq!(r.multiplicities()[1], vec![0, 1]);
        assert_eq!(r.multiplicities()[2], vec![0, 0]);
        let dual = algebra(DUAL);
        let r = min_resolution(&Module::simple(&dual, 0, Side::Right).unwrap(), 5);
        assert!(r.check().all());
        assert!(r.terms.iter().all(|p| p.summands() == [0]));
    }
}
