use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use super::parse::{merge_terms, parse_combination};
use super::{Path, Presentation, Quiver, Relation};
use crate::algebra::{Algebra, AlgebraMorphism, AlgebraParts};
use crate::error::{Error, Result};
use crate::linalg::sparse::{self, SparseVec};
use crate::linalg::{Matrix, Scalar, SparseEchelon};

/// The algebra `kQ/(I + J^N)` together with the data needed to reduce
/// arbitrary paths to its canonical basis.
#[derive(Debug)]
pub struct PathAlgebra {
    presentation: Presentation,
    algebra: Arc<Algebra>,
    /// Paths of length `< N` avoiding every monomial relation, deg-lex.
    paths: Vec<Path>,
    index: HashMap<Vec<usize>, usize>,
    /// Truncated relation ideal, split by (source, target).
    echelons: HashMap<(usize, usize), SparseEchelon>,
    basis: Vec<usize>,
    position: Vec<Option<usize>>,
    certificate: NilpotencyCertificate,
}

/// Evidence that `J^N ⊆ I`: every path of length `N` was written as a
/// combination of multiples `u ρ v` whose terms all have length `≤ 2N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NilpotencyCertificate {
    pub bound: usize,
    pub search_length: usize,
    pub paths_checked: usize,
    pub ideal_rank: usize,
}

struct PathTable {
    paths: Vec<Path>,
    index: HashMap<Vec<usize>, usize>,
    /// Indices of paths starting at / ending at each vertex.
    by_source: Vec<Vec<usize>>,
    by_target: Vec<Vec<usize>>,
}

impl PathTable {
    /// All paths of length `≤ max_len` that contain no monomial relation,
    /// in deg-lex order (length first, then the function-order arrow word).
    fn enumerate(quiver: &Quiver, monomials: &HashSet<Vec<usize>>, max_len: usize) -> PathTable {
        let n = quiver.num_vertices();
        let longest_monomial = monomials.iter().map(Vec::len).max().unwrap_or(0);
        let mut paths: Vec<Path> = (0..n).map(Path::trivial).collect();
        let mut layer: Vec<Path> = quiver
            .arrows
            .iter()
            .enumerate()
            .map(|(a, arr)| Path {
                vertex: arr.source,
                arrows: vec![a],
            })
            .filter(|p| !monomials.contains(&p.arrows))
            .collect();
        let mut len = 1;
        while len <= max_len && !layer.is_empty() {
            paths.extend(layer.iter().cloned());
            if len == max_len {
                break;
            }
            let mut next = Vec::new();
            for p in &layer {
                let s = p.source(quiver);
                for (a, arr) in quiver.arrows.iter().enumerate() {
                    if arr.target != s {
                        continue;
                    }
                    let mut arrows = p.arrows.clone();
                    arrows.push(a);
                    let hits = (2..=longest_monomial.min(arrows.len()))
                        .any(|k| monomials.contains(&arrows[arrows.len() - k..]));
                    if !hits {
                        next.push(Path {
                            vertex: arr.source,
                            arrows,
                        });
                    }
                }
            }
            layer = next;
            len += 1;
        }
        let mut index = HashMap::with_capacity(paths.len());
        let mut by_source = vec![Vec::new(); n];
        let mut by_target = vec![Vec::new(); n];
        for (i, p) in paths.iter().enumerate() {
            if !p.is_trivial() {
                index.insert(p.arrows.clone(), i);
            }
            by_source[p.source(quiver)].push(i);
            by_target[p.target(quiver)].push(i);
        }
        PathTable {
            paths,
            index,
            by_source,
            by_target,
        }
    }

    fn lookup(&self, p: &Path) -> Option<usize> {
        if p.is_trivial() {
            Some(p.vertex)
        } else {
            self.index.get(&p.arrows).copied()
        }
    }

    /// `u ∘ ρ ∘ v` with terms longer than `keep_below` (or containing a
    /// monomial relation) dropped.
    fn multiple(&self, quiver: &Quiver, u: &Path, rho: &Relation, v: &Path, keep_upto: usize) -> SparseVec {
        let mut entries = Vec::with_capacity(rho.terms.len());
        for (c, t) in &rho.terms {
            let w = u
                .compose(t, quiver)
                .and_then(|ut| ut.compose(v, quiver))
                .expect("parallel relation terms compose alike");
            if w.len() > keep_upto {
                continue;
            }
            if let Some(i) = self.lookup(&w) {
                entries.push((i, c.clone()));
            }
        }
        sparse::collect(entries)
    }

    /// Echelon forms of `span{u ρ v}` for the non-monomial relations, one per
    /// (source, target) pair. `len_of(ρ)` picks which term length must fit
    /// under `keep_upto` for the multiple to be included.
    fn ideal(
        &self,
        quiver: &Quiver,
        relations: &[&Relation],
        keep_upto: usize,
        len_of: impl Fn(&Relation) -> usize,
    ) -> HashMap<(usize, usize), SparseEchelon> {
        let mut echelons: HashMap<(usize, usize), SparseEchelon> = HashMap::new();
        for rho in relations {
            let l = len_of(rho);
            if l > keep_upto {
                continue;
            }
            let room = keep_upto - l;
            let (s, t) = (rho.terms[0].1.source(quiver), rho.terms[0].1.target(quiver));
            for &ui in &self.by_source[t] {
                let u = &self.paths[ui];
                if u.len() > room {
                    continue;
                }
                for &vi in &self.by_target[s] {
                    let v = &self.paths[vi];
                    if u.len() + v.len() > room {
                        continue;
                    }
                    let m = self.multiple(quiver, u, rho, v, keep_upto);
                    if m.is_empty() {
                        continue;
                    }
                    let key = (v.source(quiver), u.target(quiver));
                    echelons.entry(key).or_default().insert(m);
                }
            }
        }
        for e in echelons.values_mut() {
            e.fully_reduce();
        }
        echelons
    }
}

impl PathAlgebra {
    /// Builds `kQ/(I + J^N)` and certifies that `J^N ⊆ I`.
    pub fn build(presentation: &Presentation) -> Result<PathAlgebra> {
        let quiver = &presentation.quiver;
        let n_bound = presentation.nilpotency;
        let search = 2 * n_bound;
        let monomials: HashSet<Vec<usize>> = presentation
            .relations
            .iter()
            .filter(|r| r.is_monomial())
            .map(|r| r.terms[0].1.arrows.clone())
            .collect();
        let binomials: Vec<&Relation> = presentation.relations.iter().filter(|r| !r.is_monomial()).collect();
        let table = PathTable::enumerate(quiver, &monomials, search);

        // certification: every path of length N lies in the ideal
        let cert = table.ideal(quiver, &binomials, search, Relation::max_len);
        let mut checked = 0;
        for (i, p) in table.paths.iter().enumerate() {
            if p.len() != n_bound {
                continue;
            }
            checked += 1;
            let key = (p.source(quiver), p.target(quiver));
            let unit = vec![(i, presentation.field.one())];
            let reduced = match cert.get(&key) {
                Some(e) => e.reduce(&unit),
                None => unit,
            };
            if !reduced.is_empty() {
                return Err(Error::NilpotencyNotCertified(format!(
                    "path '{}' of length {} is not in the relation ideal within length {}",
                    p.label(quiver, presentation.convention),
                    n_bound,
                    search
                )));
            }
        }
        let certificate = NilpotencyCertificate {
            bound: n_bound,
            search_length: search,
            paths_checked: checked,
            ideal_rank: cert.values().map(SparseEchelon::rank).sum(),
        };

        // the algebra itself lives on paths of length < N
        let count = table.paths.partition_point(|p| p.len() < n_bound);
        let echelons = table.ideal(quiver, &binomials, n_bound - 1, Relation::min_len);
        let paths: Vec<Path> = table.paths[..count].to_vec();
        let index: HashMap<Vec<usize>, usize> = table.index.into_iter().filter(|(_, i)| *i < count).collect();
        let is_pivot = |i: usize| {
            let key = (paths[i].source(quiver), paths[i].target(quiver));
            echelons.get(&key).is_some_and(|e| e.is_pivot(i))
        };
        let basis: Vec<usize> = (0..count).filter(|&i| !is_pivot(i)).collect();
        let mut position = vec![None; count];
        for (k, &i) in basis.iter().enumerate() {
            position[i] = Some(k);
        }

        let mut pa = PathAlgebra {
            presentation: presentation.clone(),
            algebra: Arc::new(placeholder(presentation)),
            paths,
            index,
            echelons,
            basis,
            position,
            certificate,
        };
        pa.algebra = Arc::new(pa.assemble()?);
        Ok(pa)
    }

    fn assemble(&self) -> Result<Algebra> {
        let q = &self.presentation.quiver;
        let conv = self.presentation.convention;
        let dim = self.basis.len();
        let mut products = Vec::with_capacity(dim * dim);
        for &i in &self.basis {
            for &j in &self.basis {
                let p = match self.paths[i].compose(&self.paths[j], q) {
                    Some(w) => self.reduce_path(&w),
                    None => Vec::new(),
                };
                products.push(p);
            }
        }
        let idempotents = (0..q.num_vertices())
            .map(|v| self.position[v].expect("trivial paths are never pivots"))
            .collect();
        Algebra::new(AlgebraParts {
            field: self.presentation.field,
            labels: self.basis.iter().map(|&i| self.paths[i].label(q, conv)).collect(),
            vertex_labels: q.vertices.clone(),
            idempotents,
            left_vertex: self.basis.iter().map(|&i| self.paths[i].target(q)).collect(),
            right_vertex: self.basis.iter().map(|&i| self.paths[i].source(q)).collect(),
            products,
        })
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn certificate(&self) -> &NilpotencyCertificate {
        &self.certificate
    }

    /// The path underlying each basis element.
    pub fn basis_paths(&self) -> Vec<&Path> {
        self.basis.iter().map(|&i| &self.paths[i]).collect()
    }

    /// Normal form of a path in basis coordinates.
    pub fn reduce_path(&self, w: &Path) -> SparseVec {
        let q = &self.presentation.quiver;
        let idx = if w.is_trivial() {
            Some(w.vertex)
        } else {
            self.index.get(&w.arrows).copied()
        };
        let Some(idx) = idx else {
            return Vec::new();
        };
        let key = (w.source(q), w.target(q));
        let unit = vec![(idx, self.presentation.field.one())];
        let reduced = match self.echelons.get(&key) {
            Some(e) => e.reduce(&unit),
            None => unit,
        };
        reduced
            .into_iter()
            .map(|(i, c)| (self.position[i].expect("reduced paths are basis paths"), c))
            .collect()
    }

    pub fn path_vector(&self, w: &Path) -> Vec<Scalar> {
        sparse::to_dense(self.presentation.field, self.basis.len(), &self.reduce_path(w))
    }

    /// Parses an element written like a relation (trivial paths as `e_<v>`).
    pub fn parse_element(&self, text: &str) -> Result<Vec<Scalar>> {
        let p = &self.presentation;
        let terms = merge_terms(parse_combination(&p.quiver, p.field, p.convention, 1, text)?);
        let mut out = p.field.zeros(self.basis.len());
        for (c, w) in terms {
            for (i, x) in self.reduce_path(&w) {
                out[i] = &out[i] + &(&c * &x);
            }
        }
        Ok(out)
    }

    pub fn relation_vector(&self, r: &Relation) -> Vec<Scalar> {
        let mut out = self.presentation.field.zeros(self.basis.len());
        for (c, w) in &r.terms {
            for (i, x) in self.reduce_path(w) {
                out[i] = &out[i] + &(c * &x);
            }
        }
        out
    }
}

/// A stand-in used only while the real algebra is assembled.
fn placeholder(p: &Presentation) -> Algebra {
    let one = p.field.one();
    Algebra::new(AlgebraParts {
        field: p.field,
        labels: vec!["1".into()],
        vertex_labels: vec!["_".into()],
        idempotents: vec![0],
        left_vertex: vec![0],
        right_vertex: vec![0],
        products: vec![vec![(0, one)]],
    })
    .expect("the ground field is an algebra")
}

/// Images of the vertices and arrows of a presentation in some algebra.
#[derive(Clone, Debug)]
pub struct GeneratorMap {
    pub vertices: Vec<Vec<Scalar>>,
    pub arrows: Vec<Vec<Scalar>>,
}

impl GeneratorMap {
    /// Sends each vertex to the idempotent with the same label and each arrow
    /// to the basis element with the same label.
    pub fn by_labels(expected: &Presentation, target: &Algebra) -> Result<GeneratorMap> {
        let mut vertices = Vec::new();
        for v in &expected.quiver.vertices {
            let w = target
                .vertex_index(v)
                .ok_or_else(|| Error::InvalidArgument(format!("target has no vertex '{v}'")))?;
            vertices.push(target.basis_vector(target.idempotent(w)));
        }
        let mut arrows = Vec::new();
        for a in &expected.quiver.arrows {
            let b = target
                .basis_index(&a.label)
                .ok_or_else(|| Error::InvalidArgument(format!("target has no basis element '{}'", a.label)))?;
            arrows.push(target.basis_vector(b));
        }
        Ok(GeneratorMap { vertices, arrows })
    }

    pub fn swap_arrows(&mut self, a: usize, b: usize) {
        self.arrows.swap(a, b);
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresentationCheck {
    pub passed: bool,
    pub expected_dim: usize,
    pub target_dim: usize,
    pub violated_relation: Option<String>,
    pub message: String,
}

/// Decides whether `target` is presented by `expected` via `map`: the
/// generator images satisfy the quiver and relation identities, and the
/// induced map on the canonical basis is a bijective algebra morphism.
pub fn quotient_presentation_check(
    target: &Arc<Algebra>,
    expected: &Presentation,
    map: &GeneratorMap,
) -> Result<PresentationCheck> {
    let built = PathAlgebra::build(expected)?;
    let source = built.algebra().clone();
    let q = &expected.quiver;
    let f = target.field();
    let fail = |violated: Option<String>, message: String| PresentationCheck {
        passed: false,
        expected_dim: source.dim(),
        target_dim: target.dim(),
        violated_relation: violated,
        message,
    };
    if f != expected.field {
        return Err(Error::InvalidArgument("fields differ".into()));
    }
    if map.vertices.len() != q.num_vertices() || map.arrows.len() != q.arrows.len() {
        return Err(Error::InvalidArgument("generator map has the wrong shape".into()));
    }
    if map.vertices.iter().chain(&map.arrows).any(|v| v.len() != target.dim()) {
        return Err(Error::DimensionMismatch("generator image has the wrong length".into()));
    }
    let mul = |x: &[Scalar], y: &[Scalar]| target.multiply(x, y).expect("lengths checked");
    let image = |w: &Path| -> Vec<Scalar> {
        if w.is_trivial() {
            return map.vertices[w.vertex].clone();
        }
        let mut acc = map.arrows[w.arrows[0]].clone();
        for &a in &w.arrows[1..] {
            acc = mul(&acc, &map.arrows[a]);
        }
        acc
    };

    // the images must form a representation of the quiver
    let mut sum = f.zeros(target.dim());
    for (v, ev) in map.vertices.iter().enumerate() {
        for (w, ew) in map.vertices.iter().enumerate() {
            let p = mul(ev, ew);
            let ok = if v == w { p == *ev } else { p.iter().all(Scalar::is_zero) };
            if !ok {
                return Ok(fail(None, format!("vertex images are not orthogonal idempotents at {}", q.vertices[v])));
            }
        }
        for (i, x) in ev.iter().enumerate() {
            sum[i] = &sum[i] + x;
        }
    }
    if sum != target.unit() {
        return Ok(fail(None, "vertex images do not sum to 1".into()));
    }
    for (a, arr) in q.arrows.iter().enumerate() {
        let x = &map.arrows[a];
        if mul(&mul(&map.vertices[arr.target], x), &map.vertices[arr.source]) != *x {
            return Ok(fail(None, format!("image of arrow {} is not supported on its endpoints", arr.label)));
        }
    }
    for r in &expected.relations {
        let mut v = f.zeros(target.dim());
        for (c, w) in &r.terms {
            for (i, x) in image(w).iter().enumerate() {
                v[i] = &v[i] + &(c * x);
            }
        }
        if v.iter().any(|x| !x.is_zero()) {
            return Ok(fail(Some(r.text.clone()), format!("relation '{}' does not hold in the target", r.text)));
        }
    }
    let cols: Vec<Vec<Scalar>> = built.basis_paths().into_iter().map(image).collect();
    let morphism = AlgebraMorphism {
        source: source.clone(),
        target: target.clone(),
        matrix: Matrix::from_columns(f, target.dim(), &cols),
    };
    if let Err(m) = morphism.verify() {
        return Ok(fail(None, m));
    }
    if !morphism.is_bijective() {
        return Ok(fail(
            None,
            format!(
                "induced map is not bijective (dims {} and {}, rank {})",
                source.dim(),
                target.dim(),
                morphism.matrix.rank()
            ),
        ));
    }
    Ok(PresentationCheck {
        passed: true,
        expected_dim: source.dim(),
        target_dim: target.dim(),
        violated_relation: None,
        message: "induced map is an isomorphism".into(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::parse_presentation;

    fn build(text: &str) -> PathAlgebra {
        PathAlgebra::build(&parse_presentation(text).unwrap()).unwrap()
    }

    #[test]
    fn dual_numbers() {
        let pa = build("vertices v\narrow x: v -> v\nrelation x x\nnilpotency 2\n");
        assert_eq!(pa.algebra().labels(), &["e_v", "x"]);
    }

    #[test]
    fn a2_function_order() {
        let pa = build("vertices 1, 2\narrow a: 1 -> 2\nnilpotency 2\n");
        let a = pa.algebra();
        assert_eq!(a.dim(), 3);
        let (e1, arrow) = (a.idempotent(0), a.basis_index("a").unwrap());
        // a·e₁ = a, e₁·a = 0
        assert_eq!(*a.product(arrow, e1), vec![(arrow, a.field().one())]);
        assert!(a.product(e1, arrow).is_empty());
    }

    #[test]
    fn binomial_relation_keeps_smaller_path() {
        let pa = build("vertices v\narrow x: v -> v\narrow y: v -> v\nrelation x y - y x\nrelation x x\nrelation y y\nnilpotency 3\n");
        assert_eq!(pa.algebra().labels(), &["e_v", "x", "y", "x y"]);
        let yx = pa.parse_element("y x").unwrap();
        assert_eq!(pa.algebra().format_element(&yx), "x y");
    }

    #[test]
    fn uncertified_bound() {
        let p = parse_presentation("vertices v\narrow x: v -> v\nrelation x x x\nnilpotency 2\n").unwrap();
        assert!(matches!(PathAlgebra::build(&p), Err(Error::NilpotencyNotCertified(_))));
        let free = parse_presentation("vertices v\narrow x: v -> v\nnilpotency 4\n").unwrap();
        assert!(PathAlgebra::build(&free).is_err());
    }

    #[test]
    fn certificate_uses_long_multiples() {
        // x² = y³ and xy = yx = 0: x³ = x·y³ = 0 needs multiples of length 4
        let pa = build(
            "vertices v\narrow x: v -> v\narrow y: v -> v\nrelation x x - y y y\nrelation x y\nrelation y x\nnilpotency 4\n",
        );
        assert_eq!(pa.algebra().dim(), 5);
        assert!(pa.certificate().paths_checked > 0);
    }
}
