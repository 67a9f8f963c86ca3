//! Finite-dimensional elementary algebras given by structure constants.
//!
//! Every algebra here carries a *vertex-homogeneous* basis: each basis element
//! `b` satisfies `e_l · b · e_r = b` for a left vertex `l` and a right vertex
//! `r`, the primitive idempotents `e_i` are themselves basis elements, and the
//! designated radical is the span of the remaining basis elements. All
//! constructors (path algebras, corners, quotients, opposites, matrix
//! extensions) preserve this shape, and [`Algebra::validate`] proves it.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::linalg::sparse::{self, SparseVec};
use crate::linalg::{FieldSpec, Matrix, Scalar, Subspace};

/// Raw data for [`Algebra::new`].
#[derive(Clone, Debug)]
pub struct AlgebraParts {
    pub field: FieldSpec,
    pub labels: Vec<String>,
    pub vertex_labels: Vec<String>,
    /// Basis index of the idempotent of each vertex.
    pub idempotents: Vec<usize>,
    pub left_vertex: Vec<usize>,
    pub right_vertex: Vec<usize>,
    /// `products[i * dim + j] = b_i · b_j`.
    pub products: Vec<SparseVec>,
}

pub struct Algebra {
    field: FieldSpec,
    labels: Vec<String>,
    vertex_labels: Vec<String>,
    idempotents: Vec<usize>,
    left_vertex: Vec<usize>,
    right_vertex: Vec<usize>,
    products: Vec<SparseVec>,
    radical: Subspace,
    generators: OnceLock<Vec<usize>>,
    opposite: OnceLock<Arc<Algebra>>,
}

impl PartialEq for Algebra {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field
            && self.labels == other.labels
            && self.vertex_labels == other.vertex_labels
            && self.idempotents == other.idempotents
            && self.left_vertex == other.left_vertex
            && self.right_vertex == other.right_vertex
            && self.products == other.products
    }
}

impl Eq for Algebra {}

impl fmt::Debug for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Algebra")
            .field("field", &self.field)
            .field("dim", &self.dim())
            .field("vertices", &self.vertex_labels)
            .field("basis", &self.labels)
            .finish()
    }
}

/// Compares two algebra handles, cheaply when they share an allocation.
pub fn same_algebra(a: &Arc<Algebra>, b: &Arc<Algebra>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl Algebra {
    /// Builds and validates an algebra.
    pub fn new(parts: AlgebraParts) -> Result<Algebra> {
        let dim = parts.labels.len();
        let is_idem = idempotent_mask(dim, &parts.idempotents);
        let rad: Vec<Vec<Scalar>> = (0..dim)
            .filter(|&i| !is_idem[i])
            .map(|i| parts.field.unit_vector(dim, i))
            .collect();
        let radical = Subspace::from_vectors(parts.field, dim, &rad);
        let a = Algebra {
            field: parts.field,
            labels: parts.labels,
            vertex_labels: parts.vertex_labels,
            idempotents: parts.idempotents,
            left_vertex: parts.left_vertex,
            right_vertex: parts.right_vertex,
            products: parts.products,
            radical,
            generators: OnceLock::new(),
            opposite: OnceLock::new(),
        };
        a.validate()?;
        Ok(a)
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn num_vertices(&self) -> usize {
        self.idempotents.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn vertex_labels(&self) -> &[String] {
        &self.vertex_labels
    }

    pub fn vertex_index(&self, label: &str) -> Option<usize> {
        self.vertex_labels.iter().position(|v| v == label)
    }

    pub fn basis_index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn idempotent(&self, vertex: usize) -> usize {
        self.idempotents[vertex]
    }

    pub fn idempotents(&self) -> &[usize] {
        &self.idempotents
    }

    pub fn left_vertex(&self, b: usize) -> usize {
        self.left_vertex[b]
    }

    pub fn right_vertex(&self, b: usize) -> usize {
        self.right_vertex[b]
    }

    pub fn is_idempotent_basis(&self, b: usize) -> bool {
        self.idempotents[self.left_vertex[b]] == b
    }

    pub fn radical(&self) -> &Subspace {
        &self.radical
    }

    /// Basis indices spanning the radical.
    pub fn radical_basis(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&b| !self.is_idempotent_basis(b)).collect()
    }

    pub fn product(&self, i: usize, j: usize) -> &SparseVec {
        &self.products[i * self.dim() + j]
    }

    pub fn unit(&self) -> Vec<Scalar> {
        let mut u = self.field.zeros(self.dim());
        for &e in &self.idempotents {
            u[e] = self.field.one();
        }
        u
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Scalar> {
        self.field.unit_vector(self.dim(), i)
    }

    pub fn multiply_sparse(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let mut entries = Vec::new();
        for (i, a) in x {
            for (j, b) in y {
                if self.right_vertex[*i] != self.left_vertex[*j] {
                    continue;
                }
                let ab = a * b;
                for (k, c) in self.product(*i, *j) {
                    entries.push((*k, &ab * c));
                }
            }
        }
        sparse::collect(entries)
    }

    pub fn multiply(&self, x: &[Scalar], y: &[Scalar]) -> Result<Vec<Scalar>> {
        if x.len() != self.dim() || y.len() != self.dim() {
            return Err(Error::DimensionMismatch(format!(
                "algebra has dimension {}, got vectors of length {} and {}",
                self.dim(),
                x.len(),
                y.len()
            )));
        }
        let p = self.multiply_sparse(&sparse::from_dense(x), &sparse::from_dense(y));
        Ok(sparse::to_dense(self.field, self.dim(), &p))
    }

    /// Matrix of `x ↦ b_i · x`.
    pub fn left_mult_matrix(&self, i: usize) -> Matrix {
        let cols: Vec<Vec<Scalar>> = (0..self.dim())
            .map(|j| sparse::to_dense(self.field, self.dim(), self.product(i, j)))
            .collect();
        Matrix::from_columns(self.field, self.dim(), &cols)
    }

    /// Radical basis elements spanning a complement of `rad²` in `rad`
    /// (the "arrows"); with the idempotents they generate the algebra.
    pub fn arrow_generators(&self) -> &[usize] {
        self.generators.get_or_init(|| {
            let rad = self.radical_basis();
            let mut span = crate::linalg::SparseEchelon::new();
            for &i in &rad {
                for &j in &rad {
                    span.insert(self.product(i, j).clone());
                }
            }
            let mut gens = Vec::new();
            for &i in &rad {
                let v = vec![(i, self.field.one())];
                if span.insert(v).is_some() {
                    gens.push(i);
                }
            }
            gens
        })
    }

    /// Proves every structural invariant: vertex homogeneity, unit and
    /// idempotent laws, associativity on all basis triples, and that the
    /// designated radical is a nilpotent ideal with quotient `k^n`.
    pub fn validate(&self) -> Result<()> {
        let dim = self.dim();
        let n = self.num_vertices();
        let bad = |m: String| Err(Error::InvalidAlgebra(m));
        if self.left_vertex.len() != dim || self.right_vertex.len() != dim || self.products.len() != dim * dim {
            return bad("inconsistent table sizes".into());
        }
        if self.vertex_labels.len() != n {
            return bad("vertex labels do not match idempotents".into());
        }
        if n == 0 && dim > 0 {
            return bad("nonzero algebra without idempotents".into());
        }
        for (v, &e) in self.idempotents.iter().enumerate() {
            if e >= dim || self.left_vertex[e] != v || self.right_vertex[e] != v {
                return bad(format!("idempotent of vertex {} is not homogeneous at it", self.vertex_labels[v]));
            }
        }
        if idempotent_mask(dim, &self.idempotents).iter().filter(|&&b| b).count() != n {
            return bad("repeated idempotent".into());
        }
        for b in 0..dim {
            if self.left_vertex[b] >= n || self.right_vertex[b] >= n {
                return bad(format!("basis element {} has an unknown vertex", self.labels[b]));
            }
        }
        for i in 0..dim {
            for j in 0..dim {
                let p = self.product(i, j);
                if p.iter().any(|(k, _)| *k >= dim) {
                    return bad("product index out of range".into());
                }
                if self.right_vertex[i] != self.left_vertex[j] && !p.is_empty() {
                    return bad(format!(
                        "{}·{} is nonzero but the vertices do not match",
                        self.labels[i], self.labels[j]
                    ));
                }
                for (k, _) in p {
                    if self.left_vertex[*k] != self.left_vertex[i] || self.right_vertex[*k] != self.right_vertex[j] {
                        return bad(format!("{}·{} is not vertex-homogeneous", self.labels[i], self.labels[j]));
                    }
                }
            }
        }
        let one = self.field.one();
        for b in 0..dim {
            let e_l = self.idempotents[self.left_vertex[b]];
            let e_r = self.idempotents[self.right_vertex[b]];
            let unit_b = vec![(b, one.clone())];
            if *self.product(e_l, b) != unit_b || *self.product(b, e_r) != unit_b {
                return bad(format!("unit law fails for {}", self.labels[b]));
            }
        }
        for i in 0..dim {
            for j in 0..dim {
                let ij = self.product(i, j);
                if ij.is_empty() {
                    for l in 0..dim {
                        let jl = self.product(j, l);
                        if !jl.is_empty() && !self.multiply_sparse(&vec![(i, one.clone())], jl).is_empty() {
                            return bad(format!(
                                "associativity fails on ({}, {}, {})",
                                self.labels[i], self.labels[j], self.labels[l]
                            ));
                        }
                    }
                    continue;
                }
                for l in 0..dim {
                    let lhs = self.multiply_sparse(ij, &vec![(l, one.clone())]);
                    let rhs = self.multiply_sparse(&vec![(i, one.clone())], self.product(j, l));
                    if lhs != rhs {
                        return bad(format!(
                            "associativity fails on ({}, {}, {})",
                            self.labels[i], self.labels[j], self.labels[l]
                        ));
                    }
                }
            }
        }
        // radical: two-sided ideal (automatic from homogeneity once idempotent
        // products are exact) and nilpotent
        let rad = self.radical_basis();
        let is_idem = idempotent_mask(dim, &self.idempotents);
        for &r in &rad {
            for b in 0..dim {
                for (k, _) in self.product(r, b).iter().chain(self.product(b, r)) {
                    if is_idem[*k] {
                        return bad(format!("radical is not an ideal: product involving {}", self.labels[r]));
                    }
                }
            }
        }
        let mut power: Vec<SparseVec> = rad.iter().map(|&r| vec![(r, one.clone())]).collect();
        let mut steps = 1;
        while !power.is_empty() {
            if steps > dim + 1 {
                return bad("designated radical is not nilpotent".into());
            }
            let mut next = crate::linalg::SparseEchelon::new();
            let mut rows = Vec::new();
            for x in &power {
                for &r in &rad {
                    let p = self.multiply_sparse(x, &vec![(r, one.clone())]);
                    if let Some(row) = next.insert(p) {
                        rows.push(row.clone());
                    }
                }
            }
            power = rows;
            steps += 1;
        }
        Ok(())
    }

    /// Same space with the product reversed.
    pub fn opposite(&self) -> Arc<Algebra> {
        self.opposite
            .get_or_init(|| {
                let dim = self.dim();
                let mut products = Vec::with_capacity(dim * dim);
                for i in 0..dim {
                    for j in 0..dim {
                        products.push(self.product(j, i).clone());
                    }
                }
                let parts = AlgebraParts {
                    field: self.field,
                    labels: self.labels.clone(),
                    vertex_labels: self.vertex_labels.clone(),
                    idempotents: self.idempotents.clone(),
                    left_vertex: self.right_vertex.clone(),
                    right_vertex: self.left_vertex.clone(),
                    products,
                };
                Arc::new(Algebra::new(parts).expect("opposite of a valid algebra is valid"))
            })
            .clone()
    }

    /// The corner algebra `f A f` for `f` the sum of the idempotents at
    /// `vertices`. Returns the algebra and, for each of its basis elements,
    /// the index of the corresponding basis element of `self`.
    pub fn corner(&self, vertices: &[usize]) -> Result<(Arc<Algebra>, Vec<usize>)> {
        let n = self.num_vertices();
        let mut keep = vec![false; n];
        for &v in vertices {
            if v >= n {
                return Err(Error::InvalidArgument(format!("vertex index {v} out of range")));
            }
            if keep[v] {
                return Err(Error::InvalidArgument(format!(
                    "vertex {} listed twice",
                    self.vertex_labels[v]
                )));
            }
            keep[v] = true;
        }
        let new_vertex: Vec<Option<usize>> = {
            let mut next = 0;
            (0..n)
                .map(|v| {
                    keep[v].then(|| {
                        next += 1;
                        next - 1
                    })
                })
                .collect()
        };
        let basis: Vec<usize> = (0..self.dim())
            .filter(|&b| keep[self.left_vertex[b]] && keep[self.right_vertex[b]])
            .collect();
        let mut index = HashMap::new();
        for (new, &old) in basis.iter().enumerate() {
            index.insert(old, new);
        }
        let mut products = Vec::with_capacity(basis.len() * basis.len());
        for &i in &basis {
            for &j in &basis {
                let p = self
                    .product(i, j)
                    .iter()
                    .map(|(k, c)| (index[k], c.clone()))
                    .collect::<Vec<_>>();
                products.push(sparse::collect(p));
            }
        }
        let parts = AlgebraParts {
            field: self.field,
            labels: basis.iter().map(|&b| self.labels[b].clone()).collect(),
            vertex_labels: (0..n).filter(|&v| keep[v]).map(|v| self.vertex_labels[v].clone()).collect(),
            idempotents: (0..n).filter(|&v| keep[v]).map(|v| index[&self.idempotents[v]]).collect(),
            left_vertex: basis.iter().map(|&b| new_vertex[self.left_vertex[b]].unwrap()).collect(),
            right_vertex: basis.iter().map(|&b| new_vertex[self.right_vertex[b]].unwrap()).collect(),
            products,
        };
        Ok((Arc::new(Algebra::new(parts)?), basis))
    }

    /// Smallest two-sided ideal containing `gens`.
    pub fn ideal_generated(&self, gens: &[Vec<Scalar>]) -> Ideal {
        let dim = self.dim();
        let mut span = Subspace::from_vectors(self.field, dim, gens);
        loop {
            let mut vectors = span.basis_vectors();
            for v in span.basis_vectors() {
                let v = sparse::from_dense(&v);
                for b in 0..dim {
                    let unit_b = vec![(b, self.field.one())];
                    vectors.push(sparse::to_dense(self.field, dim, &self.multiply_sparse(&unit_b, &v)));
                    vectors.push(sparse::to_dense(self.field, dim, &self.multiply_sparse(&v, &unit_b)));
                }
            }
            let next = Subspace::from_vectors(self.field, dim, &vectors);
            if next.dim() == span.dim() {
                return Ideal { space: span };
            }
            span = next;
        }
    }

    /// The ideal `A f A` for `f` the sum of the idempotents at `vertices`.
    pub fn vertex_ideal(&self, vertices: &[usize]) -> Ideal {
        let gens: Vec<Vec<Scalar>> = vertices.iter().map(|&v| self.basis_vector(self.idempotents[v])).collect();
        self.ideal_generated(&gens)
    }

    /// Checks that `space` is closed under multiplication on both sides.
    pub fn ideal(&self, space: Subspace) -> Result<Ideal> {
        let dim = self.dim();
        for v in space.basis_vectors() {
            let v = sparse::from_dense(&v);
            for b in 0..dim {
                let unit_b = vec![(b, self.field.one())];
                for p in [self.multiply_sparse(&unit_b, &v), self.multiply_sparse(&v, &unit_b)] {
                    if !space.contains(&sparse::to_dense(self.field, dim, &p)) {
                        return Err(Error::NotAnIdeal(format!(
                            "not closed under multiplication by {}",
                            self.labels[b]
                        )));
                    }
                }
            }
        }
        Ok(Ideal { space })
    }

    /// `A / I` on the canonical coset representatives: basis elements that
    /// are not pivots when `I` is reduced with priority to later basis
    /// elements. Vertices whose idempotent lies in `I` are dropped.
    pub fn quotient(self: &Arc<Self>, ideal: &Ideal) -> Result<(Arc<Algebra>, AlgebraMorphism)> {
        let dim = self.dim();
        if ideal.space.contains(&self.unit()) {
            return Err(Error::InvalidArgument("the ideal contains 1; the quotient is zero".into()));
        }
        let order: Vec<usize> = (0..dim).rev().collect();
        let echelon = ideal.space.echelon_in_order(&order);
        let survivors = echelon.non_pivots();
        let mut position = vec![None; dim];
        for (k, &s) in survivors.iter().enumerate() {
            position[s] = Some(k);
        }
        let project = |v: &[Scalar]| -> Vec<Scalar> {
            let r = echelon.reduce(v);
            survivors.iter().map(|&s| r[s].clone()).collect()
        };
        let kept_vertices: Vec<usize> = (0..self.num_vertices())
            .filter(|&v| !ideal.space.contains(&self.basis_vector(self.idempotents[v])))
            .collect();
        let mut new_vertex = vec![None; self.num_vertices()];
        for (k, &v) in kept_vertices.iter().enumerate() {
            new_vertex[v] = Some(k);
        }
        let mut idempotents = Vec::new();
        for &v in &kept_vertices {
            match position[self.idempotents[v]] {
                Some(k) => idempotents.push(k),
                None => {
                    return Err(Error::Internal(format!(
                        "idempotent of {} survives but is not a coset representative",
                        self.vertex_labels[v]
                    )))
                }
            }
        }
        let vertex_of = |v: usize| {
            new_vertex[v].ok_or_else(|| Error::Internal("surviving basis element at a killed vertex".into()))
        };
        let mut left_vertex = Vec::new();
        let mut right_vertex = Vec::new();
        for &s in &survivors {
            left_vertex.push(vertex_of(self.left_vertex[s])?);
            right_vertex.push(vertex_of(self.right_vertex[s])?);
        }
        let mut products = Vec::with_capacity(survivors.len() * survivors.len());
        for &s in &survivors {
            for &t in &survivors {
                let p = sparse::to_dense(self.field, dim, self.product(s, t));
                products.push(sparse::from_dense(&project(&p)));
            }
        }
        let parts = AlgebraParts {
            field: self.field,
            labels: survivors.iter().map(|&s| self.labels[s].clone()).collect(),
            vertex_labels: kept_vertices.iter().map(|&v| self.vertex_labels[v].clone()).collect(),
            idempotents,
            left_vertex,
            right_vertex,
            products,
        };
        let target = Arc::new(Algebra::new(parts)?);
        let cols: Vec<Vec<Scalar>> = (0..dim).map(|b| project(&self.basis_vector(b))).collect();
        let matrix = Matrix::from_columns(self.field, survivors.len(), &cols);
        let morphism = AlgebraMorphism {
            source: self.clone(),
            target: target.clone(),
            matrix,
        };
        Ok((target, morphism))
    }

    /// Matches basis elements and vertices by label and checks that the
    /// resulting bijection preserves all structure constants.
    pub fn isomorphism_by_labels(self: &Arc<Self>, other: &Arc<Algebra>) -> std::result::Result<AlgebraMorphism, String> {
        if self.dim() != other.dim() {
            return Err(format!("dimensions differ: {} vs {}", self.dim(), other.dim()));
        }
        let mut perm = Vec::with_capacity(self.dim());
        for l in &self.labels {
            match other.basis_index(l) {
                Some(j) => perm.push(j),
                None => return Err(format!("basis element {l} has no counterpart")),
            }
        }
        for (v, l) in self.vertex_labels.iter().enumerate() {
            match other.vertex_index(l) {
                Some(w) if perm[self.idempotents[v]] == other.idempotents[w] => {}
                _ => return Err(format!("vertex {l} has no counterpart")),
            }
        }
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                let mapped = sparse::collect(self.product(i, j).iter().map(|(k, c)| (perm[*k], c.clone())).collect());
                if mapped != *other.product(perm[i], perm[j]) {
                    return Err(format!(
                        "structure constants differ on {}·{}",
                        self.labels[i], self.labels[j]
                    ));
                }
            }
        }
        let cols: Vec<Vec<Scalar>> = perm.iter().map(|&j| other.basis_vector(j)).collect();
        Ok(AlgebraMorphism {
            source: self.clone(),
            target: other.clone(),
            matrix: Matrix::from_columns(self.field, other.dim(), &cols),
        })
    }

    /// Renders a vector as a linear combination of basis labels.
    pub fn format_element(&self, v: &[Scalar]) -> String {
        let mut out = String::new();
        for (i, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = if neg { -c } else { c.clone() };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if !abs.is_one() {
                out.push_str(&format!("{abs} "));
            }
            out.push_str(&self.labels[i]);
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

fn idempotent_mask(dim: usize, idempotents: &[usize]) -> Vec<bool> {
    let mut mask = vec![false; dim];
    for &e in idempotents {
        if e < dim {
            mask[e] = true;
        }
    }
    mask
}

/// A two-sided ideal, as a subspace of the algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ideal {
    space: Subspace,
}

impl Ideal {
    pub fn space(&self) -> &Subspace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn is_zero(&self) -> bool {
        self.space.dim() == 0
    }

    /// The product space `I·J`.
    pub fn product(&self, algebra: &Algebra, other: &Ideal) -> Subspace {
        let mut vectors = Vec::new();
        let left: Vec<SparseVec> = self.space.basis_vectors().iter().map(|v| sparse::from_dense(v)).collect();
        let right: Vec<SparseVec> = other.space.basis_vectors().iter().map(|v| sparse::from_dense(v)).collect();
        for x in &left {
            for y in &right {
                vectors.push(sparse::to_dense(algebra.field(), algebra.dim(), &algebra.multiply_sparse(x, y)));
            }
        }
        Subspace::from_vectors(algebra.field(), algebra.dim(), &vectors)
    }
}

/// A unital algebra homomorphism, given by its matrix on the bases.
#[derive(Clone, Debug)]
pub struct AlgebraMorphism {
    pub source: Arc<Algebra>,
    pub target: Arc<Algebra>,
    pub matrix: Matrix,
}

impl AlgebraMorphism {
    pub fn identity(a: &Arc<Algebra>) -> Self {
        AlgebraMorphism {
            source: a.clone(),
            target: a.clone(),
            matrix: Matrix::identity(a.field(), a.dim()),
        }
    }

    pub fn apply(&self, x: &[Scalar]) -> Vec<Scalar> {
        self.matrix.mul_vec(x)
    }

    /// Image of a basis element, sparse.
    pub fn image_of_basis(&self, b: usize) -> SparseVec {
        sparse::from_dense(&self.matrix.column(b))
    }

    /// Checks unit preservation and multiplicativity on all basis pairs.
    pub fn verify(&self) -> std::result::Result<(), String> {
        let src = &self.source;
        let tgt = &self.target;
        if self.apply(&src.unit()) != tgt.unit() {
            return Err("unit is not preserved".into());
        }
        let images: Vec<SparseVec> = (0..src.dim()).map(|b| self.image_of_basis(b)).collect();
        for i in 0..src.dim() {
            for j in 0..src.dim() {
                let lhs = sparse::from_dense(&self.apply(&sparse::to_dense(src.field(), src.dim(), src.product(i, j))));
                let rhs = tgt.multiply_sparse(&images[i], &images[j]);
                if lhs != rhs {
                    return Err(format!("product {}·{} is not preserved", src.label(i), src.label(j)));
                }
            }
        }
        Ok(())
    }

    pub fn is_bijective(&self) -> bool {
        self.source.dim() == self.target.dim() && self.matrix.rank() == self.source.dim()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: FieldSpec = FieldSpec::Rationals;

    /// `k[x]/(x²)`
    fn dual_numbers() -> Arc<Algebra> {
        let one = Q.one();
        let products = vec![
            vec![(0, one.clone())],
            vec![(1, one.clone())],
            vec![(1, one.clone())],
            vec![],
        ];
        Arc::new(
            Algebra::new(AlgebraParts {
                field: Q,
                labels: vec!["e".into(), "x".into()],
                vertex_labels: vec!["v".into()],
                idempotents: vec![0],
                left_vertex: vec![0, 0],
                right_vertex: vec![0, 0],
                products,
            })
            .unwrap(),
        )
    }

    #[test]
    fn dual_numbers_validate() {
        let a = dual_numbers();
        assert_eq!(a.dim(), 2);
        assert_eq!(a.arrow_generators(), &[1]);
        assert_eq!(a.radical().dim(), 1);
    }

    #[test]
    fn commutative_opposite_is_identical() {
        let a = dual_numbers();
        assert_eq!(*a.opposite(), *a);
    }

    #[test]
    fn rejects_non_nilpotent_radical() {
        let one = Q.one();
        // x² = x is not nilpotent
        let products = vec![
            vec![(0, one.clone())],
            vec![(1, one.clone())],
            vec![(1, one.clone())],
            vec![(1, one.clone())],
        ];
        let r = Algebra::new(AlgebraParts {
            field: Q,
            labels: vec!["e".into(), "x".into()],
            vertex_labels: vec!["v".into()],
            idempotents: vec![0],
            left_vertex: vec![0, 0],
            right_vertex: vec![0, 0],
            products,
        });
        assert!(matches!(r, Err(Error::InvalidAlgebra(_))));
    }

    #[test]
    fn rejects_broken_unit() {
        let one = Q.one();
        let products = vec![vec![(0, one.clone())], vec![], vec![(1, one.clone())], vec![]];
        let r = Algebra::new(AlgebraParts {
            field: Q,
            labels: vec!["e".into(), "x".into()],
            vertex_labels: vec!["v".into()],
            idempotents: vec![0],
            left_vertex: vec![0, 0],
            right_vertex: vec![0, 0],
            products,
        });
        assert!(r.is_err());
    }

    #[test]
    fn ideal_generated_extremes() {
        let a = dual_numbers();
        assert_eq!(a.ideal_generated(&[a.unit()]).dim(), 2);
        assert_eq!(a.ideal_generated(&[]).dim(), 0);
        assert_eq!(a.ideal_generated(&[a.basis_vector(1)]).dim(), 1);
    }

    #[test]
    fn quotient_by_zero_is_identity() {
        let a = dual_numbers();
        let (q, pi) = a.quotient(&a.ideal_generated(&[])).unwrap();
        assert_eq!(*q, *a);
        assert_eq!(pi.matrix, Matrix::identity(Q, 2));
        assert!(pi.verify().is_ok());
    }

    #[test]
    fn quotient_by_whole_algebra_rejected() {
        let a = dual_numbers();
        assert!(a.quotient(&a.ideal_generated(&[a.unit()])).is_err());
    }

    #[test]
    fn quotient_by_radical() {
        let a = dual_numbers();
        let (q, pi) = a.quotient(&a.ideal_generated(&[a.basis_vector(1)])).unwrap();
        assert_eq!(q.dim(), 1);
        assert!(pi.verify().is_ok());
    }

    #[test]
    fn format_combinations() {
        let a = dual_numbers();
        let v = vec![Q.from_i64(2), Q.from_i64(-1)];
        assert_eq!(a.format_element(&v), "2 e - x");
        assert_eq!(a.format_element(&[Q.zero(), Q.zero()]), "0");
    }
}
