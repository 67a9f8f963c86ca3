//! One-sided modules over elementary algebras.
//!
//! A module stores one action matrix per algebra basis element. Right
//! modules are handled as left modules over the opposite algebra: for a right
//! module the matrix of `b` is `m ↦ m·b`. Every module keeps a
//! *vertex-adapted* basis, each basis vector lying in a single `e_v M`, which
//! lets Hom systems, kernels and covers split vertex by vertex.

mod hom;
mod projective;
mod tensor;

use std::sync::Arc;

use crate::algebra::{same_algebra, Algebra, AlgebraMorphism, Ideal};
use crate::error::{Error, Result};
use crate::linalg::{FieldSpec, Matrix, Scalar, Subspace};

pub use hom::{omega_map, HomSpace, ModuleHom, StableHom};
pub(crate) use hom::omega_map_with;
pub use projective::{
    injective_dimension, min_resolution, projective_cover, projective_dimension, syzygy, syzygy_dims, Cover,
    HomologicalDimension, Projective, Resolution, ResolutionCheck,
};
pub use tensor::{tensor_over_algebra, tor, tor_range, tor_range_resolving_left, TensorProduct};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn flip(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

#[derive(Clone)]
pub struct Module {
    algebra: Arc<Algebra>,
    side: Side,
    actions: Vec<Matrix>,
    vertex: Vec<usize>,
}

impl std::fmt::Debug for Module {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Module")
            .field("side", &self.side)
            .field("dim", &self.dim())
            .field("vertex_dims", &self.vertex_dims())
            .finish()
    }
}

impl Module {
    /// Builds a module from action matrices, checking every axiom and
    /// that the basis is vertex-adapted.
    pub fn new(algebra: Arc<Algebra>, side: Side, actions: Vec<Matrix>) -> Result<Module> {
        let vertex = adapted_vertices(&acting(&algebra, side), &actions)?;
        let m = Module {
            algebra,
            side,
            actions,
            vertex,
        };
        m.validate()?;
        Ok(m)
    }

    /// Trusted constructor for modules produced by this crate's algorithms.
    pub(crate) fn from_parts(algebra: Arc<Algebra>, side: Side, actions: Vec<Matrix>, vertex: Vec<usize>) -> Module {
        Module {
            algebra,
            side,
            actions,
            vertex,
        }
    }

    pub fn zero(algebra: &Arc<Algebra>, side: Side) -> Module {
        let f = algebra.field();
        Module::from_parts(
            algebra.clone(),
            side,
            (0..algebra.dim()).map(|_| Matrix::zeros(f, 0, 0)).collect(),
            Vec::new(),
        )
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    /// The algebra acting on the left: `A` for left modules, `A^op` for right.
    pub fn acting_algebra(&self) -> Arc<Algebra> {
        acting(&self.algebra, self.side)
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn field(&self) -> FieldSpec {
        self.algebra.field()
    }

    pub fn dim(&self) -> usize {
        self.vertex.len()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn action(&self, b: usize) -> &Matrix {
        &self.actions[b]
    }

    pub fn actions(&self) -> &[Matrix] {
        &self.actions
    }

    /// Vertex of each basis vector.
    pub fn vertices(&self) -> &[usize] {
        &self.vertex
    }

    pub fn vertex_dims(&self) -> Vec<usize> {
        let mut d = vec![0; self.algebra.num_vertices()];
        for &v in &self.vertex {
            d[v] += 1;
        }
        d
    }

    /// Basis indices lying in `e_v M`.
    pub fn vertex_block(&self, v: usize) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.vertex[i] == v).collect()
    }

    /// Action of an arbitrary algebra element.
    pub fn act(&self, element: &[Scalar]) -> Matrix {
        let f = self.field();
        let mut m = Matrix::zeros(f, self.dim(), self.dim());
        for (b, c) in element.iter().enumerate() {
            if !c.is_zero() {
                m = m.add(&self.actions[b].scale(c));
            }
        }
        m
    }

    /// Checks the structure constants, the unit law and vertex adaptation.
    pub fn validate(&self) -> Result<()> {
        let a = self.acting_algebra();
        let d = self.dim();
        if self.actions.len() != a.dim() {
            return Err(Error::InvalidModule(format!(
                "{} action matrices for an algebra of dimension {}",
                self.actions.len(),
                a.dim()
            )));
        }
        if self.actions.iter().any(|m| m.rows() != d || m.cols() != d) {
            return Err(Error::InvalidModule("action matrix of the wrong size".into()));
        }
        let f = self.field();
        let mut unit = Matrix::zeros(f, d, d);
        for &e in a.idempotents() {
            unit = unit.add(&self.actions[e]);
        }
        if unit != Matrix::identity(f, d) {
            return Err(Error::InvalidModule("the unit does not act as the identity".into()));
        }
        for i in 0..a.dim() {
            for j in 0..a.dim() {
                let lhs = self.actions[i].mul(&self.actions[j]);
                let mut rhs = Matrix::zeros(f, d, d);
                for (k, c) in a.product(i, j) {
                    rhs = rhs.add(&self.actions[*k].scale(c));
                }
                if lhs != rhs {
                    return Err(Error::InvalidModule(format!(
                        "action does not respect {}·{}",
                        a.label(i),
                        a.label(j)
                    )));
                }
            }
        }
        for (i, &v) in self.vertex.iter().enumerate() {
            let e = &self.actions[a.idempotent(v)];
            if (0..d).any(|r| e.get(r, i).is_zero() != (r != i)) {
                return Err(Error::InvalidModule("basis is not vertex-adapted".into()));
            }
        }
        Ok(())
    }

    /// The simple module at vertex `v`.
    pub fn simple(algebra: &Arc<Algebra>, v: usize, side: Side) -> Result<Module> {
        check_vertex(algebra, v)?;
        let f = algebra.field();
        let actions = (0..algebra.dim())
            .map(|b| {
                let x = if b == algebra.idempotent(v) { f.one() } else { f.zero() };
                Matrix::from_rows(f, 1, vec![vec![x]])
            })
            .collect();
        Ok(Module::from_parts(algebra.clone(), side, actions, vec![v]))
    }

    /// `A e_v` (left) or `e_v A` (right).
    pub fn projective(algebra: &Arc<Algebra>, v: usize, side: Side) -> Result<Module> {
        check_vertex(algebra, v)?;
        Ok(Projective::new(algebra, side, vec![v]).module().clone())
    }

    /// `D(e_v A)` (left) or `D(A e_v)` (right).
    pub fn injective(algebra: &Arc<Algebra>, v: usize, side: Side) -> Result<Module> {
        Ok(Module::projective(algebra, v, side.flip())?.dual())
    }

    /// The algebra acting on itself.
    pub fn regular(algebra: &Arc<Algebra>, side: Side) -> Module {
        let f = algebra.field();
        let op = acting(algebra, side);
        let n = algebra.dim();
        let actions = (0..n)
            .map(|b| {
                let mut m = Matrix::zeros(f, n, n);
                for j in 0..n {
                    for (k, c) in op.product(b, j) {
                        m.set(*k, j, c.clone());
                    }
                }
                m
            })
            .collect();
        let vertex = (0..n).map(|b| op.left_vertex(b)).collect();
        Module::from_parts(algebra.clone(), side, actions, vertex)
    }

    /// `Hom_k(M, k)` with the opposite side; action matrices are transposed.
    pub fn dual(&self) -> Module {
        Module::from_parts(
            self.algebra.clone(),
            self.side.flip(),
            self.actions.iter().map(Matrix::transpose).collect(),
            self.vertex.clone(),
        )
    }

    /// Pulls the action back along `phi: A → B` (this module lives over `B`).
    pub fn restrict_scalars(&self, phi: &AlgebraMorphism) -> Result<Module> {
        if !same_algebra(&phi.target, &self.algebra) {
            return Err(Error::AlgebraMismatch);
        }
        let a = &phi.source;
        let actions: Vec<Matrix> = (0..a.dim()).map(|b| self.act(&phi.matrix.column(b))).collect();
        let vertex = adapted_vertices(&acting(a, self.side), &actions)?;
        Ok(Module::from_parts(a.clone(), self.side, actions, vertex))
    }

    /// The submodule spanned by `space`, on a vertex-adapted basis; returns
    /// the module and its inclusion matrix (columns = new basis vectors).
    pub fn submodule(&self, space: &Subspace) -> Result<(Module, Matrix)> {
        let a = self.acting_algebra();
        let f = self.field();
        let mut blocks: Vec<(usize, Subspace)> = Vec::new();
        for v in 0..a.num_vertices() {
            let e = &self.actions[a.idempotent(v)];
            let projected: Vec<Vec<Scalar>> = space.basis_vectors().iter().map(|x| e.mul_vec(x)).collect();
            let s = Subspace::from_vectors(f, self.dim(), &projected);
            if s.dim() > 0 {
                blocks.push((v, s));
            }
        }
        let total: usize = blocks.iter().map(|(_, s)| s.dim()).sum();
        if total != space.dim() {
            return Err(Error::InvalidArgument("subspace is not closed under the idempotents".into()));
        }
        let mut columns = Vec::new();
        let mut vertex = Vec::new();
        for (v, s) in &blocks {
            for x in s.basis_vectors() {
                columns.push(x);
                vertex.push(*v);
            }
        }
        let inclusion = Matrix::from_columns(f, self.dim(), &columns);
        let mut actions = Vec::with_capacity(a.dim());
        for b in 0..a.dim() {
            let mut m = Matrix::zeros(f, total, total);
            let (lv, rv) = (a.left_vertex(b), a.right_vertex(b));
            let mut offset = 0;
            let offsets: Vec<usize> = blocks
                .iter()
                .map(|(_, s)| {
                    let o = offset;
                    offset += s.dim();
                    o
                })
                .collect();
            let target = blocks.iter().position(|(v, _)| *v == lv);
            for (bi, (v, s)) in blocks.iter().enumerate() {
                if *v != rv {
                    continue;
                }
                for (j, x) in s.basis_vectors().iter().enumerate() {
                    let y = self.actions[b].mul_vec(x);
                    if y.iter().all(Scalar::is_zero) {
                        continue;
                    }
                    let Some(t) = target else {
                        return Err(Error::NotAnIdeal("subspace is not a submodule".into()));
                    };
                    let (_, ts) = &blocks[t];
                    let c = ts
                        .coords(&y)
                        .ok_or_else(|| Error::InvalidArgument("subspace is not a submodule".into()))?;
                    for (i, x) in c.into_iter().enumerate() {
                        m.set(offsets[t] + i, offsets[bi] + j, x);
                    }
                }
            }
            actions.push(m);
        }
        Ok((Module::from_parts(self.algebra.clone(), self.side, actions, vertex), inclusion))
    }

    /// `M / U` for a submodule subspace `U`; returns the module and the
    /// projection matrix.
    pub fn quotient(&self, space: &Subspace) -> Result<(Module, Matrix)> {
        let a = self.acting_algebra();
        let f = self.field();
        // complement coordinates: non-pivots of U, which is vertex-graded
        let keep = space.non_pivots();
        let n = keep.len();
        let project = |x: &[Scalar]| -> Vec<Scalar> {
            let r = space.reduce(x);
            keep.iter().map(|&i| r[i].clone()).collect()
        };
        let mut vertex = Vec::with_capacity(n);
        for &i in &keep {
            vertex.push(self.vertex[i]);
        }
        let mut actions = Vec::with_capacity(a.dim());
        for b in 0..a.dim() {
            let cols: Vec<Vec<Scalar>> = keep.iter().map(|&i| project(&self.actions[b].column(i))).collect();
            actions.push(Matrix::from_columns(f, n, &cols));
        }
        let proj_cols: Vec<Vec<Scalar>> = (0..self.dim()).map(|i| project(&f.unit_vector(self.dim(), i))).collect();
        let q = Module::from_parts(self.algebra.clone(), self.side, actions, vertex);
        // the complement basis is only vertex-adapted when U is vertex-graded
        let check = adapted_vertices(&a, &q.actions)?;
        if check != q.vertex {
            return Err(Error::InvalidArgument("subspace is not vertex-graded".into()));
        }
        Ok((q, Matrix::from_columns(f, n, &proj_cols)))
    }

    pub fn direct_sum(&self, other: &Module) -> Result<Module> {
        if self.side != other.side || !same_algebra(&self.algebra, &other.algebra) {
            return Err(Error::AlgebraMismatch);
        }
        let f = self.field();
        let (m, n) = (self.dim(), other.dim());
        let actions = self
            .actions
            .iter()
            .zip(&other.actions)
            .map(|(x, y)| {
                let top = x.hstack(&Matrix::zeros(f, m, n));
                let bottom = Matrix::zeros(f, n, m).hstack(y);
                top.vstack(&bottom)
            })
            .collect();
        let mut vertex = self.vertex.clone();
        vertex.extend_from_slice(&other.vertex);
        Ok(Module::from_parts(self.algebra.clone(), self.side, actions, vertex))
    }

    /// `rad M = rad(A)·M`, spanned by the images of the arrow generators.
    pub fn radical(&self) -> Subspace {
        let a = self.acting_algebra();
        let mut vectors = Vec::new();
        for &g in a.arrow_generators() {
            vectors.extend(self.actions[g].transpose().row_vectors());
        }
        Subspace::from_vectors(self.field(), self.dim(), &vectors)
    }

    /// `soc M`: vectors killed by every arrow.
    pub fn socle(&self) -> Subspace {
        let a = self.acting_algebra();
        let gens = a.arrow_generators();
        if gens.is_empty() {
            return Subspace::full(self.field(), self.dim());
        }
        let mut stacked = self.actions[gens[0]].clone();
        for &g in &gens[1..] {
            stacked = stacked.vstack(&self.actions[g]);
        }
        stacked.kernel()
    }

    /// Dimensions of `rad^k M / rad^{k+1} M` until the radical vanishes.
    pub fn radical_layers(&self) -> Vec<usize> {
        let a = self.acting_algebra();
        let f = self.field();
        let mut layers = Vec::new();
        let mut current = Subspace::full(f, self.dim());
        while current.dim() > 0 {
            let mut vectors = Vec::new();
            for x in current.basis_vectors() {
                for &g in a.arrow_generators() {
                    vectors.push(self.actions[g].mul_vec(&x));
                }
            }
            let next = Subspace::from_vectors(f, self.dim(), &vectors);
            layers.push(current.dim() - next.dim());
            current = next;
        }
        layers
    }

    /// `I` as a one-sided module.
    pub fn from_ideal(algebra: &Arc<Algebra>, ideal: &Ideal, side: Side) -> Result<(Module, Matrix)> {
        Module::regular(algebra, side).submodule(ideal.space())
    }

    /// `A / I` as a one-sided module.
    pub fn quotient_by_ideal(algebra: &Arc<Algebra>, ideal: &Ideal, side: Side) -> Result<(Module, Matrix)> {
        Module::regular(algebra, side).quotient(ideal.space())
    }

    /// Splits off every simple direct summand: returns the multiplicity of
    /// `S_v` for each vertex and a complement with no simple summands.
    pub fn split_simples(&self) -> Result<(Vec<usize>, Module)> {
        let f = self.field();
        let a = self.acting_algebra();
        let rad = self.radical();
        let soc = self.socle();
        let n = a.num_vertices();
        let mut counts = vec![0; n];
        let mut complement: Vec<Vec<Scalar>> = rad.basis_vectors();
        for v in 0..n {
            let block = self.vertex_block(v);
            if block.is_empty() {
                continue;
            }
            let unit = |i: usize| f.unit_vector(self.dim(), i);
            let e_block = Subspace::from_vectors(f, self.dim(), &block.iter().map(|&i| unit(i)).collect::<Vec<_>>());
            let soc_v = soc.intersection(&e_block);
            let rad_v = rad.intersection(&e_block);
            // W_v: socle vectors independent of the radical
            let mut span = rad_v.clone();
            let mut w = Vec::new();
            for x in soc_v.basis_vectors() {
                if !span.contains(&x) {
                    span = span.sum(&Subspace::from_vectors(f, self.dim(), std::slice::from_ref(&x)));
                    w.push(x);
                }
            }
            counts[v] = w.len();
            // complete rad_v ⊕ W_v to e_v M with standard vectors; those join M'
            for &i in &block {
                let x = unit(i);
                if !span.contains(&x) {
                    span = span.sum(&Subspace::from_vectors(f, self.dim(), std::slice::from_ref(&x)));
                    complement.push(x);
                }
            }
        }
        if counts.iter().all(|&c| c == 0) {
            return Ok((counts, self.clone()));
        }
        let space = Subspace::from_vectors(f, self.dim(), &complement);
        let (rest, _) = self.submodule(&space)?;
        Ok((counts, rest))
    }
}

pub(crate) fn acting(algebra: &Arc<Algebra>, side: Side) -> Arc<Algebra> {
    match side {
        Side::Left => algebra.clone(),
        Side::Right => algebra.opposite(),
    }
}

fn check_vertex(algebra: &Algebra, v: usize) -> Result<()> {
    if v >= algebra.num_vertices() {
        return Err(Error::InvalidArgument(format!(
            "vertex index {v} out of range (algebra has {} vertices)",
            algebra.num_vertices()
        )));
    }
    Ok(())
}

/// The vertex of each basis vector, or an error when some basis vector is
/// not fixed by exactly one idempotent.
fn adapted_vertices(a: &Algebra, actions: &[Matrix]) -> Result<Vec<usize>> {
    if actions.len() != a.dim() {
        return Err(Error::InvalidModule("wrong number of action matrices".into()));
    }
    let d = actions.first().map_or(0, Matrix::rows);
    let mut vertex = vec![usize::MAX; d];
    for v in 0..a.num_vertices() {
        let e = &actions[a.idempotent(v)];
        if e.rows() != d || e.cols() != d {
            return Err(Error::InvalidModule("action matrix of the wrong size".into()));
        }
        for i in 0..d {
            if e.get(i, i).is_one() {
                if vertex[i] != usize::MAX {
                    return Err(Error::InvalidModule("basis is not vertex-adapted".into()));
                }
                vertex[i] = v;
            }
        }
    }
    if vertex.contains(&usize::MAX) {
        return Err(Error::InvalidModule("basis is not vertex-adapted".into()));
    }
    Ok(vertex)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::{parse_presentation, PathAlgebra};

    fn algebra(text: &str) -> Arc<Algebra> {
        PathAlgebra::build(&parse_presentation(text).unwrap()).unwrap().algebra().clone()
    }

    const A2: &str = "vertices 1, 2\narrow a: 1 -> 2\nnilpotency 2\n";

    #[test]
    fn standard_modules_validate() {
        let a = algebra(A2);
        for side in [Side::Left, Side::Right] {
            for v in 0..2 {
                Module::simple(&a, v, side).unwrap().validate().unwrap();
                Module::projective(&a, v, side).unwrap().validate().unwrap();
                Module::injective(&a, v, side).unwrap().validate().unwrap();
            }
            Module::regular(&a, side).validate().unwrap();
        }
        assert!(Module::simple(&a, 2, Side::Left).is_err());
    }

    #[test]
    fn a2_projective_dims() {
        let a = algebra(A2);
        assert_eq!(Module::projective(&a, 0, Side::Left).unwrap().dim(), 2);
        assert_eq!(Module::projective(&a, 1, Side::Left).unwrap().dim(), 1);
        assert_eq!(Module::projective(&a, 0, Side::Right).unwrap().dim(), 1);
    }

    #[test]
    fn radical_layers_of_uniserial() {
        let a = algebra(A2);
        assert_eq!(Module::projective(&a, 0, Side::Left).unwrap().radical_layers(), vec![1, 1]);
    }

    #[test]
    fn splitting_simples() {
        let a = algebra(A2);
        let m = Module::simple(&a, 1, Side::Left)
            .unwrap()
            .direct_sum(&Module::projective(&a, 0, Side::Left).unwrap())
            .unwrap();
        let (counts, rest) = m.split_simples().unwrap();
        // S_2 is the socle of P_1 but only the extra copy splits off
        assert_eq!(counts, vec![0, 1]);
        assert_eq!(rest.dim(), 2);
        rest.validate().unwrap();
    }
}
