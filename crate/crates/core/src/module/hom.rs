use super::projective::{is_hom, lift_through_covers, projective_cover, Cover};
use super::Module;
use crate::algebra::same_algebra;
use crate::error::{Error, Result};
use crate::linalg::{sparse, Matrix, Scalar, SparseEchelon, Subspace};

#[derive(Clone, Debug)]
pub struct ModuleHom {
    pub source: Module,
    pub target: Module,
    pub matrix: Matrix,
}

impl ModuleHom {
    pub fn new(source: Module, target: Module, matrix: Matrix) -> Result<ModuleHom> {
        if matrix.rows() != target.dim() || matrix.cols() != source.dim() {
            return Err(Error::DimensionMismatch("homomorphism matrix has the wrong shape".into()));
        }
        if !is_hom(&source, &target, &matrix) {
            return Err(Error::InvalidArgument("matrix does not intertwine the actions".into()));
        }
        Ok(ModuleHom { source, target, matrix })
    }

    pub fn identity(m: &Module) -> ModuleHom {
        ModuleHom {
            source: m.clone(),
            target: m.clone(),
            matrix: Matrix::identity(m.field(), m.dim()),
        }
    }

    pub fn zero(source: &Module, target: &Module) -> ModuleHom {
        ModuleHom {
            source: source.clone(),
            target: target.clone(),
            matrix: Matrix::zeros(source.field(), target.dim(), source.dim()),
        }
    }
}

/// `Hom_A(M, N)`. A homomorphism is determined by its vertex blocks
/// `e_v M → e_v N`, whose entries are the coordinates used here.
#[derive(Clone, Debug)]
pub struct HomSpace {
    rows: usize,
    cols: usize,
    /// Matrix position of each coordinate.
    positions: Vec<(usize, usize)>,
    basis: Vec<Vec<Scalar>>,
    field: crate::linalg::FieldSpec,
}

impl HomSpace {
    pub fn new(m: &Module, n: &Module) -> Result<HomSpace> {
        if m.side() != n.side() || !same_algebra(m.algebra(), n.algebra()) {
            return Err(Error::AlgebraMismatch);
        }
        let op = m.acting_algebra();
        let f = m.field();
        let nv = op.num_vertices();
        let mut positions = Vec::new();
        let mut index = std::collections::HashMap::new();
        let mblocks: Vec<Vec<usize>> = (0..nv).map(|v| m.vertex_block(v)).collect();
        let nblocks: Vec<Vec<usize>> = (0..nv).map(|v| n.vertex_block(v)).collect();
        for v in 0..nv {
            for &r in &nblocks[v] {
                for &c in &mblocks[v] {
                    index.insert((r, c), positions.len());
                    positions.push((r, c));
                }
            }
        }
        let unknowns = positions.len();
        let mut echelon = SparseEchelon::new();
        for &a in op.arrow_generators() {
            let (s, t) = (op.right_vertex(a), op.left_vertex(a));
            let (am, an) = (m.action(a), n.action(a));
            for &i in &nblocks[t] {
                for &j in &mblocks[s] {
                    // (f_t · a_M)[i, j] − (a_N · f_s)[i, j]
                    let mut entries = Vec::new();
                    for &k in &mblocks[t] {
                        let x = am.get(k, j);
                        if !x.is_zero() {
                            entries.push((index[&(i, k)], x.clone()));
                        }
                    }
                    for &l in &nblocks[s] {
                        let x = an.get(i, l);
                        if !x.is_zero() {
                            entries.push((index[&(l, j)], -x));
                        }
                    }
                    let eq = sparse::collect(entries);
                    if !eq.is_empty() {
                        echelon.insert(eq);
                    }
                }
            }
        }
        let basis = echelon
            .kernel(f, unknowns)
            .iter()
            .map(|v| sparse::to_dense(f, unknowns, v))
            .collect();
        Ok(HomSpace {
            rows: n.dim(),
            cols: m.dim(),
            positions,
            basis,
            field: f,
        })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn coordinate_count(&self) -> usize {
        self.positions.len()
    }

    pub fn basis_coords(&self) -> &[Vec<Scalar>] {
        &self.basis
    }

    pub fn to_matrix(&self, coords: &[Scalar]) -> Matrix {
        let mut m = Matrix::zeros(self.field, self.rows, self.cols);
        for (x, &(r, c)) in coords.iter().zip(&self.positions) {
            if !x.is_zero() {
                m.set(r, c, x.clone());
            }
        }
        m
    }

    pub fn to_coords(&self, m: &Matrix) -> Vec<Scalar> {
        self.positions.iter().map(|&(r, c)| m.get(r, c).clone()).collect()
    }

    pub fn matrices(&self) -> Vec<Matrix> {
        self.basis.iter().map(|c| self.to_matrix(c)).collect()
    }
}

/// `Hom(M, N)` modulo the maps factoring through a projective, which are
/// exactly those factoring through the projective cover of `N`.
#[derive(Clone, Debug)]
pub struct StableHom {
    pub hom: HomSpace,
    /// Factoring maps, in Hom coordinates.
    pub factoring: Subspace,
    /// Coordinates of Hom basis elements forming a basis of the quotient.
    pub representatives: Vec<Vec<Scalar>>,
}

impl StableHom {
    pub fn new(m: &Module, n: &Module) -> Result<StableHom> {
        let cover = projective_cover(n);
        Self::with_cover(m, n, &cover)
    }

    pub fn with_cover(m: &Module, n: &Module, cover_n: &Cover) -> Result<StableHom> {
        let hom = HomSpace::new(m, n)?;
        let to_p = HomSpace::new(m, cover_n.projective.module())?;
        let f = m.field();
        let factoring_vectors: Vec<Vec<Scalar>> = to_p
            .matrices()
            .iter()
            .map(|g| hom.to_coords(&cover_n.epi.mul(g)))
            .collect();
        let factoring = Subspace::from_vectors(f, hom.coordinate_count(), &factoring_vectors);
        // basis elements independent modulo the factoring maps
        let mut modulo = SparseEchelon::new();
        let mut representatives = Vec::new();
        for b in hom.basis_coords() {
            if modulo.insert(sparse::from_dense(&factoring.reduce(b))).is_some() {
                representatives.push(b.clone());
            }
        }
        Ok(StableHom {
            hom,
            factoring,
            representatives,
        })
    }

    pub fn dim(&self) -> usize {
        self.representatives.len()
    }

    /// A canonical coordinate vector of the class of `f`: its normal form
    /// modulo the factoring maps, read on the non-pivot coordinates. The map
    /// from the stable Hom space is injective, so ranks computed from these
    /// vectors are ranks of maps between stable Hom spaces.
    pub fn class_of(&self, f: &Matrix) -> Vec<Scalar> {
        let r = self.factoring.reduce(&self.hom.to_coords(f));
        self.factoring.non_pivots().into_iter().map(|i| r[i].clone()).collect()
    }

    pub fn is_stably_zero(&self, f: &Matrix) -> bool {
        self.factoring.contains(&self.hom.to_coords(f))
    }
}

/// `Ωf: ΩM → ΩN`, a lift of `f` through the covers restricted to kernels.
pub fn omega_map(f: &ModuleHom) -> Result<ModuleHom> {
    let cm = projective_cover(&f.source);
    let cn = projective_cover(&f.target);
    let matrix = omega_map_with(&f.matrix, &cm, &cn)?;
    Ok(ModuleHom {
        source: cm.kernel,
        target: cn.kernel,
        matrix,
    })
}

pub(crate) fn omega_map_with(f: &Matrix, cm: &Cover, cn: &Cover) -> Result<Matrix> {
    let lift = lift_through_covers(f, cm, cn)?;
    let field = f.field();
    let mut cols = Vec::with_capacity(cm.kernel.dim());
    for j in 0..cm.kernel.dim() {
        let y = lift.mul_vec(&cm.inclusion.column(j));
        let x = cn
            .inclusion
            .solve(&y)
            .ok_or_else(|| Error::Internal("lift does not map syzygies into syzygies".into()))?;
        cols.push(x);
    }
    Ok(Matrix::from_columns(field, cn.kernel.dim(), &cols))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::module::Side;
    use crate::quiver::{parse_presentation, PathAlgebra};
    use std::sync::Arc;

    fn algebra(text: &str) -> Arc<crate::Algebra> {
        PathAlgebra::build(&parse_presentation(text).unwrap()).unwrap().algebra().clone()
    }

    const DUAL: &str = "vertices v\narrow x: v -> v\nrelation x x\nnilpotency 2\n";

    #[test]
    fn dual_numbers_homs() {
        let a = algebra(DUAL);
        let s = Module::simple(&a, 0, Side::Left).unwrap();
        let p = Module::regular(&a, Side::Left);
        assert_eq!(HomSpace::new(&s, &s).unwrap().dim(), 1);
        assert_eq!(HomSpace::new(&p, &p).unwrap().dim(), 2);
        assert_eq!(HomSpace::new(&s, &p).unwrap().dim(), 1);
        assert_eq!(StableHom::new(&s, &s).unwrap().dim(), 1);
        assert_eq!(StableHom::new(&p, &s).unwrap().dim(), 0);
        assert_eq!(StableHom::new(&s, &p).unwrap().dim(), 0);
    }

    #[test]
    fn omega_of_identity_and_zero() {
        let a = algebra(DUAL);
        let s = Module::simple(&a, 0, Side::Left).unwrap();
        let id = omega_map(&ModuleHom::identity(&s)).unwrap();
        let st = StableHom::new(&id.source, &id.target).unwrap();
        assert_eq!(st.class_of(&id.matrix), st.class_of(&Matrix::identity(a.field(), 1)));
        assert!(!st.is_stably_zero(&id.matrix));
        let z = omega_map(&ModuleHom::zero(&s, &s)).unwrap();
        assert!(st.is_stably_zero(&z.matrix));
    }
}
