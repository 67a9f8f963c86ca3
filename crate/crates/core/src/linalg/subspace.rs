use super::matrix::Matrix;
use super::scalar::{FieldSpec, Scalar};

/// A linear subspace of `k^n`, stored by its reduced row-echelon basis.
/// Two subspaces are equal exactly when their rref bases are equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: FieldSpec, ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Matrix::zeros(field, 0, ambient_dim),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: FieldSpec, ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Matrix::identity(field, ambient_dim),
            pivots: (0..ambient_dim).collect(),
        }
    }

    pub fn from_vectors(field: FieldSpec, ambient_dim: usize, vectors: &[Vec<Scalar>]) -> Self {
        Self::from_matrix_rows(Matrix::from_rows(field, ambient_dim, vectors.to_vec()))
    }

    /// Span of the rows of `m`.
    pub fn from_matrix_rows(m: Matrix) -> Self {
        let ambient_dim = m.cols();
        let field = m.field();
        let rref = m.rref();
        let rows: Vec<Vec<Scalar>> = (0..rref.rank).map(|i| rref.matrix.row(i).to_vec()).collect();
        Subspace {
            ambient_dim,
            basis: Matrix::from_rows(field, ambient_dim, rows),
            pivots: rref.pivots,
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.basis.field()
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<Scalar>> {
        self.basis.row_vectors()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Coordinates not used as pivots: a complement basis of standard vectors.
    pub fn non_pivots(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ambient_dim];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ambient_dim).filter(|&i| !is_pivot[i]).collect()
    }

    /// `v` minus its component along the basis, leaving zeros at all pivots.
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.ambient_dim, "vector has wrong length");
        let mut out = v.to_vec();
        for (r, &p) in self.pivots.iter().enumerate() {
            let c = out[p].clone();
            if c.is_zero() {
                continue;
            }
            for (j, x) in self.basis.row(r).iter().enumerate() {
                if !x.is_zero() {
                    out[j] = out[j].sub_mul(&c, x);
                }
            }
        }
        out
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce(v).iter().all(Scalar::is_zero)
    }

    /// Coefficients of `v` in the rref basis, when `v` lies in the subspace.
    pub fn coords(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    /// Coefficients of `v` without the membership check.
    pub fn coords_unchecked(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.pivots.iter().map(|&p| v[p].clone()).collect()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis_vectors().iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient_dim, other.ambient_dim);
        Self::from_matrix_rows(self.basis.vstack(&other.basis))
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient_dim, other.ambient_dim);
        let field = self.field();
        if self.dim() == 0 || other.dim() == 0 {
            return Subspace::zero(field, self.ambient_dim);
        }
        // a·B1 = b·B2  <=>  [B1^T | -B2^T] (a, b) = 0
        let neg = other.basis.scale(&(-&field.one()));
        let system = self.basis.transpose().hstack(&neg.transpose());
        let ker = system.kernel();
        let vectors: Vec<Vec<Scalar>> = ker
            .basis_vectors()
            .iter()
            .map(|ab| {
                let mut v = field.zeros(self.ambient_dim);
                for (r, a) in ab[..self.dim()].iter().enumerate() {
                    if a.is_zero() {
                        continue;
                    }
                    for (j, x) in self.basis.row(r).iter().enumerate() {
                        if !x.is_zero() {
                            v[j] = &v[j] + &(a * x);
                        }
                    }
                }
                v
            })
            .collect();
        Subspace::from_vectors(field, self.ambient_dim, &vectors)
    }

    /// An echelon basis of the same subspace whose pivots are chosen by the
    /// column priority `order` (earlier columns are preferred as pivots).
    pub fn echelon_in_order(&self, order: &[usize]) -> Echelon {
        let rref = self.basis.rref_in_order(order);
        Echelon {
            rows: (0..rref.rank).map(|i| rref.matrix.row(i).to_vec()).collect(),
            pivots: rref.pivots,
            ambient_dim: self.ambient_dim,
        }
    }
}

/// Fully reduced echelon basis with an arbitrary pivot priority; used to
/// reduce vectors modulo a subspace onto a chosen set of complement coordinates.
#[derive(Clone, Debug)]
pub struct Echelon {
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
    ambient_dim: usize,
}

impl Echelon {
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn non_pivots(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ambient_dim];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ambient_dim).filter(|&i| !is_pivot[i]).collect()
    }

    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        let mut out = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let c = out[p].clone();
            if c.is_zero() {
                continue;
            }
            for (j, x) in row.iter().enumerate() {
                if !x.is_zero() {
                    out[j] = out[j].sub_mul(&c, x);
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: FieldSpec = FieldSpec::Rationals;

    fn v(xs: &[i64]) -> Vec<Scalar> {
        xs.iter().map(|&x| Q.from_i64(x)).collect()
    }

    #[test]
    fn equality_is_canonical() {
        let a = Subspace::from_vectors(Q, 3, &[v(&[1, 1, 0]), v(&[0, 1, 1])]);
        let b = Subspace::from_vectors(Q, 3, &[v(&[1, 2, 1]), v(&[1, 0, -1])]);
        assert_eq!(a, b);
    }

    #[test]
    fn intersection_of_planes() {
        let a = Subspace::from_vectors(Q, 3, &[v(&[1, 0, 0]), v(&[0, 1, 0])]);
        let b = Subspace::from_vectors(Q, 3, &[v(&[0, 1, 0]), v(&[0, 0, 1])]);
        let c = a.intersection(&b);
        assert_eq!(c, Subspace::from_vectors(Q, 3, &[v(&[0, 1, 0])]));
        assert_eq!(a.sum(&b).dim(), 3);
    }

    #[test]
    fn reverse_priority_keeps_early_coordinates() {
        let s = Subspace::from_vectors(Q, 3, &[v(&[1, 0, 1])]);
        let e = s.echelon_in_order(&[2, 1, 0]);
        assert_eq!(e.pivots(), &[2]);
        assert_eq!(e.non_pivots(), vec![0, 1]);
        assert_eq!(e.reduce(&v(&[0, 0, 1])), v(&[-1, 0, 0]));
    }

    #[test]
    fn coords_round_trip() {
        let s = Subspace::from_vectors(Q, 4, &[v(&[1, 2, 0, 1]), v(&[0, 0, 1, 3])]);
        let w = v(&[2, 4, -1, -1]);
        let c = s.coords(&w).unwrap();
        assert_eq!(c, v(&[2, -1]));
        assert!(s.coords(&v(&[0, 1, 0, 0])).is_none());
    }
}
