use super::projective::min_resolution;
use super::{Module, Side};
use crate::algebra::same_algebra;
use crate::error::{Error, Result};
use crate::linalg::{sparse, Matrix, Scalar, SparseEchelon, SparseVec};

/// `X ⊗_A Y` as the quotient of `⊕_v X e_v ⊗ e_v Y` by the balancing
/// relations `x·a ⊗ y − x ⊗ a·y` for the arrow generators `a`.
#[derive(Clone, Debug)]
pub struct TensorProduct {
    /// Basis pairs `(i, j)` of the ambient space, `x_i ⊗ y_j`.
    pub pairs: Vec<(usize, usize)>,
    pub relations: Vec<SparseVec>,
    pub dim: usize,
}

impl TensorProduct {
    /// Rank of the linear map induced on the tensor product by `value(i, j)`
    /// (the image of `x_i ⊗ y_j`), or `None` if it does not kill the
    /// relations, i.e. is not balanced.
    pub fn induced_rank(&self, field: crate::linalg::FieldSpec, target_dim: usize, value: impl Fn(usize, usize) -> Vec<Scalar>) -> Option<usize> {
        let images: Vec<Vec<Scalar>> = self.pairs.iter().map(|&(i, j)| value(i, j)).collect();
        for r in &self.relations {
            let mut acc = field.zeros(target_dim);
            for (p, c) in r {
                for (k, x) in images[*p].iter().enumerate() {
                    acc[k] = &acc[k] + &(c * x);
                }
            }
            if acc.iter().any(|x| !x.is_zero()) {
                return None;
            }
        }
        Some(Matrix::from_columns(field, target_dim, &images).rank())
    }
}

pub fn tensor_over_algebra(x: &Module, y: &Module) -> Result<TensorProduct> {
    if x.side() != Side::Right || y.side() != Side::Left {
        return Err(Error::InvalidArgument("tensor product needs a right and a left module".into()));
    }
    if !same_algebra(x.algebra(), y.algebra()) {
        return Err(Error::AlgebraMismatch);
    }
    let a = y.algebra();
    let mut pairs = Vec::new();
    let mut index = std::collections::HashMap::new();
    for i in 0..x.dim() {
        for j in 0..y.dim() {
            if x.vertices()[i] == y.vertices()[j] {
                index.insert((i, j), pairs.len());
                pairs.push((i, j));
            }
        }
    }
    let mut echelon = SparseEchelon::new();
    let mut relations = Vec::new();
    for &g in a.arrow_generators() {
        let (s, t) = (a.right_vertex(g), a.left_vertex(g));
        let (xa, ay) = (x.action(g), y.action(g));
        for i in x.vertex_block(t) {
            let xi_a = xa.column(i);
            for j in y.vertex_block(s) {
                let a_yj = ay.column(j);
                let mut entries = Vec::new();
                for (k, c) in xi_a.iter().enumerate() {
                    if !c.is_zero() {
                        entries.push((index[&(k, j)], c.clone()));
                    }
                }
                for (l, c) in a_yj.iter().enumerate() {
                    if !c.is_zero() {
                        entries.push((index[&(i, l)], -c));
                    }
                }
                let r = sparse::collect(entries);
                if !r.is_empty() {
                    relations.push(r.clone());
                    echelon.insert(r);
                }
            }
        }
    }
    Ok(TensorProduct {
        dim: pairs.len() - echelon.rank(),
        pairs,
        relations,
    })
}

/// `dim Tor_i(X, Y)` for `i = 0..=max`, from the minimal resolution of `Y`.
pub fn tor_range(x: &Module, y: &Module, max: usize) -> Result<Vec<usize>> {
    if x.side() != Side::Right || y.side() != Side::Left {
        return Err(Error::InvalidArgument("Tor needs a right and a left module".into()));
    }
    if !same_algebra(x.algebra(), y.algebra()) {
        return Err(Error::AlgebraMismatch);
    }
    Ok(tor_by_resolving(y, x, max))
}

/// `dim Tor_i(X, Y)` from the minimal resolution of `X` instead (over the
/// opposite algebra); agrees with [`tor_range`] by balance.
pub fn tor_range_resolving_left(x: &Module, y: &Module, max: usize) -> Result<Vec<usize>> {
    if x.side() != Side::Right || y.side() != Side::Left {
        return Err(Error::InvalidArgument("Tor needs a right and a left module".into()));
    }
    if !same_algebra(x.algebra(), y.algebra()) {
        return Err(Error::AlgebraMismatch);
    }
    Ok(tor_by_resolving(x, y, max))
}

pub fn tor(x: &Module, y: &Module, i: usize) -> Result<usize> {
    Ok(tor_range(x, y, i)?[i])
}

/// Resolves `resolved` (a left module over its acting algebra `B`) and
/// tensors with `other`, viewed as a right `B`-module through its matrices.
fn tor_by_resolving(resolved: &Module, other: &Module, max: usize) -> Vec<usize> {
    let f = other.field();
    let res = min_resolution(resolved, max + 1);
    let op = resolved.acting_algebra();
    // C_n = ⊕_k O e_{v_k}; record block offsets
    let blocks: Vec<Vec<(usize, Vec<usize>)>> = res
        .terms
        .iter()
        .map(|p| {
            let mut offset = 0;
            p.summands()
                .iter()
                .map(|&v| {
                    let rows = other.vertex_block(v);
                    let o = offset;
                    offset += rows.len();
                    (o, rows)
                })
                .collect()
        })
        .collect();
    let dims: Vec<usize> = blocks.iter().map(|b| b.iter().map(|(_, r)| r.len()).sum()).collect();
    let mut ranks = vec![0; res.terms.len() + 1];
    for (n, d) in res.differentials.iter().enumerate() {
        // ∂: C_{n+1} → C_n
        let (src, tgt) = (&res.terms[n + 1], &res.terms[n]);
        let mut m = Matrix::zeros(f, dims[n], dims[n + 1]);
        for k in 0..src.summands().len() {
            let image = d.column(src.generator(k));
            let (koff, krows) = &blocks[n + 1][k];
            for j in 0..tgt.summands().len() {
                let c = tgt.component(&image, j);
                if c.iter().all(Scalar::is_zero) {
                    continue;
                }
                let act = other.act(&c);
                let (joff, jrows) = &blocks[n][j];
                for (cj, &col) in krows.iter().enumerate() {
                    for (ri, &row) in jrows.iter().enumerate() {
                        let x = act.get(row, col);
                        if !x.is_zero() {
                            m.set(joff + ri, koff + cj, x.clone());
                        }
                    }
                }
            }
        }
        ranks[n + 1] = m.rank();
        debug_assert_eq!(op.dim(), other.actions().len());
    }
    (0..=max).map(|i| dims[i] - ranks[i] - ranks[i + 1]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::{parse_presentation, PathAlgebra};

    fn algebra(text: &str) -> std::sync::Arc<crate::Algebra> {
        PathAlgebra::build(&parse_presentation(text).unwrap()).unwrap().algebra().clone()
    }

    #[test]
    fn dual_numbers_tor() {
        let a = algebra("vertices v\narrow x: v -> v\nrelation x x\nnilpotency 2\n");
        let sr = Module::simple(&a, 0, Side::Right).unwrap();
        let sl = Module::simple(&a, 0, Side::Left).unwrap();
        assert_eq!(tensor_over_algebra(&sr, &sl).unwrap().dim, 1);
        assert_eq!(tor_range(&sr, &sl, 5).unwrap(), vec![1; 6]);
        assert_eq!(tor_range_resolving_left(&sr, &sl, 5).unwrap(), vec![1; 6]);
    }

    #[test]
    fn regular_tensor_is_identity() {
        let a = algebra("vertices 1, 2\narrow a: 1 -> 2\nnilpotency 2\n");
        let reg = Module::regular(&a, Side::Right);
        for v in 0..2 {
            let y = Module::simple(&a, v, Side::Left).unwrap();
            assert_eq!(tensor_over_algebra(&reg, &y).unwrap().dim, 1);
        }
        let p = Module::projective(&a, 0, Side::Left).unwrap();
        assert_eq!(tensor_over_algebra(&reg, &p).unwrap().dim, 2);
    }
}
