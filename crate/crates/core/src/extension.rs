//! Triangular matrix extensions `Γ = [[A, M], [N, k]]` and the inverse
//! operation of peeling a vertex off an algebra.
//!
//! The data is an algebra `A`, a left module `M`, a right module `N` and a
//! bimodule monomorphism `φ: M ⊗_k N → A` whose image kills `M` and `N`.
//! Multiplication in `Γ` is
//!
//! ```text
//! [a  m] [a' m']   [aa' + φ(m⊗n')  am' + λ'm]
//! [n  λ] [n' λ'] = [na' + λn'      λλ'      ]
//! ```
//!
//! Peeling vertex `v` recovers such data from `Γ` with `A = (1-e)Γ(1-e)`,
//! `M = (1-e)Γe`, `N = eΓ(1-e)`, and `Γ/ΓeΓ ≅ A/Im φ`.

use std::sync::Arc;

use serde::Serialize;

use crate::algebra::{same_algebra, Algebra, AlgebraMorphism, AlgebraParts};
use crate::bimodule::{is_hereditary_ideal, is_homological_ideal, HereditaryCertificate, Verdict};
use crate::error::{Error, Result};
use crate::linalg::{sparse, Matrix, Scalar, Subspace};
use crate::module::{Module, Side};

#[derive(Clone, Debug)]
pub struct ExtensionData {
    pub algebra: Arc<Algebra>,
    pub m: Module,
    pub n: Module,
    /// `dim A × (dim M · dim N)`, column `i·dim N + j` is `φ(m_i ⊗ n_j)`.
    pub phi: Matrix,
    pub m_labels: Vec<String>,
    pub n_labels: Vec<String>,
    pub vertex_label: String,
}

impl ExtensionData {
    /// Data with generated labels `m1.., n1..` and new vertex `e`.
    pub fn new(algebra: Arc<Algebra>, m: Module, n: Module, phi: Matrix) -> ExtensionData {
        let m_labels = (1..=m.dim()).map(|i| format!("m{i}")).collect();
        let n_labels = (1..=n.dim()).map(|i| format!("n{i}")).collect();
        ExtensionData {
            algebra,
            m,
            n,
            phi,
            m_labels,
            n_labels,
            vertex_label: "e".into(),
        }
    }

    fn image(&self) -> Subspace {
        self.phi.image()
    }
}

/// Outcome of [`validate_extension`]; every condition is reported.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtensionValidation {
    pub shapes: bool,
    pub bimodule_hom: bool,
    pub injective: bool,
    pub kills_m: bool,
    pub kills_n: bool,
    pub image_is_ideal: bool,
    pub image_in_radical: bool,
    pub image_square_zero: bool,
    pub failures: Vec<String>,
}

impl ExtensionValidation {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn validate_extension(d: &ExtensionData) -> ExtensionValidation {
    let a = &d.algebra;
    let f = a.field();
    let (dm, dn) = (d.m.dim(), d.n.dim());
    let mut v = ExtensionValidation {
        shapes: true,
        bimodule_hom: true,
        injective: true,
        kills_m: true,
        kills_n: true,
        image_is_ideal: true,
        image_in_radical: true,
        image_square_zero: true,
        failures: Vec::new(),
    };
    if d.m.side() != Side::Left
        || d.n.side() != Side::Right
        || !same_algebra(d.m.algebra(), a)
        || !same_algebra(d.n.algebra(), a)
        || d.phi.rows() != a.dim()
        || d.phi.cols() != dm * dn
        || d.m_labels.len() != dm
        || d.n_labels.len() != dn
    {
        v.shapes = false;
        v.failures.push("shapes: M must be a left and N a right module over A, phi of size dim A × dim M·dim N".into());
        return v;
    }
    let (im, in_) = (Matrix::identity(f, dm), Matrix::identity(f, dn));
    for b in 0..a.dim() {
        let left = d.phi.mul(&d.m.action(b).kronecker(&in_));
        let right = d.phi.mul(&im.kronecker(d.n.action(b)));
        let regular_left = a.left_mult_matrix(b);
        if left != regular_left.mul(&d.phi) {
            v.bimodule_hom = false;
            v.failures.push(format!("bimodule map: phi(a·(m⊗n)) ≠ a·phi(m⊗n) for a = {}", a.label(b)));
            break;
        }
        let mut right_mult = Matrix::zeros(f, a.dim(), a.dim());
        for j in 0..a.dim() {
            for (k, c) in a.product(j, b) {
                right_mult.set(*k, j, c.clone());
            }
        }
        if right != right_mult.mul(&d.phi) {
            v.bimodule_hom = false;
            v.failures.push(format!("bimodule map: phi((m⊗n)·a) ≠ phi(m⊗n)·a for a = {}", a.label(b)));
            break;
        }
    }
    let rank = d.phi.rank();
    if rank != dm * dn {
        v.injective = false;
        v.failures.push(format!("injectivity: rank phi = {rank} < {} = dim M · dim N", dm * dn));
    }
    let image = d.image();
    for u in image.basis_vectors() {
        if v.kills_m && !d.m.act(&u).is_zero() {
            v.kills_m = false;
            v.failures.push("vanishing: Im phi · M ≠ 0".into());
        }
        if v.kills_n && !d.n.act(&u).is_zero() {
            v.kills_n = false;
            v.failures.push("vanishing: N · Im phi ≠ 0".into());
        }
    }
    if a.ideal(image.clone()).is_err() {
        v.image_is_ideal = false;
        v.failures.push("Im phi is not an ideal".into());
    }
    if !a.radical().contains_subspace(&image) {
        v.image_in_radical = false;
        v.failures.push("Im phi is not inside rad A".into());
    }
    let basis = image.basis_vectors();
    'square: for x in &basis {
        for y in &basis {
            if a.multiply(x, y).expect("dims").iter().any(|c| !c.is_zero()) {
                v.image_square_zero = false;
                v.failures.push("(Im phi)² ≠ 0".into());
                break 'square;
            }
        }
    }
    v
}

/// `Γ` with the positions of its pieces: basis order is `A`, `M`, `N`, `e`.
#[derive(Clone, Debug)]
pub struct Gamma {
    pub algebra: Arc<Algebra>,
    /// Vertex index of the new vertex.
    pub vertex: usize,
    pub a_basis: Vec<usize>,
    pub m_basis: Vec<usize>,
    pub n_basis: Vec<usize>,
}

pub fn build_gamma(d: &ExtensionData) -> Result<Gamma> {
    let check = validate_extension(d);
    if !check.passed() {
        return Err(Error::NotApplicable(check.failures.join("; ")));
    }
    build_gamma_unchecked(d)
}

/// Builds `Γ` without [`validate_extension`]; the algebra axioms are still
/// proven by [`Algebra::new`]. Used to study data with non-injective `φ`.
pub fn build_gamma_unchecked(d: &ExtensionData) -> Result<Gamma> {
    let a = &d.algebra;
    let f = a.field();
    let (da, dm, dn) = (a.dim(), d.m.dim(), d.n.dim());
    let dim = da + dm + dn + 1;
    let mo = da;
    let no = da + dm;
    let e = dim - 1;
    let new_vertex = a.num_vertices();
    let column = |mat: &Matrix, col: usize, offset: usize| -> Vec<(usize, Scalar)> {
        (0..mat.rows())
            .filter(|&r| !mat.get(r, col).is_zero())
            .map(|r| (offset + r, mat.get(r, col).clone()))
            .collect()
    };
    let mut products = vec![Vec::new(); dim * dim];
    for i in 0..da {
        for j in 0..da {
            products[i * dim + j] = a.product(i, j).clone();
        }
        for k in 0..dm {
            products[i * dim + mo + k] = column(d.m.action(i), k, mo);
        }
        for l in 0..dn {
            products[(no + l) * dim + i] = column(d.n.action(i), l, no);
        }
    }
    for k in 0..dm {
        for l in 0..dn {
            products[(mo + k) * dim + no + l] = column(&d.phi, k * dn + l, 0);
        }
        products[(mo + k) * dim + e] = vec![(mo + k, f.one())];
    }
    for l in 0..dn {
        products[e * dim + no + l] = vec![(no + l, f.one())];
    }
    products[e * dim + e] = vec![(e, f.one())];
    for p in &mut products {
        *p = sparse::collect(std::mem::take(p));
    }
    let mut labels: Vec<String> = a.labels().to_vec();
    labels.extend(d.m_labels.iter().cloned());
    labels.extend(d.n_labels.iter().cloned());
    labels.push(format!("e_{}", d.vertex_label));
    let mut vertex_labels = a.vertex_labels().to_vec();
    vertex_labels.push(d.vertex_label.clone());
    let mut idempotents = a.idempotents().to_vec();
    idempotents.push(e);
    let mut left_vertex: Vec<usize> = (0..da).map(|b| a.left_vertex(b)).collect();
    let mut right_vertex: Vec<usize> = (0..da).map(|b| a.right_vertex(b)).collect();
    left_vertex.extend(d.m.vertices());
    right_vertex.extend(std::iter::repeat_n(new_vertex, dm));
    left_vertex.extend(std::iter::repeat_n(new_vertex, dn));
    right_vertex.extend(d.n.vertices());
    left_vertex.push(new_vertex);
    right_vertex.push(new_vertex);
    let algebra = Arc::new(Algebra::new(AlgebraParts {
        field: f,
        labels,
        vertex_labels,
        idempotents,
        left_vertex,
        right_vertex,
        products,
    })?);
    Ok(Gamma {
        algebra,
        vertex: new_vertex,
        a_basis: (0..da).collect(),
        m_basis: (mo..no).collect(),
        n_basis: (no..e).collect(),
    })
}

/// The extension data at vertex `v` of `Γ` (not yet validated), with the
/// inclusion of the corner's basis into `Γ`'s.
pub fn extension_at(gamma: &Arc<Algebra>, v: usize) -> Result<(ExtensionData, Vec<usize>)> {
    let g = gamma;
    if v >= g.num_vertices() {
        return Err(Error::InvalidArgument(format!("vertex index {v} out of range")));
    }
    let local = (0..g.dim()).filter(|&b| g.left_vertex(b) == v && g.right_vertex(b) == v).count();
    if local != 1 {
        return Err(Error::NotApplicable(format!(
            "corner at {} has dimension {local}, not 1",
            g.vertex_labels()[v]
        )));
    }
    if g.num_vertices() == 1 {
        return Err(Error::NotApplicable(format!(
            "{} is the only vertex; the remaining algebra would be zero",
            g.vertex_labels()[v]
        )));
    }
    let f = g.field();
    let others: Vec<usize> = (0..g.num_vertices()).filter(|&w| w != v).collect();
    let (a, inclusion) = g.corner(&others)?;
    let m_basis: Vec<usize> = (0..g.dim()).filter(|&b| g.right_vertex(b) == v && g.left_vertex(b) != v).collect();
    let n_basis: Vec<usize> = (0..g.dim()).filter(|&b| g.left_vertex(b) == v && g.right_vertex(b) != v).collect();
    let locate = |basis: &[usize], p: &[(usize, Scalar)]| -> Result<Vec<Scalar>> {
        let mut out = f.zeros(basis.len());
        for (k, c) in p {
            let i = basis
                .iter()
                .position(|b| b == k)
                .ok_or_else(|| Error::Internal("product leaves the expected corner".into()))?;
            out[i] = c.clone();
        }
        Ok(out)
    };
    let mut m_actions = Vec::with_capacity(a.dim());
    let mut n_actions = Vec::with_capacity(a.dim());
    for &x in &inclusion {
        let cols = m_basis.iter().map(|&m| locate(&m_basis, g.product(x, m))).collect::<Result<Vec<_>>>()?;
        m_actions.push(Matrix::from_columns(f, m_basis.len(), &cols));
        let cols = n_basis.iter().map(|&n| locate(&n_basis, g.product(n, x))).collect::<Result<Vec<_>>>()?;
        n_actions.push(Matrix::from_columns(f, n_basis.len(), &cols));
    }
    let m = Module::new(a.clone(), Side::Left, m_actions)?;
    let n = Module::new(a.clone(), Side::Right, n_actions)?;
    let mut phi_cols = Vec::with_capacity(m_basis.len() * n_basis.len());
    for &x in &m_basis {
        for &y in &n_basis {
            phi_cols.push(locate(&inclusion, g.product(x, y))?);
        }
    }
    let phi = Matrix::from_columns(f, a.dim(), &phi_cols);
    let data = ExtensionData {
        algebra: a,
        m,
        n,
        phi,
        m_labels: m_basis.iter().map(|&b| g.label(b).to_string()).collect(),
        n_labels: n_basis.iter().map(|&b| g.label(b).to_string()).collect(),
        vertex_label: g.vertex_labels()[v].clone(),
    };
    Ok((data, inclusion))
}

/// Everything checked when a vertex is peeled.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PeelCertificate {
    pub vertex: String,
    pub dim_gamma: usize,
    pub dim_a: usize,
    pub dim_m: usize,
    pub dim_n: usize,
    /// `φ` on the labelled bases, one row per `m ⊗ n`, as `(m, n, φ(m⊗n))`.
    pub phi: Vec<(String, String, String)>,
    pub extension: ExtensionValidation,
    /// `dim ΓeΓ`.
    pub ideal_dim: usize,
    /// `Γe ⊗_k eΓ → ΓeΓ` is bijective.
    pub multiplication_bijective: bool,
    pub hereditary: HereditaryCertificate,
    pub homological: Verdict,
    pub quotient_dim: usize,
    /// `Γ/ΓeΓ ≅ A/Im φ` through the map induced by the corner inclusion.
    pub quotient_identified: bool,
    pub passed: bool,
}

/// Certificates for the idempotent `e_v` of `Γ`.
pub fn gamma_certificates(gamma: &Arc<Algebra>, v: usize, bound: usize) -> Result<PeelCertificate> {
    let (data, inclusion) = extension_at(gamma, v)?;
    let g = gamma;
    let f = g.field();
    let extension = validate_extension(&data);
    let ideal = g.vertex_ideal(&[v]);
    // multiplication Γe ⊗ eΓ → Γ
    let left: Vec<usize> = (0..g.dim()).filter(|&b| g.right_vertex(b) == v).collect();
    let right: Vec<usize> = (0..g.dim()).filter(|&b| g.left_vertex(b) == v).collect();
    let mut cols = Vec::with_capacity(left.len() * right.len());
    for &x in &left {
        for &y in &right {
            cols.push(sparse::to_dense(f, g.dim(), g.product(x, y)));
        }
    }
    let products = Matrix::from_columns(f, g.dim(), &cols);
    let multiplication_bijective = products.rank() == left.len() * right.len() && ideal.dim() == left.len() * right.len();
    let hereditary = is_hereditary_ideal(g, &ideal)?;
    let homological = is_homological_ideal(g, &ideal, bound)?.verdict;
    let (quotient, projection) = g.quotient(&ideal)?;
    let quotient_identified = identify_quotient(&data, &inclusion, &projection).is_ok();
    let phi = phi_table(&data);
    let passed = extension.passed()
        && multiplication_bijective
        && hereditary.passed
        && homological == Verdict::Yes
        && quotient_identified
        && g.dim() == data.algebra.dim() + data.m.dim() + data.n.dim() + 1
        && ideal.dim() == (data.m.dim() + 1) * (data.n.dim() + 1);
    Ok(PeelCertificate {
        vertex: g.vertex_labels()[v].clone(),
        dim_gamma: g.dim(),
        dim_a: data.algebra.dim(),
        dim_m: data.m.dim(),
        dim_n: data.n.dim(),
        phi,
        extension,
        ideal_dim: ideal.dim(),
        multiplication_bijective,
        hereditary,
        homological,
        quotient_dim: quotient.dim(),
        quotient_identified,
        passed,
    })
}

fn phi_table(d: &ExtensionData) -> Vec<(String, String, String)> {
    let mut out = Vec::new();
    for (i, ml) in d.m_labels.iter().enumerate() {
        for (j, nl) in d.n_labels.iter().enumerate() {
            let v = d.phi.column(i * d.n.dim() + j);
            out.push((ml.clone(), nl.clone(), d.algebra.format_element(&v)));
        }
    }
    out
}

/// The map `A/Im φ → Γ/ΓeΓ` induced by `A ⊆ Γ`, checked to be an algebra
/// isomorphism.
fn identify_quotient(d: &ExtensionData, inclusion: &[usize], projection: &AlgebraMorphism) -> Result<AlgebraMorphism> {
    let a = &d.algebra;
    let image = a.ideal(d.image())?;
    let (reduced, to_reduced) = a.quotient(&image)?;
    let target = &projection.target;
    let f = a.field();
    let mut cols = Vec::with_capacity(reduced.dim());
    for k in 0..reduced.dim() {
        // a representative in A of the k-th basis element of A/Im φ
        let rep = to_reduced
            .matrix
            .solve(&f.unit_vector(reduced.dim(), k))
            .ok_or_else(|| Error::Internal("quotient map is not onto".into()))?;
        let mut in_gamma = f.zeros(projection.source.dim());
        for (i, c) in rep.into_iter().enumerate() {
            in_gamma[inclusion[i]] = c;
        }
        cols.push(projection.apply(&in_gamma));
    }
    let morphism = AlgebraMorphism {
        source: reduced,
        target: target.clone(),
        matrix: Matrix::from_columns(f, target.dim(), &cols),
    };
    morphism.verify().map_err(Error::Internal)?;
    if !morphism.is_bijective() {
        return Err(Error::Internal("A/Im phi and the quotient have different dimensions".into()));
    }
    Ok(morphism)
}

#[derive(Clone, Debug)]
pub struct Peel {
    pub data: ExtensionData,
    pub quotient: Arc<Algebra>,
    pub projection: AlgebraMorphism,
    pub certificate: PeelCertificate,
}

/// Peels vertex `v`: requires `e_v Γ e_v = k` and valid extension data.
pub fn peel(gamma: &Arc<Algebra>, v: usize, bound: usize) -> Result<Peel> {
    let (data, _) = extension_at(gamma, v)?;
    let check = validate_extension(&data);
    if !check.passed() {
        return Err(Error::NotApplicable(format!(
            "extension data at {} fails: {}",
            gamma.vertex_labels()[v],
            check.failures.join("; ")
        )));
    }
    let certificate = gamma_certificates(gamma, v, bound)?;
    let (quotient, projection) = gamma.quotient(&gamma.vertex_ideal(&[v]))?;
    Ok(Peel {
        data,
        quotient,
        projection,
        certificate,
    })
}

/// Peels the listed vertices (by label) one after another.
pub fn peel_chain(gamma: &Arc<Algebra>, vertices: &[&str], bound: usize) -> Result<(Arc<Algebra>, Vec<Peel>)> {
    let mut current = gamma.clone();
    let mut steps = Vec::with_capacity(vertices.len());
    for label in vertices {
        let v = current
            .vertex_index(label)
            .ok_or_else(|| Error::InvalidArgument(format!("no vertex named {label}")))?;
        let step = peel(&current, v, bound)?;
        current = step.quotient.clone();
        steps.push(step);
    }
    Ok((current, steps))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::{parse_presentation, PathAlgebra};

    fn algebra(text: &str) -> Arc<Algebra> {
        PathAlgebra::build(&parse_presentation(text).unwrap()).unwrap().algebra().clone()
    }

    const DUAL: &str = "vertices v\narrow x: v -> v\nrelation x x\nnilpotency 2\n";

    #[test]
    fn product_of_fields() {
        let k = algebra("vertices v\nnilpotency 1\n");
        let z = |side| Module::zero(&k, side);
        let d = ExtensionData::new(k.clone(), z(Side::Left), z(Side::Right), Matrix::zeros(k.field(), 1, 0));
        assert!(validate_extension(&d).passed());
        let g = build_gamma(&d).unwrap();
        assert_eq!(g.algebra.dim(), 2);
        assert_eq!(g.algebra.num_vertices(), 2);
        assert!(g.algebra.radical_basis().is_empty());
    }

    #[test]
    fn one_point_extension_of_dual_numbers() {
        let a = algebra(DUAL);
        let s = Module::simple(&a, 0, Side::Left).unwrap();
        let d = ExtensionData::new(a.clone(), s, Module::zero(&a, Side::Right), Matrix::zeros(a.field(), 2, 0));
        let g = build_gamma(&d).unwrap();
        assert_eq!(g.algebra.dim(), 4);
        let cert = gamma_certificates(&g.algebra, g.vertex, 10).unwrap();
        assert!(cert.passed, "{cert:?}");
        assert_eq!(cert.ideal_dim, 2);
        assert_eq!(cert.quotient_dim, 2);
    }

    #[test]
    fn zero_phi_fails_injectivity_only() {
        let a = algebra("vertices 1, 2\narrow a: 1 -> 2\nnilpotency 2\n");
        // M = S_2 (left), N = S_1 (right), phi(m⊗n) = a
        let m = Module::simple(&a, 1, Side::Left).unwrap();
        let n = Module::simple(&a, 0, Side::Right).unwrap();
        let f = a.field();
        let arrow = a.basis_index("a").unwrap();
        let phi = Matrix::from_columns(f, a.dim(), &[a.basis_vector(arrow)]);
        let good = ExtensionData::new(a.clone(), m.clone(), n.clone(), phi);
        assert!(validate_extension(&good).passed(), "{:?}", validate_extension(&good));
        let g = build_gamma(&good).unwrap();
        let (back, _) = extension_at(&g.algebra, g.vertex).unwrap();
        assert_eq!(back.phi, good.phi);
        let bad = ExtensionData::new(a.clone(), m, n, Matrix::zeros(f, a.dim(), 1));
        let v = validate_extension(&bad);
        assert!(!v.injective && v.bimodule_hom && v.kills_m && v.kills_n);
        assert_eq!(v.failures.len(), 1);
    }

    #[test]
    fn peeling_the_only_vertex_is_rejected() {
        let a = algebra(DUAL);
        assert!(matches!(peel(&a, 0, 5), Err(Error::NotApplicable(_))));
    }
}
