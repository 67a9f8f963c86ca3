use proptest::prelude::*;
use singequiv_core::linalg::{FieldSpec, Matrix, Scalar, SparseEchelon, Subspace};

fn field_strategy() -> impl Strategy<Value = FieldSpec> {
    prop_oneof![Just(FieldSpec::Rationals), Just(FieldSpec::Prime(2)), Just(FieldSpec::Prime(5))]
}

fn matrix(field: FieldSpec, rows: &[Vec<i64>]) -> Matrix {
    let cols = rows.first().map_or(0, Vec::len);
    let rows = rows.iter().map(|r| r.iter().map(|&x| field.from_i64(x)).collect()).collect();
    Matrix::from_rows(field, cols, rows)
}

fn entries(max_rows: usize, max_cols: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1..=max_rows, 1..=max_cols)
        .prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-3i64..=3, c), r))
}

fn square(n: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-3i64..=3, n), n)
}

/// Rank by brute force over F2: largest number of linearly independent rows,
/// found by enumerating every subset of rows.
fn rank_f2_bruteforce(rows: &[Vec<i64>]) -> usize {
    let bits: Vec<u32> = rows
        .iter()
        .map(|r| r.iter().enumerate().fold(0u32, |acc, (j, &x)| acc | ((x.rem_euclid(2) as u32) << j)))
        .collect();
    let n = bits.len();
    let mut best = 0;
    for mask in 0u32..(1 << n) {
        let chosen: Vec<u32> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| bits[i]).collect();
        // independent iff no nonempty sub-combination sums to zero
        let k = chosen.len();
        let independent = (1u32..(1 << k)).all(|sub| {
            (0..k).filter(|i| sub >> i & 1 == 1).fold(0, |acc, i| acc ^ chosen[i]) != 0
        });
        if independent {
            best = best.max(k);
        }
    }
    best
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn rank_nullity(field in field_strategy(), rows in entries(5, 6)) {
        let m = matrix(field, &rows);
        let k = m.kernel();
        prop_assert_eq!(m.rank() + k.dim(), m.cols());
        for v in k.basis_vectors() {
            prop_assert!(m.mul_vec(&v).iter().all(Scalar::is_zero));
        }
    }

    #[test]
    fn rank_matches_transpose_and_image(field in field_strategy(), rows in entries(5, 5)) {
        let m = matrix(field, &rows);
        prop_assert_eq!(m.rank(), m.transpose().rank());
        prop_assert_eq!(m.image().dim(), m.rank());
    }

    #[test]
    fn f2_rank_matches_subset_enumeration(rows in entries(5, 5)) {
        let m = matrix(FieldSpec::Prime(2), &rows);
        prop_assert_eq!(m.rank(), rank_f2_bruteforce(&rows));
    }

    #[test]
    fn solve_reproduces_rhs(field in field_strategy(), rows in entries(4, 5), x in prop::collection::vec(-3i64..=3, 5)) {
        let m = matrix(field, &rows);
        let x: Vec<Scalar> = x[..m.cols()].iter().map(|&t| field.from_i64(t)).collect();
        let b = m.mul_vec(&x);
        let y = m.solve(&b).expect("b is in the image by construction");
        prop_assert_eq!(m.mul_vec(&y), b);
    }

    #[test]
    fn product_rank_is_bounded(field in field_strategy(), a in square(4), b in square(4)) {
        let (a, b) = (matrix(field, &a), matrix(field, &b));
        prop_assert!(a.mul(&b).rank() <= a.rank().min(b.rank()));
    }

    #[test]
    fn subspace_dimension_formula(field in field_strategy(), u in entries(3, 5), v in entries(3, 5)) {
        let pad = |rows: &[Vec<i64>]| rows.iter().map(|r| {
            let mut r: Vec<Scalar> = r.iter().map(|&x| field.from_i64(x)).collect();
            r.resize(5, field.zero());
            r
        }).collect::<Vec<_>>();
        let su = Subspace::from_vectors(field, 5, &pad(&u));
        let sv = Subspace::from_vectors(field, 5, &pad(&v));
        let sum = su.sum(&sv);
        let cap = su.intersection(&sv);
        prop_assert_eq!(sum.dim() + cap.dim(), su.dim() + sv.dim());
        prop_assert!(su.contains_subspace(&cap) && sv.contains_subspace(&cap));
        prop_assert!(sum.contains_subspace(&su) && sum.contains_subspace(&sv));
    }

    #[test]
    fn sparse_and_dense_ranks_agree(field in field_strategy(), rows in entries(6, 6)) {
        let m = matrix(field, &rows);
        let mut ech = SparseEchelon::new();
        for r in m.row_vectors() {
            ech.insert(singequiv_core::linalg::sparse::from_dense(&r));
        }
        prop_assert_eq!(ech.rank(), m.rank());
    }
}

#[test]
fn rational_inverse_is_exact() {
    let q = FieldSpec::Rationals;
    let m = Matrix::from_i64(q, &[&[2, 1], &[7, 4]]);
    let cols: Vec<Vec<Scalar>> = (0..2).map(|j| m.solve(&q.unit_vector(2, j)).unwrap()).collect();
    let inv = Matrix::from_columns(q, 2, &cols);
    assert_eq!(m.mul(&inv), Matrix::identity(q, 2));
    assert_eq!(*inv.get(0, 1), q.from_i64(-1));
}
