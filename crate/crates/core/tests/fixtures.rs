use std::sync::Arc;

use singequiv_core::linalg::FieldSpec;
use singequiv_core::module::{min_resolution, syzygy_dims, tor_range, tor_range_resolving_left, Module, Side};
use singequiv_core::quiver::{parse_presentation, PathAlgebra};
use singequiv_core::Algebra;

const FIXTURES: &[(&str, &str, usize)] = &[
    ("dual", include_str!("../../../fixtures/dual.qa"), 2),
    ("a2", include_str!("../../../fixtures/a2.qa"), 3),
    ("e31", include_str!("../../../fixtures/e31.qa"), 9),
    ("e31_quotient", include_str!("../../../fixtures/e31_quotient.qa"), 5),
    ("e32", include_str!("../../../fixtures/e32.qa"), 11),
    ("e32_final", include_str!("../../../fixtures/e32_final.qa"), 3),
    ("e33_r2_base", include_str!("../../../fixtures/e33_r2_base.qa"), 18),
];

fn build(text: &str, field: FieldSpec) -> Arc<Algebra> {
    let p = parse_presentation(text).unwrap().with_field(field).unwrap();
    PathAlgebra::build(&p).unwrap().algebra().clone()
}

/// Associativity on every basis triple, multiplying dense vectors directly.
fn associative(a: &Algebra) -> bool {
    let n = a.dim();
    (0..n).all(|i| {
        (0..n).all(|j| {
            let ij = a.multiply(&a.basis_vector(i), &a.basis_vector(j)).unwrap();
            (0..n).all(|k| {
                let jk = a.multiply(&a.basis_vector(j), &a.basis_vector(k)).unwrap();
                a.multiply(&ij, &a.basis_vector(k)).unwrap() == a.multiply(&a.basis_vector(i), &jk).unwrap()
            })
        })
    })
}

#[test]
fn fixtures_build_with_expected_dimensions() {
    for &(name, text, dim) in FIXTURES {
        let a = build(text, FieldSpec::Rationals);
        assert_eq!(a.dim(), dim, "{name}");
        a.validate().unwrap();
        assert!(associative(&a), "{name}");
        let unit = a.unit();
        for i in 0..a.dim() {
            assert_eq!(a.multiply(&unit, &a.basis_vector(i)).unwrap(), a.basis_vector(i), "{name}");
        }
    }
}

#[test]
fn opposite_is_an_involution_on_dimensions() {
    for &(name, text, _) in FIXTURES {
        let a = build(text, FieldSpec::Rationals);
        let op = a.opposite();
        assert_eq!(op.dim(), a.dim(), "{name}");
        assert!(associative(&op), "{name}");
        for v in 0..a.num_vertices() {
            let left = Module::projective(&a, v, Side::Left).unwrap();
            let right_op = Module::projective(&op, v, Side::Right).unwrap();
            assert_eq!(left.dim(), right_op.dim(), "{name} P{v}");
        }
    }
}

#[test]
fn tor_is_balanced_on_simples() {
    for &(name, text, _) in FIXTURES {
        let a = build(text, FieldSpec::Rationals);
        let max = if a.dim() > 10 { 3 } else { 5 };
        for u in 0..a.num_vertices() {
            let x = Module::simple(&a, u, Side::Right).unwrap();
            for v in 0..a.num_vertices() {
                let y = Module::simple(&a, v, Side::Left).unwrap();
                let right = tor_range(&x, &y, max).unwrap();
                let left = tor_range_resolving_left(&x, &y, max).unwrap();
                assert_eq!(right, left, "{name}: Tor(S{u}, S{v})");
                // Tor_0(S_u, S_v) is k exactly when u = v
                assert_eq!(right[0], usize::from(u == v), "{name}");
            }
        }
    }
}

#[test]
fn resolutions_satisfy_invariants() {
    for &(name, text, _) in FIXTURES {
        let a = build(text, FieldSpec::Rationals);
        for side in [Side::Left, Side::Right] {
            for v in 0..a.num_vertices() {
                for m in [Module::simple(&a, v, side).unwrap(), Module::injective(&a, v, side).unwrap()] {
                    let res = min_resolution(&m, 4);
                    let check = res.check();
                    assert!(check.all(), "{name} {side:?} {v}: {check:?}");
                }
            }
        }
    }
}

#[test]
fn prime_field_agrees_with_rationals() {
    // all fixture relations have coefficients +-1, so nothing depends on the characteristic
    for &(name, text, dim) in FIXTURES {
        let q = build(text, FieldSpec::Rationals);
        let f2 = build(text, FieldSpec::Prime(2));
        assert_eq!(f2.dim(), dim, "{name}");
        for v in 0..q.num_vertices() {
            let sq = Module::simple(&q, v, Side::Left).unwrap();
            let s2 = Module::simple(&f2, v, Side::Left).unwrap();
            assert_eq!(syzygy_dims(&sq, 4), syzygy_dims(&s2, 4), "{name} S{v}");
        }
    }
}

#[test]
fn dual_numbers_have_periodic_tor() {
    let a = build(FIXTURES[0].1, FieldSpec::Rationals);
    let s = Module::simple(&a, 0, Side::Left).unwrap();
    let sr = Module::simple(&a, 0, Side::Right).unwrap();
    assert_eq!(tor_range(&sr, &s, 5).unwrap(), vec![1; 6]);
    assert_eq!(syzygy_dims(&s, 5), vec![1; 6]);
}
