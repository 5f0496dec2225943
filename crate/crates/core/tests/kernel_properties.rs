mod common;

use common::*;
use nalgebra::Vector3;
use proptest::prelude::*;
use proptest::test_runner::RngSeed;
use symplectic_lie::lie::{orthogonality_defect, Abelian};
use symplectic_lie::{AlgebraVector, CoVector, LieGroup, So3};

fn vec3(scale: f64) -> impl Strategy<Value = Vector3<f64>> {
    prop::array::uniform3(-scale..scale).prop_map(Vector3::from)
}

/// Nonzero vectors whose norm is log-uniform in `[lo, hi]`.
fn vec3_norm(lo: f64, hi: f64) -> impl Strategy<Value = Vector3<f64>> {
    (vec3(1.0).prop_filter("nonzero", |v| v.norm() > 1e-3), 0.0..1.0f64)
        .prop_map(move |(v, s)| v.normalize() * (lo.ln() + s * (hi / lo).ln()).exp())
}

proptest! {
    #![proptest_config(ProptestConfig {
        cases: 1000,
        rng_seed: RngSeed::Fixed(0x5eed),
        failure_persistence: None,
        ..ProptestConfig::default()
    })]

    #[test]
    fn bracket_is_antisymmetric_and_satisfies_jacobi(x in vec3(2.0), y in vec3(2.0), z in vec3(2.0)) {
        let (x, y, z) = (AlgebraVector(x), AlgebraVector(y), AlgebraVector(z));
        prop_assert!(antisymmetry_residual(&x, &y) < 1e-15);
        prop_assert!(jacobi_residual(&x, &y, &z) < 1e-14);
    }

    #[test]
    fn coalgebra_maps_are_dual(w in vec3_norm(1e-3, 3.0), x in vec3_norm(1e-6, 3.0), y in vec3(1.0), mu in vec3(1.0)) {
        let g = So3::exp(&AlgebraVector(w));
        let res = pairing_residual(&g, &AlgebraVector(x), &AlgebraVector(y), &CoVector(mu));
        prop_assert!(res < 1e-14, "{res:e}");
    }

    #[test]
    fn dexp_composed_with_dexpinv_is_adjoint(x in vec3_norm(1e-6, 3.0), y in vec3(1.0)) {
        let res = dexp_adjoint_residual(&AlgebraVector(x), &AlgebraVector(y));
        prop_assert!(res < 1e-13, "{res:e}");
    }

    #[test]
    fn closed_forms_match_series(x in vec3_norm(1e-6, 1.0), y in vec3(1.0)) {
        let res = series_residual(&AlgebraVector(x), &AlgebraVector(y));
        prop_assert!(res < 1e-13, "{res:e}");
    }

    #[test]
    fn truncation_remainder_has_order_r_plus_one(x in vec3_norm(0.3, 0.5), y in vec3(1.0), r in 0usize..=6) {
        prop_assume!(x.normalize().cross(&y).norm() > 0.1);
        let p = truncation_order(&AlgebraVector(x), &AlgebraVector(y), r);
        prop_assert!(p >= r as f64 + 1.0 - 0.25, "r = {r}: observed order {p}");
    }

    #[test]
    fn exp_is_orthogonal_and_log_inverts_it(x in vec3_norm(1e-8, 3.0)) {
        let g = So3::exp(&AlgebraVector(x));
        prop_assert!(orthogonality_defect(&g) < 1e-14);
        prop_assert!((g.determinant() - 1.0).abs() < 1e-14);
        let back = So3::log(&g).unwrap();
        prop_assert!((back.0 - x).amax() < 1e-12 * (1.0 + x.norm()));
    }

    #[test]
    fn adjoint_is_a_homomorphism(a in vec3_norm(1e-3, 3.0), b in vec3_norm(1e-3, 3.0), x in vec3(1.0), y in vec3(1.0)) {
        let (g, h) = (So3::exp(&AlgebraVector(a)), So3::exp(&AlgebraVector(b)));
        let (x, y) = (AlgebraVector(x), AlgebraVector(y));
        let gh = So3::compose(&g, &h);
        prop_assert!((So3::adjoint(&gh, &x) - So3::adjoint(&g, &So3::adjoint(&h, &x))).norm_inf() < 1e-14);
        let lhs = So3::adjoint(&g, &So3::bracket(&x, &y));
        let rhs = So3::bracket(&So3::adjoint(&g, &x), &So3::adjoint(&g, &y));
        prop_assert!((lhs - rhs).norm_inf() < 1e-14);
    }

    #[test]
    fn abelian_kernels_are_trivial(x in vec3(5.0), y in vec3(5.0), mu in vec3(5.0)) {
        type A = Abelian<3>;
        let (x, y, mu) = (AlgebraVector(x), AlgebraVector(y), CoVector(mu));
        prop_assert_eq!(A::bracket(&x, &y), AlgebraVector::zeros());
        prop_assert_eq!(A::ad_star(&x, &mu), CoVector::zeros());
        prop_assert_eq!(A::dexp(&x, &y), y);
        prop_assert_eq!(A::dexpinv(&x, &y).unwrap(), y);
        prop_assert_eq!(A::compose(&A::exp(&x), &A::exp(&y)), A::exp(&(x + y)));
    }
}
