//! Property tests over arbitrary inputs (the seeded invariant sweeps live in
//! the unit tests next to each module).

use proptest::prelude::*;

use spaceform::contact::{canonical_structure, gssf_curvature, tf_split, SpaceFormParams};
use spaceform::frame::{orthonormalize, project, Metric, Vector};

fn vec_strategy(d: usize) -> impl Strategy<Value = Vector> {
    prop::collection::vec(-5.0f64..5.0, d).prop_map(Vector::from_vec)
}

proptest! {
    #[test]
    fn orthonormalize_output_is_orthonormal(
        vs in prop::collection::vec(vec_strategy(5), 1..6)
    ) {
        let g = Metric::identity(5);
        if let Ok(basis) = orthonormalize(&vs, &g, 1e-8) {
            for (i, a) in basis.iter().enumerate() {
                for (j, b) in basis.iter().enumerate() {
                    let want = if i == j { 1.0 } else { 0.0 };
                    prop_assert!((g.inner(a, b) - want).abs() <= 1e-10);
                }
            }
        }
    }

    #[test]
    fn projection_is_idempotent_and_contractive(
        vs in prop::collection::vec(vec_strategy(6), 1..4),
        x in vec_strategy(6)
    ) {
        let g = Metric::identity(6);
        if let Ok(basis) = orthonormalize(&vs, &g, 1e-8) {
            let p = project(&x, &basis, &g).unwrap();
            let pp = project(&p, &basis, &g).unwrap();
            prop_assert!((&pp - &p).norm() <= 1e-12);
            prop_assert!(g.norm(&p) <= g.norm(&x) + 1e-12);
        }
    }

    #[test]
    fn curvature_is_antisymmetric_and_trilinear(
        f1 in -2.0f64..2.0, f2 in -2.0f64..2.0, f3 in -2.0f64..2.0,
        x in vec_strategy(7), y in vec_strategy(7), z in vec_strategy(7),
        a in -3.0f64..3.0
    ) {
        let acs = canonical_structure(3).unwrap();
        let params = SpaceFormParams::new(f1, f2, f3);
        let rxy = gssf_curvature(&acs, &params, &x, &y, &z).unwrap();
        let ryx = gssf_curvature(&acs, &params, &y, &x, &z).unwrap();
        prop_assert!((&rxy + &ryx).norm() <= 1e-10 * (1.0 + rxy.norm()));
        let scaled = gssf_curvature(&acs, &params, &(&x * a), &y, &z).unwrap();
        prop_assert!((&scaled - &rxy * a).norm() <= 1e-9 * (1.0 + scaled.norm()));
    }

    #[test]
    fn tf_split_is_pythagorean(
        coeffs in prop::collection::vec(-2.0f64..2.0, 3)
    ) {
        let acs = canonical_structure(2).unwrap();
        let e = |i: usize| acs.basis_vector(i);
        let basis = vec![e(0), e(1), acs.xi.clone()];
        let mut x = Vector::zeros(5);
        for (c, b) in coeffs.iter().zip(&basis) {
            x += b * *c;
        }
        let (t, f) = tf_split(&acs, &basis, &x).unwrap();
        let phix = acs.phi_apply(&x);
        prop_assert!((acs.inner(&phix, &phix) - acs.inner(&t, &t) - acs.inner(&f, &f)).abs() <= 1e-12);
        prop_assert!(acs.inner(&t, &f).abs() <= 1e-12);
    }
}
