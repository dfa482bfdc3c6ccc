use std::f64::consts::{FRAC_PI_2, SQRT_2};

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sptwo_core::numerics::{max_abs4, sub4, transpose4};
use sptwo_core::su2::d;
use sptwo_core::symplectic::{
    d_matrix, iota_su2, kak, so2_target, structural_so2_predict, structural_u1_predict, u1_target,
    u1_y_block, v, w, KElement, SpMatrix,
};

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn closure_under_products(seed in any::<u64>()) {
        let mut r = rng(seed);
        let g = SpMatrix::random(&mut r, 2.0);
        let h = SpMatrix::random(&mut r, 2.0);
        let gh = g * h;
        let scale = gh.frobenius().powi(2).max(1.0);
        prop_assert!(gh.defect() <= 1e-10 * scale);
        prop_assert!((g * g.inverse()).distance(&SpMatrix::IDENTITY) < 1e-9 * g.frobenius().powi(2));
        prop_assert!(g.transpose().defect() <= 1e-10 * scale.max(g.frobenius().powi(2)));
    }

    #[test]
    fn unitary_image_is_orthogonal_symplectic(seed in any::<u64>()) {
        let k = KElement::random(&mut rng(seed)).sp();
        prop_assert!(k.defect() < 1e-13);
        prop_assert!(k.transpose().distance(&k.inverse()) < 1e-13);
    }

    #[test]
    fn kak_round_trip(seed in any::<u64>(), bmax in 0.0f64..4.0) {
        let g = SpMatrix::random(&mut rng(seed), bmax);
        let r = kak(&g).unwrap();
        prop_assert!(r.beta >= r.gamma && r.gamma >= 0.0);
        prop_assert!(r.residual(&g) < 1e-8 * g.frobenius().max(1.0));
        let again = kak(&r.reconstruct()).unwrap();
        prop_assert!((again.beta - r.beta).abs() < 1e-9 && (again.gamma - r.gamma).abs() < 1e-9);
    }

    #[test]
    fn kak_is_bi_invariant(seed in any::<u64>()) {
        let mut r = rng(seed);
        let g = SpMatrix::random(&mut r, 2.5);
        let k1 = KElement::random(&mut r).sp();
        let k2 = KElement::random(&mut r).sp();
        let a = kak(&g).unwrap();
        let b = kak(&(k1 * g * k2)).unwrap();
        prop_assert!((a.beta - b.beta).abs() < 1e-9 && (a.gamma - b.gamma).abs() < 1e-9);
    }

    #[test]
    fn w_factorization(a in -3.0f64..3.0, b in -3.0f64..3.0) {
        let rhs = v(0.5 * (a + b)) * iota_su2(&d(0.5 * (a - b)));
        prop_assert!(w(a, b).distance(&rhs) < 1e-13);
    }
}

#[test]
fn y_form_identity() {
    for i in 0..=20 {
        for j in 0..=20 {
            let alpha = 0.1 * i as f64;
            let theta = FRAC_PI_2 * j as f64 / 20.0;
            let x = u1_target(alpha, theta);
            let xit = transpose4(x.inverse().matrix());
            let mut half = sub4(x.matrix(), &xit);
            for e in half.iter_mut().flatten() {
                *e *= 0.5;
            }
            let y = u1_y_block(alpha, theta);
            let mut expected = [[0.0; 4]; 4];
            for r in 0..2 {
                for c in 0..2 {
                    expected[r][c] = y[r][c] / SQRT_2;
                    expected[r + 2][c + 2] = -y[r][c] / SQRT_2;
                }
            }
            assert!(
                max_abs4(&sub4(&half, &expected)) < 1e-12,
                "alpha={alpha} theta={theta}"
            );
        }
    }
}

#[test]
fn structural_predictions_on_grid() {
    for i in 0..20 {
        for j in 0..20 {
            let alpha = 0.05 + 0.1 * i as f64;
            let theta = FRAC_PI_2 * j as f64 / 19.0;
            let so2 = structural_so2_predict(alpha, theta);
            assert!(so2.product().distance(&so2_target(alpha, theta)) < 1e-9);
            let k = kak(&so2_target(alpha, theta)).unwrap();
            let (hi, lo) = (so2.beta.max(so2.gamma), so2.beta.min(so2.gamma));
            assert!((k.beta - hi).abs() < 1e-8 && (k.gamma - lo).abs() < 1e-8);

            let u1 = structural_u1_predict(alpha, theta);
            assert!(u1.product().distance(&u1_target(alpha, theta)) < 1e-9);
            let k = kak(&u1_target(alpha, theta)).unwrap();
            assert!((k.beta - u1.beta).abs() < 1e-8 && (k.gamma - u1.gamma).abs() < 1e-8);
            let prod = u1.beta.sinh() * u1.gamma.sinh();
            assert!((prod - 0.5 * alpha.sinh().powi(2)).abs() < 1e-10 * (1.0 + prod));
        }
    }
}

#[test]
fn diagonal_family() {
    let g = d_matrix(1.0, 0.25) * d_matrix(0.5, 0.25);
    assert!(g.distance(&d_matrix(1.5, 0.5)) < 1e-14);
    let r = kak(&d_matrix(0.3, 1.2)).unwrap();
    assert!((r.beta - 1.2).abs() < 1e-12 && (r.gamma - 0.3).abs() < 1e-12);
}
