use std::f64::consts::PI;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sptwo_core::numerics::Complex;
use sptwo_core::quasimorphism::{
    circle_c, cover_inv, cover_kak, cover_mul, defect, eta, phi, random_base, random_cover,
    v_tilde, CoverElement,
};
use sptwo_core::symplectic::v;

fn wrap(x: f64) -> f64 {
    let y = (x + PI).rem_euclid(2.0 * PI) - PI;
    if y <= -PI {
        y + 2.0 * PI
    } else {
        y
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn cocycle_identity(seed in any::<u64>()) {
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let (a, b, c) = (random_base(&mut r), random_base(&mut r), random_base(&mut r));
        let lhs = eta(&a, &b).unwrap().value + eta(&(a * b), &c).unwrap().value;
        let rhs = eta(&b, &c).unwrap().value + eta(&a, &(b * c)).unwrap().value;
        prop_assert!(wrap(lhs - rhs).abs() < 1e-8);
    }

    #[test]
    fn cover_is_associative(seed in any::<u64>()) {
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let (x, y, z) = (random_cover(&mut r), random_cover(&mut r), random_cover(&mut r));
        let left = cover_mul(&cover_mul(&x, &y).unwrap(), &z).unwrap();
        let right = cover_mul(&x, &cover_mul(&y, &z).unwrap()).unwrap();
        prop_assert!((left.t() - right.t()).abs() < 1e-7);
        prop_assert!(left.g().distance(right.g()) < 1e-7 * left.g().frobenius());
    }

    #[test]
    fn inverse_and_identity(seed in any::<u64>()) {
        let x = random_cover(&mut ChaCha8Rng::seed_from_u64(seed));
        let e = cover_mul(&x, &cover_inv(&x).unwrap()).unwrap();
        prop_assert!(e.t().abs() < 1e-7);
        let same = cover_mul(&CoverElement::IDENTITY, &x).unwrap();
        prop_assert_eq!(same.t(), x.t());
    }

    #[test]
    fn quasi_morphism_defect(seed in any::<u64>()) {
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let (x, y) = (random_cover(&mut r), random_cover(&mut r));
        prop_assert!(defect(&x, &y).unwrap().abs() < PI / 2.0);
    }

    #[test]
    fn elements_are_consistent(seed in any::<u64>()) {
        let x = random_cover(&mut ChaCha8Rng::seed_from_u64(seed));
        let c = circle_c(x.g()).unwrap();
        prop_assert!((c - Complex::from_polar(1.0, x.t())).norm() < 1e-8);
        prop_assert!(CoverElement::new(*x.g(), x.t() + 2.0 * PI).is_ok());
        let k = cover_kak(&x).unwrap();
        prop_assert!((k.t + k.s - phi(&x)).abs() < 1e-12);
    }

    #[test]
    fn phi_is_additive_on_v(s in -10.0f64..10.0, t in -10.0f64..10.0) {
        let xy = cover_mul(&v_tilde(s), &v_tilde(t)).unwrap();
        prop_assert!((phi(&xy) - (s + t)).abs() < 1e-9);
        prop_assert!((circle_c(&v(s)).unwrap() - Complex::from_polar(1.0, 2.0 * s)).norm() < 1e-12);
    }
}
