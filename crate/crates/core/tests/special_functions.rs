use proptest::prelude::*;
use sptwo_core::numerics::{
    circle_quadrature, gauss_legendre, jacobi, jacobi_zero_scaled, legendre, legendre_sequence,
    tail_bound, Complex, Half, JacobiZero,
};

proptest! {
    #[test]
    fn legendre_is_bounded(n in 0usize..400, x in -1.0f64..=1.0) {
        let v = legendre(n, x).unwrap();
        prop_assert!(v.abs() <= 1.0 + 1e-12);
    }

    #[test]
    fn legendre_matches_jacobi(n in 0usize..60, x in -1.0f64..=1.0) {
        let a = legendre(n, x).unwrap();
        let b = jacobi(n, 0.0, 0.0, x);
        prop_assert!((a - b).abs() < 1e-12);
    }

    #[test]
    fn legendre_sequence_agrees(n in 0usize..120, x in -1.0f64..=1.0) {
        let seq = legendre_sequence(n, x).unwrap();
        prop_assert_eq!(seq.len(), n + 1);
        prop_assert!((seq[n] - legendre(n, x).unwrap()).abs() < 1e-13);
    }

    #[test]
    fn circle_quadrature_is_exact(nodes in 1usize..40, k in -39i32..40, phase in 0.0f64..6.3) {
        prop_assume!((k.unsigned_abs() as usize) < nodes);
        let got = circle_quadrature(|t| Complex::from_polar(1.0, k as f64 * t + phase), nodes).unwrap();
        let expected = if k == 0 { Complex::from_polar(1.0, phase) } else { Complex::new(0.0, 0.0) };
        prop_assert!((got - expected).norm() < 1e-12);
    }

    #[test]
    fn tail_bound_dominates(alpha in 1.1f64..6.0, x in 0.1f64..100.0, offset in 0.0f64..1.0) {
        let b = tail_bound(alpha, x).unwrap().bound;
        let start = (x - offset).floor() as i64 + 1;
        let direct: f64 = (start..start + 200_000).map(|k| (k as f64 + offset).powf(-alpha)).sum();
        prop_assert!(direct <= b, "{direct} > {b}");
    }

    #[test]
    fn scaled_jacobi_matches_direct(b2 in 0u32..40, n in 0usize..30) {
        let mut got = f64::NAN;
        jacobi_zero_scaled(b2, n, |k, v| if k == n { got = v });
        let direct = jacobi(n, 0.0, b2 as f64, 0.0) * 2f64.powf(-0.5 * b2 as f64);
        prop_assert!((got - direct).abs() <= 1e-11 * direct.abs().max(1e-3));
    }

    #[test]
    fn half_round_trip(t in -10_000i64..10_000) {
        let h = Half::from_twice(t);
        prop_assert_eq!(h.to_string().parse::<Half>().unwrap(), h);
        prop_assert_eq!(Half::from_f64(h.to_f64()), Some(h));
    }
}

#[test]
fn streaming_recurrence_survives_rescaling() {
    let mut it = JacobiZero::new(6000);
    let mut last = 0.0;
    for _ in 0..5000 {
        last = it.next_value();
        assert!(last.is_finite());
    }
    assert_eq!(it.degree(), 5000);
    assert!(last.abs() < 1.0);
}

#[test]
fn gauss_legendre_rules() {
    for n in 1..30 {
        let rule = gauss_legendre(n);
        let total: f64 = rule.iter().map(|(_, w)| w).sum();
        assert!((total - 2.0).abs() < 1e-13);
        for deg in 0..2 * n {
            let got: f64 = rule.iter().map(|(x, w)| w * x.powi(deg as i32)).sum();
            let exact = if deg % 2 == 1 {
                0.0
            } else {
                2.0 / (deg as f64 + 1.0)
            };
            assert!((got - exact).abs() < 1e-12, "n={n} deg={deg}");
        }
    }
}

#[test]
fn tail_bound_rejects_divergent() {
    assert!(tail_bound(1.0, 3.0).is_err());
    assert!(tail_bound(0.5, 3.0).is_err());
    assert!(tail_bound(2.0, -1.0).is_err());
}

#[test]
fn tail_bound_below_one() {
    let (alpha, x) = (6.0f64, 0.5f64);
    let first = 0.5001f64.powf(-alpha);
    let closed_form = alpha / (alpha - 1.0) * x.powf(1.0 - alpha);
    assert!(first > closed_form);
    let b = tail_bound(alpha, x).unwrap().bound;
    let direct: f64 = (0..200_000).map(|k| (0.5001 + k as f64).powf(-alpha)).sum();
    assert!(direct <= b);
    assert_eq!(tail_bound(2.0, 1.0).unwrap().bound, 2.0);
    assert!((tail_bound(3.0, 10.0).unwrap().bound - 1.5e-2).abs() < 1e-17);
}
