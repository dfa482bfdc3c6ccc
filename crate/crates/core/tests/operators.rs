use proptest::prelude::*;
use sptwo_core::numerics::{legendre, Half};
use sptwo_core::operators::{
    holder_fit, s_operator_norm, s_tail, schatten_s, schatten_s_truncated, schatten_t_pair,
    t_eigenvalue, t_eigenvalue_fast, t_operator_norm, NormKind, SOptions, SWeights, TOptions,
};
use sptwo_core::Error;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn t_spectrum_is_legendre(n in 0usize..40, theta in 0.0f64..3.2) {
        let x = (2.0 * theta).cos();
        let slow = t_eigenvalue(n, theta).unwrap();
        prop_assert!((slow - legendre(n, x).unwrap()).abs() < 1e-10);
        prop_assert!((t_eigenvalue_fast(n, theta) - slow).abs() < 1e-10);
    }

    #[test]
    fn truncated_s_norm_decreases_in_q(t1 in 0.0f64..3.0, t2 in 0.0f64..3.0, q in 5.0f64..30.0) {
        prop_assume!((t1 - t2).abs() > 1e-3);
        let lmax = Half::from_int(40);
        let a = schatten_s_truncated(q, t1, t2, lmax);
        let b = schatten_s_truncated(q + 3.0, t1, t2, lmax);
        prop_assert!(b <= a * (1.0 + 1e-12));
    }

    #[test]
    fn s_tail_decreases(q in 10.5f64..60.0, l in 1.0f64..1e5) {
        let a = s_tail(q, 1.1, l);
        prop_assert!(s_tail(q, 1.1, 2.0 * l) <= a);
        prop_assert!(a.is_finite() && a > 0.0);
    }
}

#[test]
fn t_norm_decreases_in_p() {
    let opts = TOptions::default();
    for (t1, t2) in [(0.6, 0.9), (0.55, 0.785), (1.0, 0.785)] {
        let mut last = f64::INFINITY;
        for p in [5.0, 6.0, 8.0, 12.0, 16.0] {
            let r = match schatten_t_pair(p, t1, t2, &opts) {
                Ok(r) => r,
                Err(Error::TruncationFailure { partial }) => partial,
                Err(e) => panic!("{e}"),
            };
            assert_eq!(r.certified, p >= 12.0, "p={p}");
            assert!(r.value <= last * (1.0 + 1e-9));
            last = r.value;
        }
        let sup = t_operator_norm(t1, t2, 200, &opts);
        assert!(sup.value <= last * (1.0 + 1e-9));
    }
}

#[test]
fn low_exponents_are_rejected() {
    let opts = SOptions {
        envelope_constant: Some(1.0),
        ..SOptions::default()
    };
    assert!(matches!(
        schatten_s(4.0, 0.0, 1.0, &opts),
        Err(Error::InvalidExponent { .. })
    ));
    assert!(matches!(
        schatten_t_pair(2.0, 0.6, 0.7, &TOptions::default()),
        Err(Error::InvalidExponent { .. })
    ));
    let r = schatten_t_pair(
        4.0,
        0.6,
        0.7,
        &TOptions {
            cap: 4096,
            ..TOptions::default()
        },
    )
    .unwrap();
    assert!(r.warning.is_some() && !r.certified);
    let r = schatten_s(
        8.0,
        0.0,
        1.0,
        &SOptions {
            sum_cap: Half::from_int(64),
            cap: Half::from_int(64),
            ..opts
        },
    )
    .unwrap();
    assert!(r.warning.is_some() && !r.certified);
}

#[test]
fn extension_matches_direct_build() {
    let levels = SWeights::ladder(Half::from_int(4), Half::from_int(50));
    let direct = SWeights::build(13.0, levels.clone());
    let mut staged = SWeights::build(13.0, levels[..2].to_vec());
    staged.extend(&levels[2..]).unwrap();
    let mut blocked = SWeights::empty(13.0);
    let mut blocks = blocked.take_blocks(&levels, 7).unwrap();
    assert!(blocks.len() > 1);
    for b in blocks.iter_mut().rev() {
        b.advance();
    }
    blocked.merge(blocks).unwrap();
    for k in 0..levels.len() {
        let a = direct.pow_sum(0.3, 1.4, k);
        assert_eq!(a, staged.pow_sum(0.3, 1.4, k));
        assert_eq!(a, blocked.pow_sum(0.3, 1.4, k));
    }
    assert!(staged.extend(&[10]).is_err());
}

#[test]
fn operator_norm_lower_bound() {
    let k = 1.1;
    for t in [0.1, 0.7, 1.3] {
        let r = s_operator_norm(0.0, t, Half::from_int(32), k).unwrap();
        let bound = 2.0 * (0.5 * t).sin().abs() / std::f64::consts::SQRT_2;
        assert!(r.value + 1e-8 >= bound);
    }
}

#[test]
fn holder_fit_t_window() {
    let grid: Vec<(f64, f64)> = (0..6)
        .map(|i| {
            (
                std::f64::consts::FRAC_PI_6 + 0.1 * i as f64,
                std::f64::consts::FRAC_PI_4,
            )
        })
        .collect();
    for p in [6.0, 12.0] {
        let fit = holder_fit(
            NormKind::T,
            p,
            &grid,
            &SOptions::default(),
            &TOptions::default(),
        )
        .unwrap();
        assert_eq!(fit.exponent_expected, 0.5 - 2.0 / p);
        assert_eq!(fit.points.iter().all(|pt| pt.certified), p == 12.0);
        assert!(fit.spread() >= 1.0 && fit.spread() < 10.0);
    }
}
