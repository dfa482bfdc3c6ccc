use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sptwo_core::envelope::{
    epsilon, epsilon_cover, p_poly, preset_exponents, s_minus, EnvelopeParams,
};
use sptwo_core::quasimorphism::{phi, random_cover};
use sptwo_core::Error;

fn params() -> impl Strategy<Value = EnvelopeParams> {
    (0.01f64..1.0, 0.01f64..1.0, 0.0f64..0.999, 0.0f64..1.0).prop_map(|(s1, s2, frac, kappa)| {
        let s = frac * s_minus(s1, s2).unwrap();
        EnvelopeParams::new(s1, s2, s, kappa).unwrap()
    })
}

fn chamber() -> impl Strategy<Value = (f64, f64)> {
    (0.0f64..20.0, 0.0f64..1.0).prop_map(|(b, f)| (b, f * b))
}

proptest! {
    #[test]
    fn root_is_smallest(s1 in 0.001f64..2.0, s2 in 0.001f64..2.0) {
        let sm = s_minus(s1, s2).unwrap();
        let p = EnvelopeParams::new(s1, s2, 0.0, 0.0).unwrap();
        prop_assert!(p_poly(&p, sm).abs() < 1e-12 * (1.0 + s1 * s2));
        prop_assert!(sm > 0.0 && sm <= s1.min(s2));
        prop_assert!(p_poly(&p, 0.5 * sm) > 0.0);
    }

    #[test]
    fn epsilon_monotone(p in params(), (b, g) in chamber(), db in 0.0f64..5.0, dg in 0.0f64..1.0) {
        let base = epsilon(&p, b, g).unwrap();
        prop_assert!((0.0..=1.0).contains(&base));
        prop_assert!(epsilon(&p, b + db, g).unwrap() <= base);
        let g2 = (g + dg).min(b);
        prop_assert!(epsilon(&p, b, g2).unwrap() <= base);
    }

    #[test]
    fn epsilon_below_rate_bound(p in params(), (b, g) in chamber()) {
        let bound = (-p.rate() * b).exp();
        prop_assert!(epsilon(&p, b, g).unwrap() <= bound * (1.0 + 1e-12));
    }

    #[test]
    fn cover_envelope_factorizes(p in params(), seed in any::<u64>()) {
        let x = random_cover(&mut ChaCha8Rng::seed_from_u64(seed));
        let e = epsilon_cover(&p, &x).unwrap();
        prop_assert!(e > 0.0);
        prop_assert!(e <= (p.kappa() * phi(&x).abs()).exp() * (1.0 + 1e-12));
    }
}

#[test]
fn presets() {
    let (s1, s2) = preset_exponents(8.0, 20.0).unwrap();
    assert_eq!((s1, s2), (0.25, 0.125));
    assert!(matches!(
        preset_exponents(4.0, 20.0),
        Err(Error::InvalidExponent { .. })
    ));
    assert!(matches!(
        preset_exponents(8.0, 10.0),
        Err(Error::InvalidExponent { .. })
    ));
    let p = EnvelopeParams::preset(8.0, 20.0, 0.05, 0.0)
        .unwrap()
        .with_growth(3.0);
    assert_eq!(p.growth(), 3.0);
    assert!(p.warning().is_none());
    assert!(matches!(
        epsilon(&p, 1.0, 1.5),
        Err(Error::NotInWeylChamber { .. })
    ));
}

#[test]
fn p_poly_positive_below_root() {
    for (s1, s2) in [
        (0.05, 0.01),
        (0.25, 0.125),
        (0.5, 0.5),
        (1.0, 0.2),
        (0.1, 0.9),
    ] {
        let sm = s_minus(s1, s2).unwrap();
        let p = EnvelopeParams::new(s1, s2, 0.0, 0.0).unwrap();
        for i in 0..1000 {
            let s = sm * i as f64 / 1000.0;
            assert!(p_poly(&p, s) > 0.0, "s1={s1} s2={s2} s={s}");
        }
    }
}
