use alloc::vec::Vec;
use core::f64::consts::PI;

use super::quadrature::adaptive_simpson;
use crate::error::{Error, Result};

/// Bound on `sum_{k in (u + Z), k > x} k^{-alpha}`, uniform in the offset `u`.
///
/// The first term is at most `x^{-alpha}` and the rest at most
/// `x^{1-alpha} / (alpha - 1)`. For `x >= 1` the total is bounded by
/// `alpha / (alpha - 1) x^{1-alpha}`, which is what is returned; below 1 the
/// first term can exceed `x^{1-alpha}` and `x^{-alpha}` is kept instead.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TailBound {
    pub alpha: f64,
    pub x: f64,
    pub bound: f64,
}

pub fn tail_bound(alpha: f64, x: f64) -> Result<TailBound> {
    if !(alpha > 1.0) {
        return Err(Error::DivergentTail { alpha });
    }
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::OutOfDomain {
            what: "x",
            value: x,
        });
    }
    let rest = libm::pow(x, 1.0 - alpha);
    let first = if x >= 1.0 { rest } else { libm::pow(x, -alpha) };
    let bound = first + rest / (alpha - 1.0);
    Ok(TailBound { alpha, x, bound })
}

const RIDGE_TOL: f64 = 1e-10;
const RIDGE_PANELS: usize = 64;

/// `I(u,v) sqrt((|u+v|+1)(|u-v|+1))` with `I(u,v) = (1/pi) int_0^pi exp(-(u - v cos s)^2) ds`.
pub fn gaussian_ridge_ratio(u: f64, v: f64) -> f64 {
    gaussian_ridge_integral(u, v)
        * libm::sqrt((libm::fabs(u + v) + 1.0) * (libm::fabs(u - v) + 1.0))
}

/// `(1/pi) int_0^pi exp(-(u - v cos s)^2) ds` to absolute accuracy `1e-10`.
pub fn gaussian_ridge_integral(u: f64, v: f64) -> f64 {
    let f = |s: f64| {
        let d = u - v * libm::cos(s);
        libm::exp(-d * d)
    };
    let mut cuts: Vec<f64> = (0..=RIDGE_PANELS)
        .map(|k| PI * k as f64 / RIDGE_PANELS as f64)
        .collect();
    if v != 0.0 && libm::fabs(u / v) < 1.0 {
        cuts.push(libm::acos(u / v));
        cuts.sort_by(|a, b| a.partial_cmp(b).unwrap_or(core::cmp::Ordering::Equal));
    }
    let tol = RIDGE_TOL * PI / cuts.len() as f64;
    let total: f64 = cuts
        .windows(2)
        .filter(|w| w[1] > w[0])
        .map(|w| adaptive_simpson(&f, w[0], w[1], tol))
        .sum();
    total / PI
}

/// Supremum of [`gaussian_ridge_ratio`] over the grid `{0, step, ..., max}^2`.
pub fn ridge_sup(max: f64, step: f64) -> (f64, f64, f64) {
    let n = libm::round(max / step) as usize;
    let mut best = (0.0, 0.0, f64::NEG_INFINITY);
    for i in 0..=n {
        for j in 0..=n {
            let u = i as f64 * step;
            let v = j as f64 * step;
            let r = gaussian_ridge_ratio(u, v);
            if r > best.2 {
                best = (u, v, r);
            }
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tail_examples() {
        assert_eq!(tail_bound(2.0, 1.0).unwrap().bound, 2.0);
        assert!((tail_bound(3.0, 10.0).unwrap().bound - 0.015).abs() < 1e-16);
        assert!(matches!(
            tail_bound(1.0, 1.0),
            Err(Error::DivergentTail { .. })
        ));
        assert!(tail_bound(2.0, 0.0).is_err());
        let direct: f64 = (11..200_000).map(|k| libm::pow(k as f64, -3.0)).sum();
        assert!(direct <= 0.015);
    }

    #[test]
    fn ridge_examples() {
        assert!((gaussian_ridge_ratio(0.0, 0.0) - 1.0).abs() < 1e-12);
        for (u, v) in [(0.5, 3.0), (5.0, 5.0), (7.5, 2.0), (20.0, 35.5)] {
            let r = gaussian_ridge_ratio(u, v);
            assert!((r - gaussian_ridge_ratio(-u, -v)).abs() < 1e-9);
            assert!((r - gaussian_ridge_ratio(u, -v)).abs() < 1e-9);
        }
    }

    #[test]
    fn ridge_integral_against_bessel_series() {
        // u = 0: I = e^{-v^2/2} I_0(v^2/2)
        let v: f64 = 1.7;
        let z = v * v / 2.0;
        let mut term = 1.0;
        let mut i0 = 1.0;
        for k in 1..60 {
            term *= (z / 2.0) * (z / 2.0) / (k as f64 * k as f64);
            i0 += term;
        }
        let expected = libm::exp(-z) * i0;
        assert!((gaussian_ridge_integral(0.0, v) - expected).abs() < 1e-10);
    }
}
