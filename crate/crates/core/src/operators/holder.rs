use alloc::vec::Vec;
use core::f64::consts::{FRAC_PI_3, FRAC_PI_6};

use super::s::{schatten_s_using, Extender, SOptions, SWeights};
use super::t::{schatten_t_pair, TOptions};
use super::SchattenResult;
use crate::error::{Error, Result};
use crate::numerics::Half;

const WINDOW_SLACK: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NormKind {
    S,
    T,
}

impl NormKind {
    /// Hölder exponent `1/4 - 5/(2q)` for `S`, `1/2 - 2/p` for `T`.
    pub fn exponent(self, q: f64) -> f64 {
        match self {
            NormKind::S => 0.25 - 2.5 / q,
            NormKind::T => 0.5 - 2.0 / q,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HolderPoint {
    pub theta1: f64,
    pub theta2: f64,
    pub delta: f64,
    pub value: f64,
    pub tail: f64,
    pub lmax: Half,
    pub certified: bool,
    /// Last two truncation levels agree to `1e-6` relative.
    pub converged: bool,
    pub ratio: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SkipReason {
    ZeroSeparation,
    OutsideWindow,
}

#[derive(Clone, Debug, PartialEq)]
pub struct HolderFit {
    pub kind: NormKind,
    pub q: f64,
    pub exponent_expected: f64,
    pub max_ratio: f64,
    pub min_ratio: f64,
    pub points: Vec<HolderPoint>,
    pub skipped: Vec<(f64, f64, SkipReason)>,
}

impl HolderFit {
    pub fn spread(&self) -> f64 {
        self.max_ratio / self.min_ratio
    }
}

fn accept(partial: Result<SchattenResult>) -> Result<SchattenResult> {
    match partial {
        Err(Error::TruncationFailure { partial }) => Ok(partial),
        other => other,
    }
}

/// Schatten norm of each grid pair divided by `|theta1 - theta2|^exponent`.
///
/// Pairs whose tail cannot be certified contribute their truncated value with
/// `certified = false`. For `T` only `theta1` in `[pi/6, pi/3]` is used.
pub fn holder_fit(
    kind: NormKind,
    q: f64,
    grid: &[(f64, f64)],
    s_opts: &SOptions,
    t_opts: &TOptions,
) -> Result<HolderFit> {
    holder_fit_with(kind, q, grid, &mut SWeights::empty(q), s_opts, t_opts)
}

/// As [`holder_fit`], reusing and extending `weights` for the `S` norm.
/// `weights` must have exponent `q`; it is ignored for `T`.
pub fn holder_fit_with(
    kind: NormKind,
    q: f64,
    grid: &[(f64, f64)],
    weights: &mut SWeights,
    s_opts: &SOptions,
    t_opts: &TOptions,
) -> Result<HolderFit> {
    holder_fit_using(kind, q, grid, weights, s_opts, t_opts, &mut |w, l| {
        w.extend(l)
    })
}

/// As [`holder_fit_with`], growing `weights` through `extend`.
pub fn holder_fit_using(
    kind: NormKind,
    q: f64,
    grid: &[(f64, f64)],
    weights: &mut SWeights,
    s_opts: &SOptions,
    t_opts: &TOptions,
    extend: Extender<'_>,
) -> Result<HolderFit> {
    if grid.is_empty() {
        return Err(Error::EmptyGrid);
    }
    let exponent = kind.exponent(q);
    let mut points = Vec::with_capacity(grid.len());
    let mut skipped = Vec::new();
    let mut k_s = None;
    for &(theta1, theta2) in grid {
        let delta = libm::fabs(theta1 - theta2);
        if delta == 0.0 {
            skipped.push((theta1, theta2, SkipReason::ZeroSeparation));
            continue;
        }
        let (r, converged) = match kind {
            NormKind::T => {
                if !(FRAC_PI_6 - WINDOW_SLACK..=FRAC_PI_3 + WINDOW_SLACK).contains(&theta1) {
                    skipped.push((theta1, theta2, SkipReason::OutsideWindow));
                    continue;
                }
                let r = accept(schatten_t_pair(q, theta1, theta2, t_opts))?;
                (r, r.certified)
            }
            NormKind::S => {
                if !(q > 4.0) {
                    return Err(Error::InvalidExponent { value: q, min: 4.0 });
                }
                if weights.q() != q {
                    return Err(Error::InvalidParameter {
                        name: "weights.q",
                        value: weights.q(),
                    });
                }
                let k = *k_s.get_or_insert_with(|| s_opts.envelope_k());
                let w = &mut *weights;
                let r = accept(schatten_s_using(w, theta1, theta2, k, s_opts, &mut *extend))?;
                let converged = match w.level_of(r.lmax) {
                    Some(top) if top > 0 => {
                        let hi = libm::pow(w.pow_sum(theta1, theta2, top), 1.0 / q);
                        let lo = libm::pow(w.pow_sum(theta1, theta2, top - 1), 1.0 / q);
                        hi - lo <= 1e-6 * hi
                    }
                    _ => false,
                };
                (r, converged)
            }
        };
        points.push(HolderPoint {
            theta1,
            theta2,
            delta,
            value: r.value,
            tail: r.tail,
            lmax: r.lmax,
            certified: r.certified,
            converged,
            ratio: r.value / libm::pow(delta, exponent),
        });
    }
    if points.is_empty() {
        return Err(Error::EmptyGrid);
    }
    let max_ratio = points
        .iter()
        .map(|p| p.ratio)
        .fold(f64::NEG_INFINITY, f64::max);
    let min_ratio = points.iter().map(|p| p.ratio).fold(f64::INFINITY, f64::min);
    Ok(HolderFit {
        kind,
        q,
        exponent_expected: exponent,
        max_ratio,
        min_ratio,
        points,
        skipped,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use core::f64::consts::FRAC_PI_4;

    #[test]
    fn exponents() {
        assert_eq!(NormKind::S.exponent(20.0), 0.125);
        assert_eq!(NormKind::T.exponent(8.0), 0.25);
    }

    #[test]
    fn skips_and_window() {
        let grid = vec![(0.6, 0.6), (0.1, FRAC_PI_4), (0.7, FRAC_PI_4)];
        let t_opts = TOptions {
            cap: 4096,
            ..TOptions::default()
        };
        let fit = holder_fit(NormKind::T, 8.0, &grid, &SOptions::default(), &t_opts).unwrap();
        assert_eq!(fit.points.len(), 1);
        assert_eq!(fit.skipped.len(), 2);
        assert!(fit.max_ratio.is_finite() && fit.max_ratio > 0.0);
        assert!(matches!(
            holder_fit(NormKind::T, 8.0, &[], &SOptions::default(), &t_opts),
            Err(Error::EmptyGrid)
        ));
    }
}
