use alloc::vec::Vec;
use core::f64::consts::FRAC_PI_4;

use super::{SchattenResult, Warning};
use crate::error::{Error, Result};
use crate::numerics::{tail_bound, Complex, Half};
use crate::wigner::so2_invariant_vector;

/// `<pi_n(d_theta) w_n, w_n>` with `w_n` the SO(2)-invariant unit vector.
pub fn t_eigenvalue(n: usize, theta: f64) -> Result<f64> {
    Ok(t_eigenvalues(n, &[theta])?[0])
}

/// [`t_eigenvalue`] at each angle, building `w_n` once.
pub fn t_eigenvalues(n: usize, thetas: &[f64]) -> Result<Vec<f64>> {
    let ell = Half::from_int(n as i64);
    let w = so2_invariant_vector(ell)?;
    thetas
        .iter()
        .map(|&theta| {
            let mut acc = Complex::new(0.0, 0.0);
            for (i, wi) in w.iter().enumerate() {
                let p = i as f64 - n as f64;
                acc += Complex::from_polar(wi.norm_sqr(), -2.0 * p * theta);
            }
            if libm::fabs(acc.im) > 1e-10 {
                return Err(Error::ImaginaryResidue {
                    residue: libm::fabs(acc.im),
                });
            }
            Ok(acc.re)
        })
        .collect()
}

/// The same eigenvalue through its Legendre form `P_n(cos 2 theta)`.
pub fn t_eigenvalue_fast(n: usize, theta: f64) -> f64 {
    let x = libm::cos(2.0 * theta).clamp(-1.0, 1.0);
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return 1.0;
    }
    for k in 1..n {
        let k = k as f64;
        let p2 = ((2.0 * k + 1.0) * x * p1 - k * p0) / (k + 1.0);
        p0 = p1;
        p1 = p2;
    }
    p1
}

/// Spectrum of `T_theta`: eigenvalue `lambda_n(theta)` with multiplicity `2n+1`.
#[derive(Clone, Copy, Debug, Default)]
pub struct SpectralModelT;

impl SpectralModelT {
    pub fn eigenvalue(&self, n: usize, theta: f64) -> Result<f64> {
        t_eigenvalue(n, theta)
    }

    pub fn multiplicity(&self, n: usize) -> usize {
        2 * n + 1
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TOptions {
    /// Required `tail <= rel_target * value^p`.
    pub rel_target: f64,
    /// Largest degree summed before giving up.
    pub cap: usize,
    /// Degrees used to fit the decay constant `K` in `|lambda_n| <= K n^{-1/2}`.
    pub fit_n: usize,
    pub safety: f64,
    /// Degrees scanned in operator-norm mode.
    pub op_nmax: usize,
}

impl Default for TOptions {
    fn default() -> Self {
        TOptions {
            rel_target: 1e-8,
            cap: 100_000,
            fit_n: 2000,
            safety: 1.1,
            op_nmax: 200,
        }
    }
}

/// `max_{1 <= n <= fit_n} sqrt(n) |P_n(cos 2 theta)|`.
pub fn t_envelope_constant(theta: f64, fit_n: usize) -> f64 {
    let x = libm::cos(2.0 * theta).clamp(-1.0, 1.0);
    let mut p0 = 1.0;
    let mut p1 = x;
    let mut best = libm::fabs(x);
    for k in 1..fit_n {
        let kf = k as f64;
        let p2 = ((2.0 * kf + 1.0) * x * p1 - kf * p0) / (kf + 1.0);
        p0 = p1;
        p1 = p2;
        best = f64::max(best, libm::sqrt(kf + 1.0) * libm::fabs(p1));
    }
    best
}

/// Bound on `sum_{n > nmax} (2n+1) |lambda_n(t1) - lambda_n(t2)|^p` given
/// `|lambda_n(t1) - lambda_n(t2)| <= k n^{-1/2}`.
pub fn t_tail(p: f64, k: f64, nmax: usize) -> f64 {
    match tail_bound(0.5 * p - 1.0, nmax.max(1) as f64) {
        Ok(tb) => 3.0 * libm::pow(k, p) * tb.bound,
        Err(_) => f64::INFINITY,
    }
}

/// `||T_theta - T_{pi/4}||_{S^p}`.
pub fn schatten_t(p: f64, theta: f64, opts: &TOptions) -> Result<SchattenResult> {
    schatten_t_pair(p, theta, FRAC_PI_4, opts)
}

/// `||T_theta1 - T_theta2||_{S^p}` with a certified tail; `p = inf` gives the operator norm.
pub fn schatten_t_pair(
    p: f64,
    theta1: f64,
    theta2: f64,
    opts: &TOptions,
) -> Result<SchattenResult> {
    if p == f64::INFINITY {
        return Ok(t_operator_norm(theta1, theta2, opts.op_nmax, opts));
    }
    if !(p > 2.0) {
        return Err(Error::InvalidExponent { value: p, min: 2.0 });
    }
    let warning = if p > 4.0 {
        None
    } else {
        Some(Warning::ExponentBelowRange)
    };
    let x1 = libm::cos(2.0 * theta1).clamp(-1.0, 1.0);
    let x2 = libm::cos(2.0 * theta2).clamp(-1.0, 1.0);
    if x1 == x2 {
        return Ok(SchattenResult::zero(p));
    }
    let k = opts.safety
        * (t_envelope_constant(theta1, opts.fit_n) + t_envelope_constant(theta2, opts.fit_n));
    let mut a0 = 1.0;
    let mut a1 = x1;
    let mut b0 = 1.0;
    let mut b1 = x2;
    let mut sum = 3.0 * libm::pow(libm::fabs(x1 - x2), p);
    let mut checkpoint = 1024usize;
    let mut partial = SchattenResult::zero(p);
    for n in 1..opts.cap {
        let nf = n as f64;
        let a2 = ((2.0 * nf + 1.0) * x1 * a1 - nf * a0) / (nf + 1.0);
        let b2 = ((2.0 * nf + 1.0) * x2 * b1 - nf * b0) / (nf + 1.0);
        a0 = a1;
        a1 = a2;
        b0 = b1;
        b1 = b2;
        sum += (2.0 * nf + 3.0) * libm::pow(libm::fabs(a1 - b1), p);
        let deg = n + 1;
        if deg == checkpoint || deg == opts.cap {
            let tail = t_tail(p, k, deg);
            partial = SchattenResult {
                q: p,
                value: libm::pow(sum, 1.0 / p),
                lmax: Half::from_int(deg as i64),
                tail,
                certified: tail <= opts.rel_target * sum,
                warning,
            };
            if partial.certified {
                return Ok(partial);
            }
            checkpoint *= 2;
        }
    }
    if warning.is_some() {
        Ok(partial)
    } else {
        Err(Error::TruncationFailure { partial })
    }
}

/// `sup_n |lambda_n(t1) - lambda_n(t2)|` over `n <= nmax`; `tail` bounds all `n > nmax`.
pub fn t_operator_norm(theta1: f64, theta2: f64, nmax: usize, opts: &TOptions) -> SchattenResult {
    let x1 = libm::cos(2.0 * theta1).clamp(-1.0, 1.0);
    let x2 = libm::cos(2.0 * theta2).clamp(-1.0, 1.0);
    let mut a0 = 1.0;
    let mut a1 = x1;
    let mut b0 = 1.0;
    let mut b1 = x2;
    let mut best = if nmax >= 1 { libm::fabs(x1 - x2) } else { 0.0 };
    for n in 1..nmax {
        let nf = n as f64;
        let a2 = ((2.0 * nf + 1.0) * x1 * a1 - nf * a0) / (nf + 1.0);
        let b2 = ((2.0 * nf + 1.0) * x2 * b1 - nf * b0) / (nf + 1.0);
        a0 = a1;
        a1 = a2;
        b0 = b1;
        b1 = b2;
        best = f64::max(best, libm::fabs(a1 - b1));
    }
    let k = opts.safety
        * (t_envelope_constant(theta1, opts.fit_n) + t_envelope_constant(theta2, opts.fit_n));
    let tail = f64::min(2.0, k / libm::sqrt(nmax as f64 + 1.0));
    SchattenResult {
        q: f64::INFINITY,
        value: best,
        lmax: Half::from_int(nmax as i64),
        tail,
        certified: tail <= best,
        warning: None,
    }
}
