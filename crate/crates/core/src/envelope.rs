//! Decay-rate arithmetic: `P(s)`, its smallest root `s_-`, and the envelope
//! `eps(g)` on the Weyl chamber and on the universal cover.

use crate::error::{Error, Result};
use crate::quasimorphism::{cover_kak, phi, CoverElement};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EnvelopeWarning {
    /// `s1 > 1` or `s2 > 1`, impossible for a nonzero space.
    ExponentAboveOne,
}

/// Exponents `s1, s2`, working exponent `s < s_-(s1, s2)`, cover rate `kappa`
/// and the growth constant `l`, which never enters `eps`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EnvelopeParams {
    s1: f64,
    s2: f64,
    s: f64,
    kappa: f64,
    l: f64,
}

impl EnvelopeParams {
    pub fn new(s1: f64, s2: f64, s: f64, kappa: f64) -> Result<Self> {
        if !(s1 > 0.0) || !s1.is_finite() {
            return Err(Error::InvalidParameter {
                name: "s1",
                value: s1,
            });
        }
        if !(s2 > 0.0) || !s2.is_finite() {
            return Err(Error::InvalidParameter {
                name: "s2",
                value: s2,
            });
        }
        if !(s >= 0.0) || !(s < s_minus(s1, s2)?) {
            return Err(Error::InvalidParameter {
                name: "s",
                value: s,
            });
        }
        if !(kappa >= 0.0) || !kappa.is_finite() {
            return Err(Error::InvalidParameter {
                name: "kappa",
                value: kappa,
            });
        }
        Ok(EnvelopeParams {
            s1,
            s2,
            s,
            kappa,
            l: 0.0,
        })
    }

    /// Exponents from the operator estimates: `s1 = 1/2 - 2/p` and
    /// `s2 = 1/4 - 5/(2q)`, for `p > 4` and `q > 10`.
    pub fn preset(p: f64, q: f64, s: f64, kappa: f64) -> Result<Self> {
        let (s1, s2) = preset_exponents(p, q)?;
        EnvelopeParams::new(s1, s2, s, kappa)
    }

    pub fn with_growth(mut self, l: f64) -> Self {
        self.l = l;
        self
    }

    pub fn s1(&self) -> f64 {
        self.s1
    }

    pub fn s2(&self) -> f64 {
        self.s2
    }

    pub fn s(&self) -> f64 {
        self.s
    }

    pub fn kappa(&self) -> f64 {
        self.kappa
    }

    pub fn growth(&self) -> f64 {
        self.l
    }

    pub fn warning(&self) -> Option<EnvelopeWarning> {
        if self.s1 > 1.0 || self.s2 > 1.0 {
            Some(EnvelopeWarning::ExponentAboveOne)
        } else {
            None
        }
    }

    /// `c = P(s) / (2 s1 + s2 - s)`, so that `eps <= e^{-c beta}`.
    pub fn rate(&self) -> f64 {
        p_poly(self, self.s) / (2.0 * self.s1 + self.s2 - self.s)
    }

    /// `beta = (s1 + s2 - s) gamma / s1`, where both branches of the max agree.
    pub fn crossover_beta(&self, gamma: f64) -> f64 {
        (self.s1 + self.s2 - self.s) / self.s1 * gamma
    }
}

pub fn preset_exponents(p: f64, q: f64) -> Result<(f64, f64)> {
    if !(p > 4.0) {
        return Err(Error::InvalidExponent { value: p, min: 4.0 });
    }
    if !(q > 10.0) {
        return Err(Error::InvalidExponent {
            value: q,
            min: 10.0,
        });
    }
    Ok((0.5 - 2.0 / p, 0.25 - 2.5 / q))
}

/// `P(s) = s^2 - (2 s1 + s2) s + s1 s2`.
pub fn p_poly(params: &EnvelopeParams, s: f64) -> f64 {
    s * s - (2.0 * params.s1 + params.s2) * s + params.s1 * params.s2
}

/// `s_-(s1, s2) = s1 + s2/2 - sqrt(s1^2 + s2^2/4)`, computed in the
/// cancellation-free form `s1 s2 / (s1 + s2/2 + sqrt(s1^2 + s2^2/4))`.
pub fn s_minus(s1: f64, s2: f64) -> Result<f64> {
    if !(s1 > 0.0) {
        return Err(Error::InvalidParameter {
            name: "s1",
            value: s1,
        });
    }
    if !(s2 > 0.0) {
        return Err(Error::InvalidParameter {
            name: "s2",
            value: s2,
        });
    }
    let root = libm::sqrt(s1 * s1 + 0.25 * s2 * s2);
    Ok(s1 * s2 / (s1 + 0.5 * s2 + root))
}

/// `exp(-P(s) max(beta/(s1+s2-s), (beta+gamma)/(2 s1+s2-s)))`.
pub fn epsilon(params: &EnvelopeParams, beta: f64, gamma: f64) -> Result<f64> {
    if !(gamma >= 0.0) || !(beta >= gamma) {
        return Err(Error::NotInWeylChamber { beta, gamma });
    }
    let a = beta / (params.s1 + params.s2 - params.s);
    let b = (beta + gamma) / (2.0 * params.s1 + params.s2 - params.s);
    Ok(libm::exp(-p_poly(params, params.s) * f64::max(a, b)))
}

/// `eps(beta, gamma) e^{kappa |Phi(x)|}` at the KAK coordinates of `x`.
pub fn epsilon_cover(params: &EnvelopeParams, x: &CoverElement) -> Result<f64> {
    let k = cover_kak(x)?;
    Ok(epsilon(params, k.beta, k.gamma)? * libm::exp(params.kappa * libm::fabs(phi(x))))
}
