use core::f64::consts::{FRAC_PI_4, SQRT_2};

use super::{d_matrix, iota_su2, w, SpMatrix};
use crate::error::{Error, Result};
use crate::su2::{r, u};

/// `[[a, -c], [c, d]] = r_phi diag(lambda, mu) r_phi`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SL2Polar {
    pub phi: f64,
    pub lambda: f64,
    pub mu: f64,
}

impl SL2Polar {
    /// `r_phi diag(lambda, mu) r_phi` as `[[a, b], [c, d]]`.
    pub fn reconstruct(&self) -> [[f64; 2]; 2] {
        let (s, c) = (libm::sin(self.phi), libm::cos(self.phi));
        let (l, m) = (self.lambda, self.mu);
        [
            [l * c * c - m * s * s, -(l + m) * c * s],
            [(l + m) * c * s, m * c * c - l * s * s],
        ]
    }
}

/// Solves `lambda mu = ad + c^2`, `lambda - mu = a - d`, `tan 2 phi = 2c/(a+d)`
/// with `phi = +-pi/4` when `a = d = 0`.
pub fn sl2_polar(a: f64, c: f64, d: f64) -> Result<SL2Polar> {
    if !(a >= 0.0) {
        return Err(Error::NegativeEntry {
            name: "a",
            value: a,
        });
    }
    if !(d >= 0.0) {
        return Err(Error::NegativeEntry {
            name: "d",
            value: d,
        });
    }
    let sum = libm::hypot(a + d, 2.0 * c);
    let lambda = 0.5 * (sum + (a - d));
    let mu = 0.5 * (sum - (a - d));
    let phi = if a + d == 0.0 {
        if c >= 0.0 {
            FRAC_PI_4
        } else {
            -FRAC_PI_4
        }
    } else {
        0.5 * libm::atan2(2.0 * c, a + d)
    };
    Ok(SL2Polar {
        phi,
        lambda: lambda.max(0.0),
        mu: mu.max(0.0),
    })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct So2Prediction {
    pub beta: f64,
    pub gamma: f64,
    pub phi: f64,
    pub phi_prime: f64,
}

impl So2Prediction {
    /// `w_{phi, phi'} D(beta, gamma) w_{phi, phi'}`.
    pub fn product(&self) -> SpMatrix {
        let k = w(self.phi, self.phi_prime);
        k * d_matrix(self.beta, self.gamma) * k
    }
}

/// `D(alpha, alpha) w_{theta, pi/2 - theta} D(alpha, alpha)`.
pub fn so2_target(alpha: f64, theta: f64) -> SpMatrix {
    let a = d_matrix(alpha, alpha);
    a * w(theta, core::f64::consts::FRAC_PI_2 - theta) * a
}

/// Closed-form factorization of [`so2_target`]. `gamma` may exceed `beta`
/// (for `theta > pi/4`); the Weyl-chamber pair is their sorted version.
pub fn structural_so2_predict(alpha: f64, theta: f64) -> So2Prediction {
    let s2 = libm::sinh(2.0 * alpha);
    let c2 = libm::cosh(2.0 * alpha);
    let (st, ct) = (libm::sin(theta), libm::cos(theta));
    So2Prediction {
        beta: libm::asinh(s2 * ct),
        gamma: libm::asinh(s2 * st),
        phi: 0.5 * libm::atan2(st, ct * c2),
        phi_prime: 0.5 * libm::atan2(ct, st * c2),
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct U1Prediction {
    pub beta: f64,
    pub gamma: f64,
    pub phi: f64,
    pub omega1: f64,
    pub omega2: f64,
}

impl U1Prediction {
    /// `iota(r_phi) w_{omega1, omega2} D(beta, gamma) w_{omega1, omega2} iota(r_phi)`.
    pub fn product(&self) -> SpMatrix {
        let rp = iota_su2(&r(self.phi));
        let k = w(self.omega1, self.omega2);
        rp * k * d_matrix(self.beta, self.gamma) * k * rp
    }
}

/// `D(alpha, 0) iota(u_theta) D(alpha, 0)`.
pub fn u1_target(alpha: f64, theta: f64) -> SpMatrix {
    let a = d_matrix(alpha, 0.0);
    a * iota_su2(&u(theta)) * a
}

/// Closed-form factorization of [`u1_target`].
///
/// `sinh beta` and `sinh gamma` are the roots of `x^2 - delta x - P` shifted
/// to `x - y = delta`, `x y = P`, with `delta = sinh(2 alpha) cos(theta) / sqrt 2`
/// and `P = sinh(alpha)^2 / 2`.
pub fn structural_u1_predict(alpha: f64, theta: f64) -> U1Prediction {
    let delta = libm::sinh(2.0 * alpha) * libm::cos(theta) / SQRT_2;
    let p = 0.5 * libm::sinh(alpha) * libm::sinh(alpha);
    let root = delta + libm::sqrt(delta * delta + 4.0 * p);
    let x = 0.5 * root;
    let y = if root > 0.0 { 2.0 * p / root } else { 0.0 };
    let beta = libm::asinh(x);
    let gamma = libm::asinh(y);
    let st = libm::sin(theta);
    U1Prediction {
        beta,
        gamma,
        phi: 0.5 * libm::atan2(1.0, libm::cosh(alpha) * libm::cos(theta)),
        omega1: 0.5 * libm::asin(st / (SQRT_2 * libm::cosh(beta))),
        omega2: -0.5 * libm::asin(st / (SQRT_2 * libm::cosh(gamma))),
    }
}

/// `Y = [[sinh(2 alpha) cos theta, -sinh alpha], [sinh alpha, 0]]`, for which
/// `(X - X^{-T}) / 2 = [[Y, 0], [0, -Y]] / sqrt 2` when `X` is [`u1_target`].
pub fn u1_y_block(alpha: f64, theta: f64) -> [[f64; 2]; 2] {
    let sa = libm::sinh(alpha);
    [[libm::sinh(2.0 * alpha) * libm::cos(theta), -sa], [sa, 0.0]]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symplectic::kak;

    #[test]
    fn polar_examples() {
        let p = sl2_polar(1.0, 0.0, 1.0).unwrap();
        assert_eq!((p.phi, p.lambda, p.mu), (0.0, 1.0, 1.0));
        let p = sl2_polar(0.0, 1.0, 0.0).unwrap();
        assert!(
            (p.phi - FRAC_PI_4).abs() < 1e-15
                && (p.lambda - 1.0).abs() < 1e-15
                && (p.mu - 1.0).abs() < 1e-15
        );
        assert!(sl2_polar(-1.0, 0.0, 1.0).is_err());
        let (a, c, d) = (2.0, -0.7, 0.3);
        let m = sl2_polar(a, c, d).unwrap().reconstruct();
        for (x, y) in m.iter().flatten().zip([a, -c, c, d]) {
            assert!((x - y).abs() < 1e-14);
        }
    }

    #[test]
    fn conjugated_rotation_polar() {
        let (alpha, theta) = (1.0f64, 0.4f64);
        let (e, ei) = (libm::exp(alpha), libm::exp(-alpha));
        let (s, c) = (libm::sin(theta), libm::cos(theta));
        let m = [[e * c * e, -e * s * ei], [ei * s * e, ei * c * ei]];
        let p = sl2_polar(m[0][0], m[1][0], m[1][1]).unwrap();
        let beta = libm::log(p.lambda);
        assert!((p.lambda * p.mu - 1.0).abs() < 1e-13);
        assert!((libm::sinh(beta) - libm::sinh(2.0 * alpha) * c).abs() < 1e-12);
        assert!(
            (libm::tan(2.0 * p.phi) - libm::tan(theta) / libm::cosh(2.0 * alpha)).abs() < 1e-12
        );
    }

    #[test]
    fn so2_examples() {
        let p = structural_so2_predict(0.8, 0.0);
        assert_eq!(p.gamma, 0.0);
        assert!((p.beta - libm::asinh(libm::sinh(1.6))).abs() < 1e-15);
        assert_eq!(p.phi, 0.0);
        assert!((p.phi_prime - FRAC_PI_4).abs() < 1e-15);
        let p = structural_so2_predict(1.0, FRAC_PI_4);
        assert!((p.beta - p.gamma).abs() < 1e-14);
        assert!(p.product().distance(&so2_target(1.0, FRAC_PI_4)) < 1e-9);
        let k = kak(&so2_target(1.0, 0.3)).unwrap();
        let p = structural_so2_predict(1.0, 0.3);
        assert!((k.beta - p.beta).abs() < 1e-8 && (k.gamma - p.gamma).abs() < 1e-8);
    }

    #[test]
    fn u1_examples() {
        let p = structural_u1_predict(0.9, 0.0);
        assert_eq!((p.omega1, p.omega2), (0.0, 0.0));
        let d = libm::sinh(p.beta) - libm::sinh(p.gamma);
        assert!((d - libm::sinh(1.8) / SQRT_2).abs() < 1e-13);
        let p = structural_u1_predict(0.9, core::f64::consts::FRAC_PI_2);
        let v = libm::sinh(0.9) / SQRT_2;
        assert!((libm::sinh(p.beta) - v).abs() < 1e-13 && (libm::sinh(p.gamma) - v).abs() < 1e-13);
        let p = structural_u1_predict(1.0, FRAC_PI_4);
        assert!(p.product().distance(&u1_target(1.0, FRAC_PI_4)) < 1e-9);
    }
}
