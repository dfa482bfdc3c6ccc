//! The circle function `c(g)`, the cocycle `eta`, the universal cover of
//! Sp(2,R) as pairs `(g, t)` with `e^{it} = c(g)`, and the quasi-morphism `Phi`.

use core::f64::consts::PI;

use rand::Rng;

use crate::error::{Error, Result};
use crate::numerics::{max_abs4, sub4, transpose4, Complex, Mat4};
use crate::su2::SU2Element;
use crate::symplectic::{d_matrix, det2, iota, iota_su2, kak, v, Mat2c, SpMatrix};

const DEGENERATE_TOL: f64 = 1e-12;
const COVER_TOL: f64 = 1e-8;
const BRANCH_TOL: f64 = 1e-6;

/// `A + D + i(B - C)` for `g = [[A, C], [B, D]]`.
pub fn circle_block(g: &Mat4) -> Mat2c {
    let mut x = [[Complex::new(0.0, 0.0); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            x[i][j] = Complex::new(g[i][j] + g[i + 2][j + 2], g[i + 2][j] - g[i][j + 2]);
        }
    }
    x
}

/// `c(g) = det(A + D + i(B - C)) / |det(A + D + i(B - C))|`.
pub fn circle_c(g: &SpMatrix) -> Result<Complex> {
    let z = det2(&circle_block(g.matrix()));
    let modulus = z.norm();
    if !(modulus > DEGENERATE_TOL) {
        return Err(Error::DegenerateCircle { modulus });
    }
    Ok(z / modulus)
}

/// `max |iota(A + D + i(B - C)) - (g + g^{-T})|`.
pub fn circle_block_defect(g: &SpMatrix) -> f64 {
    let lhs = iota(&circle_block(g.matrix()));
    let inv_t = transpose4(g.inverse().matrix());
    let mut rhs = *g.matrix();
    for (row, add) in rhs.iter_mut().zip(inv_t.iter()) {
        for (x, y) in row.iter_mut().zip(add) {
            *x += y;
        }
    }
    max_abs4(&sub4(&lhs, &rhs))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Eta {
    /// Principal value in `(-pi, pi]`.
    pub value: f64,
    /// `pi - |value| < 1e-6`.
    pub near_branch_cut: bool,
}

/// `arg(c(g1 g2) / (c(g1) c(g2)))`.
pub fn eta(g1: &SpMatrix, g2: &SpMatrix) -> Result<Eta> {
    let c12 = circle_c(&(*g1 * *g2))?;
    let z = c12 * circle_c(g1)?.conj() * circle_c(g2)?.conj();
    let value = z.arg();
    Ok(Eta {
        value,
        near_branch_cut: PI - libm::fabs(value) < BRANCH_TOL,
    })
}

/// `(g, t)` with `e^{it} = c(g)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CoverElement {
    g: SpMatrix,
    t: f64,
}

impl CoverElement {
    pub const IDENTITY: CoverElement = CoverElement {
        g: SpMatrix::IDENTITY,
        t: 0.0,
    };

    pub fn new(g: SpMatrix, t: f64) -> Result<Self> {
        let mismatch = (Complex::from_polar(1.0, t) - circle_c(&g)?).norm();
        if !(mismatch <= COVER_TOL) {
            return Err(Error::InconsistentCover { mismatch });
        }
        Ok(CoverElement { g, t })
    }

    pub fn g(&self) -> &SpMatrix {
        &self.g
    }

    pub fn t(&self) -> f64 {
        self.t
    }
}

/// `(g1 g2, t1 + t2 + eta(g1, g2))`.
pub fn cover_mul(x: &CoverElement, y: &CoverElement) -> Result<CoverElement> {
    let e = eta(&x.g, &y.g)?;
    Ok(CoverElement {
        g: x.g * y.g,
        t: x.t + y.t + e.value,
    })
}

/// `(g^{-1}, -t - eta(g, g^{-1}))`.
pub fn cover_inv(x: &CoverElement) -> Result<CoverElement> {
    let gi = x.g.inverse();
    let e = eta(&x.g, &gi)?;
    Ok(CoverElement {
        g: gi,
        t: -x.t - e.value,
    })
}

/// `Phi(g, t) = t / 2`.
pub fn phi(x: &CoverElement) -> f64 {
    0.5 * x.t
}

/// `v~_t = (v_t, 2t)`.
pub fn v_tilde(t: f64) -> CoverElement {
    CoverElement {
        g: v(t),
        t: 2.0 * t,
    }
}

/// `D~(beta, gamma) = (D(beta, gamma), 0)`.
pub fn d_tilde(beta: f64, gamma: f64) -> CoverElement {
    CoverElement {
        g: d_matrix(beta, gamma),
        t: 0.0,
    }
}

/// `h~ = (iota(h), 0)`.
pub fn h_tilde(h: &SU2Element) -> CoverElement {
    CoverElement {
        g: iota_su2(h),
        t: 0.0,
    }
}

/// `x = h~1 v~_t D~(beta, gamma) v~_s h~2` with `s` in `[0, pi)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CoverKak {
    pub h1: SU2Element,
    pub t: f64,
    pub beta: f64,
    pub gamma: f64,
    pub s: f64,
    pub h2: SU2Element,
}

impl CoverKak {
    pub fn reconstruct(&self) -> Result<CoverElement> {
        let mut acc = h_tilde(&self.h1);
        for f in [
            v_tilde(self.t),
            d_tilde(self.beta, self.gamma),
            v_tilde(self.s),
            h_tilde(&self.h2),
        ] {
            acc = cover_mul(&acc, &f)?;
        }
        Ok(acc)
    }
}

fn to_su2(u: &Mat2c) -> Result<SU2Element> {
    let (a, b) = (u[0][0], u[0][1]);
    let mismatch = f64::max((u[1][0] + b.conj()).norm(), (u[1][1] - a.conj()).norm());
    if !(mismatch <= COVER_TOL) {
        return Err(Error::InconsistentCover { mismatch });
    }
    SU2Element::normalized(a, b)
}

fn scale2(u: &Mat2c, z: Complex) -> Mat2c {
    [[u[0][0] * z, u[0][1] * z], [u[1][0] * z, u[1][1] * z]]
}

/// Splits the base KAK `iota(u1) D iota(u2)` into `u1 = e^{it} h1`,
/// `u2 = e^{is} h2` with `h1, h2` in SU(2), `s = arg(det u2)/2 mod pi`, and
/// `t = Phi(x) - s`.
pub fn cover_kak(x: &CoverElement) -> Result<CoverKak> {
    let base = kak(&x.g)?;
    let u2 = *base.k2.matrix();
    let mut s = 0.5 * det2(&u2).arg();
    s -= PI * libm::floor(s / PI);
    if s >= PI {
        s -= PI;
    }
    let h2 = to_su2(&scale2(&u2, Complex::from_polar(1.0, -s)))?;
    let t = phi(x) - s;
    let h1 = to_su2(&scale2(base.k1.matrix(), Complex::from_polar(1.0, -t)))?;
    Ok(CoverKak {
        h1,
        t,
        beta: base.beta,
        gamma: base.gamma,
        s,
        h2,
    })
}

/// `h~1 v~_t D~(beta, gamma) v~_s h~2` with Haar-random `h1, h2`,
/// `t, s` uniform in `[-pi, pi]` and `1.5 >= beta >= gamma >= 0`.
pub fn random_cover<R: Rng + ?Sized>(rng: &mut R) -> CoverElement {
    let h1 = SU2Element::random(rng);
    let h2 = SU2Element::random(rng);
    let t = rng.random_range(-PI..=PI);
    let s = rng.random_range(-PI..=PI);
    let a: f64 = rng.random_range(0.0..=1.5);
    let b: f64 = rng.random_range(0.0..=1.5);
    let k = CoverKak {
        h1,
        t,
        beta: a.max(b),
        gamma: a.min(b),
        s,
        h2,
    };
    k.reconstruct()
        .expect("products of symplectic generators have non-degenerate c(g)")
}

/// Random base element `iota(k1) D(beta, gamma) iota(k2)` with `beta <= 1.5`.
pub fn random_base<R: Rng + ?Sized>(rng: &mut R) -> SpMatrix {
    SpMatrix::random(rng, 1.5)
}

/// `Phi(xy) - Phi(x) - Phi(y)`.
pub fn defect(x: &CoverElement, y: &CoverElement) -> Result<f64> {
    Ok(phi(&cover_mul(x, y)?) - phi(x) - phi(y))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn circle_examples() {
        assert!((circle_c(&SpMatrix::IDENTITY).unwrap() - 1.0).norm() < 1e-15);
        for t in [-2.0, 0.3, 1.7] {
            let c = circle_c(&v(t)).unwrap();
            assert!((c - Complex::from_polar(1.0, 2.0 * t)).norm() < 1e-14);
        }
        assert!((circle_c(&d_matrix(1.3, 0.4)).unwrap() - 1.0).norm() < 1e-15);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..20 {
            let g = random_base(&mut rng);
            assert!(circle_block_defect(&g) < 1e-10 * g.frobenius().powi(2));
        }
    }

    #[test]
    fn eta_examples() {
        let e = eta(&SpMatrix::IDENTITY, &SpMatrix::IDENTITY).unwrap();
        assert_eq!(e.value, 0.0);
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..20 {
            let g = random_base(&mut rng);
            assert!(eta(&g, &g.inverse()).unwrap().value.abs() < 1e-9);
        }
    }

    #[test]
    fn cover_examples() {
        let x = v_tilde(0.4);
        let y = cover_mul(&CoverElement::IDENTITY, &x).unwrap();
        assert!(y.g.distance(&x.g) < 1e-15 && (y.t - x.t).abs() < 1e-15);
        let z = cover_mul(&v_tilde(2.0), &v_tilde(2.5)).unwrap();
        assert!((z.t - 9.0).abs() < 1e-12);
        assert!(CoverElement::new(v(0.3), 0.6).is_ok());
        assert!(CoverElement::new(v(0.3), 0.7).is_err());
        assert_eq!(phi(&v_tilde(0.7)), 0.7);
        assert_eq!(phi(&d_tilde(1.0, 0.5)), 0.0);
    }

    #[test]
    fn cover_kak_examples() {
        let k = cover_kak(&d_tilde(1.3, 0.4)).unwrap();
        assert!((k.t + k.s).abs() < 1e-12);
        let k = cover_kak(&v_tilde(0.7)).unwrap();
        assert!((k.t + k.s - 0.7).abs() < 1e-12);
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..50 {
            let x = random_cover(&mut rng);
            let k = cover_kak(&x).unwrap();
            assert!((0.0..PI).contains(&k.s));
            let y = k.reconstruct().unwrap();
            assert!(y.g.distance(&x.g) < 1e-8);
            assert!((y.t - x.t).abs() < 1e-6, "{} vs {}", y.t, x.t);
        }
    }
}
