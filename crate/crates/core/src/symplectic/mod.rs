//! The real symplectic group Sp(2,R) in 4x4 form, its maximal compact
//! subgroup `K = iota(U(2))`, the Cartan families and KAK decompositions.

mod kak;
mod structural;

use core::ops::Mul;

use rand::Rng;

use crate::error::{Error, Result};
use crate::numerics::{frobenius4, mul4, sub4, transpose4, Complex, Mat4, IDENTITY4};
use crate::su2::SU2Element;

pub use kak::{kak, random_kak, KAKResult};
pub use structural::{
    sl2_polar, so2_target, structural_so2_predict, structural_u1_predict, u1_target, u1_y_block,
    SL2Polar, So2Prediction, U1Prediction,
};

/// Complex 2x2 matrix, row-major.
pub type Mat2c = [[Complex; 2]; 2];

const SYMPLECTIC_TOL: f64 = 1e-10;
const UNITARY_TOL: f64 = 1e-10;

/// `J = [[0, I], [-I, 0]]`.
pub const J: Mat4 = [
    [0.0, 0.0, 1.0, 0.0],
    [0.0, 0.0, 0.0, 1.0],
    [-1.0, 0.0, 0.0, 0.0],
    [0.0, -1.0, 0.0, 0.0],
];

pub fn mul2(x: &Mat2c, y: &Mat2c) -> Mat2c {
    let mut out = [[Complex::new(0.0, 0.0); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = x[i][0] * y[0][j] + x[i][1] * y[1][j];
        }
    }
    out
}

pub fn adjoint2(x: &Mat2c) -> Mat2c {
    [
        [x[0][0].conj(), x[1][0].conj()],
        [x[0][1].conj(), x[1][1].conj()],
    ]
}

pub fn det2(x: &Mat2c) -> Complex {
    x[0][0] * x[1][1] - x[0][1] * x[1][0]
}

/// `iota(A + iB) = [[A, -B], [B, A]]`.
pub fn iota(u: &Mat2c) -> Mat4 {
    let mut m = [[0.0; 4]; 4];
    for i in 0..2 {
        for j in 0..2 {
            let z = u[i][j];
            m[i][j] = z.re;
            m[i + 2][j + 2] = z.re;
            m[i][j + 2] = -z.im;
            m[i + 2][j] = z.im;
        }
    }
    m
}

/// Inverse of [`iota`] on block matrices `[[A, -B], [B, A]]`, averaging the
/// two copies of each block.
pub fn iota_inv(m: &Mat4) -> Mat2c {
    let mut u = [[Complex::new(0.0, 0.0); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            let a = 0.5 * (m[i][j] + m[i + 2][j + 2]);
            let b = 0.5 * (m[i + 2][j] - m[i][j + 2]);
            u[i][j] = Complex::new(a, b);
        }
    }
    u
}

/// `||g^T J g - J||_F`.
pub fn symplectic_defect(g: &Mat4) -> f64 {
    frobenius4(&sub4(&mul4(&mul4(&transpose4(g), &J), g), &J))
}

/// A real 4x4 matrix with `g^T J g = J`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpMatrix(Mat4);

impl SpMatrix {
    pub const IDENTITY: SpMatrix = SpMatrix(IDENTITY4);

    /// Accepts `g` when `||g^T J g - J||_F <= 1e-10 max(1, ||g||_F^2)`.
    pub fn new(g: Mat4) -> Result<Self> {
        if g.iter().flatten().any(|x| !x.is_finite()) {
            return Err(Error::NonFiniteSample);
        }
        let residual = symplectic_defect(&g);
        let f = frobenius4(&g);
        let scale = f64::max(1.0, f * f);
        if !(residual <= SYMPLECTIC_TOL * scale) {
            return Err(Error::NotSymplectic { residual });
        }
        Ok(SpMatrix(g))
    }

    pub fn matrix(&self) -> &Mat4 {
        &self.0
    }

    /// `g^{-1} = -J g^T J`.
    pub fn inverse(&self) -> SpMatrix {
        let mut m = mul4(&mul4(&J, &transpose4(&self.0)), &J);
        for x in m.iter_mut().flatten() {
            *x = -*x;
        }
        SpMatrix(m)
    }

    pub fn transpose(&self) -> SpMatrix {
        SpMatrix(transpose4(&self.0))
    }

    pub fn defect(&self) -> f64 {
        symplectic_defect(&self.0)
    }

    pub fn frobenius(&self) -> f64 {
        frobenius4(&self.0)
    }

    pub fn distance(&self, other: &SpMatrix) -> f64 {
        frobenius4(&sub4(&self.0, &other.0))
    }

    /// `k1 D(beta, gamma) k2` with Haar-random unitary `k1, k2` and
    /// `beta_max >= beta >= gamma >= 0` uniform in the chamber.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, beta_max: f64) -> SpMatrix {
        random_kak(rng, beta_max).reconstruct()
    }
}

impl Mul for SpMatrix {
    type Output = SpMatrix;

    fn mul(self, rhs: SpMatrix) -> SpMatrix {
        SpMatrix(mul4(&self.0, &rhs.0))
    }
}

/// Preimage under `iota` of an element of `K`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KElement {
    u: Mat2c,
}

pub fn unitarity_defect2(u: &Mat2c) -> f64 {
    let p = mul2(&adjoint2(u), u);
    let mut s = 0.0;
    for (i, row) in p.iter().enumerate() {
        for (j, z) in row.iter().enumerate() {
            let e = if i == j { 1.0 } else { 0.0 };
            s += (z - e).norm_sqr();
        }
    }
    libm::sqrt(s)
}

impl KElement {
    pub const IDENTITY: KElement = KElement {
        u: [
            [Complex::new(1.0, 0.0), Complex::new(0.0, 0.0)],
            [Complex::new(0.0, 0.0), Complex::new(1.0, 0.0)],
        ],
    };

    pub fn new(u: Mat2c) -> Result<Self> {
        let residual = unitarity_defect2(&u);
        if !(residual <= UNITARY_TOL) {
            return Err(Error::NotUnitary { residual });
        }
        Ok(KElement { u })
    }

    pub(crate) const fn from_raw(u: Mat2c) -> Self {
        KElement { u }
    }

    pub fn from_su2(h: &SU2Element) -> Self {
        KElement { u: h.matrix() }
    }

    /// `e^{is} I`.
    pub fn phase(s: f64) -> Self {
        KElement::diag(s, s)
    }

    /// `diag(e^{i theta}, e^{i theta'})`.
    pub fn diag(theta: f64, theta_prime: f64) -> Self {
        let z = Complex::new(0.0, 0.0);
        KElement {
            u: [
                [Complex::from_polar(1.0, theta), z],
                [z, Complex::from_polar(1.0, theta_prime)],
            ],
        }
    }

    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        let h = SU2Element::random(rng);
        let s = rng.random_range(-core::f64::consts::PI..core::f64::consts::PI);
        KElement::phase(s) * KElement::from_su2(&h)
    }

    pub fn matrix(&self) -> &Mat2c {
        &self.u
    }

    pub fn adjoint(&self) -> KElement {
        KElement {
            u: adjoint2(&self.u),
        }
    }

    pub fn det(&self) -> Complex {
        det2(&self.u)
    }

    pub fn sp(&self) -> SpMatrix {
        SpMatrix(iota(&self.u))
    }
}

impl Mul for KElement {
    type Output = KElement;

    fn mul(self, rhs: KElement) -> KElement {
        KElement {
            u: mul2(&self.u, &rhs.u),
        }
    }
}

/// `D(beta, gamma) = diag(e^beta, e^gamma, e^-beta, e^-gamma)`.
pub fn d_matrix(beta: f64, gamma: f64) -> SpMatrix {
    let mut m = [[0.0; 4]; 4];
    m[0][0] = libm::exp(beta);
    m[1][1] = libm::exp(gamma);
    m[2][2] = libm::exp(-beta);
    m[3][3] = libm::exp(-gamma);
    SpMatrix(m)
}

/// `v_s = iota(e^{is} I)`.
pub fn v(s: f64) -> SpMatrix {
    KElement::phase(s).sp()
}

/// `w_{theta, theta'} = iota(diag(e^{i theta}, e^{i theta'}))`.
pub fn w(theta: f64, theta_prime: f64) -> SpMatrix {
    KElement::diag(theta, theta_prime).sp()
}

/// `iota(h)` for `h` in SU(2).
pub fn iota_su2(h: &SU2Element) -> SpMatrix {
    KElement::from_su2(h).sp()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::max_abs4;
    use crate::su2::d;
    use core::f64::consts::PI;

    #[test]
    fn iota_examples() {
        assert_eq!(iota(KElement::IDENTITY.matrix()), IDENTITY4);
        let vp = v(PI);
        let minus = {
            let mut m = IDENTITY4;
            for (i, row) in m.iter_mut().enumerate() {
                row[i] = -1.0;
            }
            m
        };
        assert!(max_abs4(&sub4(vp.matrix(), &minus)) < 1e-15);
    }

    #[test]
    fn w_factorization() {
        for (a, b) in [(0.3, -1.1), (2.0, 0.5), (-0.7, -0.7)] {
            let lhs = w(a, b);
            let rhs = v(0.5 * (a + b)) * iota_su2(&d(0.5 * (a - b)));
            assert!(lhs.distance(&rhs) < 1e-14);
        }
    }

    #[test]
    fn validation() {
        assert!(SpMatrix::new(d_matrix(3.0, 1.0).0).is_ok());
        let mut bad = IDENTITY4;
        bad[0][1] = 0.1;
        assert!(matches!(
            SpMatrix::new(bad),
            Err(Error::NotSymplectic { .. })
        ));
        let g = d_matrix(1.0, 0.2) * w(0.4, 1.0);
        assert!((g * g.inverse()).distance(&SpMatrix::IDENTITY) < 1e-14);
    }
}
