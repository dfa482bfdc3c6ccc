//! The compact group SU(2), its one-parameter families and Haar quadrature.

use core::ops::{Mul, Neg};

use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::numerics::{gauss_legendre, Complex};

/// The matrix `[[a, b], [-conj(b), conj(a)]]` with `|a|^2 + |b|^2 = 1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SU2Element {
    a: Complex,
    b: Complex,
}

const UNIT_TOL: f64 = 1e-12;

impl SU2Element {
    pub const IDENTITY: SU2Element = SU2Element {
        a: Complex::new(1.0, 0.0),
        b: Complex::new(0.0, 0.0),
    };

    pub fn new(a: Complex, b: Complex) -> Result<Self> {
        let defect = libm::fabs(a.norm_sqr() + b.norm_sqr() - 1.0);
        if !(defect <= UNIT_TOL) {
            return Err(Error::NotUnitary { residual: defect });
        }
        Ok(SU2Element { a, b })
    }

    /// Projects `(a, b)` onto the unit sphere.
    pub fn normalized(a: Complex, b: Complex) -> Result<Self> {
        let n = libm::sqrt(a.norm_sqr() + b.norm_sqr());
        if !(n > 0.0) || !n.is_finite() {
            return Err(Error::NonFiniteSample);
        }
        Ok(SU2Element { a: a / n, b: b / n })
    }

    pub fn a(&self) -> Complex {
        self.a
    }

    pub fn b(&self) -> Complex {
        self.b
    }

    /// Entries `[[a, b], [c, d]]`.
    pub fn matrix(&self) -> [[Complex; 2]; 2] {
        [[self.a, self.b], [-self.b.conj(), self.a.conj()]]
    }

    pub fn inverse(&self) -> Self {
        SU2Element {
            a: self.a.conj(),
            b: -self.b,
        }
    }

    pub fn trace(&self) -> Complex {
        Complex::new(2.0 * self.a.re, 0.0)
    }

    pub fn norm_defect(&self) -> f64 {
        libm::fabs(self.a.norm_sqr() + self.b.norm_sqr() - 1.0)
    }

    /// Largest entrywise distance between the two matrices.
    pub fn distance(&self, other: &SU2Element) -> f64 {
        f64::max((self.a - other.a).norm(), (self.b - other.b).norm())
    }

    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        loop {
            let x: [f64; 4] = [
                rng.sample(StandardNormal),
                rng.sample(StandardNormal),
                rng.sample(StandardNormal),
                rng.sample(StandardNormal),
            ];
            if let Ok(g) =
                SU2Element::normalized(Complex::new(x[0], x[1]), Complex::new(x[2], x[3]))
            {
                return g;
            }
        }
    }
}

impl Mul for SU2Element {
    type Output = SU2Element;

    fn mul(self, h: SU2Element) -> SU2Element {
        let a = self.a * h.a - self.b * h.b.conj();
        let b = self.a * h.b + self.b * h.a.conj();
        let n = libm::sqrt(a.norm_sqr() + b.norm_sqr());
        SU2Element { a: a / n, b: b / n }
    }
}

impl Neg for SU2Element {
    type Output = SU2Element;

    fn neg(self) -> SU2Element {
        SU2Element {
            a: -self.a,
            b: -self.b,
        }
    }
}

/// `r_theta = [[cos, -sin], [sin, cos]]`.
pub fn r(theta: f64) -> SU2Element {
    SU2Element {
        a: Complex::new(libm::cos(theta), 0.0),
        b: Complex::new(-libm::sin(theta), 0.0),
    }
}

/// `d_theta = diag(e^{i theta}, e^{-i theta})`.
pub fn d(theta: f64) -> SU2Element {
    SU2Element {
        a: Complex::from_polar(1.0, theta),
        b: Complex::new(0.0, 0.0),
    }
}

/// `u_theta = (1/sqrt 2) [[e^{i theta}, -1], [1, e^{-i theta}]]`.
pub fn u(theta: f64) -> SU2Element {
    let s = core::f64::consts::FRAC_1_SQRT_2;
    SU2Element {
        a: Complex::from_polar(s, theta),
        b: Complex::new(-s, 0.0),
    }
}

/// Nodes and weights of the Euler-angle product rule `g = d_phi1 r_theta d_phi2`:
/// trapezoid in both `phi` angles, Gauss-Legendre in `cos(2 theta)`.
///
/// Weights sum to one. Exact for matrix coefficients of degree below `resolution`.
pub fn haar_nodes(resolution: usize) -> Result<Vec<(SU2Element, f64)>> {
    if resolution < 2 {
        return Err(Error::InvalidParameter {
            name: "resolution",
            value: resolution as f64,
        });
    }
    let n = resolution as f64;
    let mut out = Vec::with_capacity(resolution * resolution * resolution);
    for (x, w) in gauss_legendre(resolution) {
        let rt = r(0.5 * libm::acos(x));
        for i in 0..resolution {
            let left = d(2.0 * PI * i as f64 / n) * rt;
            for j in 0..resolution {
                out.push((left * d(2.0 * PI * j as f64 / n), 0.5 * w / (n * n)));
            }
        }
    }
    Ok(out)
}

/// Haar average of `f` over [`haar_nodes`].
pub fn haar_average<F>(mut f: F, resolution: usize) -> Result<Complex>
where
    F: FnMut(&SU2Element) -> Complex,
{
    let mut total = Complex::new(0.0, 0.0);
    for (g, w) in haar_nodes(resolution)? {
        let v = f(&g);
        if !v.re.is_finite() || !v.im.is_finite() {
            return Err(Error::NonFiniteSample);
        }
        total += v * w;
    }
    Ok(total)
}

/// A rotation of three-space.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SO3Matrix {
    pub entries: [[f64; 3]; 3],
}

impl SO3Matrix {
    pub fn mul(&self, other: &SO3Matrix) -> SO3Matrix {
        let mut e = [[0.0; 3]; 3];
        for (i, row) in e.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                *v = (0..3)
                    .map(|k| self.entries[i][k] * other.entries[k][j])
                    .sum();
            }
        }
        SO3Matrix { entries: e }
    }

    pub fn transpose(&self) -> SO3Matrix {
        let mut e = [[0.0; 3]; 3];
        for (i, row) in self.entries.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                e[j][i] = *v;
            }
        }
        SO3Matrix { entries: e }
    }

    pub fn determinant(&self) -> f64 {
        let m = &self.entries;
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    }

    /// `max |(M^T M - I)_{ij}|`.
    pub fn orthogonality_defect(&self) -> f64 {
        let p = self.transpose().mul(self);
        let mut worst: f64 = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                let id = if i == j { 1.0 } else { 0.0 };
                worst = worst.max(libm::fabs(p.entries[i][j] - id));
            }
        }
        worst
    }

    pub fn max_abs_diff(&self, other: &SO3Matrix) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                worst = worst.max(libm::fabs(self.entries[i][j] - other.entries[i][j]));
            }
        }
        worst
    }
}

/// The covering map SU(2) -> SO(3), written entrywise in `(alpha, beta) = (a, b)`.
pub fn su2_to_so3(g: &SU2Element) -> SO3Matrix {
    let (al, be) = (g.a, g.b);
    let a2 = al * al;
    let b2 = be * be;
    let ab = al * be;
    let abc = al * be.conj();
    SO3Matrix {
        entries: [
            [(a2 + b2).re, (b2 - a2).im, 2.0 * ab.im],
            [(a2 + b2).im, (a2 - b2).re, -2.0 * ab.re],
            [2.0 * abc.im, 2.0 * abc.re, al.norm_sqr() - be.norm_sqr()],
        ],
    }
}
