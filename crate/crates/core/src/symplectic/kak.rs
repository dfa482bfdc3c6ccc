use rand::Rng;

use super::{d_matrix, iota_inv, KElement, Mat2c, SpMatrix};
use crate::error::Result;
use crate::numerics::{mul4, sym_eigen4, transpose4, Complex, Mat4};

const CLUSTER_TOL: f64 = 1e-6;
const CANON_TOL: f64 = 1e-8;

/// `g = iota(k1) D(beta, gamma) iota(k2)` with `beta >= gamma >= 0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KAKResult {
    pub k1: KElement,
    pub beta: f64,
    pub gamma: f64,
    pub k2: KElement,
}

impl KAKResult {
    pub fn reconstruct(&self) -> SpMatrix {
        self.k1.sp() * d_matrix(self.beta, self.gamma) * self.k2.sp()
    }

    /// Frobenius distance between the reconstruction and `g`.
    pub fn residual(&self, g: &SpMatrix) -> f64 {
        self.reconstruct().distance(g)
    }
}

fn column(m: &Mat4, j: usize) -> [f64; 4] {
    [m[0][j], m[1][j], m[2][j], m[3][j]]
}

fn apply_j(x: &[f64; 4]) -> [f64; 4] {
    [x[2], x[3], -x[0], -x[1]]
}

fn dot(x: &[f64; 4], y: &[f64; 4]) -> f64 {
    x.iter().zip(y).map(|(a, b)| a * b).sum()
}

fn unit(x: [f64; 4]) -> [f64; 4] {
    let n = libm::sqrt(dot(&x, &x));
    x.map(|v| v / n)
}

fn gram_schmidt(u: &mut Mat2c) {
    let n0 = libm::sqrt(u[0][0].norm_sqr() + u[1][0].norm_sqr());
    u[0][0] /= n0;
    u[1][0] /= n0;
    let proj = u[0][0].conj() * u[0][1] + u[1][0].conj() * u[1][1];
    u[0][1] -= proj * u[0][0];
    u[1][1] -= proj * u[1][0];
    let n1 = libm::sqrt(u[0][1].norm_sqr() + u[1][1].norm_sqr());
    u[0][1] /= n1;
    u[1][1] /= n1;
}

/// Sign making the first significant entry of a column positive.
fn canonical_sign(a: Complex, b: Complex) -> f64 {
    let z = if a.norm() > CANON_TOL { a } else { b };
    let key = if libm::fabs(z.re) > CANON_TOL {
        z.re
    } else {
        z.im
    };
    if key < 0.0 {
        -1.0
    } else {
        1.0
    }
}

/// KAK decomposition through the eigenstructure of `g^T g`.
///
/// The eigenvectors of `g^T g` come in pairs `(x, Jx)` with eigenvalues
/// `(lambda, 1/lambda)`. Choosing `x1` for the largest eigenvalue and `x2`
/// in the eigenspace of the second largest, orthogonal to `x1` and `J x1`,
/// gives an orthogonal symplectic `O = [x1, x2, -J x1, -J x2]` with
/// `g^T g = O D^2 O^T`; then `k2 = O^T` and `k1 = g O D^{-1}`. Within each
/// cluster of equal eigenvalues the candidate with the largest residual is
/// used. Columns of `k1` are sign-normalized so that their first entry above
/// `1e-8` has positive real part, or positive imaginary part when the real
/// part vanishes; the compensating sign goes to the matching row of `k2`.
pub fn kak(g: &SpMatrix) -> Result<KAKResult> {
    let g = SpMatrix::new(*g.matrix())?;
    let m = g.matrix();
    let gtg = mul4(&transpose4(m), m);
    let (lambda, vecs) = sym_eigen4(&gtg);
    let x1 = unit(column(&vecs, 0));
    let jx1 = apply_j(&x1);
    let l2 = libm::log(lambda[1].max(f64::MIN_POSITIVE));
    let mut best: Option<([f64; 4], f64)> = None;
    for (j, &lj) in lambda.iter().enumerate().skip(1) {
        if libm::fabs(libm::log(lj.max(f64::MIN_POSITIVE)) - l2) > CLUSTER_TOL {
            continue;
        }
        let mut y = column(&vecs, j);
        for basis in [&x1, &jx1] {
            let c = dot(&y, basis);
            for (yi, bi) in y.iter_mut().zip(basis.iter()) {
                *yi -= c * bi;
            }
        }
        let n = libm::sqrt(dot(&y, &y));
        if best.map_or(true, |(_, bn)| n > bn) {
            best = Some((y, n));
        }
    }
    let x2 = unit(best.map(|(y, _)| y).unwrap_or_else(|| column(&vecs, 1)));
    let jx2 = apply_j(&x2);
    let mut o = [[0.0; 4]; 4];
    for r in 0..4 {
        o[r] = [x1[r], x2[r], -jx1[r], -jx2[r]];
    }
    let beta = 0.5 * libm::log(lambda[0]);
    let gamma = f64::max(0.0, 0.5 * libm::log(lambda[1]));
    let gamma = gamma.min(beta);
    let k1m = mul4(&mul4(m, &o), d_matrix(-beta, -gamma).matrix());
    let mut u1 = iota_inv(&k1m);
    gram_schmidt(&mut u1);
    let mut u2 = iota_inv(&transpose4(&o));
    for col in 0..2 {
        let s = canonical_sign(u1[0][col], u1[1][col]);
        if s < 0.0 {
            u1[0][col] = -u1[0][col];
            u1[1][col] = -u1[1][col];
            u2[col][0] = -u2[col][0];
            u2[col][1] = -u2[col][1];
        }
    }
    Ok(KAKResult {
        k1: KElement::from_raw(u1),
        beta,
        gamma,
        k2: KElement::from_raw(u2),
    })
}

/// `KAKResult` with Haar-random `k1, k2` and `(beta, gamma)` uniform in
/// `beta_max >= beta >= gamma >= 0`.
pub fn random_kak<R: Rng + ?Sized>(rng: &mut R, beta_max: f64) -> KAKResult {
    let k1 = KElement::random(rng);
    let k2 = KElement::random(rng);
    let a: f64 = rng.random_range(0.0..=beta_max);
    let b: f64 = rng.random_range(0.0..=beta_max);
    KAKResult {
        k1,
        beta: a.max(b),
        gamma: a.min(b),
        k2,
    }
}
