use alloc::vec;
use alloc::vec::Vec;

use super::irrep::{irrep_column, twice_ell};
use crate::error::{Error, Result};
use crate::numerics::{circle_quadrature, Complex, Half};
use crate::su2::r;

const RANK_TOL: f64 = 1e-8;

/// Unit vector of `H_ell` fixed by every `pi_ell(r_theta)`.
///
/// The averaged operator `(1/2pi) int pi_ell(r_theta) d theta` is the rank-one
/// projection `w w*`; its first column is `w conj(w_0)` and is normalized
/// here, so the returned `w` has a real positive first component.
pub fn so2_invariant_vector(ell: Half) -> Result<Vec<Complex>> {
    let n = twice_ell(ell)?;
    let nodes = 2 * n + 4;
    let mut avg = vec![Complex::new(0.0, 0.0); n + 1];
    let mut failure = None;
    circle_quadrature(
        |theta| {
            match irrep_column(ell, &r(theta), 0) {
                Ok(col) => {
                    for (a, c) in avg.iter_mut().zip(col) {
                        *a += c;
                    }
                }
                Err(e) => failure = Some(e),
            }
            Complex::new(0.0, 0.0)
        },
        nodes,
    )?;
    if let Some(e) = failure {
        return Err(e);
    }
    for a in avg.iter_mut() {
        *a /= nodes as f64;
    }
    let norm = libm::sqrt(avg.iter().map(|z| z.norm_sqr()).sum());
    if norm < RANK_TOL {
        return Err(Error::NoInvariantVector { ell });
    }
    Ok(avg.into_iter().map(|z| z / norm).collect())
}
