use alloc::vec;
use alloc::vec::Vec;

use super::irrep::{irrep, twice_ell};
use crate::error::{Error, Result};
use crate::numerics::dd::{ComplexDd, DoubleDouble};
use crate::numerics::{circle_quadrature, jacobi, jacobi_zero_scaled, Complex, Half};
use crate::su2::{d, u};

const RESIDUE_TOL: f64 = 1e-10;

fn check_index(ell: Half, p: Half) -> Result<(u64, u64)> {
    twice_ell(ell)?;
    if p.abs() > ell || !p.same_lattice(ell) {
        return Err(Error::IndexMismatch { ell, p });
    }
    Ok((
        ((ell.twice() - p.twice()) / 2) as u64,
        ((ell.twice() + p.twice()) / 2) as u64,
    ))
}

/// `2^{-ell}` without rounding the half-integer exponent.
fn pow2_neg(ell: Half) -> f64 {
    let t = ell.twice();
    let mant = if t % 2 == 1 {
        core::f64::consts::FRAC_1_SQRT_2
    } else {
        1.0
    };
    libm::ldexp(mant, -((t / 2) as i32))
}

/// `c_p^ell` from the contour integral
/// `2^{-ell} (1/2pi) int (1 + e^{-i phi}/r)^{ell-p} (1 - r e^{i phi})^{ell+p} d phi`.
///
/// The trapezoid rule with `4 ell + 4` nodes is exact; it is evaluated in
/// double-double arithmetic because the integrand has terms of size `2^{2 ell}`.
pub fn cpl_integral(ell: Half, p: Half, r: f64) -> Result<f64> {
    let (m, n) = check_index(ell, p)?;
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::NonPositiveRadius { r });
    }
    let nodes = 2 * ell.twice() + 4;
    let r_dd = DoubleDouble::new(r);
    let r_inv = DoubleDouble::ONE / r_dd;
    let mut acc = ComplexDd::default();
    for k in 0..nodes {
        let (c, s) = DoubleDouble::unit_root(k, nodes);
        let left = ComplexDd::new(DoubleDouble::ONE + c * r_inv, -(s * r_inv));
        let right = ComplexDd::new(DoubleDouble::ONE - c * r_dd, -(s * r_dd));
        acc = acc + left.powu(m) * right.powu(n);
    }
    let scale = pow2_neg(ell);
    let re = (acc.re.div_f64(nodes as f64)).to_f64() * scale;
    let im = (acc.im.div_f64(nodes as f64)).to_f64() * scale;
    if !re.is_finite() || !im.is_finite() {
        return Err(Error::NonFiniteIntegrand);
    }
    if libm::fabs(im) > RESIDUE_TOL {
        return Err(Error::ImaginaryResidue {
            residue: libm::fabs(im),
        });
    }
    Ok(re)
}

/// All `c_p^ell`, `p = -ell..=ell`, from the group average
/// `(1/2pi) int pi_ell(d_phi u_0 d_{-phi}) d phi` projected on each `e_p`.
pub fn cpl_group_average_row(ell: Half) -> Result<Vec<f64>> {
    let n = twice_ell(ell)?;
    let nodes = 2 * n + 4;
    let u0 = u(0.0);
    let mut diag = vec![Complex::new(0.0, 0.0); n + 1];
    let mut failure = None;
    circle_quadrature(
        |phi| {
            let g = d(phi) * u0 * d(-phi);
            match irrep(ell, &g) {
                Ok(m) => {
                    for (i, v) in diag.iter_mut().enumerate() {
                        *v += m.matrix()[(i, i)];
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
    diag.iter()
        .map(|z| {
            let z = z / nodes as f64;
            if libm::fabs(z.im) > RESIDUE_TOL {
                Err(Error::ImaginaryResidue {
                    residue: libm::fabs(z.im),
                })
            } else {
                Ok(z.re)
            }
        })
        .collect()
}

/// `c_p^ell` by the group average; see [`cpl_group_average_row`].
pub fn cpl_group_average(ell: Half, p: Half) -> Result<f64> {
    check_index(ell, p)?;
    let row = cpl_group_average_row(ell)?;
    Ok(row[((p.twice() + ell.twice()) / 2) as usize])
}

/// `c_p^ell = 2^{-|p|} P^{(0, 2|p|)}_{ell-|p|}(0)` by the Jacobi recurrence.
pub fn cpl_jacobi(ell: Half, p: Half) -> Result<f64> {
    check_index(ell, p)?;
    let pa = p.abs();
    let n = ((ell.twice() - pa.twice()) / 2) as usize;
    let mut out = 0.0;
    jacobi_zero_scaled(pa.twice() as u32, n, |k, v| {
        if k == n {
            out = v;
        }
    });
    Ok(out)
}

/// Normalization linking `c_p^ell` to `P^{(0,2p)}_{ell-p}(0)` for `p >= 0`:
/// `c_p^ell * sign^{ell-p} * 2^{k_n (ell-p) + k_p p} = P^{(0,2p)}_{ell-p}(0)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct JacobiConvention {
    pub sign: i8,
    pub k_n: i8,
    pub k_p: i8,
}

impl JacobiConvention {
    pub fn factor(&self, ell: Half, p: Half) -> f64 {
        let n = ((ell.twice() - p.twice()) / 2) as i32;
        let s = if self.sign < 0 && n % 2 == 1 {
            -1.0
        } else {
            1.0
        };
        s * libm::exp2(self.k_n as f64 * n as f64 + self.k_p as f64 * p.to_f64())
    }
}

pub const CALIBRATION_POINTS: [(Half, Half); 3] = [
    (Half::from_twice(2), Half::from_twice(0)),
    (Half::from_twice(3), Half::from_twice(1)),
    (Half::from_twice(4), Half::from_twice(0)),
];

/// Every candidate normalization consistent with the calibration points.
pub fn jacobi_convention_candidates() -> Result<Vec<JacobiConvention>> {
    let mut samples = Vec::new();
    for (ell, p) in CALIBRATION_POINTS {
        let c = cpl_integral(ell, p, 1.0)?;
        let n = ((ell.twice() - p.twice()) / 2) as usize;
        samples.push((ell, p, c, jacobi(n, 0.0, p.twice() as f64, 0.0)));
    }
    let mut out = Vec::new();
    for sign in [1i8, -1] {
        for k_n in -1i8..=1 {
            for k_p in -1i8..=1 {
                let conv = JacobiConvention { sign, k_n, k_p };
                let ok = samples.iter().all(|&(ell, p, c, pv)| {
                    libm::fabs(c * conv.factor(ell, p) - pv)
                        <= 1e-12 * f64::max(1.0, libm::fabs(pv))
                });
                if ok {
                    out.push(conv);
                }
            }
        }
    }
    Ok(out)
}

/// The unique calibrated normalization, or `None` if zero or several survive.
pub fn identify_jacobi_convention() -> Result<Option<JacobiConvention>> {
    let c = jacobi_convention_candidates()?;
    Ok(if c.len() == 1 { Some(c[0]) } else { None })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CplMethod {
    Jacobi,
    Integral,
    GroupAverage,
}

/// Table of `c_p^ell` for `ell <= lmax`.
#[derive(Clone, Debug, PartialEq)]
pub struct CplTable {
    lmax: Half,
    rows: Vec<Vec<f64>>,
}

impl CplTable {
    pub fn build(lmax: Half) -> Result<Self> {
        let n = twice_ell(lmax)?;
        let mut rows: Vec<Vec<f64>> = (0..=n).map(|t| vec![0.0; t + 1]).collect();
        for p2 in 0..=n {
            let steps = (n - p2) / 2;
            jacobi_zero_scaled(p2 as u32, steps, |k, v| {
                let l2 = p2 + 2 * k;
                let row = &mut rows[l2];
                row[(l2 + p2) / 2] = v;
                row[(l2 - p2) / 2] = v;
            });
        }
        Ok(CplTable { lmax, rows })
    }

    /// One row `c_p^ell, p = -ell..=ell` by the chosen method.
    pub fn row(ell: Half, method: CplMethod) -> Result<Vec<f64>> {
        let n = twice_ell(ell)?;
        match method {
            CplMethod::GroupAverage => cpl_group_average_row(ell),
            CplMethod::Integral => (0..=n)
                .map(|i| cpl_integral(ell, Half::from_twice(2 * i as i64 - n as i64), 1.0))
                .collect(),
            CplMethod::Jacobi => (0..=n)
                .map(|i| cpl_jacobi(ell, Half::from_twice(2 * i as i64 - n as i64)))
                .collect(),
        }
    }

    pub fn build_with(lmax: Half, method: CplMethod) -> Result<Self> {
        if method == CplMethod::Jacobi {
            return CplTable::build(lmax);
        }
        let n = twice_ell(lmax)?;
        let rows = (0..=n)
            .map(|t| CplTable::row(Half::from_twice(t as i64), method))
            .collect::<Result<Vec<_>>>()?;
        Ok(CplTable { lmax, rows })
    }

    /// Assembles a table from rows indexed by `2 ell`.
    pub fn from_rows(lmax: Half, rows: Vec<Vec<f64>>) -> Result<Self> {
        let n = twice_ell(lmax)?;
        if rows.len() != n + 1 {
            return Err(Error::ShapeMismatch {
                expected: n + 1,
                found: rows.len(),
            });
        }
        for (t, row) in rows.iter().enumerate() {
            if row.len() != t + 1 {
                return Err(Error::ShapeMismatch {
                    expected: t + 1,
                    found: row.len(),
                });
            }
        }
        Ok(CplTable { lmax, rows })
    }

    pub fn lmax(&self) -> Half {
        self.lmax
    }

    pub fn get(&self, ell: Half, p: Half) -> Option<f64> {
        if ell > self.lmax || ell.twice() < 0 || p.abs() > ell || !p.same_lattice(ell) {
            return None;
        }
        let row = &self.rows[ell.twice() as usize];
        Some(row[((p.twice() + ell.twice()) / 2) as usize])
    }

    /// Row for `ell = twice / 2`.
    pub fn row_twice(&self, twice: usize) -> &[f64] {
        &self.rows[twice]
    }

    /// Iterates `(ell, p, c)` in order of increasing `ell`, then `p`.
    pub fn iter(&self) -> impl Iterator<Item = (Half, Half, f64)> + '_ {
        self.rows.iter().enumerate().flat_map(|(t, row)| {
            row.iter().enumerate().map(move |(i, &c)| {
                (
                    Half::from_twice(t as i64),
                    Half::from_twice(2 * i as i64 - t as i64),
                    c,
                )
            })
        })
    }
}

/// `min((1+ell)^{-1/4}, ||p| - ell/sqrt 2|^{-1/2})`.
pub fn envelope_shape(ell: Half, p: Half) -> f64 {
    let l = ell.to_f64();
    let a = libm::pow(1.0 + l, -0.25);
    let dist = libm::fabs(libm::fabs(p.to_f64()) - l * core::f64::consts::FRAC_1_SQRT_2);
    if dist == 0.0 {
        a
    } else {
        f64::min(a, 1.0 / libm::sqrt(dist))
    }
}

/// Largest `|c_p^ell| / envelope_shape(ell, p)` over an `ell` window.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EnvelopeFit {
    pub constant: f64,
    pub ell: Half,
    pub p: Half,
}

/// Fits the envelope constant over `lo <= ell <= hi` (both inclusive).
pub fn fit_envelope(table: &CplTable, lo: Half, hi: Half) -> EnvelopeFit {
    let mut best = EnvelopeFit {
        constant: 0.0,
        ell: lo,
        p: lo,
    };
    for (ell, p, c) in table.iter() {
        if ell < lo || ell > hi {
            continue;
        }
        let ratio = libm::fabs(c) / envelope_shape(ell, p);
        if ratio > best.constant {
            best = EnvelopeFit {
                constant: ratio,
                ell,
                p,
            };
        }
    }
    best
}
