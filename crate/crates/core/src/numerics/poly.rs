use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Legendre polynomial `P_n(x)` by the three-term recurrence.
pub fn legendre(n: usize, x: f64) -> Result<f64> {
    if !(-1.0..=1.0).contains(&x) {
        return Err(Error::OutOfDomain {
            what: "x",
            value: x,
        });
    }
    Ok(legendre_unchecked(n, x))
}

fn legendre_unchecked(n: usize, x: f64) -> f64 {
    if n == 0 {
        return 1.0;
    }
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 1..n {
        let k = k as f64;
        let p2 = ((2.0 * k + 1.0) * x * p1 - k * p0) / (k + 1.0);
        p0 = p1;
        p1 = p2;
    }
    p1
}

/// `[P_0(x), ..., P_nmax(x)]`.
pub fn legendre_sequence(nmax: usize, x: f64) -> Result<Vec<f64>> {
    if !(-1.0..=1.0).contains(&x) {
        return Err(Error::OutOfDomain {
            what: "x",
            value: x,
        });
    }
    let mut out = Vec::with_capacity(nmax + 1);
    out.push(1.0);
    if nmax == 0 {
        return Ok(out);
    }
    out.push(x);
    for k in 1..nmax {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0) * x * out[k] - kf * out[k - 1]) / (kf + 1.0);
        out.push(next);
    }
    Ok(out)
}

/// Jacobi polynomial `P_n^{(a,b)}(x)` by the standard three-term recurrence.
pub fn jacobi(n: usize, a: f64, b: f64, x: f64) -> f64 {
    if n == 0 {
        return 1.0;
    }
    let mut p0 = 1.0;
    let mut p1 = 0.5 * (a - b) + 0.5 * (a + b + 2.0) * x;
    for k in 2..=n {
        let k = k as f64;
        let s = 2.0 * k + a + b;
        let c1 = 2.0 * k * (k + a + b) * (s - 2.0);
        let c2 = (s - 1.0) * (s * (s - 2.0) * x + a * a - b * b);
        let c3 = 2.0 * (k + a - 1.0) * (k + b - 1.0) * s;
        let p2 = (c2 * p1 - c3 * p0) / c1;
        p0 = p1;
        p1 = p2;
    }
    p1
}

/// Streaming `2^{-b/2} P_n^{(0,b)}(0)` for `n = 0, 1, ...`.
///
/// The values are carried with a separate binary exponent so that large `b`
/// neither overflows the polynomial nor underflows the prefactor.
#[derive(Clone, Debug, PartialEq)]
pub struct JacobiZero {
    b: f64,
    n: usize,
    prev: f64,
    cur: f64,
    exp: i32,
    scale: f64,
}

impl JacobiZero {
    const BIG: f64 = 1.0e150;
    const SHIFT: i32 = 498;

    pub fn new(b2: u32) -> Self {
        let exp = -(b2.div_ceil(2) as i32);
        let y0 = if b2 % 2 == 1 {
            core::f64::consts::SQRT_2
        } else {
            1.0
        };
        JacobiZero {
            b: b2 as f64,
            n: 0,
            prev: 0.0,
            cur: y0,
            exp,
            scale: libm::ldexp(1.0, exp),
        }
    }

    /// Degree of the value returned by the next call to [`JacobiZero::next_value`].
    pub fn degree(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn next_value(&mut self) -> f64 {
        let n = self.n;
        if n == 1 {
            self.prev = self.cur;
            self.cur *= -0.5 * self.b;
        } else if n >= 2 {
            let (nf, b) = (n as f64, self.b);
            let s = 2.0 * nf + b;
            let inv = 1.0 / (2.0 * nf * (nf + b) * (s - 2.0));
            let next = (-(s - 1.0) * b * b * inv) * self.cur
                - (2.0 * (nf - 1.0) * (nf + b - 1.0) * s * inv) * self.prev;
            self.prev = self.cur;
            self.cur = next;
            let m = f64::max(libm::fabs(self.cur), libm::fabs(self.prev));
            if m > Self::BIG {
                self.rescale(-Self::SHIFT);
            } else if m < 1.0 / Self::BIG && m > 0.0 {
                self.rescale(Self::SHIFT);
            }
        }
        self.n += 1;
        if self.exp >= -1022 {
            self.cur * self.scale
        } else {
            libm::ldexp(self.cur, self.exp)
        }
    }

    fn rescale(&mut self, shift: i32) {
        self.cur = libm::ldexp(self.cur, shift);
        self.prev = libm::ldexp(self.prev, shift);
        self.exp -= shift;
        self.scale = libm::ldexp(1.0, self.exp);
    }
}

/// Visits `2^{-b/2} P_n^{(0,b)}(0)` for `n = 0..=nmax`.
pub fn jacobi_zero_scaled<F>(b2: u32, nmax: usize, mut visit: F)
where
    F: FnMut(usize, f64),
{
    let mut it = JacobiZero::new(b2);
    for n in 0..=nmax {
        visit(n, it.next_value());
    }
}

/// `ln(n!)`, exact summation for small `n` and log-gamma beyond.
pub fn ln_factorial(n: u64) -> f64 {
    if n <= 15 {
        let mut acc = 1.0;
        for k in 2..=n {
            acc *= k as f64;
        }
        libm::log(acc)
    } else {
        libm::lgamma(n as f64 + 1.0)
    }
}

/// `ln C(n, k)`.
pub fn ln_binomial(n: u64, k: u64) -> f64 {
    ln_factorial(n) - ln_factorial(k) - ln_factorial(n - k)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn legendre_examples() {
        assert_eq!(legendre(0, 0.7).unwrap(), 1.0);
        assert_eq!(legendre(1, 0.3).unwrap(), 0.3);
        assert!((legendre(2, 0.0).unwrap() + 0.5).abs() < 1e-16);
        assert!(legendre(3, 1.5).is_err());
        let seq = legendre_sequence(40, 0.37).unwrap();
        for (n, v) in seq.iter().enumerate() {
            assert_eq!(*v, legendre(n, 0.37).unwrap());
        }
    }

    #[test]
    fn jacobi_reduces_to_legendre() {
        for n in 0..30 {
            let x = 0.41;
            assert!((jacobi(n, 0.0, 0.0, x) - legendre(n, x).unwrap()).abs() < 1e-13);
        }
        // P_2^{(0,2)}(0) = (a+b...) closed form check against direct formula
        // P_1^{(0,b)}(0) = -b/2
        assert!((jacobi(1, 0.0, 3.0, 0.0) + 1.5).abs() < 1e-15);
    }

    #[test]
    fn scaled_zero_values_match_direct() {
        for b2 in 0..12u32 {
            let mut got = alloc::vec![];
            jacobi_zero_scaled(b2, 20, |_, v| got.push(v));
            for (n, v) in got.iter().enumerate() {
                let direct = jacobi(n, 0.0, b2 as f64, 0.0) * libm::exp2(-(b2 as f64) / 2.0);
                assert!(
                    (v - direct).abs() < 1e-12 * (1.0 + direct.abs()),
                    "b2={b2} n={n}"
                );
            }
        }
    }

    #[test]
    fn scaled_zero_values_survive_huge_b() {
        let mut last = 0.0;
        jacobi_zero_scaled(5000, 3000, |_, v| {
            assert!(v.is_finite() && v.abs() <= 1.0);
            last = v;
        });
        assert!(last.is_finite());
    }

    #[test]
    fn log_factorials() {
        assert!((ln_factorial(5) - libm::log(120.0)).abs() < 1e-15);
        assert!((ln_factorial(20) - libm::log(2432902008176640000.0)).abs() < 1e-13);
        assert!((ln_binomial(10, 3) - libm::log(120.0)).abs() < 1e-13);
    }
}
