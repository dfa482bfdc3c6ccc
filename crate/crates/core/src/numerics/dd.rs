//! Double-double arithmetic (about 32 significant digits).
//!
//! Only the operations needed for exact-in-principle trigonometric
//! quadratures are provided: ring operations, division, and unit-circle
//! nodes `e^{2 pi i k / n}`.

use core::ops::{Add, Div, Mul, Neg, Sub};

use num_complex::Complex64;

#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct DoubleDouble {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, libm::fma(a, b, -p))
}

const PI: DoubleDouble = DoubleDouble {
    hi: core::f64::consts::PI,
    lo: 1.224_646_799_147_353_2e-16,
};

impl DoubleDouble {
    pub const ZERO: Self = DoubleDouble { hi: 0.0, lo: 0.0 };
    pub const ONE: Self = DoubleDouble { hi: 1.0, lo: 0.0 };

    pub const fn new(x: f64) -> Self {
        DoubleDouble { hi: x, lo: 0.0 }
    }

    /// The exact quotient `num / den` rounded to double-double.
    pub fn ratio(num: i64, den: i64) -> Self {
        DoubleDouble::new(num as f64) / DoubleDouble::new(den as f64)
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn abs(self) -> Self {
        if self.hi < 0.0 {
            -self
        } else {
            self
        }
    }

    pub fn mul_f64(self, b: f64) -> Self {
        let (p, e) = two_prod(self.hi, b);
        let (s, e) = quick_two_sum(p, e + self.lo * b);
        DoubleDouble { hi: s, lo: e }
    }

    pub fn div_f64(self, b: f64) -> Self {
        let q1 = self.hi / b;
        let r = self - DoubleDouble::new(b).mul_f64(q1);
        let q2 = r.hi / b;
        let (s, e) = quick_two_sum(q1, q2);
        DoubleDouble { hi: s, lo: e }
    }

    /// Returns `(cos x, sin x)` for `|x| <= pi/4` by Taylor series.
    fn cos_sin_small(x: Self) -> (Self, Self) {
        let x2 = x * x;
        let mut sin = x;
        let mut cos = DoubleDouble::ONE;
        let mut term_s = x;
        let mut term_c = DoubleDouble::ONE;
        let mut k = 1.0;
        loop {
            term_c = -(term_c * x2).div_f64(k * (k + 1.0));
            term_s = -(term_s * x2).div_f64((k + 1.0) * (k + 2.0));
            cos = cos + term_c;
            sin = sin + term_s;
            k += 2.0;
            if libm::fabs(term_c.hi) < 1e-34 && libm::fabs(term_s.hi) < 1e-34 {
                break;
            }
        }
        (cos, sin)
    }

    /// `(cos, sin)` of `2 pi k / n` with exact rational argument reduction.
    pub fn unit_root(k: i64, n: i64) -> (Self, Self) {
        assert!(n > 0);
        let j = k.rem_euclid(n) as i128;
        let n = n as i128;
        let quadrant = (4 * j) / n;
        let num = 4 * j - quadrant * n;
        // Residual angle (pi/2) * num / n in [0, pi/2).
        let (c, s) = if 2 * num <= n {
            let a = (PI * DoubleDouble::ratio(num as i64, n as i64)).div_f64(2.0);
            DoubleDouble::cos_sin_small(a)
        } else {
            let a = (PI * DoubleDouble::ratio((n - num) as i64, n as i64)).div_f64(2.0);
            let (c, s) = DoubleDouble::cos_sin_small(a);
            (s, c)
        };
        match quadrant {
            0 => (c, s),
            1 => (-s, c),
            2 => (-c, -s),
            _ => (s, -c),
        }
    }
}

impl Add for DoubleDouble {
    type Output = Self;
    #[inline]
    fn add(self, b: Self) -> Self {
        let (s, e) = two_sum(self.hi, b.hi);
        let (t, f) = two_sum(self.lo, b.lo);
        let (s, e) = quick_two_sum(s, e + t);
        let (hi, lo) = quick_two_sum(s, e + f);
        DoubleDouble { hi, lo }
    }
}

impl Neg for DoubleDouble {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        DoubleDouble {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl Sub for DoubleDouble {
    type Output = Self;
    #[inline]
    fn sub(self, b: Self) -> Self {
        self + (-b)
    }
}

impl Mul for DoubleDouble {
    type Output = Self;
    #[inline]
    fn mul(self, b: Self) -> Self {
        let (p, e) = two_prod(self.hi, b.hi);
        let e = e + (self.hi * b.lo + self.lo * b.hi);
        let (hi, lo) = quick_two_sum(p, e);
        DoubleDouble { hi, lo }
    }
}

impl Div for DoubleDouble {
    type Output = Self;
    fn div(self, b: Self) -> Self {
        let q1 = self.hi / b.hi;
        let r = self - b.mul_f64(q1);
        let q2 = r.hi / b.hi;
        let r = r - b.mul_f64(q2);
        let q3 = r.hi / b.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        DoubleDouble { hi, lo } + DoubleDouble::new(q3)
    }
}

/// Complex number with double-double parts.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct ComplexDd {
    pub re: DoubleDouble,
    pub im: DoubleDouble,
}

impl ComplexDd {
    pub const ONE: Self = ComplexDd {
        re: DoubleDouble::ONE,
        im: DoubleDouble::ZERO,
    };

    pub const fn new(re: DoubleDouble, im: DoubleDouble) -> Self {
        ComplexDd { re, im }
    }

    pub fn scale(self, s: DoubleDouble) -> Self {
        ComplexDd {
            re: self.re * s,
            im: self.im * s,
        }
    }

    pub fn conj(self) -> Self {
        ComplexDd {
            re: self.re,
            im: -self.im,
        }
    }

    pub fn powu(self, mut e: u64) -> Self {
        let mut base = self;
        let mut acc = ComplexDd::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    pub fn to_c64(self) -> Complex64 {
        Complex64::new(self.re.to_f64(), self.im.to_f64())
    }
}

impl Add for ComplexDd {
    type Output = Self;
    #[inline]
    fn add(self, b: Self) -> Self {
        ComplexDd {
            re: self.re + b.re,
            im: self.im + b.im,
        }
    }
}

impl Mul for ComplexDd {
    type Output = Self;
    #[inline]
    fn mul(self, b: Self) -> Self {
        ComplexDd {
            re: self.re * b.re - self.im * b.im,
            im: self.re * b.im + self.im * b.re,
        }
    }
}
