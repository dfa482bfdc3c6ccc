use core::fmt;
use core::ops::Neg;
use core::str::FromStr;

/// A half-integer stored as twice its value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Half(i64);

impl Half {
    pub const ZERO: Half = Half(0);
    pub const ONE_HALF: Half = Half(1);

    pub const fn from_twice(twice: i64) -> Self {
        Half(twice)
    }

    pub const fn from_int(n: i64) -> Self {
        Half(2 * n)
    }

    /// Exact conversion; `None` unless `2x` is an integer.
    pub fn from_f64(x: f64) -> Option<Self> {
        let t = 2.0 * x;
        if t.is_finite() && libm::round(t) == t && libm::fabs(t) < 9.0e15 {
            Some(Half(t as i64))
        } else {
            None
        }
    }

    pub const fn twice(self) -> i64 {
        self.0
    }

    pub fn to_f64(self) -> f64 {
        self.0 as f64 * 0.5
    }

    pub const fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }

    pub const fn abs(self) -> Self {
        Half(self.0.abs())
    }

    /// True when `self - other` is an integer.
    pub const fn same_lattice(self, other: Half) -> bool {
        (self.0 - other.0) % 2 == 0
    }
}

impl Neg for Half {
    type Output = Half;

    fn neg(self) -> Half {
        Half(-self.0)
    }
}

impl fmt::Display for Half {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 % 2 == 0 {
            write!(f, "{}", self.0 / 2)
        } else if self.0 < 0 {
            write!(f, "-{}.5", (-self.0) / 2)
        } else {
            write!(f, "{}.5", self.0 / 2)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseHalfError;

impl fmt::Display for ParseHalfError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "expected a half-integer such as 3 or 1.5")
    }
}

impl core::error::Error for ParseHalfError {}

impl FromStr for Half {
    type Err = ParseHalfError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if let Some((num, den)) = s.split_once('/') {
            let num: i64 = num.trim().parse().map_err(|_| ParseHalfError)?;
            return match den.trim() {
                "1" => Ok(Half(2 * num)),
                "2" => Ok(Half(num)),
                _ => Err(ParseHalfError),
            };
        }
        let x: f64 = s.parse().map_err(|_| ParseHalfError)?;
        Half::from_f64(x).ok_or(ParseHalfError)
    }
}
