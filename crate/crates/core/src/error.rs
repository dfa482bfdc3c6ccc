use core::fmt;

use crate::numerics::Half;
use crate::operators::SchattenResult;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    NonFiniteIntegrand,
    NonFiniteSample,
    OutOfDomain {
        what: &'static str,
        value: f64,
    },
    DivergentTail {
        alpha: f64,
    },
    ShapeMismatch {
        expected: usize,
        found: usize,
    },
    InvalidSpin {
        twice: i64,
    },
    IndexMismatch {
        ell: Half,
        p: Half,
    },
    NonPositiveRadius {
        r: f64,
    },
    ImaginaryResidue {
        residue: f64,
    },
    NoInvariantVector {
        ell: Half,
    },
    NotSymplectic {
        residual: f64,
    },
    NotUnitary {
        residual: f64,
    },
    NegativeEntry {
        name: &'static str,
        value: f64,
    },
    DegenerateCircle {
        modulus: f64,
    },
    InconsistentCover {
        mismatch: f64,
    },
    NotInWeylChamber {
        beta: f64,
        gamma: f64,
    },
    InvalidExponent {
        value: f64,
        min: f64,
    },
    InvalidParameter {
        name: &'static str,
        value: f64,
    },
    EmptyGrid,
    /// The certified tail target cannot be met within the truncation cap.
    TruncationFailure {
        partial: SchattenResult,
    },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NonFiniteIntegrand => write!(f, "non-finite integrand"),
            Error::NonFiniteSample => write!(f, "non-finite sample"),
            Error::OutOfDomain { what, value } => write!(f, "out of domain: {what} = {value}"),
            Error::DivergentTail { alpha } => write!(f, "divergent tail: alpha = {alpha} <= 1"),
            Error::ShapeMismatch { expected, found } => {
                write!(
                    f,
                    "shape mismatch: expected {expected} entries, found {found}"
                )
            }
            Error::InvalidSpin { twice } => write!(f, "invalid spin: 2*ell = {twice}"),
            Error::IndexMismatch { ell, p } => write!(f, "index mismatch: p = {p} for ell = {ell}"),
            Error::NonPositiveRadius { r } => write!(f, "radius must be positive, got {r}"),
            Error::ImaginaryResidue { residue } => {
                write!(f, "imaginary residue {residue:e} exceeds tolerance")
            }
            Error::NoInvariantVector { ell } => write!(f, "no invariant vector for ell = {ell}"),
            Error::NotSymplectic { residual } => write!(f, "not symplectic: residual {residual:e}"),
            Error::NotUnitary { residual } => write!(f, "not unitary: residual {residual:e}"),
            Error::NegativeEntry { name, value } => {
                write!(f, "{name} must be non-negative, got {value}")
            }
            Error::DegenerateCircle { modulus } => {
                write!(f, "degenerate c(g): |det| = {modulus:e}")
            }
            Error::InconsistentCover { mismatch } => {
                write!(
                    f,
                    "inconsistent cover element: |e^(it) - c(g)| = {mismatch:e}"
                )
            }
            Error::NotInWeylChamber { beta, gamma } => {
                write!(
                    f,
                    "not in closed Weyl chamber: beta = {beta}, gamma = {gamma}"
                )
            }
            Error::InvalidExponent { value, min } => {
                write!(f, "exponent {value} must exceed {min}")
            }
            Error::InvalidParameter { name, value } => write!(f, "invalid {name}: {value}"),
            Error::EmptyGrid => write!(f, "empty grid"),
            Error::TruncationFailure { partial } => write!(
                f,
                "truncation failure: tail {:e} at lmax {} (partial value {})",
                partial.tail, partial.lmax, partial.value
            ),
        }
    }
}

impl core::error::Error for Error {}
