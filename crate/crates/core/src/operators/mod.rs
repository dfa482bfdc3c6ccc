//! Spectral models of the averaging operators `T_theta` and `S_theta` and
//! certified Schatten-norm evaluation of their differences.

mod holder;
mod s;
mod t;

use crate::numerics::Half;

pub use holder::{
    holder_fit, holder_fit_using, holder_fit_with, HolderFit, HolderPoint, NormKind, SkipReason,
};
pub use s::{
    fitted_envelope_constant, s_operator_norm, s_tail, schatten_s, schatten_s_truncated,
    schatten_s_using, schatten_s_with, Extender, SOptions, SRowBlock, SWeights, SpectralModelS,
};
pub use t::{
    schatten_t, schatten_t_pair, t_eigenvalue, t_eigenvalue_fast, t_eigenvalues,
    t_envelope_constant, t_operator_norm, t_tail, SpectralModelT, TOptions,
};

/// Why a result carries no finite certificate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Warning {
    /// The exponent lies below the range where the tail sum is known to converge.
    ExponentBelowRange,
}

/// A truncated Schatten sum with a rigorous bound on the discarded part.
///
/// `q` is `f64::INFINITY` in operator-norm mode; `tail` then bounds every
/// discarded singular value instead of the sum of their `q`-th powers.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SchattenResult {
    pub q: f64,
    pub value: f64,
    pub lmax: Half,
    pub tail: f64,
    pub certified: bool,
    pub warning: Option<Warning>,
}

impl SchattenResult {
    pub fn zero(q: f64) -> Self {
        SchattenResult {
            q,
            value: 0.0,
            lmax: Half::ZERO,
            tail: 0.0,
            certified: true,
            warning: None,
        }
    }

    /// `[value, (value^q + tail)^{1/q}]`.
    pub fn certified_interval(&self) -> (f64, f64) {
        if self.q.is_infinite() {
            (self.value, f64::max(self.value, self.tail))
        } else {
            let hi = libm::pow(libm::pow(self.value, self.q) + self.tail, 1.0 / self.q);
            (self.value, hi)
        }
    }
}
