//! Irreducible representations of SU(2), Wigner coefficients and the
//! eigenvalue table `c_p^ell` of the conjugation-averaged operators.

mod cpl;
mod invariant;
mod irrep;

pub use cpl::{
    cpl_group_average, cpl_group_average_row, cpl_integral, cpl_jacobi, envelope_shape,
    fit_envelope, identify_jacobi_convention, jacobi_convention_candidates, CplMethod, CplTable,
    EnvelopeFit, JacobiConvention, CALIBRATION_POINTS,
};
pub use invariant::so2_invariant_vector;
pub use irrep::{basis_index, basis_norm_sq, irrep, irrep_column, wigner_coeff, IrrepMatrix};
