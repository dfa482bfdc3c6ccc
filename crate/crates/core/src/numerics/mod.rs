//! Small dense linear algebra, quadrature, orthogonal polynomials and
//! elementary analytic bounds.

mod bounds;
pub mod dd;
mod half;
pub mod mat4;
mod matrix;
mod poly;
mod quadrature;

pub use num_complex::Complex64 as Complex;

pub use bounds::{gaussian_ridge_integral, gaussian_ridge_ratio, ridge_sup, tail_bound, TailBound};
pub use half::{Half, ParseHalfError};
pub use mat4::{det4, frobenius4, max_abs4, mul4, sub4, sym_eigen4, transpose4, Mat4, IDENTITY4};
pub use matrix::DenseMatrix;
pub use poly::{
    jacobi, jacobi_zero_scaled, legendre, legendre_sequence, ln_binomial, ln_factorial, JacobiZero,
};
pub use quadrature::{adaptive_simpson, circle_quadrature, gauss_legendre};
