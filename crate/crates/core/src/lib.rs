//! Numerical verification of the harmonic analysis of SU(2) averaging
//! operators and of the KAK and universal-cover structure of Sp(2,R).
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod envelope;
pub mod error;
pub mod numerics;
pub mod operators;
pub mod quasimorphism;
pub mod su2;
pub mod symplectic;
pub mod wigner;

pub use error::{Error, Result};
