//! Exact computer algebra for DAHA-Jones polynomials of torus knots,
//! positive hyperpolynomial lifts for `E6`, and spectra of plane-curve
//! singularities read off Newton diagrams.

pub mod dahajones;
pub mod error;
pub mod golden;
pub mod hyperlift;
pub mod macdonald;
pub mod polyrep;
pub mod qtcoeff;
pub mod rootsys;
pub mod singularity;

pub use error::{Error, Result};
