//! Numerical and exact verification of elliptic hypergeometric integral
//! evaluations, their modular relations, and the affine Macdonald-type
//! evaluations they specialise to.

pub mod bridge;
pub mod catalog;
pub mod contour;
pub mod error;
pub mod identities;
pub mod integrals;
pub mod kernel;
pub mod qseries;
pub mod report;
pub mod sampling;
pub mod suite;

pub use error::{Error, Result};
pub use kernel::{Real, C64};
