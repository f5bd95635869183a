//! Massless particles as unitary representations of the Poincare group.
//!
//! The crate builds the boosting bundle (helicity wave functions with Wigner
//! phases), perception bundles that carry gauge freedom (photon, graviton and
//! a general spin-s tower), the first Chern number of the helicity line
//! bundles, and the parity extension of the double cover.

pub mod boosting;
pub mod chern;
pub mod config;
pub mod error;
pub mod fields;
pub mod graviton;
pub mod linalg;
pub mod little_group;
pub mod lorentz;
pub mod mass_shell;
pub mod parity;
pub mod perception;
pub mod photon;
pub mod quadrature;
pub mod report;
pub mod spacetime;
pub mod spin_tower;
pub mod suites;
pub mod tolerances;

pub use error::{Error, Result};
pub use num_complex::Complex64 as C64;
