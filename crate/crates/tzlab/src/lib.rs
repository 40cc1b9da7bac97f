//! Numerical laboratory for the Tzitzéica equation `u_tt - u_xx = e^{-2u} - e^u`.
//!
//! The crate has two independent routes from Schwartz-class initial data to the
//! field at large time, plus the machinery to compare them:
//!
//! * the forward scattering transform ([`scattering`]) built on the 3x3 Lax pair
//!   of [`spectral`], producing reflection-coefficient tables,
//! * the explicit leading-order long-time formula ([`asympt`]) evaluated from
//!   those tables,
//! * a direct finite-difference solver ([`pde`]) acting as ground truth,
//! * a comparison harness ([`harness`]) that quantifies the agreement and the
//!   decay law of the error.
//!
//! All numerical state is `f64`/`Complex64`; every pipeline stage is a pure
//! function of its inputs, so sweeps parallelize freely.

pub mod asympt;
pub mod config;
pub mod csvio;
pub mod data;
pub mod error;
pub mod gamma;
pub mod harness;
pub mod interp;
pub mod mat3;
pub mod ode;
pub mod pde;
pub mod scattering;
pub mod spectral;
pub mod validation;

pub use error::{Error, Result};
