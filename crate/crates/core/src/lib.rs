//! Quasihomogeneous Toeplitz operators on the Bergman space.
//!
//! Symbols `e^{ikθ}φ(r)` act as weighted shifts on the monomial basis, with
//! weights given by Mellin transforms of the radial part. This crate keeps
//! those Mellin values exact (rationals plus rational multiples of ln 2)
//! wherever the closed term algebra allows, and falls back to adaptive
//! quadrature and accelerated series otherwise. On top of the operator layer
//! it solves commutant equations as exact null-space problems and replays
//! the commutant classification for `T_{z²+z̄²}` step by step.

pub mod commutant;
pub mod error;
pub mod mellin;
pub mod operator;
pub mod quad;
pub mod radial;
pub mod scalar;
pub mod verify;

pub use error::{Error, Result};
