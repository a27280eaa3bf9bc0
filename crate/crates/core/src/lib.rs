//! Numerical laboratory for finite-time blow up in the nonlinear heat equation
//!
//! ```text
//! u_t = u_xx + u^2,   u(x, 0) 2pi-periodic
//! ```
//!
//! The crate integrates the truncated Fourier-mode system with adaptive
//! error-controlled stepping (switching to the reciprocal variable v = 1/u
//! close to blow up), estimates the motion of the closest complex-plane
//! singularities by three independent routes, and cross-validates them:
//!
//! * [`tracker`] infers the singularity height y* and exponent mu from the
//!   decay of the Fourier coefficients, `|c_k| ~ |C| k^(mu-1) exp(-k y*)`.
//! * [`pade`] continues a Fourier state into the complex strip by rational
//!   and quadratic (square-root carrying) approximants in w = exp(iz).
//! * [`asym`] evaluates the closed-form estimates for every parameter regime
//!   (small time, large/small amplitude, blow-up limit, heat death).
//! * [`ode`] solves the model equation `phi'' - phi' = phi^2` along complex
//!   paths with an adaptive Pade one-step ("pole field") method, including
//!   continuation onto secondary Riemann sheets, and compares the far-field
//!   singularity lattice with the equianharmonic Weierstrass function.

pub mod asym;
pub mod config;
pub mod error;
pub mod fourier;
pub mod initial;
pub mod io;
pub mod ode;
pub mod pade;
pub mod quadrature;
pub mod rk;
pub mod solver;
pub mod state;
pub mod tracker;

pub use error::{Error, Result};
pub use initial::InitialDataSpec;
pub use solver::{SolveOptions, SolveTrajectory, Termination};
pub use state::{FourierState, Representation};

/// Complex double used throughout.
pub type C64 = num_complex::Complex64;
