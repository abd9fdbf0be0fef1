//! Labeled spectra of periodic second- and fourth-order differential
//! operators, and numerical verification of their trace formulas.
//!
//! The crate is `no_std` (with `alloc`). Everything here is a pure function
//! of its inputs:
//!
//! - [`trigpoly`]: exact arithmetic on real trigonometric polynomials, the
//!   representation of the coefficients `p`, `q` and of the effective
//!   potential `V = q - p'' - p^2`.
//! - [`assemble`]: Galerkin matrices of `y'''' + 2(p y')' + q y` and
//!   `-y'' + w y` with 2-periodic or Dirichlet-type boundary conditions,
//!   plus an independent finite-difference oracle.
//! - [`eigen`]: dense symmetric eigensolver and banded inertia bisection.
//! - [`spectra`]: labeled periodic and Dirichlet spectra, asymptotics.
//! - [`traceform`]: trace formulas, the Fourier identity for `F(lambda)`
//!   and the resolvent contour functional.
#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod assemble;
pub mod eigen;
mod error;
pub mod spectra;
pub mod traceform;
pub mod trigpoly;

pub use error::{Error, Result};
pub use num_complex::Complex64;
