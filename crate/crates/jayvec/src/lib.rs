//! Vector algebra over the split-complex numbers and its conic geometry.
//!
//! A *bivector* `a + ib` (with `i^2 = -1`) encodes an ellipse: its real and
//! imaginary parts form a pair of conjugate semi-diameters. Replacing `i` by
//! the *jay* unit `j` (with `j^2 = +1`) gives a *jay-vector* `a + jb`, which
//! encodes a hyperbola together with its conjugate. This crate implements
//! both algebras and the geometry that follows from them:
//!
//! - [`jay`]: split-complex scalar arithmetic (`exp`, conjugation, zero
//!   divisors).
//! - [`dirvec`]: bivectors and jay-vectors, conjugate semi-diameter (CSD)
//!   sweeps by rotation and boost, principal axes, isotropy, orthogonal
//!   companions.
//! - [`conics`]: ellipses and conjugate hyperbola pairs from CSD pairs,
//!   reciprocal pairs, implicit forms, asymptotes, eccentricity.
//! - [`quadrics`]: triads of conjugate semi-diameters on ellipsoids and
//!   hyperboloid pairs, reciprocal triads, pseudo-rotations, and the complex
//!   rotations they induce.
//! - [`planewave`]: exponential plane-wave solutions of second-order
//!   constant-coefficient PDEs built from central sections of the operator's
//!   quadric, with analytic and finite-difference residual checks.
//!
//! All geometry is over `f64`. Three-dimensional vectors are
//! [`nalgebra::Vector3<f64>`], re-exported as [`Vec3`].

pub mod conics;
pub mod dirvec;
pub mod error;
pub mod jay;
pub mod planewave;
pub mod quadrics;
pub mod serde_util;
pub mod tol;

pub use error::{Error, Result};
pub use jay::JayScalar;

/// Real 3-vector used throughout the crate.
pub type Vec3 = nalgebra::Vector3<f64>;

/// Real symmetric or general 3x3 matrix used throughout the crate.
pub type Mat3 = nalgebra::Matrix3<f64>;

#[cfg(doctest)]
mod book;
