//! Numerical verification of Hermite–Hadamard–Fejér type inequalities for
//! GA-convex functions and Hadamard fractional integrals.
//!
//! The crate is organised bottom-up:
//!
//! - [`numerics`]: means, the gamma function, and adaptive Gauss–Kronrod
//!   quadrature (including integrands with an endpoint power singularity).
//! - [`expr`]: a small expression language for user supplied functions, with
//!   symbolic differentiation.
//! - [`fractional`]: left- and right-sided Hadamard fractional integrals.
//! - [`convexity`]: sampling certifiers for GA-, s-GA-convexity and geometric
//!   symmetry, plus seeded generators of test functions.
//! - [`inequalities`]: evaluators for both sides of every identity and bound.
//! - [`suite`]: single evaluations and seeded fuzz suites producing
//!   line-oriented reports.
//!
//! With the default `parallel` feature the batch loops run on rayon; without
//! it everything executes sequentially with identical results.

pub mod convexity;
pub mod error;
pub mod expr;
pub mod fractional;
pub mod inequalities;
pub mod numerics;
pub mod par;
pub mod suite;

pub use error::{Error, Result};
