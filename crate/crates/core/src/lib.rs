//! Exact orbit-method invariants for nilpotent Lie algebras and numerical
//! harmonic analysis on Heisenberg groups and their Gelfand pairs.
//!
//! The crate is layered bottom-up:
//!
//! * [`exact_algebra`]: rationals, matrices, Pfaffians, multivariate polynomials.
//! * [`lie_core`]: nilpotent Lie algebras given by structure constants.
//! * [`orbit_method`]: skew forms, radicals, polarizations, Pfaffian polynomials,
//!   formal degrees and Plancherel densities.
//! * [`special`]: Gauss quadrature rules, Hermite/Laguerre/Bessel functions.
//! * [`heisenberg_model`]: truncated Schrödinger model of `H_m`.
//! * [`spherical_analysis`]: Bessel and Laguerre spherical functions.
//! * [`nilmanifold_registry`]: embedded Kač and Vinberg tables, multiplicity checks.

pub mod exact_algebra;
pub mod heisenberg_model;
pub mod lie_core;
pub mod nilmanifold_registry;
pub mod orbit_method;
pub mod special;
pub mod spherical_analysis;

pub use num_complex::Complex64;
pub use num_rational::BigRational;
