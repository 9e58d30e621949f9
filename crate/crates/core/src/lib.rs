//! Tridiagonal-representation solutions of the radial Schrödinger scattering
//! problem in discrete-index Bessel bases.
//!
//! The wavefunction is expanded as `ψ(r) = C₀ √(kr) Σₙ cₙ J_{σ(n)+ν}(kr)`,
//! where the expansion coefficients satisfy a model-specific three-term
//! recursion in a dimensionless spectral variable. The crate provides
//!
//! * [`specfun`] — Bessel J of arbitrary real order (with batched discrete
//!   indices and zeros), gamma magnitudes, the confluent hypergeometric
//!   series, and Lommel polynomials;
//! * [`recursion`] — the three-term recursion engine for every coefficient
//!   family, plus growth/asymptotics diagnostics;
//! * [`potentials`] — the solvable potential models, their parameter
//!   validation and spectral maps, and a finite-difference residual checker;
//! * [`dipole`] — the symmetric tridiagonal eigenproblem that yields the
//!   dipole-modified angular quantum number χ and the critical dipole moment;
//! * [`scattering`] — series assembly, phase-shift extraction, the exact
//!   Coulomb reference solution, exponential-potential bound states, and an
//!   independent Runge–Kutta oracle;
//! * [`validation`] — numerical verification of the Weber–Schafheitlin
//!   orthogonality integrals and the discrete Lommel orthogonality over
//!   Bessel zeros.
//!
//! All computations are pure functions of their inputs; there is no global
//! state and results are deterministic.

// Negated comparisons like `!(x > 0.0)` are used on purpose throughout:
// they reject NaN along with the out-of-range values. Numeric literals keep
// their full published digits even where f64 rounds them.
#![allow(clippy::neg_cmp_op_on_partial_ord)]
#![allow(clippy::excessive_precision)]

pub mod dipole;
mod error;
pub mod potentials;
pub mod recursion;
pub mod scattering;
pub mod specfun;
pub mod validation;

pub use error::{Error, Result};
