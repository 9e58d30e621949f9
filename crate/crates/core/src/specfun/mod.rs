//! Special-function kernel: Bessel J of arbitrary real order (single,
//! batched, zeros), gamma magnitudes, the confluent hypergeometric series,
//! and Lommel polynomials. Everything is a pure function; nothing here
//! holds state.

mod bessel;
mod dd;
mod gamma;
mod hyp1f1;
mod lommel;

pub use bessel::{bessel_batch, bessel_j, bessel_j_prime, bessel_zeros, BesselBatch, Parity,
                 discrete_bessel};
pub use gamma::{gamma_abs, gamma_real, log_gamma};
pub use hyp1f1::{hyp1f1, hyp1f1_series};
pub use lommel::lommel_h;

pub(crate) use gamma::ln_gamma_complex;

use crate::{Error, Result};

/// Requested accuracy for series evaluations.
#[derive(Debug, Clone, Copy)]
pub struct AccuracyPolicy {
    /// Relative tolerance, in (0, 1e-3].
    pub rel_tol: f64,
    /// Series term cap, at least 16.
    pub max_terms: usize,
}

impl AccuracyPolicy {
    pub fn new(rel_tol: f64, max_terms: usize) -> Result<Self> {
        if !(rel_tol > 0.0 && rel_tol <= 1e-3) {
            return Err(Error::Domain(format!(
                "AccuracyPolicy: rel_tol {rel_tol} not in (0, 1e-3]"
            )));
        }
        if max_terms < 16 {
            return Err(Error::Domain(format!(
                "AccuracyPolicy: max_terms {max_terms} < 16"
            )));
        }
        Ok(AccuracyPolicy { rel_tol, max_terms })
    }
}

impl Default for AccuracyPolicy {
    fn default() -> Self {
        AccuracyPolicy { rel_tol: 1e-12, max_terms: 500 }
    }
}
