/// Crate-wide error type.
#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    /// Input outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A series or iteration failed to reach the requested accuracy.
    /// Carries the best value obtained and an error estimate for it.
    #[error("accuracy error in {context}: estimated relative error {estimate:.3e}")]
    Accuracy {
        context: String,
        /// Best available value.
        partial: f64,
        /// Estimated relative error of `partial`.
        estimate: f64,
    },

    /// A recursion family degenerated (vanishing leading coefficient,
    /// or a model parameter that collapses the family).
    #[error("degenerate: {0}")]
    Degenerate(String),

    /// Every eigenvalue of the angular matrix is non-positive; no real
    /// angular quantum number exists. Increase |m|.
    #[error("supercritical dipole coupling for m = {m}: no real angular quantum number; increase |m|")]
    Supercritical { m: u32 },

    /// A search (root bracketing, bisection on a coupling) found nothing
    /// in the probed range.
    #[error("not found: {0}")]
    NotFound(String),

    /// A grid is too coarse for the requested finite-difference check.
    #[error("resolution error: {0}")]
    Resolution(String),

    /// The potential has no regular solution at the origin (attractive
    /// supercritical singularity).
    #[error("no regular solution: {0}")]
    NoRegularSolution(String),

    /// Both phase sums vanished; the phase shift is undefined.
    #[error("undefined phase: S and C sums are both zero")]
    UndefinedPhase,
}

pub type Result<T> = std::result::Result<T, Error>;
