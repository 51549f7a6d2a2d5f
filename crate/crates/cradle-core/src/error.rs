//! Error type shared by every module of the crate.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Parameters violate a structural constraint (positivity region,
    /// parity conditions, missing provenance, ...).
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    /// Parameters sit at a degenerate boundary value (c in {0,1} for a
    /// free-free chain, alpha in {0,1} for a deformation).
    #[error("degenerate parameters: {0}")]
    DegenerateParameters(String),

    /// Two analytic eigenvalues coincide within tolerance.
    #[error("degenerate spectrum: lambda[{0}] and lambda[{1}] coincide within tolerance")]
    DegenerateSpectrum(usize, usize),

    /// A supplied spectrum point is not an eigenvalue of the matrix.
    #[error("spectrum mismatch: mode {mode} has residual {residual:.3e} (tolerance {tol:.3e})")]
    SpectrumMismatch {
        mode: usize,
        residual: f64,
        tol: f64,
    },

    /// Operation defined only for persymmetric matrices.
    #[error("persymmetric matrix required (asymmetry {0:.3e})")]
    PersymmetryRequired(f64),

    /// A weight, off-diagonal entry or gamma component crossed zero.
    #[error("positivity violation: {0}")]
    PositivityViolation(String),

    /// Removal set not of the form {0}, {N} or a consecutive pair.
    #[error("unsupported surgery: {0}")]
    UnsupportedSurgery(String),

    /// Jacobi matrix cannot be realized as a free-free chain.
    #[error("not realizable as a free-free chain: {0}")]
    NotRealizable(String),

    /// Requested integrator step exceeds the stability margin.
    #[error("time step too large: dt {dt:.3e} exceeds bound {bound:.3e}")]
    StepTooLarge { dt: f64, bound: f64 },

    /// Revival times strictly inside (0, t*) do not exist (Z = 2).
    #[error("no fractional revival possible: {0}")]
    NoRevivalPossible(String),

    /// Malformed chain document.
    #[error("document error: {0}")]
    Document(String),
}
