//! Default tolerances, stated once and reused.
//!
//! Three tiers:
//! - structural identities that hold exactly in rational arithmetic and only
//!   pick up f64 rounding on conversion,
//! - spectral and orthogonality residuals of the eigen machinery,
//! - dynamics cross-checks (analytic mode sums vs. the ODE oracle).

/// Structural identities: persymmetry defects, gamma mirror symmetry.
pub const STRUCTURAL: f64 = 1e-12;

/// Spectral residuals: eigenvalue agreement (relative to the spectral
/// radius), orthogonality of eigenvector rows, round trips through
/// chain reconstruction.
pub const SPECTRAL: f64 = 1e-10;

/// Dynamics checks on analytic (mode-sum) trajectories.
pub const DYNAMICS: f64 = 1e-8;

/// Pointwise agreement between the leapfrog oracle and the mode sum,
/// in units of the pulse amplitude.
pub const ODE_CROSS: f64 = 1e-5;

/// Relative energy drift allowed for the leapfrog integrator at the
/// automatically chosen step.
pub const ODE_ENERGY: f64 = 1e-8;

/// Interior-residual threshold for revival detection on ODE trajectories,
/// where integrator truncation dominates.
pub const ODE_INTERIOR: f64 = 1e-4;

/// Characteristic-polynomial vanishing, relative to the largest magnitude
/// reached along the three-term recurrence.
pub const CHAR_POLY: f64 = 1e-8;
