//! Analytic mass-spring chains with dispersionless perfect pulse transfer
//! and fractional revival.
//!
//! The construction starts from a quadratic bi-lattice spectrum (the
//! orthogonality lattice of the para-Racah polynomials), assembles the
//! persymmetric Jacobi matrix of the family from its three-term recurrence,
//! and converts it into physical masses and springs for free-free and
//! fixed-fixed boundary conditions. Isospectral deformation trades perfect
//! transfer for tunable fractional revival; Christoffel spectral surgery
//! removes eigenvalues to create smaller chains with the same behavior.
//! Dynamics run both as exact normal-mode sums and through an independent
//! symplectic integrator, and certification helpers compare the two against
//! the closed-form transfer and revival amplitudes.
//!
//! Modules follow the pipeline:
//! - [`params`]: chain parameters and validation;
//! - [`spectral`]: spectra, Jacobi matrices, eigenbases, deformation,
//!   surgery;
//! - [`chain`]: physical chains (masses and springs) and reconstruction;
//! - [`dynamics`]: evolution, perfect-transfer / revival / conservation
//!   certificates;
//! - [`oracle`]: independent dense eigensolver used for cross-checks;
//! - [`document`]: the serialized chain-document format.

pub mod chain;
pub mod document;
pub mod dynamics;
pub mod error;
pub mod oracle;
pub mod params;
pub mod rational;
pub mod spectral;
pub mod tol;

pub use error::{Error, Result};
pub use params::{Boundary, ChainParams, ParamValue, ScaleKind};
pub use rational::Rat;
pub use spectral::{BiLatticeSpectrum, EigenBasis, JacobiSpec};
