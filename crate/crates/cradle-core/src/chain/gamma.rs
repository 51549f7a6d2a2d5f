//! Fixed-fixed reconstruction through the gamma sums.
//!
//! With both ends tied to walls the matrix A is invertible and the masses
//! follow from gamma_i = sum_s U_{2s,i} U_{2s,0} / lambda_{2s} over the even
//! modes. No closed form is known for these sums, so they are evaluated from
//! the eigenbasis.

use super::{ChainSpec, Provenance};
use crate::error::{Error, Result};
use crate::params::{Boundary, ChainParams, ScaleKind};
use crate::rational::rat;
use crate::spectral::{self, EigenBasis};

/// The gamma vector of a fixed-fixed eigenbasis.
#[derive(Debug, Clone)]
pub struct GammaVector {
    pub gamma: Vec<f64>,
}

impl GammaVector {
    /// Largest relative deviation from the mirror symmetry
    /// gamma_i = gamma_{N-i}.
    pub fn mirror_defect(&self) -> f64 {
        let n = self.gamma.len() - 1;
        let scale = self
            .gamma
            .iter()
            .fold(f64::MIN_POSITIVE, |a, x| a.max(x.abs()));
        (0..=n)
            .map(|i| (self.gamma[i] - self.gamma[n - i]).abs())
            .fold(0.0f64, f64::max)
            / scale
    }
}

/// gamma_i = sum over even modes of U_{2s,i} U_{2s,0} / lambda_{2s}.
///
/// Requires a strictly positive spectrum; every component must keep the sign
/// of gamma_0 > 0 for the chain to be realizable.
pub fn gamma_vector(basis: &EigenBasis) -> Result<GammaVector> {
    let n = basis.n_sites();
    if basis.lambdas[0] <= 0.0 {
        return Err(Error::InvalidParameters(
            "gamma sums need a strictly positive spectrum (fixed-fixed)".into(),
        ));
    }
    let gamma: Vec<f64> = (0..n)
        .map(|i| {
            (0..n)
                .step_by(2)
                .map(|m| basis.entry(m, i) * basis.entry(m, 0) / basis.lambdas[m])
                .sum()
        })
        .collect();
    if let Some((i, g)) = gamma.iter().enumerate().find(|(_, g)| **g <= 0.0) {
        return Err(Error::PositivityViolation(format!(
            "gamma_{i} = {g} changed sign; chain not realizable"
        )));
    }
    Ok(GammaVector { gamma })
}

/// Mirror-symmetric fixed-fixed chain from the gamma-sum reconstruction.
pub fn build_fixed_fixed(params: &ChainParams) -> Result<ChainSpec> {
    params.validate()?;
    if params.boundary != Boundary::FixedFixed {
        return Err(Error::InvalidParameters(
            "build_fixed_fixed needs fixed-fixed parameters; a = 0 chains are free-free".into(),
        ));
    }
    if params.alpha != rat(1, 2) {
        return Err(Error::InvalidParameters(
            "mirror-symmetric construction needs alpha = 1/2; use build_deformed".into(),
        ));
    }
    let jac = spectral::recurrence_coefficients(params)?;
    let spec = spectrum_of(params)?;
    let basis = spectral::eigenbasis(&jac, &spec)?;
    let gv = gamma_vector(&basis)?;
    let n_last = params.last_index();
    let g0 = gv.gamma[0];

    // dimensionless building blocks: m_i/m_0 = (gamma_i/gamma_0)^2,
    // K_i/m_0 = (gamma_{i-1} gamma_i / gamma_0^2) sqrt(u_i),
    // K_0/m_0 = K_{N+1}/m_0 = 1/(2 gamma_0)
    let mass_ratio: Vec<f64> = gv.gamma.iter().map(|g| (g / g0) * (g / g0)).collect();
    let spring_over_m0 = |i: usize| -> f64 {
        gv.gamma[i - 1] * gv.gamma[i] / (g0 * g0) * jac.u_at(i).sqrt()
    };
    let boundary_over_m0 = 1.0 / (2.0 * g0);

    let m0 = match params.scale_kind {
        ScaleKind::Mass => params.scale,
        // K_0 fixed instead: m_0 = K_0 / (K_0/m_0)
        ScaleKind::Spring => params.scale / boundary_over_m0,
    };

    let masses: Vec<f64> = mass_ratio.iter().map(|r| m0 * r).collect();
    let mut springs = Vec::with_capacity(n_last + 2);
    springs.push(m0 * boundary_over_m0);
    for i in 1..=n_last {
        springs.push(m0 * spring_over_m0(i));
    }
    springs.push(m0 * boundary_over_m0);

    ChainSpec::new(
        masses,
        springs,
        Boundary::FixedFixed,
        Provenance::GammaSum,
        Some(params.clone()),
    )
}

fn spectrum_of(params: &ChainParams) -> Result<crate::spectral::BiLatticeSpectrum> {
    spectral::spectrum(params)
}
