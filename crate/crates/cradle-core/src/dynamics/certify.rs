//! Certificates: perfect transfer, fractional revival, mirror reversal and
//! conservation laws, each compared against its closed-form prediction.

use super::{energy, Prepared, State, Trajectory};
use crate::error::{Error, Result};
use crate::params::{Boundary, ChainParams};
use crate::rational::rat;
use std::f64::consts::PI;

/// Outcome of a perfect-transfer check at t*.
#[derive(Debug, Clone)]
pub struct TransferReport {
    /// True when the pulse reappears entirely on the last mass.
    pub achieved: bool,
    pub t_star: f64,
    /// p_0(t*) / p_bar.
    pub first_amplitude: f64,
    /// p_N(t*) / p_bar.
    pub last_amplitude: f64,
    /// Sign of the transferred pulse.
    pub sign: i8,
    /// max |p_i(t*)| / p_bar over interior sites.
    pub interior_residual: f64,
}

/// One revival time in a revival report.
#[derive(Debug, Clone)]
pub struct RevivalSample {
    pub ell: u64,
    pub tau: f64,
    /// Measured (p_0, p_N)/p_bar.
    pub measured: (f64, f64),
    /// Closed-form prediction for (p_0, p_N)/p_bar.
    pub predicted: (f64, f64),
    pub interior_residual: f64,
}

/// Outcome of the revival schedule check.
#[derive(Debug, Clone)]
pub struct RevivalReport {
    pub samples: Vec<RevivalSample>,
    pub max_prediction_error: f64,
    pub max_interior_residual: f64,
    pub achieved: bool,
}

/// Energy and momentum drift along a trajectory.
#[derive(Debug, Clone)]
pub struct ConservationReport {
    pub initial_energy: f64,
    /// max |E(t) - E(0)| / |E(0)|.
    pub energy_drift: f64,
    /// max |sum P(t) - sum P(0)|; only meaningful for free boundaries.
    pub momentum_drift: Option<f64>,
}

/// Evolves the pulse initial condition to t* and reports the terminal
/// amplitudes. `tol` is the residual threshold in units of p_bar.
pub fn verify_perfect_transfer(prep: &Prepared, tol: f64) -> Result<TransferReport> {
    let t_star = prep.t_star()?;
    let initial = State::pulse(&prep.chain, 1.0);
    let last = prep.chain.last_index();
    let final_state = prep.evolve(&initial, t_star);
    let first_amplitude = final_state.p[0];
    let last_amplitude = final_state.p[last];
    let interior_residual = final_state.p[1..last]
        .iter()
        .map(|x| x.abs())
        .fold(0.0f64, f64::max);
    let achieved = (last_amplitude.abs() - 1.0).abs() < tol
        && interior_residual < tol
        && first_amplitude.abs() < tol;
    Ok(TransferReport {
        achieved,
        t_star,
        first_amplitude,
        last_amplitude,
        sign: if last_amplitude >= 0.0 { 1 } else { -1 },
        interior_residual,
    })
}

/// Closed-form (p_0, p_N)/p_bar at tau_ell, dispatched on boundary type and
/// deformation.
pub fn revival_prediction(params: &ChainParams, ell: u64) -> Result<(f64, f64)> {
    let a = params.a.to_f64();
    let c = params.c.to_f64();
    let alpha = crate::rational::to_f64(&params.alpha);
    let lf = ell as f64;
    let mirror = params.alpha == rat(1, 2);
    Ok(match (params.boundary, mirror) {
        (Boundary::FreeFree, true) => {
            let (s, co) = (lf * c * PI).sin_cos();
            (co * co, s * s)
        }
        (Boundary::FreeFree, false) => {
            let s2 = (lf * c * PI).sin().powi(2);
            (
                1.0 - 2.0 * alpha * s2,
                2.0 * (alpha * (1.0 - alpha)).sqrt() * s2,
            )
        }
        (Boundary::FixedFixed, true) => (
            ((c + a) * lf * PI).cos() * ((c - a) * lf * PI).cos(),
            ((c + a) * lf * PI).sin() * ((c - a) * lf * PI).sin(),
        ),
        (Boundary::FixedFixed, false) => {
            let ca = (2.0 * lf * a * PI).cos();
            let cc = (2.0 * lf * c * PI).cos();
            (
                (1.0 - alpha) * ca + alpha * cc,
                (alpha * (1.0 - alpha)).sqrt() * (ca - cc),
            )
        }
    })
}

/// Evolves the pulse to every revival time tau_ell and compares the end
/// amplitudes with the closed-form prediction. Needs Z > 2: the c = 1/2
/// family has no revival time strictly inside (0, t*).
pub fn verify_fractional_revival(prep: &Prepared, tol: f64) -> Result<RevivalReport> {
    let params = prep.chain.params.clone().ok_or_else(|| {
        Error::InvalidParameters(
            "revival predictions need the chain's generating parameters".into(),
        )
    })?;
    let z = prep.spectrum.z.ok_or_else(|| {
        Error::NoRevivalPossible("irrational parameters have no revival schedule".into(),
        )
    })?;
    if z <= 2 {
        return Err(Error::NoRevivalPossible(format!(
            "Z = {z}: the revival grid holds only tau_0 = 0 and t* itself"
        )));
    }
    let initial = State::pulse(&prep.chain, 1.0);
    let last = prep.chain.last_index();
    let mut samples = Vec::new();
    let mut max_err = 0.0f64;
    let mut max_res = 0.0f64;
    for (ell, &tau) in prep.spectrum.tau.iter().enumerate() {
        let state = prep.evolve(&initial, tau);
        let measured = (state.p[0], state.p[last]);
        let predicted = revival_prediction(&params, ell as u64)?;
        let interior_residual = state.p[1..last]
            .iter()
            .map(|x| x.abs())
            .fold(0.0f64, f64::max);
        max_err = max_err
            .max((measured.0 - predicted.0).abs())
            .max((measured.1 - predicted.1).abs());
        max_res = max_res.max(interior_residual);
        samples.push(RevivalSample {
            ell: ell as u64,
            tau,
            measured,
            predicted,
            interior_residual,
        });
    }
    Ok(RevivalReport {
        samples,
        max_prediction_error: max_err,
        max_interior_residual: max_res,
        achieved: max_err < tol && max_res < tol,
    })
}

/// Checks that an arbitrary initial momentum pattern reappears mirrored at
/// t* (up to the boundary sign rule).
pub fn mirror_reversal_check(prep: &Prepared, initial: &State, tol: f64) -> Result<bool> {
    let t_star = prep.t_star()?;
    let sign = match prep
        .chain
        .params
        .as_ref()
        .and_then(|p| p.mu())
        .unwrap_or(0)
        .rem_euclid(2)
    {
        0 => 1.0,
        _ => -1.0,
    };
    let last = prep.chain.last_index();
    let final_state = prep.evolve(initial, t_star);
    let scale = initial
        .p
        .iter()
        .map(|x| x.abs())
        .fold(f64::MIN_POSITIVE, f64::max);
    let defect = (0..=last)
        .map(|i| (final_state.p[i] - sign * initial.p[last - i]).abs())
        .fold(0.0f64, f64::max);
    Ok(defect < tol * scale)
}

/// Energy and total-momentum drift over a trajectory.
pub fn conservation_report(chain: &crate::chain::ChainSpec, traj: &Trajectory) -> ConservationReport {
    let e0 = energy(chain, traj.first());
    let p0 = traj.first().total_momentum();
    let mut energy_drift = 0.0f64;
    let mut momentum_drift = 0.0f64;
    for state in &traj.states {
        energy_drift = energy_drift.max((energy(chain, state) - e0).abs());
        momentum_drift = momentum_drift.max((state.total_momentum() - p0).abs());
    }
    let energy_drift = if e0 != 0.0 {
        energy_drift / e0.abs()
    } else {
        energy_drift
    };
    ConservationReport {
        initial_energy: e0,
        energy_drift,
        momentum_drift: match chain.boundary {
            Boundary::FreeFree => Some(momentum_drift),
            Boundary::FixedFixed => None,
        },
    }
}
