//! Time evolution and certification.
//!
//! Two independent engines evolve a chain: the exact normal-mode sum, and a
//! symplectic leapfrog integrator on the physical Hamiltonian. They share no
//! code; their pointwise agreement is one of the strongest checks on the
//! whole construction.

mod certify;
mod leapfrog;

pub use certify::{
    conservation_report, mirror_reversal_check, revival_prediction, verify_fractional_revival,
    verify_perfect_transfer, ConservationReport, RevivalReport, RevivalSample, TransferReport,
};
pub use leapfrog::{auto_dt, integrate_ode, stability_bound, Trajectory};

use crate::chain::{chain_to_jacobi, ChainSpec};
use crate::error::{Error, Result};
use crate::rational::rat;
use crate::spectral::{
    deform_jacobi, deformed_eigenbasis, eigenbasis, recurrence_coefficients, spectrum,
    BiLatticeSpectrum, EigenBasis, JacobiSpec,
};
use crate::tol;

/// Phase-space snapshot in mass-weighted coordinates, with the true momenta
/// P_i = sqrt(m_i) p_i carried alongside.
#[derive(Debug, Clone)]
pub struct State {
    pub t: f64,
    /// Mass-weighted displacements q_i = sqrt(m_i) Q_i.
    pub q: Vec<f64>,
    /// Mass-weighted momenta p_i = P_i / sqrt(m_i).
    pub p: Vec<f64>,
    /// True momenta.
    pub true_p: Vec<f64>,
}

impl State {
    /// The perfect-transfer initial condition: everything at rest except a
    /// mass-weighted momentum pulse p_bar on the first mass.
    pub fn pulse(chain: &ChainSpec, p_bar: f64) -> State {
        let mut p = vec![0.0; chain.n_sites()];
        p[0] = p_bar;
        State::from_momenta(chain, p)
    }

    /// Zero displacements, given mass-weighted momenta.
    pub fn from_momenta(chain: &ChainSpec, p: Vec<f64>) -> State {
        let true_p = p
            .iter()
            .zip(&chain.masses)
            .map(|(x, m)| x * m.sqrt())
            .collect();
        State {
            t: 0.0,
            q: vec![0.0; chain.n_sites()],
            p,
            true_p,
        }
    }

    /// Zero displacements, given true momenta (converted through the masses).
    pub fn from_true_momenta(chain: &ChainSpec, true_p: Vec<f64>) -> State {
        let p = true_p
            .iter()
            .zip(&chain.masses)
            .map(|(x, m)| x / m.sqrt())
            .collect();
        State {
            t: 0.0,
            q: vec![0.0; chain.n_sites()],
            p,
            true_p,
        }
    }

    pub(crate) fn with_parts(chain: &ChainSpec, t: f64, q: Vec<f64>, p: Vec<f64>) -> State {
        let true_p = p
            .iter()
            .zip(&chain.masses)
            .map(|(x, m)| x * m.sqrt())
            .collect();
        State { t, q, p, true_p }
    }

    /// Total true momentum.
    pub fn total_momentum(&self) -> f64 {
        self.true_p.iter().sum()
    }
}

/// Total energy of a state under the chain's Hamiltonian.
pub fn energy(chain: &ChainSpec, state: &State) -> f64 {
    let n = chain.n_sites();
    let kinetic: f64 = state.p.iter().map(|p| 0.5 * p * p).sum();
    let displacement = |i: usize| state.q[i] / chain.masses[i].sqrt();
    let mut potential = 0.5 * chain.springs[0] * displacement(0) * displacement(0);
    for i in 1..n {
        let d = displacement(i - 1) - displacement(i);
        potential += 0.5 * chain.springs[i] * d * d;
    }
    potential += 0.5 * chain.springs[n] * displacement(n - 1) * displacement(n - 1);
    kinetic + potential
}

/// A chain bundled with its Jacobi matrix, spectrum and eigenbasis, ready
/// for analytic evolution.
#[derive(Debug, Clone)]
pub struct Prepared {
    pub chain: ChainSpec,
    pub jac: JacobiSpec,
    pub spectrum: BiLatticeSpectrum,
    pub basis: EigenBasis,
}

/// Prepares a chain that belongs to an analytic family (params present).
/// The deformed members reuse the alpha = 1/2 eigenbasis through the column
/// scaling instead of a fresh diagonalization.
pub fn prepare(chain: &ChainSpec) -> Result<Prepared> {
    let params = chain.params.clone().ok_or_else(|| {
        Error::InvalidParameters(
            "chain has no generating parameters; use prepare_with_spectrum".into(),
        )
    })?;
    let base_params = params.clone().with_alpha(rat(1, 2));
    let base_jac = recurrence_coefficients(&base_params)?;
    let spec = spectrum(&params)?;
    let base_basis = eigenbasis(&base_jac, &spec)?;
    let (jac, basis) = if params.alpha == rat(1, 2) {
        (base_jac, base_basis)
    } else {
        (
            deform_jacobi(&base_jac, &params.alpha)?,
            deformed_eigenbasis(&base_basis, &params.alpha)?,
        )
    };
    check_chain_matches(chain, &jac)?;
    Ok(Prepared {
        chain: chain.clone(),
        jac,
        spectrum: spec,
        basis,
    })
}

/// Prepares a chain from an explicit spectrum (surgered or external chains
/// whose eigenvalues are declared rather than derived from parameters).
pub fn prepare_with_spectrum(
    chain: &ChainSpec,
    lambdas: Vec<f64>,
    t_star: Option<f64>,
    tau: Vec<f64>,
) -> Result<Prepared> {
    let jac = chain_to_jacobi(chain);
    let omegas = lambdas.iter().map(|x| x.max(0.0).sqrt()).collect();
    let spec = BiLatticeSpectrum {
        lambdas,
        omegas,
        t_star,
        tau,
        k: None,
        z: None,
        exact: None,
    };
    let basis = eigenbasis(&jac, &spec)?;
    Ok(Prepared {
        chain: chain.clone(),
        jac,
        spectrum: spec,
        basis,
    })
}

fn check_chain_matches(chain: &ChainSpec, jac: &JacobiSpec) -> Result<()> {
    let from_chain = chain_to_jacobi(chain);
    let scale = jac.norm_estimate();
    let db = from_chain
        .diagonal()
        .iter()
        .zip(jac.diagonal())
        .map(|(x, y)| (x - y).abs())
        .fold(0.0f64, f64::max);
    let du = from_chain
        .squared_off_diagonal()
        .iter()
        .zip(jac.squared_off_diagonal())
        .map(|(x, y)| (x - y).abs())
        .fold(0.0f64, f64::max);
    if db > tol::SPECTRAL * scale || du > tol::SPECTRAL * scale * scale {
        return Err(Error::InvalidParameters(format!(
            "chain entries disagree with its declared parameters \
             (diagonal defect {db:.3e}, off-diagonal defect {du:.3e})"
        )));
    }
    Ok(())
}

/// Exact normal-mode evolution of (q0, p0) to time t. The zero-frequency
/// mode contributes t in place of sin(omega t)/omega.
pub fn evolve_analytic(
    basis: &EigenBasis,
    spec: &BiLatticeSpectrum,
    q0: &[f64],
    p0: &[f64],
    t: f64,
) -> (Vec<f64>, Vec<f64>) {
    let n = basis.n_sites();
    let omega_max = spec.omegas.last().copied().unwrap_or(1.0);
    let mut q = vec![0.0; n];
    let mut p = vec![0.0; n];
    for mode in 0..n {
        let omega = spec.omegas[mode];
        let qm: f64 = (0..n).map(|j| basis.entry(mode, j) * q0[j]).sum();
        let pm: f64 = (0..n).map(|j| basis.entry(mode, j) * p0[j]).sum();
        let (cos_t, sin_t) = ((omega * t).cos(), (omega * t).sin());
        let (q_mode, p_mode) = if omega <= 1e-9 * omega_max {
            // translation mode: cos -> 1, sin(omega t)/omega -> t
            (qm + pm * t, pm)
        } else {
            (qm * cos_t + pm * sin_t / omega, -qm * omega * sin_t + pm * cos_t)
        };
        for i in 0..n {
            let u = basis.entry(mode, i);
            q[i] += u * q_mode;
            p[i] += u * p_mode;
        }
    }
    (q, p)
}

impl Prepared {
    /// Analytic evolution of a full state by the elapsed time `t`.
    pub fn evolve(&self, initial: &State, t: f64) -> State {
        let (q, p) = evolve_analytic(&self.basis, &self.spectrum, &initial.q, &initial.p, t);
        State::with_parts(&self.chain, initial.t + t, q, p)
    }

    /// Analytic trajectory sampled at the given times.
    pub fn evolve_trajectory(&self, initial: &State, times: &[f64]) -> Trajectory {
        let states = times.iter().map(|&t| self.evolve(initial, t)).collect();
        Trajectory { states }
    }

    /// Transfer time, when defined.
    pub fn t_star(&self) -> Result<f64> {
        self.spectrum.t_star.ok_or_else(|| {
            Error::InvalidParameters(
                "no transfer time: spectrum has no rational lattice structure".into(),
            )
        })
    }
}
