//! Symplectic leapfrog oracle on the physical Hamiltonian.
//!
//! Kick-drift-kick on (Q, P) with forces straight from the spring network,
//! independent of the spectral machinery. Second order; the automatic step
//! targets a 1e-8 relative energy envelope, which also keeps the phase error
//! far below the cross-method tolerance.

use super::State;
use crate::chain::ChainSpec;
use crate::error::{Error, Result};

/// A time-ordered sequence of sampled states.
#[derive(Debug, Clone)]
pub struct Trajectory {
    pub states: Vec<State>,
}

impl Trajectory {
    pub fn first(&self) -> &State {
        self.states.first().expect("trajectory never empty")
    }

    pub fn last(&self) -> &State {
        self.states.last().expect("trajectory never empty")
    }
}

/// Gershgorin bound on the largest normal-mode frequency.
fn omega_bound(chain: &ChainSpec) -> f64 {
    let jac = crate::chain::chain_to_jacobi(chain);
    let n = jac.n_sites();
    let mut worst: f64 = 0.0;
    for i in 0..n {
        let mut row = jac.diagonal()[i];
        if i > 0 {
            row += jac.off_diag(i);
        }
        if i < n - 1 {
            row += jac.off_diag(i + 1);
        }
        worst = worst.max(row);
    }
    worst.max(f64::MIN_POSITIVE).sqrt()
}

/// Stability margin for the step: dt must stay below 0.1 / omega_max.
pub fn stability_bound(chain: &ChainSpec) -> f64 {
    0.1 / omega_bound(chain)
}

/// Step targeting the 1e-8 energy envelope: omega_max dt = 2e-4.
pub fn auto_dt(chain: &ChainSpec) -> f64 {
    2e-4 / omega_bound(chain)
}

fn forces(springs: &[f64], displacement: &[f64], out: &mut [f64]) {
    let n = displacement.len();
    for i in 0..n {
        let left = if i == 0 {
            -springs[0] * displacement[0]
        } else {
            springs[i] * (displacement[i - 1] - displacement[i])
        };
        let right = if i == n - 1 {
            -springs[n] * displacement[n - 1]
        } else {
            springs[i + 1] * (displacement[i + 1] - displacement[i])
        };
        out[i] = left + right;
    }
}

/// Integrates Hamilton's equations from `initial` to `t_end`, sampling about
/// `n_samples` evenly spaced states (plus the endpoints). The step is
/// shortened so an integer number of steps lands exactly on `t_end`.
pub fn integrate_ode(
    chain: &ChainSpec,
    initial: &State,
    t_end: f64,
    dt: f64,
    n_samples: usize,
) -> Result<Trajectory> {
    if !t_end.is_finite() || t_end <= 0.0 {
        return Err(Error::InvalidParameters("t_end must be positive".into()));
    }
    let bound = stability_bound(chain);
    if !dt.is_finite() || dt <= 0.0 || dt >= bound {
        return Err(Error::StepTooLarge { dt, bound });
    }
    let steps = (t_end / dt).ceil() as usize;
    let h = t_end / steps as f64;
    let stride = (steps / n_samples.max(1)).max(1);

    let n = chain.n_sites();
    let sqrt_m: Vec<f64> = chain.masses.iter().map(|m| m.sqrt()).collect();
    // physical coordinates
    let mut big_q: Vec<f64> = (0..n).map(|i| initial.q[i] / sqrt_m[i]).collect();
    let mut big_p: Vec<f64> = initial.true_p.clone();
    let mut f = vec![0.0; n];

    let mut states = Vec::with_capacity(steps / stride + 2);
    let record = |t: f64, big_q: &[f64], big_p: &[f64], states: &mut Vec<State>| {
        let q = (0..n).map(|i| big_q[i] * sqrt_m[i]).collect();
        let p = (0..n).map(|i| big_p[i] / sqrt_m[i]).collect();
        states.push(State {
            t,
            q,
            p,
            true_p: big_p.to_vec(),
        });
    };
    record(initial.t, &big_q, &big_p, &mut states);

    forces(&chain.springs, &big_q, &mut f);
    for step in 1..=steps {
        // kick - drift - kick
        for i in 0..n {
            big_p[i] += 0.5 * h * f[i];
        }
        for i in 0..n {
            big_q[i] += h * big_p[i] / chain.masses[i];
        }
        forces(&chain.springs, &big_q, &mut f);
        for i in 0..n {
            big_p[i] += 0.5 * h * f[i];
        }
        if step % stride == 0 || step == steps {
            record(initial.t + step as f64 * h, &big_q, &big_p, &mut states);
        }
    }
    Ok(Trajectory { states })
}
