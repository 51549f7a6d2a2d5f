//! Physical chains: masses and spring constants, and the conversions
//! between chains and Jacobi matrices.

mod closed_form;
mod deform;
mod gamma;

pub use closed_form::{
    dual_hahn_mass_ratios, dual_hahn_spring_ratios, free_free_mass_ratios,
    free_free_spring_ratios, product_form_mass_ratios,
};
pub use deform::{build_deformed, build_deformed_with};
pub use gamma::{build_fixed_fixed, gamma_vector, GammaVector};

use crate::error::{Error, Result};
use crate::params::{Boundary, ChainParams};
use crate::rational::{rat, to_f64};
use crate::spectral::{self, JacobiSpec};
use serde::{Deserialize, Serialize};

/// How a chain document came to be.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    /// Free-free closed forms (Pochhammer ratios).
    ClosedForm,
    /// Fixed-fixed gamma-sum reconstruction.
    GammaSum,
    /// Isospectral deformation of a mirror-symmetric chain.
    Deformed,
    /// Spectral surgery followed by reconstruction.
    Surgery,
    /// Loaded from outside the analytic families.
    External,
}

/// A mass-spring chain. `masses` has N+1 entries; `springs` has N+2 entries
/// K_0..K_{N+1} including the boundary springs (zero on free ends).
#[derive(Debug, Clone)]
pub struct ChainSpec {
    pub masses: Vec<f64>,
    pub springs: Vec<f64>,
    pub boundary: Boundary,
    pub provenance: Provenance,
    /// Generating parameters, when the chain belongs to an analytic family.
    pub params: Option<ChainParams>,
}

impl ChainSpec {
    /// Validating constructor: positive masses, positive interior springs,
    /// boundary springs consistent with the boundary type.
    pub fn new(
        masses: Vec<f64>,
        springs: Vec<f64>,
        boundary: Boundary,
        provenance: Provenance,
        params: Option<ChainParams>,
    ) -> Result<Self> {
        if masses.len() < 2 || springs.len() != masses.len() + 1 {
            return Err(Error::InvalidParameters(format!(
                "chain sizes inconsistent: {} masses, {} springs",
                masses.len(),
                springs.len()
            )));
        }
        if let Some((i, _)) = masses.iter().enumerate().find(|(_, m)| **m <= 0.0) {
            return Err(Error::PositivityViolation(format!(
                "mass m_{i} must be positive"
            )));
        }
        let last = springs.len() - 1;
        for (i, k) in springs.iter().enumerate() {
            let interior = i != 0 && i != last;
            if interior && *k <= 0.0 {
                return Err(Error::PositivityViolation(format!(
                    "interior spring K_{i} must be positive"
                )));
            }
            if !interior && *k < 0.0 {
                return Err(Error::PositivityViolation(format!(
                    "boundary spring K_{i} must be non-negative"
                )));
            }
        }
        match boundary {
            Boundary::FreeFree => {
                if springs[0] != 0.0 || springs[last] != 0.0 {
                    return Err(Error::InvalidParameters(
                        "free-free chains need K_0 = K_{N+1} = 0".into(),
                    ));
                }
            }
            Boundary::FixedFixed => {
                if springs[0] <= 0.0 || springs[last] <= 0.0 {
                    return Err(Error::InvalidParameters(
                        "fixed-fixed chains need positive boundary springs".into(),
                    ));
                }
            }
        }
        Ok(ChainSpec {
            masses,
            springs,
            boundary,
            provenance,
            params,
        })
    }

    pub fn n_sites(&self) -> usize {
        self.masses.len()
    }

    pub fn last_index(&self) -> usize {
        self.masses.len() - 1
    }

    /// Spring K_i for i = 0..=N+1.
    pub fn spring(&self, i: usize) -> f64 {
        self.springs[i]
    }

    /// Largest relative deviation from mirror symmetry (m_i = m_{N-i},
    /// K_i = K_{N+1-i}).
    pub fn mirror_defect(&self) -> f64 {
        let n = self.last_index();
        let m_scale = self.masses.iter().fold(f64::MIN_POSITIVE, |a, x| a.max(*x));
        let k_scale = self.springs.iter().fold(f64::MIN_POSITIVE, |a, x| a.max(*x));
        let dm = (0..=n)
            .map(|i| (self.masses[i] - self.masses[n - i]).abs())
            .fold(0.0f64, f64::max)
            / m_scale;
        let dk = (0..=n + 1)
            .map(|i| (self.springs[i] - self.springs[n + 1 - i]).abs())
            .fold(0.0f64, f64::max)
            / k_scale;
        dm.max(dk)
    }

    /// Multiplies every mass and spring by `s` (the Jacobi matrix is
    /// invariant under this).
    pub fn rescaled(&self, s: f64) -> ChainSpec {
        let mut out = self.clone();
        for m in &mut out.masses {
            *m *= s;
        }
        for k in &mut out.springs {
            *k *= s;
        }
        out
    }
}

/// Mass-weighted Jacobi matrix of the chain: b_i = (K_i + K_{i+1})/m_i,
/// u_i = K_i^2/(m_{i-1} m_i).
pub fn chain_to_jacobi(chain: &ChainSpec) -> JacobiSpec {
    let n = chain.n_sites();
    let b: Vec<f64> = (0..n)
        .map(|i| (chain.springs[i] + chain.springs[i + 1]) / chain.masses[i])
        .collect();
    let u: Vec<f64> = (1..n)
        .map(|i| chain.springs[i] * chain.springs[i] / (chain.masses[i - 1] * chain.masses[i]))
        .collect();
    JacobiSpec::from_parts(b, u).expect("a valid chain always yields a valid Jacobi matrix")
}

/// The y-recurrence y_0 = b_0, y_i = b_i - u_i / y_{i-1}, evaluated for
/// i = 0..=N. For a free-free-compatible matrix the last value vanishes.
pub fn y_recurrence(jac: &JacobiSpec) -> Vec<f64> {
    let n_last = jac.last_index();
    let mut y = Vec::with_capacity(n_last + 1);
    y.push(jac.diagonal()[0]);
    for i in 1..=n_last {
        let prev = y[i - 1];
        y.push(jac.diagonal()[i] - jac.u_at(i) / prev);
    }
    y
}

/// Auxiliary data of the inverse problem: the y-recurrence of a matrix and
/// the analytic building blocks A_n, C_n of its parameter family.
#[derive(Debug, Clone)]
pub struct AuxiliaryRecurrence {
    /// y_i = K_{i+1}/m_i for i = 0..N-1.
    pub y: Vec<f64>,
    /// A_0..A_N of the family (scaled by omega_tilde^2).
    pub a_terms: Vec<f64>,
    /// C_0..C_N of the family (scaled by omega_tilde^2).
    pub c_terms: Vec<f64>,
}

/// Builds the auxiliary recurrence for analytic parameters (alpha = 1/2).
pub fn auxiliary_recurrence(params: &ChainParams) -> Result<AuxiliaryRecurrence> {
    let jac = spectral::recurrence_coefficients(params)?;
    let mut y = y_recurrence(&jac);
    y.pop();
    let w2 = params.omega_tilde * params.omega_tilde;
    let (a_terms, c_terms) = match (params.a.exact(), params.c.exact()) {
        (Some(a), Some(c)) => {
            let (at, ct) = spectral::recurrence::para_racah_terms(params.last_index(), a, c);
            (
                at.iter().map(|x| w2 * to_f64(x)).collect(),
                ct.iter().map(|x| w2 * to_f64(x)).collect(),
            )
        }
        _ => {
            let (at, ct) = spectral::recurrence::para_racah_terms(
                params.last_index(),
                &params.a.to_f64(),
                &params.c.to_f64(),
            );
            (
                at.iter().map(|x| w2 * x).collect(),
                ct.iter().map(|x| w2 * x).collect(),
            )
        }
    };
    Ok(AuxiliaryRecurrence { y, a_terms, c_terms })
}

/// General-purpose inverse of `chain_to_jacobi` for free-free-compatible
/// matrices (zero eigenvalue); works on surgered matrices too.
pub fn jacobi_to_chain_free_free(jac: &JacobiSpec, m0: f64) -> Result<ChainSpec> {
    if !m0.is_finite() || m0 <= 0.0 {
        return Err(Error::InvalidParameters("m_0 must be positive".into()));
    }
    let n_last = jac.last_index();
    let y = y_recurrence(jac);
    let scale = jac.norm_estimate();
    for (i, yi) in y.iter().take(n_last).enumerate() {
        if !(yi.is_finite() && *yi > 0.0) {
            return Err(Error::NotRealizable(format!(
                "y_{i} = {yi} is not positive"
            )));
        }
    }
    // free-free compatibility: the recurrence must terminate at zero
    if y[n_last].abs() > 1e-8 * scale {
        return Err(Error::NotRealizable(format!(
            "no zero eigenvalue: y_N = {} against scale {scale}",
            y[n_last]
        )));
    }
    let mut masses = Vec::with_capacity(n_last + 1);
    masses.push(m0);
    for i in 1..=n_last {
        let prev = masses[i - 1];
        masses.push(prev * y[i - 1] * y[i - 1] / jac.u_at(i));
    }
    let mut springs = Vec::with_capacity(n_last + 2);
    springs.push(0.0);
    for i in 1..=n_last {
        springs.push(y[i - 1] * masses[i - 1]);
    }
    springs.push(0.0);
    ChainSpec::new(
        masses,
        springs,
        Boundary::FreeFree,
        Provenance::Surgery,
        None,
    )
}

/// Mirror-symmetric free-free chain from the Pochhammer closed forms; for
/// relaxed real parameters the product form of the y-recurrence is used
/// instead.
pub fn build_free_free(params: &ChainParams) -> Result<ChainSpec> {
    params.validate()?;
    if params.boundary != Boundary::FreeFree {
        return Err(Error::InvalidParameters(
            "build_free_free needs free-free parameters".into(),
        ));
    }
    if params.alpha != rat(1, 2) {
        return Err(Error::InvalidParameters(
            "mirror-symmetric construction needs alpha = 1/2; use build_deformed".into(),
        ));
    }
    let n_last = params.last_index();
    let w2 = params.omega_tilde * params.omega_tilde;
    let m0 = params.scale;

    let chain = match params.c.exact() {
        Some(c) => {
            let m_ratios = free_free_mass_ratios(n_last, c)?;
            let k_ratios = free_free_spring_ratios(n_last, c)?;
            let masses: Vec<f64> = m_ratios.iter().map(|r| m0 * to_f64(r)).collect();
            let mut springs = Vec::with_capacity(n_last + 2);
            springs.push(0.0);
            springs.extend(k_ratios.iter().map(|r| w2 * m0 * to_f64(r)));
            springs.push(0.0);
            ChainSpec::new(
                masses,
                springs,
                Boundary::FreeFree,
                Provenance::ClosedForm,
                Some(params.clone()),
            )?
        }
        None => {
            let jac = spectral::recurrence_coefficients(params)?;
            let mut chain = jacobi_to_chain_free_free(&jac, m0)?;
            chain.provenance = Provenance::ClosedForm;
            chain.params = Some(params.clone());
            chain
        }
    };
    Ok(chain)
}

/// Builds the chain for any valid parameters, dispatching on boundary type
/// and deformation.
pub fn build(params: &ChainParams) -> Result<ChainSpec> {
    if params.alpha != rat(1, 2) {
        return build_deformed(params);
    }
    match params.boundary {
        Boundary::FreeFree => build_free_free(params),
        Boundary::FixedFixed => build_fixed_fixed(params),
    }
}
