//! Jacobi-matrix level machinery: bi-lattice spectra, recurrence
//! coefficients, eigenvector rows, isospectral deformation and spectral
//! surgery.

pub mod polynomials;
pub mod recurrence;

mod deform;
mod surgery;

pub use deform::{deform_jacobi, deformed_eigenbasis};
pub use surgery::{spectral_surgery, surgered_weights};

use crate::error::{Error, Result};
use crate::params::ChainParams;
use crate::rational::{rat, to_f64, Rat};
use crate::tol;
use num::traits::{Signed, ToPrimitive, Zero};
use std::f64::consts::PI;

/// Exact (dimensionless, frequency scale 1) view of an analytically
/// constructed Jacobi matrix, kept alongside the f64 entries so that
/// surgery and symmetry checks can run in rational arithmetic.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactJacobi {
    pub b: Vec<Rat>,
    pub u: Vec<Rat>,
    /// Dimensionless eigenvalues, ascending.
    pub lambdas: Vec<Rat>,
    /// The f64 entries equal omega2 (resp. omega2^2) times the exact ones.
    pub omega2: f64,
}

/// Symmetric tridiagonal matrix A stored as diagonal b_0..b_N and squared
/// off-diagonal u_1..u_N (off-diagonal entries of A itself are -sqrt(u_n)).
#[derive(Debug, Clone)]
pub struct JacobiSpec {
    b: Vec<f64>,
    u: Vec<f64>,
    exact: Option<ExactJacobi>,
}

impl JacobiSpec {
    /// Builds from raw entries; u must be strictly positive.
    pub fn from_parts(b: Vec<f64>, u: Vec<f64>) -> Result<Self> {
        if b.len() < 2 || u.len() + 1 != b.len() {
            return Err(Error::InvalidParameters(format!(
                "inconsistent tridiagonal sizes: {} diagonal, {} off-diagonal",
                b.len(),
                u.len()
            )));
        }
        if let Some((i, _)) = u.iter().enumerate().find(|(_, x)| **x <= 0.0) {
            return Err(Error::PositivityViolation(format!(
                "u_{} must be positive",
                i + 1
            )));
        }
        Ok(JacobiSpec { b, u, exact: None })
    }

    pub(crate) fn from_exact(exact: ExactJacobi) -> Self {
        let w2 = exact.omega2;
        let b = exact.b.iter().map(|x| w2 * to_f64(x)).collect();
        let u = exact.u.iter().map(|x| w2 * w2 * to_f64(x)).collect();
        JacobiSpec {
            b,
            u,
            exact: Some(exact),
        }
    }

    /// Number of masses (matrix dimension), N + 1.
    pub fn n_sites(&self) -> usize {
        self.b.len()
    }

    /// Index of the last site, N.
    pub fn last_index(&self) -> usize {
        self.b.len() - 1
    }

    /// Diagonal entries b_0..b_N.
    pub fn diagonal(&self) -> &[f64] {
        &self.b
    }

    /// Squared off-diagonal entries u_1..u_N (u_n at slot n-1).
    pub fn squared_off_diagonal(&self) -> &[f64] {
        &self.u
    }

    /// u_n with the 1-based index of the recurrence.
    pub fn u_at(&self, n: usize) -> f64 {
        self.u[n - 1]
    }

    /// Off-diagonal entry a_n = sqrt(u_n), 1-based.
    pub fn off_diag(&self, n: usize) -> f64 {
        self.u[n - 1].sqrt()
    }

    /// Exact rational view, when the matrix came from analytic data.
    pub fn exact(&self) -> Option<&ExactJacobi> {
        self.exact.as_ref()
    }

    /// Infinity norm estimate used to scale residual tests.
    pub fn norm_estimate(&self) -> f64 {
        let mut m: f64 = 0.0;
        for i in 0..self.b.len() {
            let mut row = self.b[i].abs();
            if i > 0 {
                row += self.u[i - 1].sqrt();
            }
            if i < self.u.len() {
                row += self.u[i].sqrt();
            }
            m = m.max(row);
        }
        m.max(f64::MIN_POSITIVE)
    }

    /// A v for a full vector v.
    pub fn matvec(&self, v: &[f64]) -> Vec<f64> {
        let n = self.b.len();
        let mut out = vec![0.0; n];
        for i in 0..n {
            let mut acc = self.b[i] * v[i];
            if i > 0 {
                acc -= self.off_diag(i) * v[i - 1];
            }
            if i < n - 1 {
                acc -= self.off_diag(i + 1) * v[i + 1];
            }
            out[i] = acc;
        }
        out
    }

    /// max_i |b_i - b_{N-i}| + max_n |u_n - u_{N+1-n}|.
    pub fn persymmetry_defect(&self) -> f64 {
        let n = self.last_index();
        let mut db: f64 = 0.0;
        for i in 0..=n {
            db = db.max((self.b[i] - self.b[n - i]).abs());
        }
        let mut du: f64 = 0.0;
        for k in 1..=self.u.len() {
            du = du.max((self.u_at(k) - self.u_at(n + 1 - k)).abs());
        }
        db + du
    }

    /// Relative persymmetry test (diagonal and off-diagonal scaled
    /// separately, since they carry different powers of the frequency).
    pub fn is_persymmetric(&self, rel_tol: f64) -> bool {
        let n = self.last_index();
        let b_scale = self
            .b
            .iter()
            .fold(f64::MIN_POSITIVE, |m, x| m.max(x.abs()));
        let u_scale = self
            .u
            .iter()
            .fold(f64::MIN_POSITIVE, |m, x| m.max(x.abs()));
        let db = (0..=n)
            .map(|i| (self.b[i] - self.b[n - i]).abs())
            .fold(0.0f64, f64::max);
        let du = (1..=self.u.len())
            .map(|k| (self.u_at(k) - self.u_at(n + 1 - k)).abs())
            .fold(0.0f64, f64::max);
        db <= rel_tol * b_scale && du <= rel_tol * u_scale
    }
}

/// Analytic spectrum of a chain: the quadratic bi-lattice, its frequencies,
/// and (for rational parameters) the transfer time and revival schedule.
#[derive(Debug, Clone)]
pub struct BiLatticeSpectrum {
    /// Eigenvalues of A, ascending, in rad^2/s^2.
    pub lambdas: Vec<f64>,
    /// Normal-mode frequencies omega_n = sqrt(lambda_n).
    pub omegas: Vec<f64>,
    /// Transfer time t* = pi Z / omega_tilde; absent for irrational data.
    pub t_star: Option<f64>,
    /// Revival times tau_ell = (2 ell / Z) t*, ell = 0..Z/2.
    pub tau: Vec<f64>,
    /// Integer multiples k_n with omega_n = (omega_tilde/Z) k_n.
    pub k: Option<Vec<i64>>,
    /// Lattice denominator Z.
    pub z: Option<u64>,
    /// Dimensionless eigenvalues, exact, when parameters are rational.
    pub exact: Option<Vec<Rat>>,
}

impl BiLatticeSpectrum {
    pub fn n_sites(&self) -> usize {
        self.lambdas.len()
    }
}

/// Orthogonal eigenbasis of a Jacobi matrix: row n is the normalized
/// eigenvector of lambda_n, gauged so the first component is positive.
#[derive(Debug, Clone)]
pub struct EigenBasis {
    n: usize,
    /// Row-major (N+1) x (N+1).
    rows: Vec<f64>,
    /// Eigenvalues the rows belong to, ascending.
    pub lambdas: Vec<f64>,
    /// Christoffel weights w_n = U_{n0}^2.
    pub weights: Vec<f64>,
}

impl EigenBasis {
    pub(crate) fn from_rows(rows: Vec<f64>, lambdas: Vec<f64>, n: usize) -> Self {
        let weights = (0..n).map(|m| rows[m * n] * rows[m * n]).collect();
        EigenBasis {
            n,
            rows,
            lambdas,
            weights,
        }
    }

    pub fn n_sites(&self) -> usize {
        self.n
    }

    /// U_{n i}: component i of the eigenvector for lambda_n.
    pub fn entry(&self, mode: usize, site: usize) -> f64 {
        self.rows[mode * self.n + site]
    }

    pub fn row(&self, mode: usize) -> &[f64] {
        &self.rows[mode * self.n..(mode + 1) * self.n]
    }

    /// max_{n,i} |U_{n,N-i} - (-1)^n U_{ni}|, the mirror-symmetry defect.
    pub fn parity_defect(&self) -> f64 {
        let n = self.n;
        let last = n - 1;
        let mut d: f64 = 0.0;
        for m in 0..n {
            let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
            for i in 0..n {
                d = d.max((self.entry(m, last - i) - sign * self.entry(m, i)).abs());
            }
        }
        d
    }

    /// max |U U^T - I| entry.
    pub fn orthogonality_defect(&self) -> f64 {
        let n = self.n;
        let mut d: f64 = 0.0;
        for m1 in 0..n {
            for m2 in m1..n {
                let dot: f64 = (0..n).map(|i| self.entry(m1, i) * self.entry(m2, i)).sum();
                let target = if m1 == m2 { 1.0 } else { 0.0 };
                d = d.max((dot - target).abs());
            }
        }
        d
    }
}

/// Analytic quadratic bi-lattice spectrum for the given parameters.
pub fn spectrum(params: &ChainParams) -> Result<BiLatticeSpectrum> {
    params.validate()?;
    let n_last = params.last_index();
    let w2 = params.omega_tilde * params.omega_tilde;

    let (lambdas, exact): (Vec<f64>, Option<Vec<Rat>>) =
        match (params.a.exact(), params.c.exact()) {
            (Some(a), Some(c)) => {
                let lams = recurrence::bilattice(n_last, a, c);
                for (i, w) in lams.windows(2).enumerate() {
                    if w[0] == w[1] {
                        return Err(Error::DegenerateSpectrum(i, i + 1));
                    }
                    if w[0] > w[1] {
                        return Err(Error::InvalidParameters(format!(
                            "bi-lattice not ascending at index {i}; parameters outside the \
                             canonical region"
                        )));
                    }
                }
                (lams.iter().map(|x| w2 * to_f64(x)).collect(), Some(lams))
            }
            _ => {
                let lams = recurrence::bilattice(n_last, &params.a.to_f64(), &params.c.to_f64());
                (lams.iter().map(|x| w2 * x).collect(), None)
            }
        };

    let lam_max = lambdas.last().copied().unwrap_or(1.0).max(f64::MIN_POSITIVE);
    for (i, w) in lambdas.windows(2).enumerate() {
        if w[1] - w[0] <= tol::SPECTRAL * lam_max {
            return Err(Error::DegenerateSpectrum(i, i + 1));
        }
    }

    let omegas: Vec<f64> = lambdas.iter().map(|x| x.max(0.0).sqrt()).collect();

    let (t_star, tau, k, z) = match (params.lattice_z(), params.mu(), params.rho()) {
        (Some(z), Some(mu), Some(rho)) => {
            let t_star = PI * z as f64 / params.omega_tilde;
            let tau: Vec<f64> = (0..=z / 2)
                .map(|ell| (2.0 * ell as f64 / z as f64) * t_star)
                .collect();
            let k: Vec<i64> = (0..=n_last as i64)
                .map(|n| {
                    let s = n / 2;
                    if n % 2 == 0 {
                        (z as i64 * s + mu).abs()
                    } else {
                        (z as i64 * s + mu + rho).abs()
                    }
                })
                .collect();
            (Some(t_star), tau, Some(k), Some(z))
        }
        _ => (None, Vec::new(), None, None),
    };

    Ok(BiLatticeSpectrum {
        lambdas,
        omegas,
        t_star,
        tau,
        k,
        z,
        exact,
    })
}

/// Recurrence coefficients of the mirror-symmetric (alpha = 1/2) member of
/// the family; generic alpha is reached through `deform_jacobi`.
pub fn recurrence_coefficients(params: &ChainParams) -> Result<JacobiSpec> {
    params.validate()?;
    if params.alpha != rat(1, 2) {
        return Err(Error::InvalidParameters(format!(
            "recurrence coefficients are defined at alpha = 1/2; deform afterwards \
             (got alpha = {})",
            params.alpha
        )));
    }
    let n_last = params.last_index();
    let w2 = params.omega_tilde * params.omega_tilde;
    match (params.a.exact(), params.c.exact()) {
        (Some(a), Some(c)) => {
            let (b, u) = recurrence::jacobi_entries(n_last, a, c);
            if let Some((i, _)) = u.iter().enumerate().find(|(_, x)| !x.is_positive()) {
                return Err(Error::InvalidParameters(format!(
                    "u_{} = {} is not positive; parameters outside the positivity region",
                    i + 1,
                    u[i]
                )));
            }
            let lambdas = recurrence::bilattice(n_last, a, c);
            Ok(JacobiSpec::from_exact(ExactJacobi {
                b,
                u,
                lambdas,
                omega2: w2,
            }))
        }
        _ => {
            let af = params.a.to_f64();
            let cf = params.c.to_f64();
            let (b, u) = recurrence::jacobi_entries(n_last, &af, &cf);
            if let Some((i, x)) = u.iter().enumerate().find(|(_, x)| **x <= 0.0) {
                return Err(Error::InvalidParameters(format!(
                    "u_{} = {x} is not positive; parameters outside the positivity region",
                    i + 1
                )));
            }
            JacobiSpec::from_parts(
                b.iter().map(|x| w2 * x).collect(),
                u.iter().map(|x| w2 * w2 * x).collect(),
            )
        }
    }
}

/// Monic polynomial values P_0(x^2)..P_{N+1}(x^2) of the three-term
/// recurrence carried by the matrix; P_{N+1} is the characteristic
/// polynomial.
pub fn eval_monic_polynomials(jac: &JacobiSpec, x2: f64) -> Vec<f64> {
    polynomials::eval_monic(&jac.b, &jac.u, &x2)
}

/// Orthogonal eigenbasis for the given matrix and (verified) spectrum.
///
/// Rows are generated by the polynomial three-term recurrence and polished
/// with inverse iteration, then gauged so U_{n0} > 0. If any supplied
/// spectrum point fails to be an eigenvalue the call reports
/// `SpectrumMismatch` instead of silently producing garbage.
pub fn eigenbasis(jac: &JacobiSpec, spec: &BiLatticeSpectrum) -> Result<EigenBasis> {
    if spec.lambdas.len() != jac.n_sites() {
        return Err(Error::InvalidParameters(format!(
            "spectrum has {} points for a {}-site matrix",
            spec.lambdas.len(),
            jac.n_sites()
        )));
    }
    let n = jac.n_sites();
    let scale = jac.norm_estimate();
    let accept = tol::SPECTRAL * scale;
    let mut rows = vec![0.0; n * n];
    for (mode, &lam) in spec.lambdas.iter().enumerate() {
        let mut v = polynomials::recurrence_eigenvector(&jac.b, &jac.u, lam);
        let mut res = polynomials::residual_inf(jac, lam, &v);
        if res > 1e-13 * scale {
            for _ in 0..2 {
                match polynomials::inverse_iteration_step(&jac.b, &jac.u, lam, &v) {
                    Some(next) => v = next,
                    None => break,
                }
                res = polynomials::residual_inf(jac, lam, &v);
                if res <= 1e-14 * scale {
                    break;
                }
            }
        }
        if res > accept {
            return Err(Error::SpectrumMismatch {
                mode,
                residual: res,
                tol: accept,
            });
        }
        // gauge: first nonvanishing component positive (the first component
        // of a Jacobi eigenvector never vanishes)
        let lead = v.iter().find(|x| **x != 0.0).copied().unwrap_or(1.0);
        if lead < 0.0 {
            for x in &mut v {
                *x = -*x;
            }
        }
        rows[mode * n..(mode + 1) * n].copy_from_slice(&v);
    }
    Ok(EigenBasis::from_rows(rows, spec.lambdas.clone(), n))
}

/// Convenience composition: recurrence coefficients at alpha = 1/2 followed
/// by the isospectral deformation when the requested alpha differs.
pub fn jacobi_for_params(params: &ChainParams) -> Result<JacobiSpec> {
    let base = recurrence_coefficients(&params.clone().with_alpha(rat(1, 2)))?;
    if params.alpha == rat(1, 2) {
        Ok(base)
    } else {
        deform_jacobi(&base, &params.alpha)
    }
}

pub(crate) fn param_alpha_f64(alpha: &Rat) -> Result<f64> {
    if alpha <= &Rat::zero() || alpha >= &Rat::from_integer(1.into()) {
        return Err(Error::DegenerateParameters(format!(
            "alpha = {alpha} must lie strictly inside (0, 1)"
        )));
    }
    alpha.to_f64().ok_or_else(|| {
        Error::InvalidParameters("alpha does not convert to f64".into())
    })
}
