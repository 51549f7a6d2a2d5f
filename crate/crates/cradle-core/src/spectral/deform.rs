//! Isospectral deformation A -> V A V.
//!
//! Conjugation by the involutive orthogonal matrix V (a rotated exchange
//! matrix parametrized by alpha) preserves the spectrum while breaking
//! persymmetry; only the central entries of the matrix change. The
//! orientation is fixed by V itself: the deformed chain keeps its original
//! masses on the first half and scales the second half by alpha/(1-alpha),
//! so the pulse enters at the unchanged end.

use super::{param_alpha_f64, EigenBasis, JacobiSpec};
use crate::error::{Error, Result};
use crate::rational::{rat, Rat};
use crate::tol;

/// Deforms a persymmetric matrix to the generic-alpha member of the family.
/// alpha = 1/2 is the identity (V reduces to the exchange matrix).
pub fn deform_jacobi(jac: &JacobiSpec, alpha: &Rat) -> Result<JacobiSpec> {
    let alpha_f = param_alpha_f64(alpha)?;
    if !jac.is_persymmetric(tol::SPECTRAL) {
        return Err(Error::PersymmetryRequired(jac.persymmetry_defect()));
    }
    if *alpha == rat(1, 2) {
        return Ok(jac.clone());
    }
    let n_last = jac.last_index();
    let mut b = jac.diagonal().to_vec();
    let mut u = jac.squared_off_diagonal().to_vec();
    if n_last % 2 == 1 {
        // N odd: u_{j+1} shrinks by 4 alpha (1-alpha), the two central
        // diagonal entries split symmetrically around b_j.
        let j = (n_last - 1) / 2;
        let split = (1.0 - 2.0 * alpha_f) * u[j].sqrt();
        u[j] *= 4.0 * alpha_f * (1.0 - alpha_f);
        let bj = b[j];
        b[j] = bj - split;
        b[j + 1] = bj + split;
    } else {
        // N even: the two central off-diagonal entries rebalance.
        let j = n_last / 2;
        let uj = u[j - 1];
        u[j - 1] = 2.0 * (1.0 - alpha_f) * uj;
        u[j] = 2.0 * alpha_f * uj;
    }
    JacobiSpec::from_parts(b, u)
}

/// Rows of the deformed eigenbasis, obtained from the persymmetric one by
/// the sqrt(1 +/- (-1)^n (1 - 2 alpha)) column scaling.
pub fn deformed_eigenbasis(basis: &EigenBasis, alpha: &Rat) -> Result<EigenBasis> {
    let alpha_f = param_alpha_f64(alpha)?;
    if basis.parity_defect() > tol::SPECTRAL {
        return Err(Error::PersymmetryRequired(basis.parity_defect()));
    }
    if *alpha == rat(1, 2) {
        return Ok(basis.clone());
    }
    let n = basis.n_sites();
    let n_last = n - 1;
    let odd = n_last % 2 == 1;
    let j = if odd { (n_last - 1) / 2 } else { n_last / 2 };
    let mut rows = vec![0.0; n * n];
    for mode in 0..n {
        let sign = if mode % 2 == 0 { 1.0 } else { -1.0 };
        let lower = (1.0 + sign * (1.0 - 2.0 * alpha_f)).max(0.0).sqrt();
        let upper = (1.0 - sign * (1.0 - 2.0 * alpha_f)).max(0.0).sqrt();
        for i in 0..n {
            let factor = if odd {
                if i <= j {
                    lower
                } else {
                    upper
                }
            } else if i < j {
                lower
            } else if i == j {
                1.0
            } else {
                upper
            };
            rows[mode * n + i] = factor * basis.entry(mode, i);
        }
    }
    Ok(EigenBasis::from_rows(rows, basis.lambdas.clone(), n))
}
