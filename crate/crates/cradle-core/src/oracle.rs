//! Independent dense eigensolver, used to cross-check the analytic
//! constructions. Kept separate from the polynomial route on purpose: the
//! two must never share code.

use crate::spectral::JacobiSpec;
use nalgebra::DMatrix;

/// Dense symmetric matrix for the tridiagonal data.
pub fn to_dense(jac: &JacobiSpec) -> DMatrix<f64> {
    let n = jac.n_sites();
    let mut m = DMatrix::zeros(n, n);
    for i in 0..n {
        m[(i, i)] = jac.diagonal()[i];
        if i + 1 < n {
            let a = -jac.off_diag(i + 1);
            m[(i, i + 1)] = a;
            m[(i + 1, i)] = a;
        }
    }
    m
}

/// All eigenvalues, ascending, from nalgebra's dense symmetric solver.
pub fn dense_spectrum(jac: &JacobiSpec) -> Vec<f64> {
    let eig = to_dense(jac).symmetric_eigen();
    let mut lams: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    lams.sort_by(|a, b| a.partial_cmp(b).unwrap());
    lams
}

/// Eigenpairs sorted ascending; eigenvectors normalized columns.
pub fn dense_eigenpairs(jac: &JacobiSpec) -> (Vec<f64>, Vec<Vec<f64>>) {
    let eig = to_dense(jac).symmetric_eigen();
    let n = jac.n_sites();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].partial_cmp(&eig.eigenvalues[j]).unwrap());
    let lams = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vecs = order
        .iter()
        .map(|&i| eig.eigenvectors.column(i).iter().copied().collect())
        .collect();
    (lams, vecs)
}

/// Largest deviation between the oracle spectrum and a target set, relative
/// to the spectral radius.
pub fn spectrum_deviation(jac: &JacobiSpec, target: &[f64]) -> f64 {
    let lams = dense_spectrum(jac);
    if lams.len() != target.len() {
        return f64::INFINITY;
    }
    let radius = target
        .iter()
        .chain(lams.iter())
        .fold(f64::MIN_POSITIVE, |m, x| m.max(x.abs()));
    lams.iter()
        .zip(target)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max)
        / radius
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_site_chain_spectrum() {
        let jac = JacobiSpec::from_parts(vec![0.5, 0.5], vec![0.25]).unwrap();
        let lams = dense_spectrum(&jac);
        assert!(lams[0].abs() < 1e-14);
        assert!((lams[1] - 1.0).abs() < 1e-14);
        assert!(spectrum_deviation(&jac, &[0.0, 1.0]) < 1e-14);
    }
}
