//! Spectral surgery: Christoffel removal of eigenvalues.
//!
//! Removing lambda_k maps an (N+1)-point Jacobi matrix to an N-point one
//! whose spectrum is the original minus the removed point. Weight positivity
//! restricts single removals to the endpoints; interior points leave in
//! consecutive pairs, which also preserves persymmetry. When the matrix
//! carries exact rational data the transform runs in exact arithmetic, so
//! pair removal keeps persymmetry bit-for-bit.
//!
//! The kernel-polynomial ratios E_m = P_{m+1}(lambda_k)/P_m(lambda_k) give
//! the transformed entries directly, but they break down whenever a leading
//! principal submatrix shares the removed eigenvalue (P_m(lambda_k) = 0).
//! That happens systematically here: the half-size leading block of a
//! persymmetric matrix carries one parity class of the spectrum. On
//! breakdown the surgery falls back to rebuilding the matrix from the
//! Christoffel-transformed measure itself by a monic Stieltjes recurrence,
//! which exists whenever the new weights keep one sign.

use super::polynomials::eval_monic;
use super::{EigenBasis, ExactJacobi, JacobiSpec};
use crate::error::{Error, Result};
use crate::rational::Rat;
use num::traits::{One, Signed};

/// One Christoffel step on generic scalar entries: removes the eigenvalue
/// `lam` (which must belong to the spectrum) from the matrix (b, u).
///
/// Positivity of the result is deliberately not enforced here: the first
/// half of a pair removal passes through a signed-measure intermediate whose
/// u entries may be negative. Callers check the final matrix.
fn christoffel_step<T>(b: &[T], u: &[T], lam: &T) -> Result<(Vec<T>, Vec<T>)>
where
    T: Clone + Signed,
{
    let n = b.len();
    let p = eval_monic(b, u, lam);
    // E_m = P_{m+1}(lam)/P_m(lam); the last ratio is exactly zero because
    // lam is a root of the characteristic polynomial.
    let mut e: Vec<T> = Vec::with_capacity(n);
    for m in 0..n - 1 {
        if p[m].is_zero() {
            return Err(Error::PositivityViolation(format!(
                "P_{m} vanishes at the removed eigenvalue; surgery breaks down"
            )));
        }
        e.push(p[m + 1].clone() / p[m].clone());
    }
    e.push(T::zero());

    let new_b: Vec<T> = (0..n - 1)
        .map(|m| b[m + 1].clone() + e[m + 1].clone() - e[m].clone())
        .collect();
    let mut new_u: Vec<T> = Vec::with_capacity(n - 2);
    for m in 1..n - 1 {
        if e[m - 1].is_zero() {
            return Err(Error::PositivityViolation(format!(
                "E_{} vanishes at the removed eigenvalue; surgery breaks down",
                m - 1
            )));
        }
        new_u.push(u[m - 1].clone() * e[m].clone() / e[m - 1].clone());
    }
    Ok((new_b, new_u))
}

/// Monic three-term recurrence of the discrete measure {(nodes_s, w_s)}:
/// the Jacobi matrix whose spectrum is exactly the node set. Weight scaling
/// cancels, so the weights need not be normalized (they must share a sign).
fn stieltjes_monic<T>(nodes: &[T], weights: &[T]) -> Result<(Vec<T>, Vec<T>)>
where
    T: Clone + Signed,
{
    let m = nodes.len();
    let dot = |f: &[T], g: &[T]| -> T {
        let mut acc = T::zero();
        for s in 0..m {
            acc = acc + weights[s].clone() * f[s].clone() * g[s].clone();
        }
        acc
    };
    let xs = |f: &[T]| -> Vec<T> {
        (0..m).map(|s| nodes[s].clone() * f[s].clone()).collect()
    };

    let mut b = Vec::with_capacity(m);
    let mut u = Vec::with_capacity(m - 1);
    let mut prev: Vec<T> = vec![T::zero(); m];
    let mut curr: Vec<T> = vec![T::one(); m];
    let mut norm_prev = T::one();
    let mut norm_curr = dot(&curr, &curr);
    for k in 0..m {
        if norm_curr.is_zero() {
            return Err(Error::PositivityViolation(format!(
                "Stieltjes norm vanished at step {k}"
            )));
        }
        let x_curr = xs(&curr);
        b.push(dot(&x_curr, &curr) / norm_curr.clone());
        if k + 1 < m {
            let u_next = norm_curr.clone() / norm_prev.clone();
            let next: Vec<T> = (0..m)
                .map(|s| {
                    let mut v = x_curr[s].clone() - b[k].clone() * curr[s].clone();
                    if k > 0 {
                        v = v - u_next.clone() * prev[s].clone();
                    }
                    v
                })
                .collect();
            if k > 0 {
                u.push(u_next);
            }
            norm_prev = norm_curr;
            norm_curr = dot(&next, &next);
            prev = curr;
            curr = next;
        } else if k > 0 {
            u.push(norm_curr.clone() / norm_prev.clone());
        }
    }
    Ok((b, u))
}

/// Exact Christoffel weights of an exact matrix:
/// w_s = 1 / sum_i P_i(lambda_s)^2 / (u_1...u_i).
fn exact_weights(exact: &ExactJacobi) -> Vec<Rat> {
    exact
        .lambdas
        .iter()
        .map(|lam| {
            let p = eval_monic(&exact.b, &exact.u, lam);
            let mut acc = Rat::one();
            let mut u_prod = Rat::one();
            for i in 1..exact.b.len() {
                u_prod *= &exact.u[i - 1];
                acc += &p[i] * &p[i] / &u_prod;
            }
            acc.recip()
        })
        .collect()
}

/// Removes the listed indices from the matrix (b, u) with spectrum `lams`
/// and weights `w`: kernel-ratio steps first, measure reconstruction as the
/// fallback when a ratio breaks down.
fn remove_points<T>(
    b: &[T],
    u: &[T],
    lams: &[T],
    w: &[T],
    set: &[usize],
) -> Result<(Vec<T>, Vec<T>, Vec<T>)>
where
    T: Clone + Signed,
{
    let mut bb = b.to_vec();
    let mut uu = u.to_vec();
    let mut ll = lams.to_vec();
    let mut broke = false;
    for &k in set.iter().rev() {
        let lam = ll[k].clone();
        match christoffel_step(&bb, &uu, &lam) {
            Ok((nb, nu)) => {
                bb = nb;
                uu = nu;
                ll.remove(k);
            }
            Err(_) => {
                broke = true;
                break;
            }
        }
    }
    if broke {
        // transformed measure: surviving nodes with
        // w_s prod_k (lambda_s - lambda_k)
        let mut nodes = Vec::new();
        let mut weights = Vec::new();
        for s in 0..lams.len() {
            if set.contains(&s) {
                continue;
            }
            let mut ws = w[s].clone();
            for &k in set {
                ws = ws * (lams[s].clone() - lams[k].clone());
            }
            nodes.push(lams[s].clone());
            weights.push(ws);
        }
        let (nb, nu) = stieltjes_monic(&nodes, &weights)?;
        bb = nb;
        uu = nu;
        ll = nodes;
    }
    Ok((bb, uu, ll))
}

fn validate_removal(remove: &[usize], n_last: usize) -> Result<Vec<usize>> {
    let mut set: Vec<usize> = remove.to_vec();
    set.sort_unstable();
    set.dedup();
    if set.len() != remove.len() {
        return Err(Error::UnsupportedSurgery(
            "removal set contains duplicates".into(),
        ));
    }
    if set.iter().any(|&k| k > n_last) {
        return Err(Error::UnsupportedSurgery(format!(
            "removal index out of range 0..={n_last}"
        )));
    }
    match set.as_slice() {
        [k] if *k == 0 || *k == n_last => Ok(set),
        [k] => Err(Error::PositivityViolation(format!(
            "removing the single interior eigenvalue lambda_{k} flips weight signs; \
             remove a consecutive pair instead"
        ))),
        [k1, k2] if k2 == &(k1 + 1) => Ok(set),
        [_, _] => Err(Error::UnsupportedSurgery(
            "interior removals must be a consecutive pair {k, k+1}".into(),
        )),
        _ => Err(Error::UnsupportedSurgery(format!(
            "removal set of size {} is not supported",
            set.len()
        ))),
    }
}

/// Removes the given spectral points from the matrix, returning the smaller
/// matrix together with exact entries when the input carried them.
///
/// `basis` supplies the eigenvalues (rows are unused beyond sanity checks);
/// it must come from the same matrix.
pub fn spectral_surgery(
    jac: &JacobiSpec,
    basis: &EigenBasis,
    remove: &[usize],
) -> Result<JacobiSpec> {
    let n_last = jac.last_index();
    if basis.n_sites() != jac.n_sites() {
        return Err(Error::InvalidParameters(format!(
            "eigenbasis of size {} does not match a {}-site matrix",
            basis.n_sites(),
            jac.n_sites()
        )));
    }
    if jac.n_sites() <= remove.len() {
        return Err(Error::UnsupportedSurgery(
            "cannot remove every spectral point".into(),
        ));
    }
    let set = validate_removal(remove, n_last)?;

    if let Some(exact) = jac.exact() {
        let w = exact_weights(exact);
        let (b, u, lambdas) =
            remove_points::<Rat>(&exact.b, &exact.u, &exact.lambdas, &w, &set)?;
        if let Some((i, _)) = u.iter().enumerate().find(|(_, x)| !x.is_positive()) {
            return Err(Error::PositivityViolation(format!(
                "surgery produced a non-positive u_{}",
                i + 1
            )));
        }
        return Ok(JacobiSpec::from_exact(ExactJacobi {
            b,
            u,
            lambdas,
            omega2: exact.omega2,
        }));
    }

    let (b, u, _) = remove_points::<f64>(
        jac.diagonal(),
        jac.squared_off_diagonal(),
        &basis.lambdas,
        &basis.weights,
        &set,
    )?;
    JacobiSpec::from_parts(b, u)
}

/// Christoffel-transformed weights for the surviving points, normalized to
/// unit sum; the prediction tested against the recomputed eigenbasis of the
/// surgered matrix.
pub fn surgered_weights(basis: &EigenBasis, remove: &[usize]) -> Result<Vec<f64>> {
    let n_last = basis.n_sites() - 1;
    let set = validate_removal(remove, n_last)?;
    let mut raw = Vec::new();
    for s in 0..basis.n_sites() {
        if set.contains(&s) {
            continue;
        }
        let mut w = basis.weights[s];
        for &k in &set {
            w *= basis.lambdas[s] - basis.lambdas[k];
        }
        raw.push(w);
    }
    let total: f64 = raw.iter().sum();
    if total == 0.0 {
        return Err(Error::PositivityViolation(
            "surgered weights sum to zero".into(),
        ));
    }
    let normalized: Vec<f64> = raw.iter().map(|w| w / total).collect();
    if normalized.iter().any(|w| *w <= 0.0) {
        return Err(Error::PositivityViolation(
            "surgered weights change sign".into(),
        ));
    }
    Ok(normalized)
}
