//! Three-term recurrence evaluation and eigenvector generation.

use super::JacobiSpec;
use num::traits::Signed;

/// Monic values P_0(x2)..P_{N+1}(x2) from
/// x2 P_n = P_{n+1} + b_n P_n + u_n P_{n-1}; generic so the surgery code can
/// run it in exact rational arithmetic.
pub fn eval_monic<T>(b: &[T], u: &[T], x2: &T) -> Vec<T>
where
    T: Clone + Signed,
{
    let n = b.len();
    let mut out = Vec::with_capacity(n + 1);
    out.push(T::one());
    let mut prev = T::zero();
    let mut curr = T::one();
    for k in 0..n {
        let mut next = (x2.clone() - b[k].clone()) * curr.clone();
        if k > 0 {
            next = next - u[k - 1].clone() * prev.clone();
        }
        out.push(next.clone());
        prev = curr;
        curr = next;
    }
    out
}

/// f64 evaluation that also reports the rounding-error scale of the last
/// value: the companion recurrence S_{k+1} = (|x2|+|b_k|) S_k + u_k S_{k-1}
/// majorizes how roundoff propagates into P_{N+1}, so
/// |P_{N+1}(lambda_n)| <= tol * S is the honest form of "the characteristic
/// polynomial vanishes on the spectrum".
pub fn eval_monic_with_scale(b: &[f64], u: &[f64], x2: f64) -> (Vec<f64>, f64) {
    let n = b.len();
    let mut out = Vec::with_capacity(n + 1);
    out.push(1.0);
    let mut prev = 0.0f64;
    let mut curr = 1.0f64;
    let mut s_prev = 0.0f64;
    let mut s_curr = 1.0f64;
    for k in 0..n {
        let tail = if k > 0 { u[k - 1] * prev } else { 0.0 };
        let next = (x2 - b[k]) * curr - tail;
        let s_next =
            (x2.abs() + b[k].abs()) * s_curr + if k > 0 { u[k - 1] * s_prev } else { 0.0 };
        out.push(next);
        prev = curr;
        curr = next;
        s_prev = s_curr;
        s_curr = s_next;
    }
    (out, s_curr)
}

/// Un-normalized eigenvector candidate for eigenvalue `lam` of the matrix
/// with diagonal b and off-diagonal entries -sqrt(u): the row recurrence
/// v_{i+1} = ((b_i - lam) v_i - a_i v_{i-1}) / a_{i+1}, v_0 = 1. Returned
/// normalized to unit length.
pub fn recurrence_eigenvector(b: &[f64], u: &[f64], lam: f64) -> Vec<f64> {
    let n = b.len();
    let mut v = vec![0.0; n];
    v[0] = 1.0;
    if n > 1 {
        v[1] = (b[0] - lam) / u[0].sqrt();
    }
    for i in 1..n - 1 {
        v[i + 1] = ((b[i] - lam) * v[i] - u[i - 1].sqrt() * v[i - 1]) / u[i].sqrt();
    }
    normalize(&mut v);
    v
}

/// ||A v - lam v||_inf for a unit-norm v.
pub fn residual_inf(jac: &JacobiSpec, lam: f64, v: &[f64]) -> f64 {
    let av = jac.matvec(v);
    av.iter()
        .zip(v)
        .map(|(a, x)| (a - lam * x).abs())
        .fold(0.0, f64::max)
}

/// One inverse-iteration sweep: solves (A - lam I) x = v with a pivoted
/// tridiagonal elimination and returns the normalized solution. `None`
/// signals a numerically useless solve (all-zero right-hand side).
pub fn inverse_iteration_step(b: &[f64], u: &[f64], lam: f64, v: &[f64]) -> Option<Vec<f64>> {
    let n = b.len();
    let off: Vec<f64> = u.iter().map(|x| -x.sqrt()).collect();
    let mut d: Vec<f64> = b.iter().map(|x| x - lam).collect();
    let mut e = off.clone(); // superdiagonal, length n-1
    let mut f = vec![0.0; n.saturating_sub(2)]; // second superdiagonal fill-in
    let mut x = v.to_vec();

    let scale = d
        .iter()
        .chain(off.iter())
        .fold(f64::MIN_POSITIVE, |m, y| m.max(y.abs()));
    let tiny = scale * f64::EPSILON;

    for k in 0..n - 1 {
        let sub = off[k]; // entry (k+1, k)
        if d[k].abs() >= sub.abs() {
            let pivot = if d[k] == 0.0 { tiny } else { d[k] };
            d[k] = pivot;
            let m = sub / pivot;
            d[k + 1] -= m * e[k];
            if k + 1 < n - 1 {
                e[k + 1] -= m * if k < f.len() { f[k] } else { 0.0 };
            }
            x[k + 1] -= m * x[k];
        } else {
            // swap rows k and k+1
            let m = d[k] / sub;
            let dk1 = d[k + 1];
            let ek1 = if k + 1 < n - 1 { e[k + 1] } else { 0.0 };
            let old_e = e[k];
            let old_f = if k < f.len() { f[k] } else { 0.0 };
            d[k] = sub;
            e[k] = dk1;
            if k < f.len() {
                f[k] = ek1;
            }
            d[k + 1] = old_e - m * dk1;
            if k + 1 < n - 1 {
                e[k + 1] = old_f - m * ek1;
            }
            x.swap(k, k + 1);
            x[k + 1] -= m * x[k];
        }
    }
    if d[n - 1] == 0.0 {
        d[n - 1] = tiny;
    }

    x[n - 1] /= d[n - 1];
    if n >= 2 {
        x[n - 2] = (x[n - 2] - e[n - 2] * x[n - 1]) / d[n - 2];
    }
    for i in (0..n.saturating_sub(2)).rev() {
        x[i] = (x[i] - e[i] * x[i + 1] - f[i] * x[i + 2]) / d[i];
    }

    let norm: f64 = x.iter().map(|y| y * y).sum::<f64>().sqrt();
    if !norm.is_finite() || norm == 0.0 {
        return None;
    }
    for y in &mut x {
        *y /= norm;
    }
    Some(x)
}

fn normalize(v: &mut [f64]) {
    let norm: f64 = v.iter().map(|y| y * y).sum::<f64>().sqrt();
    if norm > 0.0 && norm.is_finite() {
        for y in v.iter_mut() {
            *y /= norm;
        }
    }
}
