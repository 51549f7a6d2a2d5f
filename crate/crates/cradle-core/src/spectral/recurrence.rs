//! Recurrence data of the para-Racah family.
//!
//! Everything here is dimensionless (frequency scale 1) and generic over the
//! scalar, so the same code path produces exact rational entries for rational
//! parameters and f64 entries otherwise. The two building blocks A_n and C_n
//! assemble the tridiagonal entries as b_n = A_n + C_n + a^2 and
//! u_n = A_{n-1} C_n, and for a = 0 the A_n sequence doubles as the
//! mass-reconstruction recurrence y_i.

use num::traits::{FromPrimitive, Signed};

fn num<T: FromPrimitive>(n: i64) -> T {
    T::from_i64(n).expect("small integer must convert")
}

/// The (A_n, C_n) sequences for n = 0..=N, for either parity of N.
pub fn para_racah_terms<T>(n_last: usize, a: &T, c: &T) -> (Vec<T>, Vec<T>)
where
    T: Clone + Signed + FromPrimitive,
{
    let nn = n_last as i64;
    let odd = n_last % 2 == 1;
    let j = if odd { (nn - 1) / 2 } else { nn / 2 };
    let mut a_terms = Vec::with_capacity(n_last + 1);
    let mut c_terms = Vec::with_capacity(n_last + 1);
    for n in 0..=nn {
        let nt: T = num(n);
        let sum_ac = nt.clone() + a.clone() + c.clone();
        let diff_ac = nt.clone() + a.clone() - c.clone();
        let (a_n, c_n) = if odd {
            let den: T = num(2 * (2 * n - nn));
            let a_n = (num::<T>(nn - n) * sum_ac.clone() * (diff_ac + num(-j))) / den.clone();
            let c_n = (nt.clone() * (num::<T>(nn - n) + a.clone() + c.clone()))
                * (nt.clone() + c.clone() - a.clone() + num(-j - 1))
                / den;
            (a_n, c_n)
        } else {
            let a_den: T = num(2 * (2 * n + 1 - nn));
            let c_den: T = num(2 * (2 * n - 1 - nn));
            let a_n = (num::<T>(nn - n) * sum_ac.clone() * (diff_ac + num(-j + 1))) / a_den;
            let c_n = (nt.clone() * (num::<T>(nn - n) + a.clone() + c.clone()))
                * (nt.clone() + c.clone() - a.clone() + num(-j - 1))
                / c_den;
            (a_n, c_n)
        };
        a_terms.push(a_n);
        c_terms.push(c_n);
    }
    (a_terms, c_terms)
}

/// Dimensionless tridiagonal entries: diagonal b_0..b_N and squared
/// off-diagonal u_1..u_N.
pub fn jacobi_entries<T>(n_last: usize, a: &T, c: &T) -> (Vec<T>, Vec<T>)
where
    T: Clone + Signed + FromPrimitive,
{
    let (a_terms, c_terms) = para_racah_terms(n_last, a, c);
    let a2 = a.clone() * a.clone();
    let b: Vec<T> = (0..=n_last)
        .map(|n| a_terms[n].clone() + c_terms[n].clone() + a2.clone())
        .collect();
    let u: Vec<T> = (1..=n_last)
        .map(|n| a_terms[n - 1].clone() * c_terms[n].clone())
        .collect();
    (b, u)
}

/// Dimensionless quadratic bi-lattice, interleaved in its natural (ascending)
/// order: (s+a)^2 on even positions, (s+c)^2 on odd ones.
pub fn bilattice<T>(n_last: usize, a: &T, c: &T) -> Vec<T>
where
    T: Clone + Signed + FromPrimitive,
{
    (0..=n_last)
        .map(|n| {
            let s: T = num((n / 2) as i64);
            let base = if n % 2 == 0 {
                s + a.clone()
            } else {
                s + c.clone()
            };
            base.clone() * base
        })
        .collect()
}
