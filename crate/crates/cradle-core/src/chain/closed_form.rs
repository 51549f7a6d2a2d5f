//! Closed-form mass and spring ratios of the free-free family, in exact
//! rational arithmetic.
//!
//! The alternating-sign Pochhammer ratios cancel catastrophically in
//! floating point for moderate N, so everything here stays rational until
//! the caller converts. At c = 1/2 the family reduces to the dual-Hahn
//! chain, whose ratios are pure binomial expressions; the two routes must
//! agree exactly.

use crate::error::{Error, Result};
use crate::rational::{binomial, pochhammer, rint, Rat};
use crate::spectral::recurrence::para_racah_terms;
use num::traits::{One, Signed, Zero};

/// m_i / m_0 for i = 0..=N (Pochhammer closed forms, both parities).
pub fn free_free_mass_ratios(n_last: usize, c: &Rat) -> Result<Vec<Rat>> {
    check_c(c)?;
    let nn = n_last as i64;
    let odd = n_last % 2 == 1;
    let j = if odd { (nn - 1) / 2 } else { nn / 2 };
    let mut out = Vec::with_capacity(n_last + 1);
    for i in 0..=n_last {
        let num = pochhammer(&rint(-nn), i)
            * pochhammer(c, i)
            * if odd {
                pochhammer(&(-rint(j) - c), i)
            } else {
                pochhammer(&(-rint(j) - c + Rat::one()), i)
            };
        let den = pochhammer(&Rat::one(), i)
            * pochhammer(&(rint(-nn + 1) - c), i)
            * pochhammer(&(c - rint(j)), i);
        let mut ratio = num / den;
        if odd {
            ratio *= Rat::new((nn - 2 * i as i64).into(), nn.into());
        }
        if !ratio.is_positive() {
            return Err(Error::PositivityViolation(format!(
                "closed-form mass ratio m_{i}/m_0 = {ratio} is not positive"
            )));
        }
        out.push(ratio);
    }
    Ok(out)
}

/// K_i / (omega_tilde^2 m_0) for i = 1..=N.
pub fn free_free_spring_ratios(n_last: usize, c: &Rat) -> Result<Vec<Rat>> {
    let masses = free_free_mass_ratios(n_last, c)?;
    let nn = n_last as i64;
    let odd = n_last % 2 == 1;
    let j = if odd { (nn - 1) / 2 } else { nn / 2 };
    let mut out = Vec::with_capacity(n_last);
    for i in 1..=n_last {
        let it = rint(i as i64);
        let den = if odd {
            rint(2 * (2 * i as i64 - nn))
        } else {
            rint(2 * (2 * i as i64 - 1 - nn))
        };
        let coeff = &it * (rint(nn) - &it + c) * (&it - rint(j) - Rat::one() + c) / den;
        let ratio = coeff * &masses[i];
        if !ratio.is_positive() {
            return Err(Error::PositivityViolation(format!(
                "closed-form spring ratio K_{i} is not positive"
            )));
        }
        out.push(ratio);
    }
    Ok(out)
}

/// m_i / m_0 through the product form m_i = (A_0...A_{i-1})^2/(u_1...u_i),
/// the independent route used to cross-check the closed forms.
pub fn product_form_mass_ratios(n_last: usize, c: &Rat) -> Result<Vec<Rat>> {
    check_c(c)?;
    let (a_terms, c_terms) = para_racah_terms(n_last, &Rat::zero(), c);
    let mut out = Vec::with_capacity(n_last + 1);
    out.push(Rat::one());
    for i in 1..=n_last {
        let u_i = &a_terms[i - 1] * &c_terms[i];
        if !u_i.is_positive() {
            return Err(Error::PositivityViolation(format!(
                "u_{i} = {u_i} is not positive"
            )));
        }
        let prev = out[i - 1].clone();
        out.push(prev * &a_terms[i - 1] * &a_terms[i - 1] / u_i);
    }
    Ok(out)
}

/// Dual-Hahn (c = 1/2) mass ratios: m_i/m_0 = C(N,i)^2 / C(2N,2i).
pub fn dual_hahn_mass_ratios(n_last: usize) -> Vec<Rat> {
    let n = n_last as u64;
    (0..=n)
        .map(|i| {
            let b = binomial(n, i);
            Rat::new(&b * &b, binomial(2 * n, 2 * i))
        })
        .collect()
}

/// Dual-Hahn spring ratios K_i/(omega_tilde^2 m_0) = N^2 C(N-1,i-1)^2 /
/// (4 C(2N,2i-1)) for i = 1..=N.
pub fn dual_hahn_spring_ratios(n_last: usize) -> Vec<Rat> {
    let n = n_last as u64;
    (1..=n)
        .map(|i| {
            let b = binomial(n - 1, i - 1);
            Rat::new(
                &b * &b * num::BigInt::from(n * n),
                num::BigInt::from(4) * binomial(2 * n, 2 * i - 1),
            )
        })
        .collect()
}

fn check_c(c: &Rat) -> Result<()> {
    if c <= &Rat::zero() || c >= &Rat::one() {
        return Err(Error::DegenerateParameters(format!(
            "free-free closed forms need 0 < c < 1, got c = {c}"
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn two_site_masses_are_equal() {
        let m = free_free_mass_ratios(1, &rat(3, 8)).unwrap();
        assert_eq!(m, vec![Rat::one(), Rat::one()]);
        // K_1/(w^2 m_0) = c^2/2
        let k = free_free_spring_ratios(1, &rat(3, 8)).unwrap();
        assert_eq!(k, vec![rat(9, 128)]);
    }

    #[test]
    fn three_site_dual_hahn_value() {
        // m_1/m_0 = C(2,1)^2 / C(4,2) = 2/3 at c = 1/2
        let m = free_free_mass_ratios(2, &rat(1, 2)).unwrap();
        assert_eq!(m[1], rat(2, 3));
        assert_eq!(m[2], Rat::one());
        // K_1 = K_2 = (omega/2)^2 m_0 in spring-ratio units: 1/4
        let k = free_free_spring_ratios(2, &rat(1, 2)).unwrap();
        assert_eq!(k, vec![rat(1, 4), rat(1, 4)]);
    }

    #[test]
    fn closed_form_equals_product_form() {
        for c in [rat(1, 4), rat(1, 2), rat(3, 4), rat(5, 6)] {
            for n_last in [3usize, 4, 9, 12, 19, 20] {
                let closed = free_free_mass_ratios(n_last, &c).unwrap();
                let product = product_form_mass_ratios(n_last, &c).unwrap();
                assert_eq!(closed, product, "N = {n_last}, c = {c}");
            }
        }
    }

    #[test]
    fn dual_hahn_reduction_is_exact() {
        for n_last in 1..=10usize {
            assert_eq!(
                free_free_mass_ratios(n_last, &rat(1, 2)).unwrap(),
                dual_hahn_mass_ratios(n_last),
                "masses at N = {n_last}"
            );
            assert_eq!(
                free_free_spring_ratios(n_last, &rat(1, 2)).unwrap(),
                dual_hahn_spring_ratios(n_last),
                "springs at N = {n_last}"
            );
        }
    }

    #[test]
    fn masses_are_mirror_symmetric() {
        let m = free_free_mass_ratios(9, &rat(3, 4)).unwrap();
        for i in 0..=9 {
            assert_eq!(m[i], m[9 - i]);
        }
    }

    #[test]
    fn degenerate_c_rejected() {
        assert!(free_free_mass_ratios(4, &Rat::one()).is_err());
        assert!(free_free_mass_ratios(4, &Rat::zero()).is_err());
    }
}
