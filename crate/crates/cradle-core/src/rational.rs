//! Exact rational helpers.
//!
//! Spectral parameters propagate as exact `BigRational` values through the
//! recurrence and Pochhammer products, which are prone to catastrophic
//! cancellation in floating point; conversion to f64 happens once, at the
//! end.

use crate::error::{Error, Result};
use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{One, ToPrimitive, Zero};

/// Exact rational scalar used for spectral parameters.
pub type Rat = BigRational;

/// Shorthand constructor from machine integers.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// Exact integer as a rational.
pub fn rint(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Lossy conversion for the numerics layer.
pub fn to_f64(x: &Rat) -> f64 {
    x.to_f64().expect("rational out of f64 range")
}

/// Parses "3/4", "-1/8", "2" or a plain decimal like "0.25" into an exact
/// rational (decimals are read as exact base-10 fractions).
pub fn parse_ratio(s: &str) -> Result<Rat> {
    let s = s.trim();
    let bad = || Error::InvalidParameters(format!("cannot parse rational from {s:?}"));
    if let Some((num, den)) = s.split_once('/') {
        let n: BigInt = num.trim().parse().map_err(|_| bad())?;
        let d: BigInt = den.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(Rat::new(n, d));
    }
    if let Some((int, frac)) = s.split_once('.') {
        let sign = if int.trim_start().starts_with('-') { -1 } else { 1 };
        let i: BigInt = if int.is_empty() || int == "-" {
            BigInt::zero()
        } else {
            int.parse().map_err(|_| bad())?
        };
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let f: BigInt = frac.parse().map_err(|_| bad())?;
        let den = BigInt::from(10u32).pow(frac.len() as u32);
        return Ok(Rat::from_integer(i) + Rat::new(f, den) * rint(sign));
    }
    let n: BigInt = s.parse().map_err(|_| bad())?;
    Ok(Rat::from_integer(n))
}

/// Rising factorial (x)_k = x (x+1) ... (x+k-1), with (x)_0 = 1.
pub fn pochhammer(x: &Rat, k: usize) -> Rat {
    let mut acc = Rat::one();
    let mut term = x.clone();
    for _ in 0..k {
        acc *= &term;
        term += Rat::one();
    }
    acc
}

/// Exact binomial coefficient.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Numerator/denominator as machine integers, for serialization.
pub fn to_i64_pair(x: &Rat) -> Result<(i64, i64)> {
    let num = x.numer().to_i64();
    let den = x.denom().to_i64();
    match (num, den) {
        (Some(n), Some(d)) => Ok((n, d)),
        _ => Err(Error::Document(format!(
            "rational {x} does not fit in i64 numerator/denominator"
        ))),
    }
}

/// True if x is an integer with the same parity as `parity` (0 or 1).
pub fn has_parity(x: &Rat, parity: u8) -> bool {
    if !x.denom().is_one() {
        return false;
    }
    let two = BigInt::from(2);
    let rem = ((x.numer() % &two) + &two) % &two;
    rem == BigInt::from(parity)
}
