//! Chain parameters and their validation.
//!
//! A chain is specified by its size, boundary type, the spectral parameters
//! (a, c, alpha), a frequency scale and a mass (or spring) scale. The
//! parameters a and c are exact rationals in the default strict mode; a
//! relaxed mode admits arbitrary reals for revival-only studies, in which
//! case the transfer-time machinery is disabled.

use crate::error::{Error, Result};
use crate::rational::{has_parity, rat, to_f64, Rat};
use num::integer::Integer;
use num::traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

/// Boundary condition of the chain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Boundary {
    /// K_0 = K_{N+1} = 0; the chain has a translation mode.
    FreeFree,
    /// K_0 and K_{N+1} both positive; first and last masses tied to walls.
    FixedFixed,
}

/// Which physical quantity the `scale` field fixes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScaleKind {
    /// `scale` is the first mass m_0 (default).
    Mass,
    /// `scale` is the boundary spring K_0 (fixed-fixed only).
    Spring,
}

/// A spectral parameter: exact rational in strict mode, arbitrary real in
/// relaxed mode.
#[derive(Debug, Clone, PartialEq)]
pub enum ParamValue {
    Exact(Rat),
    Real(f64),
}

impl ParamValue {
    pub fn to_f64(&self) -> f64 {
        match self {
            ParamValue::Exact(r) => to_f64(r),
            ParamValue::Real(x) => *x,
        }
    }

    pub fn exact(&self) -> Option<&Rat> {
        match self {
            ParamValue::Exact(r) => Some(r),
            ParamValue::Real(_) => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            ParamValue::Exact(r) => r.is_zero(),
            ParamValue::Real(x) => *x == 0.0,
        }
    }
}

impl From<Rat> for ParamValue {
    fn from(r: Rat) -> Self {
        ParamValue::Exact(r)
    }
}

/// Full parameter set for one chain family member.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainParams {
    /// Number of masses, N + 1 >= 2.
    pub n_sites: usize,
    pub boundary: Boundary,
    /// a = mu/Z; zero for free-free chains.
    pub a: ParamValue,
    /// c = rho/Z for free-free, a + rho/Z for fixed-fixed.
    pub c: ParamValue,
    /// Deformation parameter, strictly inside (0, 1); 1/2 is mirror-symmetric.
    pub alpha: Rat,
    /// Frequency scale in rad/s.
    pub omega_tilde: f64,
    /// Mass (kg) or spring (N/m) scale, per `scale_kind`.
    pub scale: f64,
    pub scale_kind: ScaleKind,
    /// Relaxed validation: admits parameters valid for fractional revival
    /// but not perfect transfer (parity conditions skipped, reals allowed).
    pub relaxed: bool,
}

impl ChainParams {
    /// Strict free-free constructor from the integer data (rho, Z).
    pub fn free_free(n_sites: usize, rho: i64, z: i64, omega_tilde: f64, m0: f64) -> Result<Self> {
        if z <= 0 || rho <= 0 {
            return Err(Error::InvalidParameters(
                "rho and Z must be positive".into(),
            ));
        }
        if rho.gcd(&z) != 1 {
            return Err(Error::InvalidParameters(format!(
                "gcd(rho, Z) = {} but rho = {rho} and Z = {z} must be co-prime",
                rho.gcd(&z)
            )));
        }
        let params = ChainParams {
            n_sites,
            boundary: Boundary::FreeFree,
            a: ParamValue::Exact(Rat::zero()),
            c: ParamValue::Exact(rat(rho, z)),
            alpha: rat(1, 2),
            omega_tilde,
            scale: m0,
            scale_kind: ScaleKind::Mass,
            relaxed: false,
        };
        params.validate()?;
        Ok(params)
    }

    /// Strict fixed-fixed constructor from the integer data (mu, rho, Z).
    pub fn fixed_fixed(
        n_sites: usize,
        mu: i64,
        rho: i64,
        z: i64,
        omega_tilde: f64,
        m0: f64,
    ) -> Result<Self> {
        if z <= 0 || rho <= 0 {
            return Err(Error::InvalidParameters(
                "rho and Z must be positive".into(),
            ));
        }
        let g = mu.gcd(&rho).gcd(&z);
        if g != 1 {
            return Err(Error::InvalidParameters(format!(
                "mu, rho and Z share the common factor {g}"
            )));
        }
        let a = rat(mu, z);
        let c = &a + rat(rho, z);
        let params = ChainParams {
            n_sites,
            boundary: Boundary::FixedFixed,
            a: ParamValue::Exact(a),
            c: ParamValue::Exact(c),
            alpha: rat(1, 2),
            omega_tilde,
            scale: m0,
            scale_kind: ScaleKind::Mass,
            relaxed: false,
        };
        params.validate()?;
        Ok(params)
    }

    /// Replaces the deformation parameter.
    pub fn with_alpha(mut self, alpha: Rat) -> Self {
        self.alpha = alpha;
        self
    }

    /// Index of the last mass, N.
    pub fn last_index(&self) -> usize {
        self.n_sites - 1
    }

    /// Checks every invariant for the current mode.
    pub fn validate(&self) -> Result<()> {
        if self.n_sites < 2 {
            return Err(Error::InvalidParameters(format!(
                "need at least two masses, got {}",
                self.n_sites
            )));
        }
        let scales_ok = self.omega_tilde.is_finite()
            && self.omega_tilde > 0.0
            && self.scale.is_finite()
            && self.scale > 0.0;
        if !scales_ok {
            return Err(Error::InvalidParameters(
                "omega_tilde and scale must be positive".into(),
            ));
        }
        if self.alpha <= Rat::zero() || self.alpha >= Rat::one() {
            return Err(Error::DegenerateParameters(format!(
                "alpha = {} must lie strictly inside (0, 1)",
                self.alpha
            )));
        }
        if self.scale_kind == ScaleKind::Spring && self.boundary == Boundary::FreeFree {
            return Err(Error::InvalidParameters(
                "spring scaling needs a boundary spring; free-free chains scale by m_0".into(),
            ));
        }
        match self.boundary {
            Boundary::FreeFree => self.validate_free_free(),
            Boundary::FixedFixed => self.validate_fixed_fixed(),
        }
    }

    fn validate_free_free(&self) -> Result<()> {
        if !self.a.is_zero() {
            return Err(Error::InvalidParameters(
                "free-free chains require a = 0".into(),
            ));
        }
        let c = self.c.to_f64();
        if c == 0.0 || c == 1.0 {
            return Err(Error::DegenerateParameters(
                "c in {0, 1} degenerates the free-free chain".into(),
            ));
        }
        if !(0.0 < c && c < 1.0) {
            return Err(Error::InvalidParameters(format!(
                "free-free chains require 0 < c < 1, got c = {c}"
            )));
        }
        if !self.relaxed {
            let cr = self.c.exact().ok_or_else(|| {
                Error::InvalidParameters(
                    "strict validation requires rational c; set the relaxed flag for reals".into(),
                )
            })?;
            // reduced fraction rho/Z: rho odd, Z even
            if !has_parity(&(cr * self.denominator_z_rat()), 1) {
                return Err(Error::InvalidParameters(format!(
                    "perfect transfer requires odd rho in c = rho/Z, got c = {cr}"
                )));
            }
            if cr.denom().is_odd() {
                return Err(Error::InvalidParameters(format!(
                    "perfect transfer requires even Z in c = rho/Z, got c = {cr}"
                )));
            }
        }
        Ok(())
    }

    fn validate_fixed_fixed(&self) -> Result<()> {
        let a = self.a.to_f64();
        let c = self.c.to_f64();
        if self.a.is_zero() {
            return Err(Error::InvalidParameters(
                "fixed-fixed chains require a != 0 (a = 0 has a translation mode)".into(),
            ));
        }
        if !a.is_finite() || a <= -0.5 {
            return Err(Error::InvalidParameters(format!(
                "fixed-fixed chains require a > -1/2, got a = {a}"
            )));
        }
        let d = c - a;
        if d == 0.0 || d == 1.0 {
            return Err(Error::DegenerateParameters(
                "c - a in {0, 1} degenerates the fixed-fixed chain".into(),
            ));
        }
        if !(0.0 < d && d < 1.0) {
            return Err(Error::InvalidParameters(format!(
                "fixed-fixed chains require 0 < c - a < 1, got c - a = {d}"
            )));
        }
        if c <= -a {
            return Err(Error::InvalidParameters(format!(
                "fixed-fixed chains require c > -a, got a = {a}, c = {c}"
            )));
        }
        if !self.relaxed {
            let (ar, cr) = match (self.a.exact(), self.c.exact()) {
                (Some(ar), Some(cr)) => (ar, cr),
                _ => {
                    return Err(Error::InvalidParameters(
                        "strict validation requires rational a and c; set the relaxed flag"
                            .into(),
                    ))
                }
            };
            let z = self.denominator_z_rat();
            let mu = ar * &z;
            let rho = (cr - ar) * &z;
            if !mu.denom().is_one() || !rho.denom().is_one() {
                return Err(Error::InvalidParameters(
                    "a and c - a must share the denominator Z".into(),
                ));
            }
            if !z.numer().is_even() {
                return Err(Error::InvalidParameters(format!(
                    "perfect transfer requires even Z, got Z = {z}"
                )));
            }
            if !has_parity(&rho, 1) {
                return Err(Error::InvalidParameters(format!(
                    "perfect transfer requires odd rho, got rho = {rho}"
                )));
            }
        }
        Ok(())
    }

    /// Common denominator Z of a and c as a rational integer; 1 when either
    /// parameter is a raw real.
    fn denominator_z_rat(&self) -> Rat {
        match self.lattice_z() {
            Some(z) => Rat::from_integer(z.into()),
            None => Rat::one(),
        }
    }

    /// The lattice denominator Z = lcm(den(a), den(c)); `None` for relaxed
    /// real parameters (no finite period).
    pub fn lattice_z(&self) -> Option<u64> {
        let ar = self.a.exact()?;
        let cr = self.c.exact()?;
        ar.denom().lcm(cr.denom()).to_u64()
    }

    /// mu = a Z as a machine integer (0 for free-free).
    pub fn mu(&self) -> Option<i64> {
        let z = self.lattice_z()?;
        let m = self.a.exact()? * Rat::from_integer(z.into());
        m.numer().to_i64()
    }

    /// rho = (c - a) Z as a machine integer.
    pub fn rho(&self) -> Option<i64> {
        let z = self.lattice_z()?;
        let r = (self.c.exact()? - self.a.exact()?) * Rat::from_integer(z.into());
        r.numer().to_i64()
    }

    /// True when the parameters meet every perfect-transfer condition
    /// (rational data with the required parities and alpha = 1/2).
    pub fn is_pt_valid(&self) -> bool {
        if self.alpha != rat(1, 2) {
            return false;
        }
        let (z, rho) = match (self.lattice_z(), self.rho()) {
            (Some(z), Some(r)) => (z, r),
            _ => return false,
        };
        z % 2 == 0 && rho.rem_euclid(2) == 1
    }
}
