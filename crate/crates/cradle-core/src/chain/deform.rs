//! Deformed chains: the mass/spring counterpart of the isospectral
//! deformation. The matrix only changes in its central entries, but the
//! chain changes on its whole second half, scaled by alpha/(1-alpha).

use super::{build_fixed_fixed, build_free_free, ChainSpec, Provenance};
use crate::error::{Error, Result};
use crate::params::{Boundary, ChainParams};
use crate::rational::{rat, to_f64, Rat};

/// Deformed chain with the default normalization (first mass kept).
pub fn build_deformed(params: &ChainParams) -> Result<ChainSpec> {
    build_deformed_with(params, false)
}

/// Deformed chain; `symmetric_renorm` rescales everything by 2(1-alpha)
/// (the presentation in which both halves of the chain change).
pub fn build_deformed_with(params: &ChainParams, symmetric_renorm: bool) -> Result<ChainSpec> {
    params.validate()?;
    let alpha = &params.alpha;
    if alpha <= &Rat::from_integer(0.into()) || alpha >= &Rat::from_integer(1.into()) {
        return Err(Error::DegenerateParameters(format!(
            "alpha = {alpha} leaves no chain to receive or give the pulse"
        )));
    }
    let base_params = params.clone().with_alpha(rat(1, 2));
    let mut base = match params.boundary {
        Boundary::FreeFree => build_free_free(&base_params)?,
        Boundary::FixedFixed => build_fixed_fixed(&base_params)?,
    };
    if *alpha == rat(1, 2) {
        base.params = Some(params.clone());
        return Ok(base);
    }

    let af = to_f64(alpha);
    let ratio = af / (1.0 - af);
    let n_last = base.last_index();
    let odd = n_last % 2 == 1;
    let j = if odd { (n_last - 1) / 2 } else { n_last / 2 };

    let mut masses = base.masses.clone();
    let mut springs = base.springs.clone();
    for (i, m) in masses.iter_mut().enumerate() {
        if odd {
            if i > j {
                *m *= ratio;
            }
        } else if i == j {
            *m /= 2.0 * (1.0 - af);
        } else if i > j {
            *m *= ratio;
        }
    }
    for (i, k) in springs.iter_mut().enumerate() {
        if odd {
            if i == j + 1 {
                *k *= 2.0 * af;
            } else if i > j + 1 {
                *k *= ratio;
            }
        } else if i > j {
            *k *= ratio;
        }
    }
    if symmetric_renorm {
        let s = 2.0 * (1.0 - af);
        for m in &mut masses {
            *m *= s;
        }
        for k in &mut springs {
            *k *= s;
        }
    }

    ChainSpec::new(
        masses,
        springs,
        params.boundary,
        Provenance::Deformed,
        Some(params.clone()),
    )
}
