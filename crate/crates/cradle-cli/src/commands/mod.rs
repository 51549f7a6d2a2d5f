pub mod build;
pub mod simulate;
pub mod transform;
pub mod verify;

use anyhow::{anyhow, bail, Context, Result};
use cradle_core::chain::ChainSpec;
use cradle_core::document::ChainDocument;
use cradle_core::dynamics::{prepare, prepare_with_spectrum, Prepared};
use cradle_core::params::ParamValue;
use cradle_core::rational::parse_ratio;
use cradle_core::Rat;
use std::path::Path;

/// Default certificate tolerance, overridable through CRADLE_TOL.
pub fn certificate_tol() -> Result<f64> {
    match std::env::var("CRADLE_TOL") {
        Ok(text) => {
            let v: f64 = text
                .trim()
                .parse()
                .map_err(|_| anyhow!("CRADLE_TOL = {text:?} is not a number"))?;
            if !v.is_finite() || v <= 0.0 {
                bail!("CRADLE_TOL must be positive");
            }
            Ok(v)
        }
        Err(_) => Ok(cradle_core::tol::DYNAMICS),
    }
}

pub fn load_document(path: &Path) -> Result<ChainDocument> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading chain document {}", path.display()))?;
    Ok(ChainDocument::from_json(&text)?)
}

pub fn save_document(path: &Path, doc: &ChainDocument) -> Result<()> {
    let mut text = doc.to_json()?;
    text.push('\n');
    std::fs::write(path, text)
        .with_context(|| format!("writing chain document {}", path.display()))?;
    Ok(())
}

/// Prepares a loaded chain: from its parameters when it has them, from the
/// declared spectrum otherwise.
pub fn prepare_document(doc: &ChainDocument) -> Result<(ChainSpec, Prepared)> {
    let chain = doc.to_chain()?;
    let prepared = if chain.params.is_some() {
        prepare(&chain)?
    } else if let Some(spec) = &doc.spectrum {
        prepare_with_spectrum(&chain, spec.lambdas.clone(), spec.t_star, spec.tau.clone())?
    } else {
        bail!("document has neither parameters nor a declared spectrum");
    };
    Ok((chain, prepared))
}

/// Exact rational from "p/q"; plain decimals are allowed only in relaxed
/// mode, where they are taken as raw reals with no lattice structure.
pub fn parse_param(text: &str, relaxed: bool, name: &str) -> Result<ParamValue> {
    if text.contains('/') {
        return Ok(ParamValue::Exact(parse_ratio(text)?));
    }
    if let Ok(int) = text.trim().parse::<i64>() {
        return Ok(ParamValue::Exact(cradle_core::rational::rint(int)));
    }
    if relaxed {
        let v: f64 = text
            .trim()
            .parse()
            .map_err(|_| anyhow!("{name} = {text:?} is not a number"))?;
        Ok(ParamValue::Real(v))
    } else {
        bail!("{name} = {text:?}: use an exact fraction p/q, or pass --relaxed for raw reals")
    }
}

pub fn parse_alpha(text: &str) -> Result<Rat> {
    Ok(parse_ratio(text)?)
}

/// omega_tilde: a number, or "auto" for 2 pi / N (the figure normalization).
pub fn parse_omega_tilde(text: &str, n_last: usize) -> Result<f64> {
    if text.trim() == "auto" {
        return Ok(2.0 * std::f64::consts::PI / n_last as f64);
    }
    let v: f64 = text
        .trim()
        .parse()
        .map_err(|_| anyhow!("omega-tilde = {text:?} is not a number (or \"auto\")"))?;
    if !v.is_finite() || v <= 0.0 {
        bail!("omega-tilde must be positive");
    }
    Ok(v)
}
