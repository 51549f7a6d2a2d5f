//! The chain document: the JSON interchange format produced and consumed by
//! the command-line tools.
//!
//! Rational parameters are stored exactly as numerator/denominator pairs;
//! reals ride on JSON numbers whose shortest round-trip representation
//! restores the exact f64. Documents carry their declared spectrum so a
//! loaded chain can always be re-verified against it.

use crate::chain::{ChainSpec, Provenance};
use crate::error::{Error, Result};
use crate::params::{Boundary, ChainParams, ParamValue, ScaleKind};
use crate::rational::{rat, to_i64_pair};
use crate::spectral::BiLatticeSpectrum;
use serde::{Deserialize, Serialize};

pub const FORMAT_VERSION: u32 = 1;

/// Exact rational as a {num, den} pair, or a plain real.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum NumberDoc {
    Exact { num: i64, den: i64 },
    Real(f64),
}

impl NumberDoc {
    fn from_param(v: &ParamValue) -> Result<Self> {
        Ok(match v {
            ParamValue::Exact(r) => {
                let (num, den) = to_i64_pair(r)?;
                NumberDoc::Exact { num, den }
            }
            ParamValue::Real(x) => NumberDoc::Real(*x),
        })
    }

    fn to_param(&self) -> Result<ParamValue> {
        Ok(match self {
            NumberDoc::Exact { num, den } => {
                if *den == 0 {
                    return Err(Error::Document("rational with zero denominator".into()));
                }
                ParamValue::Exact(rat(*num, *den))
            }
            NumberDoc::Real(x) => ParamValue::Real(*x),
        })
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ParamsDoc {
    pub n_sites: usize,
    pub a: NumberDoc,
    pub c: NumberDoc,
    pub alpha: NumberDoc,
    pub omega_tilde: f64,
    pub scale: f64,
    pub scale_kind: ScaleKind,
    #[serde(default)]
    pub relaxed: bool,
}

/// Declared spectrum and schedule, for re-verification and simulation.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SpectrumDoc {
    pub lambdas: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t_star: Option<f64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub tau: Vec<f64>,
}

/// A transform applied to a parent document.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum TransformDoc {
    Deform { alpha: NumberDoc },
    Surgery { removed: Vec<usize> },
}

/// Serialized chain.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ChainDocument {
    pub format_version: u32,
    pub boundary: Boundary,
    pub provenance: Provenance,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub params: Option<ParamsDoc>,
    pub masses: Vec<f64>,
    pub springs: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spectrum: Option<SpectrumDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub transform: Option<TransformDoc>,
}

impl ChainDocument {
    pub fn from_chain(chain: &ChainSpec, spectrum: Option<&BiLatticeSpectrum>) -> Result<Self> {
        let params = match &chain.params {
            Some(p) => Some(ParamsDoc {
                n_sites: p.n_sites,
                a: NumberDoc::from_param(&p.a)?,
                c: NumberDoc::from_param(&p.c)?,
                alpha: NumberDoc::from_param(&ParamValue::Exact(p.alpha.clone()))?,
                omega_tilde: p.omega_tilde,
                scale: p.scale,
                scale_kind: p.scale_kind,
                relaxed: p.relaxed,
            }),
            None => None,
        };
        Ok(ChainDocument {
            format_version: FORMAT_VERSION,
            boundary: chain.boundary,
            provenance: chain.provenance,
            params,
            masses: chain.masses.clone(),
            springs: chain.springs.clone(),
            spectrum: spectrum.map(|s| SpectrumDoc {
                lambdas: s.lambdas.clone(),
                t_star: s.t_star,
                tau: s.tau.clone(),
            }),
            transform: None,
        })
    }

    pub fn to_chain(&self) -> Result<ChainSpec> {
        if self.format_version != FORMAT_VERSION {
            return Err(Error::Document(format!(
                "unsupported format_version {}",
                self.format_version
            )));
        }
        let params = match &self.params {
            Some(p) => {
                let alpha = match p.alpha.to_param()? {
                    ParamValue::Exact(r) => r,
                    ParamValue::Real(_) => {
                        return Err(Error::Document(
                            "alpha must be stored as an exact rational".into(),
                        ))
                    }
                };
                let params = ChainParams {
                    n_sites: p.n_sites,
                    boundary: self.boundary,
                    a: p.a.to_param()?,
                    c: p.c.to_param()?,
                    alpha,
                    omega_tilde: p.omega_tilde,
                    scale: p.scale,
                    scale_kind: p.scale_kind,
                    relaxed: p.relaxed,
                };
                params.validate()?;
                Some(params)
            }
            None => None,
        };
        ChainSpec::new(
            self.masses.clone(),
            self.springs.clone(),
            self.boundary,
            self.provenance,
            params,
        )
    }

    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string_pretty(self).map_err(|e| Error::Document(e.to_string()))
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Document(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::build;
    use crate::spectral::spectrum;

    #[test]
    fn round_trip_is_lossless() {
        let params = ChainParams::free_free(7, 3, 8, 2.0 * std::f64::consts::PI / 6.0, 1.25)
            .unwrap();
        let chain = build(&params).unwrap();
        let spec = spectrum(&params).unwrap();
        let doc = ChainDocument::from_chain(&chain, Some(&spec)).unwrap();
        let text = doc.to_json().unwrap();
        let loaded = ChainDocument::from_json(&text).unwrap();
        let chain2 = loaded.to_chain().unwrap();
        assert_eq!(chain.masses, chain2.masses);
        assert_eq!(chain.springs, chain2.springs);
        assert_eq!(chain.params, chain2.params);
        assert_eq!(
            loaded.spectrum.as_ref().unwrap().lambdas,
            spec.lambdas
        );
    }

    #[test]
    fn rationals_stored_exactly() {
        let params = ChainParams::fixed_fixed(5, 1, 3, 8, 1.0, 1.0).unwrap();
        let chain = build(&params).unwrap();
        let doc = ChainDocument::from_chain(&chain, None).unwrap();
        let text = doc.to_json().unwrap();
        assert!(text.contains("\"num\": 1"));
        assert!(text.contains("\"den\": 8"));
        let back = ChainDocument::from_json(&text).unwrap().to_chain().unwrap();
        assert_eq!(back.params.unwrap().a, params.a);
    }

    #[test]
    fn malformed_documents_are_rejected() {
        assert!(ChainDocument::from_json("{").is_err());
        let params = ChainParams::free_free(4, 1, 2, 1.0, 1.0).unwrap();
        let chain = build(&params).unwrap();
        let mut doc = ChainDocument::from_chain(&chain, None).unwrap();
        doc.masses[1] = -1.0;
        assert!(doc.to_chain().is_err());
        let mut doc2 = ChainDocument::from_chain(&chain, None).unwrap();
        doc2.format_version = 99;
        assert!(doc2.to_chain().is_err());
    }
}
