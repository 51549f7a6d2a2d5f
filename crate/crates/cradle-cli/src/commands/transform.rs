use super::{load_document, parse_alpha, prepare_document, save_document};
use anyhow::{bail, Result};
use clap::Args;
use cradle_core::chain::{build_deformed_with, chain_to_jacobi, jacobi_to_chain_free_free};
use cradle_core::document::{ChainDocument, NumberDoc, SpectrumDoc, TransformDoc};
use cradle_core::rational::{rat, to_i64_pair};
use cradle_core::spectral::{spectral_surgery, spectrum};
use cradle_core::{oracle, Boundary};
use std::path::PathBuf;

#[derive(Args)]
pub struct TransformArgs {
    /// Source chain document
    #[arg(long = "chain", value_name = "FILE")]
    pub chain: PathBuf,
    /// Apply the isospectral deformation with the given --alpha
    #[arg(long, conflicts_with = "surgery")]
    pub deform: bool,
    /// New deformation parameter (fraction), e.g. 1/4
    #[arg(long, requires = "deform")]
    pub alpha: Option<String>,
    /// Rescale the deformed chain by 2(1-alpha)
    #[arg(long = "symmetric-renorm", requires = "deform")]
    pub symmetric_renorm: bool,
    /// Remove spectral points by Christoffel surgery
    #[arg(long)]
    pub surgery: bool,
    /// Remove the consecutive interior pair {k, k+1} (two indices)
    #[arg(long = "remove-pair", num_args = 2, value_name = "K", requires = "surgery")]
    pub remove_pair: Vec<usize>,
    /// Remove the top eigenvalue lambda_N
    #[arg(long = "remove-top", requires = "surgery")]
    pub remove_top: bool,
    /// Remove the bottom eigenvalue lambda_0
    #[arg(long = "remove-bottom", requires = "surgery")]
    pub remove_bottom: bool,
    /// Output document path
    #[arg(short, long, default_value = "transformed.json")]
    pub output: PathBuf,
}

fn deform(args: &TransformArgs, doc: &ChainDocument) -> Result<ChainDocument> {
    let alpha_text = args
        .alpha
        .as_deref()
        .ok_or_else(|| anyhow::anyhow!("--deform needs --alpha"))?;
    let alpha = parse_alpha(alpha_text)?;
    let chain = doc.to_chain()?;
    let params = match &chain.params {
        Some(p) => p.clone(),
        None => bail!("deformation needs a chain with generating parameters"),
    };
    if params.alpha != rat(1, 2) {
        bail!("deformations compose only on a mirror-symmetric (alpha = 1/2) source chain");
    }
    let new_params = params.with_alpha(alpha.clone());
    let deformed = build_deformed_with(&new_params, args.symmetric_renorm)?;
    let spec = spectrum(&new_params)?;
    // isospectrality certificate before anything is written
    let deviation = oracle::spectrum_deviation(&chain_to_jacobi(&deformed), &spec.lambdas);
    if deviation >= cradle_core::tol::SPECTRAL {
        bail!("deformed chain fails its isospectrality certificate ({deviation:.3e})");
    }
    let mut out = ChainDocument::from_chain(&deformed, Some(&spec))?;
    let (num, den) = to_i64_pair(&alpha)?;
    out.transform = Some(TransformDoc::Deform {
        alpha: NumberDoc::Exact { num, den },
    });
    println!("deformation certificate: spectrum deviation {deviation:.3e}");
    Ok(out)
}

fn surger(args: &TransformArgs, doc: &ChainDocument) -> Result<ChainDocument> {
    let (chain, prep) = prepare_document(doc)?;
    let n_last = chain.last_index();
    let remove: Vec<usize> = if !args.remove_pair.is_empty() {
        args.remove_pair.clone()
    } else if args.remove_top {
        vec![n_last]
    } else if args.remove_bottom {
        vec![0]
    } else {
        bail!("--surgery needs one of --remove-pair K K+1, --remove-top, --remove-bottom");
    };

    let cut = spectral_surgery(&prep.jac, &prep.basis, &remove)?;
    let kept: Vec<f64> = (0..=n_last)
        .filter(|i| !remove.contains(i))
        .map(|i| prep.spectrum.lambdas[i])
        .collect();

    if chain.boundary != Boundary::FreeFree {
        bail!("surgered fixed-fixed matrices have no chain reconstruction here; only free-free chains can be rebuilt");
    }
    let rebuilt = jacobi_to_chain_free_free(&cut, chain.masses[0])?;
    // spectrum-subset certificate
    let deviation = oracle::spectrum_deviation(&chain_to_jacobi(&rebuilt), &kept);
    if deviation >= cradle_core::tol::SPECTRAL {
        bail!("surgered chain fails its spectrum certificate ({deviation:.3e})");
    }
    // the lattice structure survives: the surviving frequencies are still
    // integer multiples of the same omega, so t* and the tau grid carry over
    let mut out = ChainDocument::from_chain(&rebuilt, None)?;
    out.spectrum = Some(SpectrumDoc {
        lambdas: kept,
        t_star: prep.spectrum.t_star,
        tau: prep.spectrum.tau.clone(),
    });
    out.transform = Some(TransformDoc::Surgery { removed: remove });
    println!("surgery certificate: spectrum deviation {deviation:.3e}");
    Ok(out)
}

pub fn run(args: TransformArgs) -> Result<bool> {
    let doc = load_document(&args.chain)?;
    let out = if args.deform {
        deform(&args, &doc)?
    } else if args.surgery {
        surger(&args, &doc)?
    } else {
        bail!("choose --deform or --surgery");
    };
    save_document(&args.output, &out)?;
    println!("wrote {}", args.output.display());
    Ok(true)
}
