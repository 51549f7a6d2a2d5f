use super::{parse_alpha, parse_omega_tilde, parse_param, save_document};
use anyhow::{bail, Result};
use clap::Args;
use cradle_core::chain::{build, build_deformed_with, ChainSpec};
use cradle_core::document::ChainDocument;
use cradle_core::params::{Boundary, ChainParams, ParamValue, ScaleKind};
use cradle_core::rational::rat;
use cradle_core::spectral::spectrum;
use std::path::PathBuf;

#[derive(Args)]
pub struct BuildArgs {
    /// Free-free boundary (no wall springs)
    #[arg(long = "free-free", conflicts_with = "fixed_fixed")]
    pub free_free: bool,
    /// Fixed-fixed boundary (both end masses tied to walls)
    #[arg(long = "fixed-fixed")]
    pub fixed_fixed: bool,
    /// Index of the last mass (the chain has N+1 masses)
    #[arg(short = 'N', value_name = "N")]
    pub n_last: usize,
    /// Numerator mu of a = mu/Z (fixed-fixed only; may be negative)
    #[arg(long, allow_hyphen_values = true)]
    pub mu: Option<i64>,
    /// Numerator rho of c = rho/Z (resp. c = a + rho/Z)
    #[arg(long)]
    pub rho: Option<i64>,
    /// Lattice denominator Z
    #[arg(short = 'Z', value_name = "Z")]
    pub z: Option<i64>,
    /// Spectral parameter c given directly (relaxed studies), e.g. 3/8 or 0.41
    #[arg(long, conflicts_with_all = ["rho", "z"])]
    pub c: Option<String>,
    /// Spectral parameter a given directly (relaxed fixed-fixed studies)
    #[arg(long, conflicts_with = "mu", allow_hyphen_values = true)]
    pub a: Option<String>,
    /// Deformation parameter alpha as a fraction (default 1/2, mirror-symmetric)
    #[arg(long)]
    pub alpha: Option<String>,
    /// Frequency scale in rad/s, or "auto" for 2 pi / N
    #[arg(long = "omega-tilde", default_value = "1")]
    pub omega_tilde: String,
    /// Mass or spring scale (see --scale-kind)
    #[arg(long, default_value_t = 1.0)]
    pub scale: f64,
    /// Which quantity --scale fixes: the first mass or the boundary spring
    #[arg(long = "scale-kind", value_enum, default_value_t = ScaleKindArg::M0)]
    pub scale_kind: ScaleKindArg,
    /// Relax the perfect-transfer parity conditions (revival-only studies)
    #[arg(long)]
    pub relaxed: bool,
    /// Rescale a deformed chain by 2(1-alpha) (symmetric presentation)
    #[arg(long = "symmetric-renorm")]
    pub symmetric_renorm: bool,
    /// Output document path
    #[arg(short, long, default_value = "chain.json")]
    pub output: PathBuf,
}

#[derive(clap::ValueEnum, Clone, Copy, PartialEq, Eq)]
pub enum ScaleKindArg {
    /// scale = m_0
    M0,
    /// scale = K_0 (fixed-fixed only)
    K0,
}

impl From<ScaleKindArg> for ScaleKind {
    fn from(v: ScaleKindArg) -> ScaleKind {
        match v {
            ScaleKindArg::M0 => ScaleKind::Mass,
            ScaleKindArg::K0 => ScaleKind::Spring,
        }
    }
}

pub fn params_from_args(args: &BuildArgs) -> Result<ChainParams> {
    let boundary = match (args.free_free, args.fixed_fixed) {
        (true, false) => Boundary::FreeFree,
        (false, true) => Boundary::FixedFixed,
        _ => bail!("choose exactly one of --free-free / --fixed-fixed"),
    };
    let omega_tilde = parse_omega_tilde(&args.omega_tilde, args.n_last)?;
    let n_sites = args.n_last + 1;

    let mut params = match boundary {
        Boundary::FreeFree => {
            if let Some(c_text) = &args.c {
                let mut p =
                    ChainParams::free_free(n_sites, 1, 2, omega_tilde, args.scale)?;
                p.c = parse_param(c_text, args.relaxed, "c")?;
                p.relaxed = args.relaxed;
                p
            } else {
                let (rho, z) = match (args.rho, args.z) {
                    (Some(r), Some(z)) => (r, z),
                    _ => bail!("free-free chains need --rho and -Z (or --c in relaxed mode)"),
                };
                let mut p = if args.relaxed {
                    // relaxed: accept any reduced 0 < rho/Z < 1
                    let mut p =
                        ChainParams::free_free(n_sites, 1, 2, omega_tilde, args.scale)?;
                    p.c = ParamValue::Exact(rat(rho, z));
                    p
                } else {
                    ChainParams::free_free(n_sites, rho, z, omega_tilde, args.scale)?
                };
                p.relaxed = args.relaxed;
                p
            }
        }
        Boundary::FixedFixed => {
            if args.a.is_some() || args.c.is_some() {
                let (a_text, c_text) = match (&args.a, &args.c) {
                    (Some(a), Some(c)) => (a, c),
                    _ => bail!("direct fixed-fixed parameters need both --a and --c"),
                };
                let mut p =
                    ChainParams::fixed_fixed(n_sites, 1, 1, 2, omega_tilde, args.scale)?;
                p.a = parse_param(a_text, args.relaxed, "a")?;
                p.c = parse_param(c_text, args.relaxed, "c")?;
                p.relaxed = args.relaxed;
                p
            } else {
                let (mu, rho, z) = match (args.mu, args.rho, args.z) {
                    (Some(m), Some(r), Some(z)) => (m, r, z),
                    _ => bail!("fixed-fixed chains need --mu, --rho and -Z"),
                };
                let mut p =
                    ChainParams::fixed_fixed(n_sites, mu, rho, z, omega_tilde, args.scale)?;
                p.relaxed = args.relaxed;
                p
            }
        }
    };
    params.scale_kind = args.scale_kind.into();
    if let Some(alpha_text) = &args.alpha {
        params = params.with_alpha(parse_alpha(alpha_text)?);
    }
    params.validate()?;
    Ok(params)
}

fn print_summary(chain: &ChainSpec, omega_tilde: f64) {
    let m0 = chain.masses[0];
    let k_unit = omega_tilde * omega_tilde * m0;
    println!("{:>4} {:>22} {:>22}", "i", "m_i/m_0", "K_i/(w^2 m_0)");
    for i in 0..chain.n_sites() {
        let spring = if i == 0 && chain.springs[0] == 0.0 {
            "".to_string()
        } else {
            format!("{:>22.16}", chain.springs[i] / k_unit)
        };
        println!("{:>4} {:>22.16} {}", i, chain.masses[i] / m0, spring);
    }
    let last = chain.springs.len() - 1;
    if chain.springs[last] != 0.0 {
        println!(
            "{:>4} {:>22} {:>22.16}",
            "N+1",
            "",
            chain.springs[last] / k_unit
        );
    }
}

pub fn run(args: BuildArgs) -> Result<bool> {
    let params = params_from_args(&args)?;
    let chain = if args.symmetric_renorm {
        build_deformed_with(&params, true)?
    } else {
        build(&params)?
    };
    let spec = spectrum(&params)?;
    let doc = ChainDocument::from_chain(&chain, Some(&spec))?;
    save_document(&args.output, &doc)?;
    println!(
        "built {} chain: {} masses, provenance {:?}",
        match chain.boundary {
            Boundary::FreeFree => "free-free",
            Boundary::FixedFixed => "fixed-fixed",
        },
        chain.n_sites(),
        chain.provenance
    );
    if let Some(t_star) = spec.t_star {
        println!("t* = {t_star:.12} s, Z = {}", spec.z.unwrap_or_default());
    }
    print_summary(&chain, params.omega_tilde);
    println!("wrote {}", args.output.display());
    Ok(true)
}
