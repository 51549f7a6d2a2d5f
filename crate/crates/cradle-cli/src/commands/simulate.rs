use super::{load_document, prepare_document};
use anyhow::{anyhow, bail, Context, Result};
use clap::Args;
use cradle_core::chain::ChainSpec;
use cradle_core::dynamics::{auto_dt, conservation_report, energy, integrate_ode, State, Trajectory};
use std::io::Write;
use std::path::PathBuf;

#[derive(Args)]
pub struct SimulateArgs {
    /// Chain document to simulate
    #[arg(long = "chain", value_name = "FILE")]
    pub chain: PathBuf,
    /// Evolution engine
    #[arg(long, value_enum, default_value_t = Engine::Analytic)]
    pub engine: Engine,
    /// Integrator step: a number in seconds, or "auto" (targets 1e-8 energy drift)
    #[arg(long, default_value = "auto")]
    pub dt: String,
    /// End time; defaults to 2 t* (one full period) when t* is known
    #[arg(long = "t-end")]
    pub t_end: Option<f64>,
    /// Number of trajectory samples
    #[arg(long, default_value_t = 400)]
    pub samples: usize,
    /// Mass-weighted pulse amplitude for the initial condition
    #[arg(long = "p-bar", default_value_t = 1.0)]
    pub p_bar: f64,
    /// Output directory for trajectory.csv and snapshot files
    #[arg(long = "out-dir", default_value = ".")]
    pub out_dir: PathBuf,
    /// Skip the snapshot files
    #[arg(long = "no-snapshots")]
    pub no_snapshots: bool,
    /// Explicit snapshot times (comma-separated seconds) instead of the
    /// default grid {0, 1/4, 1/2, 3/4, 1} t* plus every tau_ell
    #[arg(long = "snapshot-times", value_delimiter = ',')]
    pub snapshot_times: Vec<f64>,
}

#[derive(clap::ValueEnum, Clone, Copy, PartialEq, Eq)]
pub enum Engine {
    /// Exact normal-mode sum
    Analytic,
    /// Symplectic leapfrog on the physical Hamiltonian
    Ode,
}

fn write_trajectory_csv(path: &PathBuf, chain: &ChainSpec, traj: &Trajectory) -> Result<()> {
    let n = chain.n_sites();
    let mut out = String::new();
    out.push('t');
    for i in 0..n {
        out.push_str(&format!(",p_{i}"));
    }
    for i in 0..n {
        out.push_str(&format!(",P_{i}"));
    }
    out.push_str(",E\n");
    for state in &traj.states {
        out.push_str(&format!("{:.17e}", state.t));
        for x in &state.p {
            out.push_str(&format!(",{x:.17e}"));
        }
        for x in &state.true_p {
            out.push_str(&format!(",{x:.17e}"));
        }
        out.push_str(&format!(",{:.17e}\n", energy(chain, state)));
    }
    std::fs::write(path, out).with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

fn write_snapshot_csv(path: &PathBuf, state: &State) -> Result<()> {
    let mut out = String::from("i,q_i,p_i,P_i\n");
    for i in 0..state.p.len() {
        out.push_str(&format!(
            "{i},{:.17e},{:.17e},{:.17e}\n",
            state.q[i], state.p[i], state.true_p[i]
        ));
    }
    std::fs::write(path, out).with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

pub fn run(args: SimulateArgs) -> Result<bool> {
    let doc = load_document(&args.chain)?;
    let (chain, prep) = prepare_document(&doc)?;
    std::fs::create_dir_all(&args.out_dir)
        .with_context(|| format!("creating {}", args.out_dir.display()))?;

    let t_star = prep.spectrum.t_star;
    let t_end = match (args.t_end, t_star) {
        (Some(t), _) => t,
        (None, Some(ts)) => 2.0 * ts,
        (None, None) => bail!("chain has no transfer time; pass --t-end explicitly"),
    };
    if !t_end.is_finite() || t_end <= 0.0 {
        bail!("t-end must be positive");
    }
    let initial = State::pulse(&chain, args.p_bar);

    let traj = match args.engine {
        Engine::Analytic => {
            let times: Vec<f64> = (0..=args.samples)
                .map(|k| t_end * k as f64 / args.samples.max(1) as f64)
                .collect();
            prep.evolve_trajectory(&initial, &times)
        }
        Engine::Ode => {
            let dt = if args.dt.trim() == "auto" {
                auto_dt(&chain)
            } else {
                args.dt
                    .trim()
                    .parse()
                    .map_err(|_| anyhow!("dt = {:?} is not a number (or \"auto\")", args.dt))?
            };
            integrate_ode(&chain, &initial, t_end, dt, args.samples)?
        }
    };

    let traj_path = args.out_dir.join("trajectory.csv");
    write_trajectory_csv(&traj_path, &chain, &traj)?;
    let report = conservation_report(&chain, &traj);
    println!(
        "trajectory: {} samples over [0, {t_end:.6}] -> {}",
        traj.states.len(),
        traj_path.display()
    );
    print!(
        "energy drift {:.3e} (E_0 = {:.6})",
        report.energy_drift, report.initial_energy
    );
    match report.momentum_drift {
        Some(d) => println!(", momentum drift {d:.3e}"),
        None => println!(" (fixed boundary: total momentum not conserved)"),
    }

    if !args.no_snapshots {
        let times: Vec<(String, f64)> = if !args.snapshot_times.is_empty() {
            args.snapshot_times
                .iter()
                .enumerate()
                .map(|(k, &t)| (format!("t{k}"), t))
                .collect()
        } else if let Some(ts) = t_star {
            let mut v: Vec<(String, f64)> = [0.0, 0.25, 0.5, 0.75, 1.0]
                .iter()
                .map(|&f| (format!("tstar_{:.2}", f), f * ts))
                .collect();
            for (ell, &tau) in prep.spectrum.tau.iter().enumerate() {
                v.push((format!("tau_{ell}"), tau));
            }
            v
        } else {
            Vec::new()
        };
        for (label, t) in &times {
            let state = prep.evolve(&initial, *t);
            let path = args.out_dir.join(format!("snapshot_{label}.csv"));
            write_snapshot_csv(&path, &state)?;
        }
        if !times.is_empty() {
            println!("wrote {} snapshot files to {}", times.len(), args.out_dir.display());
        }
    }
    std::io::stdout().flush().ok();
    Ok(true)
}
