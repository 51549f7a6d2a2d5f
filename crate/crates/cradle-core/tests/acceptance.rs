//! Acceptance suite: one test per release criterion, each printing a
//! PASS/FAIL line. Run with `cargo test -p cradle-core --test acceptance`
//! (add `-- --nocapture` to see the lines for passing criteria too).

use cradle_core::chain::{
    build, build_deformed, build_fixed_fixed, build_free_free, chain_to_jacobi,
    dual_hahn_mass_ratios, dual_hahn_spring_ratios, free_free_mass_ratios,
    free_free_spring_ratios, jacobi_to_chain_free_free,
};
use cradle_core::dynamics::{
    auto_dt, conservation_report, integrate_ode, mirror_reversal_check, prepare,
    verify_fractional_revival, verify_perfect_transfer, State,
};
use cradle_core::rational::rat;
use cradle_core::spectral::{
    deform_jacobi, eigenbasis, recurrence_coefficients, spectral_surgery, spectrum,
};
use cradle_core::{oracle, ChainParams, Error, ParamValue};
use rand::{Rng, SeedableRng};
use std::time::Instant;

struct Criterion {
    id: u32,
    title: &'static str,
    failures: Vec<String>,
    started: Instant,
}

impl Criterion {
    fn new(id: u32, title: &'static str) -> Self {
        Criterion {
            id,
            title,
            failures: Vec::new(),
            started: Instant::now(),
        }
    }

    fn check(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(detail());
        }
    }

    fn finish(self) {
        let elapsed = self.started.elapsed().as_secs_f64();
        let verdict = if self.failures.is_empty() { "PASS" } else { "FAIL" };
        println!(
            "[acceptance] criterion {:>2}: {verdict} ({elapsed:.2}s) — {}",
            self.id, self.title
        );
        for f in &self.failures {
            println!("    - {f}");
        }
        assert!(
            self.failures.is_empty(),
            "criterion {} failed with {} defect(s)",
            self.id,
            self.failures.len()
        );
    }

    fn budget(&mut self, seconds: f64) {
        let elapsed = self.started.elapsed().as_secs_f64();
        self.check(elapsed < seconds, || {
            format!("runtime {elapsed:.2}s exceeds the {seconds}s budget")
        });
    }
}

const PT_TOL: f64 = 1e-8;

#[test]
fn criterion_01_perfect_transfer_free_free() {
    let mut c = Criterion::new(1, "perfect transfer, free-free sweep");
    for n in 2..=12usize {
        for (rho, z) in [(1i64, 2i64), (1, 4), (3, 4), (1, 8)] {
            let params = ChainParams::free_free(n + 1, rho, z, 1.0, 1.0).unwrap();
            let chain = build_free_free(&params).unwrap();
            let prep = prepare(&chain).unwrap();
            let report = verify_perfect_transfer(&prep, PT_TOL).unwrap();
            c.check(report.achieved, || {
                format!(
                    "N={n} c={rho}/{z}: last={:+.3e}, interior={:.3e}",
                    report.last_amplitude, report.interior_residual
                )
            });
            c.check((report.last_amplitude - 1.0).abs() < PT_TOL, || {
                format!("N={n} c={rho}/{z}: p_N(t*) = {}", report.last_amplitude)
            });
        }
    }
    c.budget(10.0);
    c.finish();
}

#[test]
fn criterion_02_perfect_transfer_fixed_fixed_sign_rule() {
    let mut c = Criterion::new(2, "perfect transfer, fixed-fixed with sign rule");
    for n in 2..=12usize {
        for (mu, rho, z) in [(1i64, 1i64, 4i64), (2, 1, 4), (1, 3, 8), (2, 3, 8)] {
            let params = ChainParams::fixed_fixed(n + 1, mu, rho, z, 1.0, 1.0).unwrap();
            let chain = build_fixed_fixed(&params).unwrap();
            let prep = prepare(&chain).unwrap();
            let report = verify_perfect_transfer(&prep, PT_TOL).unwrap();
            let expected_sign = if mu % 2 == 0 { 1.0 } else { -1.0 };
            c.check(report.achieved, || {
                format!(
                    "N={n} mu={mu} rho={rho} Z={z}: last={:+.3e}, interior={:.3e}",
                    report.last_amplitude, report.interior_residual
                )
            });
            c.check(
                (report.last_amplitude - expected_sign).abs() < PT_TOL,
                || {
                    format!(
                        "N={n} mu={mu}: p_N(t*) = {:+.9} expected {expected_sign}",
                        report.last_amplitude
                    )
                },
            );
        }
    }
    c.budget(10.0);
    c.finish();
}

#[test]
fn criterion_03_fractional_revival_closed_forms() {
    let mut c = Criterion::new(3, "fractional revival closed forms + negative control");
    let alphas = [rat(1, 2), rat(1, 4), rat(3, 4)];
    for &n in &[6usize, 9] {
        for &z in &[4i64, 8] {
            for alpha in &alphas {
                // free-free: c = rho/Z with rho chosen odd co-prime
                let rho = if z == 4 { 1 } else { 3 };
                let params = ChainParams::free_free(n + 1, rho, z, 1.0, 1.0)
                    .unwrap()
                    .with_alpha(alpha.clone());
                let chain = build(&params).unwrap();
                let report =
                    verify_fractional_revival(&prepare(&chain).unwrap(), PT_TOL).unwrap();
                c.check(report.achieved, || {
                    format!(
                        "free-free N={n} Z={z} alpha={alpha}: max err {:.3e}, interior {:.3e}",
                        report.max_prediction_error, report.max_interior_residual
                    )
                });
                // fixed-fixed: a = 1/Z keeps mu, rho, Z co-prime
                let params = ChainParams::fixed_fixed(n + 1, 1, rho, z, 1.0, 1.0)
                    .unwrap()
                    .with_alpha(alpha.clone());
                let chain = build(&params).unwrap();
                let report =
                    verify_fractional_revival(&prepare(&chain).unwrap(), PT_TOL).unwrap();
                c.check(report.achieved, || {
                    format!(
                        "fixed-fixed N={n} Z={z} alpha={alpha}: max err {:.3e}, interior {:.3e}",
                        report.max_prediction_error, report.max_interior_residual
                    )
                });
            }
        }
    }

    // negative control: c = 1/2 has no revival strictly between 0 and t*
    for &n in &[6usize, 9] {
        let params = ChainParams::free_free(n + 1, 1, 2, 1.0, 1.0).unwrap();
        let chain = build(&params).unwrap();
        let prep = prepare(&chain).unwrap();
        c.check(
            matches!(
                verify_fractional_revival(&prep, PT_TOL),
                Err(Error::NoRevivalPossible(_))
            ),
            || format!("N={n}: Z=2 revival schedule should be refused"),
        );
        let t_star = prep.t_star().unwrap();
        let initial = State::pulse(&chain, 1.0);
        let mut most_localized: f64 = f64::INFINITY;
        for k in 1..200 {
            let t = t_star * (0.05 + 0.9 * k as f64 / 200.0);
            let state = prep.evolve(&initial, t);
            let interior = state.p[1..n]
                .iter()
                .map(|x| x.abs())
                .fold(0.0f64, f64::max);
            most_localized = most_localized.min(interior);
        }
        c.check(most_localized > 1e-2, || {
            format!(
                "N={n}: c=1/2 pulse localized mid-flight (interior residual {most_localized:.3e})"
            )
        });
    }
    c.finish();
}

#[test]
fn criterion_04_spectrum_oracle() {
    let mut c = Criterion::new(4, "dense-oracle spectra across the constructions");
    let tol = 1e-10;
    // base families, both parities and boundaries, N <= 30
    for n_sites in 2..=31usize {
        let params = ChainParams::free_free(n_sites, 1, 4, 1.0, 1.0).unwrap();
        let jac = recurrence_coefficients(&params).unwrap();
        let spec = spectrum(&params).unwrap();
        let dev = oracle::spectrum_deviation(&jac, &spec.lambdas);
        c.check(dev < tol, || format!("free-free {n_sites} sites: {dev:.3e}"));

        let params = ChainParams::fixed_fixed(n_sites, 1, 1, 4, 1.0, 1.0).unwrap();
        let jac = recurrence_coefficients(&params).unwrap();
        let spec = spectrum(&params).unwrap();
        let dev = oracle::spectrum_deviation(&jac, &spec.lambdas);
        c.check(dev < tol, || format!("fixed-fixed {n_sites} sites: {dev:.3e}"));
    }
    // deformed
    for n_sites in [6usize, 13, 24, 31] {
        for alpha in [rat(1, 4), rat(2, 3)] {
            let params = ChainParams::free_free(n_sites, 3, 4, 1.0, 1.0).unwrap();
            let jac = recurrence_coefficients(&params).unwrap();
            let spec = spectrum(&params).unwrap();
            let def = deform_jacobi(&jac, &alpha).unwrap();
            let dev = oracle::spectrum_deviation(&def, &spec.lambdas);
            c.check(dev < tol, || {
                format!("deformed {n_sites} sites alpha={alpha}: {dev:.3e}")
            });
        }
    }
    // surgered
    for n_sites in [8usize, 15, 31] {
        let params = ChainParams::free_free(n_sites, 1, 2, 1.0, 1.0).unwrap();
        let jac = recurrence_coefficients(&params).unwrap();
        let spec = spectrum(&params).unwrap();
        let basis = eigenbasis(&jac, &spec).unwrap();
        for remove in [vec![0usize], vec![n_sites - 1], vec![2, 3]] {
            let cut = spectral_surgery(&jac, &basis, &remove).unwrap();
            let kept: Vec<f64> = (0..n_sites)
                .filter(|i| !remove.contains(i))
                .map(|i| spec.lambdas[i])
                .collect();
            let dev = oracle::spectrum_deviation(&cut, &kept);
            c.check(dev < tol, || {
                format!("surgered {n_sites} sites remove {remove:?}: {dev:.3e}")
            });
        }
    }
    c.finish();
}

#[test]
fn criterion_05_dual_hahn_exact_identity() {
    let mut c = Criterion::new(5, "dual-Hahn closed forms, exact rational identity");
    for n in 1..=16usize {
        let masses = free_free_mass_ratios(n, &rat(1, 2)).unwrap();
        let springs = free_free_spring_ratios(n, &rat(1, 2)).unwrap();
        c.check(masses == dual_hahn_mass_ratios(n), || {
            format!("mass ratios differ at N = {n}")
        });
        c.check(springs == dual_hahn_spring_ratios(n), || {
            format!("spring ratios differ at N = {n}")
        });
    }
    c.finish();
}

#[test]
fn criterion_06_cross_method_dynamics() {
    let mut c = Criterion::new(6, "leapfrog oracle vs analytic mode sums");
    let mut configs: Vec<(&str, cradle_core::chain::ChainSpec)> = Vec::new();
    for &n_sites in &[4usize, 7, 10, 13] {
        let p = ChainParams::free_free(n_sites, 1, 4, 1.0, 1.0).unwrap();
        configs.push(("free-free c=1/4", build(&p).unwrap()));
    }
    for &n_sites in &[5usize, 9, 13] {
        let p = ChainParams::fixed_fixed(n_sites, 1, 1, 4, 1.0, 1.0).unwrap();
        configs.push(("fixed-fixed", build(&p).unwrap()));
    }
    let p = ChainParams::free_free(10, 1, 4, 1.0, 1.0)
        .unwrap()
        .with_alpha(rat(1, 4));
    configs.push(("deformed alpha=1/4", build_deformed(&p).unwrap()));

    for (label, chain) in configs {
        let n_sites = chain.n_sites();
        let prep = prepare(&chain).unwrap();
        let t_end = 2.0 * prep.t_star().unwrap();
        let initial = State::pulse(&chain, 1.0);
        let traj = integrate_ode(&chain, &initial, t_end, auto_dt(&chain), 160).unwrap();
        let mut worst = 0.0f64;
        for state in &traj.states {
            let reference = prep.evolve(&initial, state.t);
            for (x, y) in state.p.iter().zip(&reference.p) {
                worst = worst.max((x - y).abs());
            }
        }
        c.check(worst < 1e-5, || {
            format!("{label} ({n_sites} sites): pointwise momentum error {worst:.3e}")
        });
        let report = conservation_report(&chain, &traj);
        c.check(report.energy_drift < 1e-8, || {
            format!("{label} ({n_sites} sites): energy drift {:.3e}", report.energy_drift)
        });
    }
    c.budget(60.0);
    c.finish();
}

#[test]
fn criterion_07_isospectral_deformation() {
    let mut c = Criterion::new(7, "isospectral deformation and chain round trip");
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    let params = ChainParams::free_free(12, 3, 8, 1.0, 1.0).unwrap();
    let jac = recurrence_coefficients(&params).unwrap();
    let spec = spectrum(&params).unwrap();
    for _ in 0..20 {
        let q: i64 = rng.random_range(3..200);
        let p: i64 = rng.random_range(1..q);
        let alpha = rat(p, q);
        let def = deform_jacobi(&jac, &alpha).unwrap();
        let dev = oracle::spectrum_deviation(&def, &spec.lambdas);
        c.check(dev < 1e-10, || format!("alpha={p}/{q}: deviation {dev:.3e}"));
    }
    // identity at alpha = 1/2
    let same = deform_jacobi(&jac, &rat(1, 2)).unwrap();
    c.check(
        same.diagonal() == jac.diagonal()
            && same.squared_off_diagonal() == jac.squared_off_diagonal(),
        || "alpha = 1/2 deformation is not the identity".into(),
    );
    // chain-level round trip: chain_to_jacobi . build_deformed = deform_jacobi
    for (label, base) in [
        (
            "free-free N odd",
            ChainParams::free_free(10, 1, 4, 1.0, 1.0).unwrap(),
        ),
        (
            "free-free N even",
            ChainParams::free_free(11, 1, 4, 1.0, 1.0).unwrap(),
        ),
        (
            "fixed-fixed N odd",
            ChainParams::fixed_fixed(10, 1, 1, 4, 1.0, 1.0).unwrap(),
        ),
        (
            "fixed-fixed N even",
            ChainParams::fixed_fixed(11, 1, 1, 4, 1.0, 1.0).unwrap(),
        ),
    ] {
        for alpha in [rat(1, 4), rat(3, 4), rat(2, 5)] {
            let p = base.clone().with_alpha(alpha.clone());
            let chain = build_deformed(&p).unwrap();
            let got = chain_to_jacobi(&chain);
            let expect = deform_jacobi(&recurrence_coefficients(&base).unwrap(), &alpha).unwrap();
            let norm = expect.norm_estimate();
            let db = got
                .diagonal()
                .iter()
                .zip(expect.diagonal())
                .map(|(x, y)| (x - y).abs())
                .fold(0.0f64, f64::max);
            let du = got
                .squared_off_diagonal()
                .iter()
                .zip(expect.squared_off_diagonal())
                .map(|(x, y)| (x - y).abs())
                .fold(0.0f64, f64::max);
            c.check(db < 1e-10 * norm && du < 1e-10 * norm * norm, || {
                format!("{label} alpha={alpha}: db={db:.3e} du={du:.3e}")
            });
        }
    }
    c.finish();
}

#[test]
fn criterion_08_spectral_surgery() {
    let mut c = Criterion::new(8, "surgery: persymmetry kept, targets removed");
    for n_sites in [7usize, 10, 15] {
        let params = ChainParams::free_free(n_sites, 1, 4, 1.0, 1.0).unwrap();
        let jac = recurrence_coefficients(&params).unwrap();
        let spec = spectrum(&params).unwrap();
        let basis = eigenbasis(&jac, &spec).unwrap();
        for k in [1usize, 3] {
            let cut = spectral_surgery(&jac, &basis, &[k, k + 1]).unwrap();
            let defect = cut.persymmetry_defect();
            c.check(defect < 1e-12, || {
                format!("{n_sites} sites, pair {k}: persymmetry defect {defect:.3e}")
            });
            let kept: Vec<f64> = (0..n_sites)
                .filter(|i| *i != k && *i != k + 1)
                .map(|i| spec.lambdas[i])
                .collect();
            let dev = oracle::spectrum_deviation(&cut, &kept);
            c.check(dev < 1e-10, || {
                format!("{n_sites} sites, pair {k}: spectrum deviation {dev:.3e}")
            });
            // realizable outputs re-verify as chains (criterion 4 style)
            match jacobi_to_chain_free_free(&cut, 1.0) {
                Ok(chain) => {
                    let dev = oracle::spectrum_deviation(&chain_to_jacobi(&chain), &kept);
                    c.check(dev < 1e-10, || {
                        format!("{n_sites} sites, pair {k}: rebuilt chain deviation {dev:.3e}")
                    });
                }
                Err(Error::NotRealizable(reason)) => {
                    println!(
                        "    note: {n_sites} sites pair {k} not realizable ({reason}); logged, not asserted"
                    );
                }
                Err(e) => c.check(false, || format!("unexpected error {e}")),
            }
        }
        // repeated pair removal stays persymmetric
        let cut = spectral_surgery(&jac, &basis, &[1, 2]).unwrap();
        let kept: Vec<f64> = (0..n_sites)
            .filter(|i| *i != 1 && *i != 2)
            .map(|i| spec.lambdas[i])
            .collect();
        let spec2 = cradle_core::BiLatticeSpectrum {
            lambdas: kept.clone(),
            omegas: kept.iter().map(|x| x.sqrt()).collect(),
            t_star: None,
            tau: vec![],
            k: None,
            z: None,
            exact: None,
        };
        let basis2 = eigenbasis(&cut, &spec2).unwrap();
        let cut2 = spectral_surgery(&cut, &basis2, &[2, 3]).unwrap();
        c.check(cut2.persymmetry_defect() < 1e-12, || {
            format!(
                "{n_sites} sites, repeated pairs: defect {:.3e}",
                cut2.persymmetry_defect()
            )
        });
    }
    c.finish();
}

#[test]
fn criterion_09_limits() {
    let mut c = Criterion::new(9, "a -> 0 limit and unit-circle amplitudes");
    // fixed-fixed masses at a = 1e-4 approach the free-free masses
    for n_sites in [5usize, 8] {
        let reference = build_free_free(&ChainParams::free_free(n_sites, 1, 2, 1.0, 1.0).unwrap())
            .unwrap();
        let mut p = ChainParams::fixed_fixed(n_sites, 1, 1, 2, 1.0, 1.0).unwrap();
        p.relaxed = true;
        p.a = ParamValue::Exact(rat(1, 10_000));
        p.c = ParamValue::Exact(rat(1, 10_000) + rat(1, 2));
        let chain = build_fixed_fixed(&p).unwrap();
        for (i, (m, r)) in chain.masses.iter().zip(&reference.masses).enumerate() {
            c.check((m - r).abs() / r < 5e-3, || {
                format!("{n_sites} sites: m_{i} = {m} vs free-free {r}")
            });
        }
        c.check(chain.springs[0] < 1e-3, || {
            format!("{n_sites} sites: K_0 = {} fails to vanish", chain.springs[0])
        });
    }
    // (1 - 2 alpha)^2 + 4 alpha (1 - alpha) = 1, and the measured terminal
    // amplitudes reproduce the closed forms
    for (p, q) in [(1i64, 4i64), (3, 4), (1, 3), (2, 5), (5, 7)] {
        let af = p as f64 / q as f64;
        let identity = (1.0 - 2.0 * af) * (1.0 - 2.0 * af) + 4.0 * af * (1.0 - af);
        c.check((identity - 1.0).abs() < 1e-12, || {
            format!("alpha={p}/{q}: unit-circle identity off by {:.3e}", identity - 1.0)
        });
        let params = ChainParams::free_free(9, 1, 4, 1.0, 1.0)
            .unwrap()
            .with_alpha(rat(p, q));
        let chain = build_deformed(&params).unwrap();
        let report = verify_perfect_transfer(&prepare(&chain).unwrap(), PT_TOL).unwrap();
        c.check(
            (report.first_amplitude - (1.0 - 2.0 * af)).abs() < 1e-8
                && (report.last_amplitude - 2.0 * (af * (1.0 - af)).sqrt()).abs() < 1e-8,
            || {
                format!(
                    "alpha={p}/{q}: measured ({:+.6}, {:+.6})",
                    report.first_amplitude, report.last_amplitude
                )
            },
        );
        let msq = report.first_amplitude * report.first_amplitude
            + report.last_amplitude * report.last_amplitude;
        c.check((msq - 1.0).abs() < 1e-8, || {
            format!("alpha={p}/{q}: measured amplitudes off the unit circle by {:.3e}", msq - 1.0)
        });
    }
    c.finish();
}

#[test]
fn criterion_10_mirror_reversal() {
    let mut c = Criterion::new(10, "mirror reversal of random initial momenta");
    let chain = build_free_free(&ChainParams::free_free(10, 3, 4, 1.0, 1.0).unwrap()).unwrap();
    let prep = prepare(&chain).unwrap();
    for seed in 0..10u64 {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let p: Vec<f64> = (0..10).map(|_| rng.random_range(-1.0..1.0)).collect();
        let initial = State::from_momenta(&chain, p);
        let ok = mirror_reversal_check(&prep, &initial, 1e-8).unwrap();
        c.check(ok, || format!("seed {seed}: reversal defect above 1e-8"));
    }
    // fixed-fixed variant exercises the sign rule on arbitrary patterns
    let chain = build_fixed_fixed(&ChainParams::fixed_fixed(10, 1, 1, 4, 1.0, 1.0).unwrap())
        .unwrap();
    let prep = prepare(&chain).unwrap();
    for seed in 0..10u64 {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(100 + seed);
        let p: Vec<f64> = (0..10).map(|_| rng.random_range(-1.0..1.0)).collect();
        let initial = State::from_momenta(&chain, p);
        let ok = mirror_reversal_check(&prep, &initial, 1e-8).unwrap();
        c.check(ok, || format!("fixed-fixed seed {seed}: reversal defect above 1e-8"));
    }
    c.finish();
}
