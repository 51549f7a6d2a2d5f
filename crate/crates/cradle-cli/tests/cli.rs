//! End-to-end tests of the `cradle` binary: exit-code contract, document
//! flow between subcommands, and the file formats.

use std::path::Path;
use std::process::{Command, Output};

fn cradle(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cradle"))
        .args(args)
        .current_dir(dir)
        .env_remove("CRADLE_TOL")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn build_writes_document_and_summary() {
    let dir = tempfile::tempdir().unwrap();
    let out = cradle(
        &["build", "--free-free", "-N", "12", "--rho", "1", "-Z", "2", "-o", "dh.json"],
        dir.path(),
    );
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("m_i/m_0"), "summary table printed");
    let doc = std::fs::read_to_string(dir.path().join("dh.json")).unwrap();
    assert!(doc.contains("\"format_version\": 1"));
    assert!(doc.contains("\"provenance\": \"closed_form\""));
    assert!(doc.contains("\"spectrum\""));
}

#[test]
fn invalid_parameters_exit_with_code_two() {
    let dir = tempfile::tempdir().unwrap();
    let out = cradle(
        &["build", "--free-free", "-N", "5", "--rho", "2", "-Z", "4"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("co-prime"));
}

#[test]
fn verify_passes_on_a_transfer_chain_and_fails_on_a_deformed_one() {
    let dir = tempfile::tempdir().unwrap();
    let out = cradle(
        &["build", "--free-free", "-N", "8", "--rho", "1", "-Z", "4", "-o", "c.json"],
        dir.path(),
    );
    assert!(out.status.success(), "{}", stderr(&out));

    let out = cradle(
        &["verify", "--chain", "c.json", "--pt", "--fr", "--spectrum", "--report", "r.json"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("r.json")).unwrap())
            .unwrap();
    assert_eq!(report["pass"], true);

    let out = cradle(
        &["transform", "--chain", "c.json", "--deform", "--alpha", "1/4", "-o", "d.json"],
        dir.path(),
    );
    assert!(out.status.success(), "{}", stderr(&out));

    let out = cradle(&["verify", "--chain", "d.json", "--pt"], dir.path());
    assert_eq!(out.status.code(), Some(1), "PT must fail on alpha = 1/4");
    assert!(stdout(&out).contains("FAIL"));

    let out = cradle(&["verify", "--chain", "d.json", "--fr"], dir.path());
    assert_eq!(out.status.code(), Some(0), "FR holds on the deformed chain");
}

#[test]
fn fixed_fixed_build_and_sign() {
    let dir = tempfile::tempdir().unwrap();
    let out = cradle(
        &[
            "build", "--fixed-fixed", "-N", "9", "--mu", "1", "--rho", "1", "-Z", "4",
            "-o", "fx.json",
        ],
        dir.path(),
    );
    assert!(out.status.success(), "{}", stderr(&out));
    let doc = std::fs::read_to_string(dir.path().join("fx.json")).unwrap();
    assert!(doc.contains("\"provenance\": \"gamma_sum\""));
    let out = cradle(
        &["verify", "--chain", "fx.json", "--pt", "--report", "r.json"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("r.json")).unwrap())
            .unwrap();
    // mu odd: transferred pulse flips sign
    assert_eq!(report["certificates"][0]["details"]["sign"], -1);
}

#[test]
fn surgery_produces_a_verifiable_smaller_chain() {
    let dir = tempfile::tempdir().unwrap();
    cradle(
        &["build", "--free-free", "-N", "9", "--rho", "1", "-Z", "4", "-o", "c.json"],
        dir.path(),
    );
    let out = cradle(
        &[
            "transform", "--chain", "c.json", "--surgery", "--remove-pair", "3", "4",
            "-o", "s.json",
        ],
        dir.path(),
    );
    assert!(out.status.success(), "{}", stderr(&out));
    let doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("s.json")).unwrap())
            .unwrap();
    assert_eq!(doc["masses"].as_array().unwrap().len(), 8);
    assert_eq!(doc["provenance"], "surgery");
    assert_eq!(doc["transform"]["kind"], "surgery");

    let out = cradle(
        &["verify", "--chain", "s.json", "--pt", "--spectrum"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
}

#[test]
fn removing_the_zero_eigenvalue_is_not_realizable() {
    let dir = tempfile::tempdir().unwrap();
    cradle(
        &["build", "--free-free", "-N", "6", "--rho", "1", "-Z", "2", "-o", "c.json"],
        dir.path(),
    );
    let out = cradle(
        &["transform", "--chain", "c.json", "--surgery", "--remove-bottom"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("not realizable"));
}

#[test]
fn simulate_emits_trajectory_and_snapshots() {
    let dir = tempfile::tempdir().unwrap();
    cradle(
        &["build", "--free-free", "-N", "6", "--rho", "1", "-Z", "4", "-o", "c.json"],
        dir.path(),
    );
    let out = cradle(
        &[
            "simulate", "--chain", "c.json", "--engine", "ode", "--dt", "auto",
            "--samples", "50", "--out-dir", "simdir",
        ],
        dir.path(),
    );
    assert!(out.status.success(), "{}", stderr(&out));
    let csv = std::fs::read_to_string(dir.path().join("simdir/trajectory.csv")).unwrap();
    let header = csv.lines().next().unwrap();
    assert_eq!(
        header,
        "t,p_0,p_1,p_2,p_3,p_4,p_5,p_6,P_0,P_1,P_2,P_3,P_4,P_5,P_6,E"
    );
    // energy column stays near its initial value
    let first: Vec<f64> = csv
        .lines()
        .nth(1)
        .unwrap()
        .split(',')
        .map(|x| x.parse().unwrap())
        .collect();
    let last: Vec<f64> = csv
        .lines()
        .last()
        .unwrap()
        .split(',')
        .map(|x| x.parse().unwrap())
        .collect();
    let e0 = first[first.len() - 1];
    let e1 = last[last.len() - 1];
    assert!(((e1 - e0) / e0).abs() < 1e-8);
    assert!(dir.path().join("simdir/snapshot_tau_1.csv").exists());
    assert!(dir.path().join("simdir/snapshot_tstar_0.50.csv").exists());
}

#[test]
fn analytic_and_ode_trajectories_agree_at_matching_times() {
    let dir = tempfile::tempdir().unwrap();
    cradle(
        &["build", "--free-free", "-N", "5", "--rho", "1", "-Z", "2", "-o", "c.json"],
        dir.path(),
    );
    for (engine, outdir) in [("analytic", "a"), ("ode", "b")] {
        let out = cradle(
            &[
                "simulate", "--chain", "c.json", "--engine", engine, "--samples", "40",
                "--out-dir", outdir, "--no-snapshots",
            ],
            dir.path(),
        );
        assert!(out.status.success(), "{}", stderr(&out));
    }
    let read = |p: &str| -> Vec<Vec<f64>> {
        std::fs::read_to_string(dir.path().join(p))
            .unwrap()
            .lines()
            .skip(1)
            .map(|l| l.split(',').map(|x| x.parse().unwrap()).collect())
            .collect()
    };
    let a = read("a/trajectory.csv");
    let b = read("b/trajectory.csv");
    // compare momenta wherever the sample times line up
    for row_b in &b {
        if let Some(row_a) = a.iter().find(|r| (r[0] - row_b[0]).abs() < 1e-12) {
            for (x, y) in row_a[1..7].iter().zip(&row_b[1..7]) {
                assert!((x - y).abs() < 1e-5);
            }
        }
    }
}

#[test]
fn cradle_tol_env_is_honored() {
    let dir = tempfile::tempdir().unwrap();
    cradle(
        &["build", "--free-free", "-N", "6", "--rho", "1", "-Z", "4", "-o", "c.json"],
        dir.path(),
    );
    // an absurdly tight tolerance makes even the analytic check fail
    let out = Command::new(env!("CARGO_BIN_EXE_cradle"))
        .args(["verify", "--chain", "c.json", "--pt"])
        .current_dir(dir.path())
        .env("CRADLE_TOL", "1e-18")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    // and a bogus value is invalid input
    let out = Command::new(env!("CARGO_BIN_EXE_cradle"))
        .args(["verify", "--chain", "c.json", "--pt"])
        .current_dir(dir.path())
        .env("CRADLE_TOL", "banana")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn relaxed_real_c_build_has_no_transfer_time() {
    let dir = tempfile::tempdir().unwrap();
    let out = cradle(
        &[
            "build", "--free-free", "-N", "6", "--c", "0.4314159", "--relaxed",
            "-o", "r.json",
        ],
        dir.path(),
    );
    assert!(out.status.success(), "{}", stderr(&out));
    let doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("r.json")).unwrap())
            .unwrap();
    assert!(doc["spectrum"]["t_star"].is_null());
    // without --relaxed the same value is rejected
    let out = cradle(
        &["build", "--free-free", "-N", "6", "--c", "0.4314159"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn sweep_reports_every_point_deterministically() {
    let dir = tempfile::tempdir().unwrap();
    let out = cradle(
        &["verify", "--sweep", "--rho", "1", "-Z", "4", "--n-range", "2:6", "--pt"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "[PASS] N = 2");
    assert_eq!(lines[4], "[PASS] N = 6");
    assert!(text.contains("5/5 points pass"));
}
