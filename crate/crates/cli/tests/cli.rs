//! End-to-end tests of the command-line interface: flag parsing, config
//! merging, exit codes, file schemas, determinism and the solution
//! round-trip guarantee.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use riemann_awr::exact_riemann::{SamplePoint, WaveSolution};
use riemann_awr::solve;

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_riemann-awr")
}

fn temp_dir(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("riemann_awr_cli_{}_{}", std::process::id(), name));
    if dir.exists() {
        std::fs::remove_dir_all(&dir).unwrap();
    }
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn run(args: &[&str]) -> Output {
    Command::new(bin()).args(args).output().unwrap()
}

fn delta_args(out: &Path) -> Vec<String> {
    [
        "--rho-l", "2", "--u-l", "4", "--rho-r", "1", "--u-r", "0", "--A", "1", "--beta", "2",
    ]
    .iter()
    .map(|s| s.to_string())
    .chain(["--out-dir".to_string(), out.display().to_string()])
    .collect()
}

fn run_strings(cmd: &str, args: &[String]) -> Output {
    Command::new(bin()).arg(cmd).args(args).output().unwrap()
}

#[test]
fn solve_writes_expected_summary() {
    let dir = temp_dir("solve");
    let out = run_strings("solve", &delta_args(&dir));
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = std::fs::read_to_string(dir.join("solution.json")).unwrap();
    let json: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(json["region"], "III");
    assert_eq!(json["v_delta"].as_f64().unwrap(), 2.0);
    assert_eq!(json["w0"].as_f64().unwrap(), 6.0);
    assert_eq!(json["entropy_margins"][0].as_f64().unwrap(), 2.0);
    assert_eq!(json["entropy_margins"][1].as_f64().unwrap(), 1.5);
}

#[test]
fn solve_rejects_zero_density_naming_the_field() {
    let out = run(&[
        "solve", "--rho-l", "0", "--u-l", "4", "--rho-r", "1", "--u-r", "0", "--A", "1", "--beta",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("rho_l"), "stderr: {stderr}");
}

#[test]
fn missing_field_is_named() {
    let out = run(&[
        "solve", "--rho-l", "1", "--u-l", "2", "--rho-r", "1", "--A", "1", "--beta", "0",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(
        stderr.contains("missing required field: u_r"),
        "stderr: {stderr}"
    );
}

#[test]
fn identical_configs_give_byte_identical_outputs() {
    let dir_a = temp_dir("bytes_a");
    let dir_b = temp_dir("bytes_b");
    for dir in [&dir_a, &dir_b] {
        let out = run_strings("solve", &delta_args(dir));
        assert!(out.status.success());
        let out = run_strings("verify", &delta_args(dir));
        assert!(out.status.success());
    }
    for name in ["solution.json", "verify.json", "residuals.csv"] {
        let a = std::fs::read(dir_a.join(name)).unwrap();
        let b = std::fs::read(dir_b.join(name)).unwrap();
        assert_eq!(a, b, "{name} differs between identical runs");
    }
}

#[test]
fn config_file_supplies_fields_and_flags_override() {
    let dir = temp_dir("config");
    let cfg = dir.join("run.cfg");
    std::fs::write(
        &cfg,
        "rho_l = 2\nu_l = 4\nrho_r = 1\nu_r = 5\nA = 1\nbeta = 2\n",
    )
    .unwrap();
    // config alone: u_r = 5 puts the data in region I
    let out = run(&[
        "solve",
        "--config",
        cfg.to_str().unwrap(),
        "--out-dir",
        dir.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let json: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.join("solution.json")).unwrap()).unwrap();
    assert_eq!(json["region"], "I");
    // the flag overrides u_r and lands in region III
    let out = run(&[
        "solve",
        "--config",
        cfg.to_str().unwrap(),
        "--u-r",
        "0",
        "--out-dir",
        dir.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let json: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.join("solution.json")).unwrap()).unwrap();
    assert_eq!(json["region"], "III");
}

#[test]
fn json_config_is_accepted() {
    let dir = temp_dir("jsoncfg");
    let cfg = dir.join("run.json");
    std::fs::write(
        &cfg,
        "{\"rho_l\": 1.0, \"u_l\": 2.0, \"rho_r\": 1.0, \"u_r\": 3.0, \"A\": 1.0, \"beta\": 0.0}",
    )
    .unwrap();
    let out = run(&[
        "solve",
        "--config",
        cfg.to_str().unwrap(),
        "--out-dir",
        dir.to_str().unwrap(),
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let json: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.join("solution.json")).unwrap()).unwrap();
    assert_eq!(json["region"], "I");
    assert_eq!(json["rho_star"].as_f64().unwrap(), 0.5);
}

#[test]
fn unknown_config_field_is_named() {
    let dir = temp_dir("badcfg");
    let cfg = dir.join("bad.cfg");
    std::fs::write(&cfg, "rho_l = 1\nwhatever = 3\n").unwrap();
    let out = run(&["solve", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("whatever"), "stderr: {stderr}");
}

#[test]
fn out_dir_env_var_is_the_default_root() {
    let dir = temp_dir("envvar");
    let out = Command::new(bin())
        .args([
            "solve", "--rho-l", "1", "--u-l", "3", "--rho-r", "1", "--u-r", "0", "--A", "1",
            "--beta", "0",
        ])
        .env("RIEMANN_AWR_OUT_DIR", &dir)
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(dir.join("solution.json").exists());
}

#[test]
fn solution_json_round_trips_through_sampling() {
    let dir = temp_dir("roundtrip");
    let out = run_strings("solve", &delta_args(&dir));
    assert!(out.status.success());
    let text = std::fs::read_to_string(dir.join("solution.json")).unwrap();
    let json: serde_json::Value = serde_json::from_str(&text).unwrap();
    let restored: WaveSolution = serde_json::from_value(json["solution"].clone()).unwrap();
    let original = solve(&restored.setup).unwrap();
    // 100 probes must agree exactly between the restored and recomputed
    // solutions
    for i in 0..100 {
        let x = -6.0 + 12.0 * i as f64 / 99.0;
        let t = 0.05 + (i as f64) * 0.017;
        let a = restored.sample(x, t).unwrap();
        let b = original.sample(x, t).unwrap();
        match (a, b) {
            (SamplePoint::Smooth(p), SamplePoint::Smooth(q)) => {
                assert_eq!(p.rho, q.rho);
                assert_eq!(p.vel, q.vel);
            }
            (pa, pb) => assert_eq!(pa, pb),
        }
    }
}

#[test]
fn verify_writes_residual_table_and_passes() {
    let dir = temp_dir("verify");
    let out = run_strings("verify", &delta_args(&dir));
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let csv = std::fs::read_to_string(dir.join("residuals.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next().unwrap(), "psi_id,level,R1,R2,scale");
    assert_eq!(lines.count(), 10);
    let json: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.join("verify.json")).unwrap()).unwrap();
    assert_eq!(json["pass"], true);
}

#[test]
fn verify_fails_with_exit_2_on_unreachable_tolerance() {
    let dir = temp_dir("verify_fail");
    let mut args = delta_args(&dir);
    args.extend(["--tol".to_string(), "1e-30".to_string()]);
    let out = run_strings("verify", &args);
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("verification failure"), "stderr: {stderr}");
}

#[test]
fn grh_writes_trajectory_and_matches() {
    let dir = temp_dir("grh");
    let out = run_strings("grh", &delta_args(&dir));
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let csv = std::fs::read_to_string(dir.join("grh_trajectory.csv")).unwrap();
    assert!(csv.starts_with("t,x,w,u_delta\n"));
    assert_eq!(csv.lines().count(), 1002); // header + 1001 nodes
    let json: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.join("grh.json")).unwrap()).unwrap();
    assert_eq!(json["pass"], true);
}

#[test]
fn grh_rejects_two_contact_data() {
    let out = run(&[
        "grh", "--rho-l", "1", "--u-l", "2", "--rho-r", "1", "--u-r", "3", "--A", "1", "--beta",
        "0",
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn sample_emits_grid_and_paths() {
    let dir = temp_dir("sample");
    // friction-free so the delta sits at x = 2t; the grid hits it exactly
    let out = run(&[
        "sample",
        "--rho-l",
        "2",
        "--u-l",
        "4",
        "--rho-r",
        "1",
        "--u-r",
        "0",
        "--A",
        "1",
        "--beta",
        "0",
        "--t-list",
        "1.0",
        "--x-min",
        "-1",
        "--x-max",
        "5",
        "--nx",
        "7",
        "--out-dir",
        dir.to_str().unwrap(),
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let csv = std::fs::read_to_string(dir.join("samples.csv")).unwrap();
    assert!(csv.starts_with("t,x,rho,u,on_delta\n"));
    let on_delta: Vec<&str> = csv.lines().filter(|l| l.ends_with(",1")).collect();
    assert_eq!(on_delta.len(), 1, "csv:\n{csv}");
    assert!(on_delta[0].contains("6.0000000000000000e0")); // w(1) = 6
    let paths = std::fs::read_to_string(dir.join("wave_paths.csv")).unwrap();
    assert!(paths.starts_with("t,x_delta\n"));
}

#[test]
fn sample_two_contacts_exports_both_paths() {
    let dir = temp_dir("sample2c");
    let out = run(&[
        "sample",
        "--rho-l",
        "1",
        "--u-l",
        "2",
        "--rho-r",
        "1",
        "--u-r",
        "3",
        "--A",
        "1",
        "--beta",
        "2",
        "--t-list",
        "0.5,1.0",
        "--out-dir",
        dir.to_str().unwrap(),
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let paths = std::fs::read_to_string(dir.join("wave_paths.csv")).unwrap();
    let mut lines = paths.lines();
    assert_eq!(lines.next().unwrap(), "t,x1,x2");
    // the last row is t = 1: x1 = 1 + 1 = 2, x2 = 3 + 1 = 4
    let last = paths.lines().last().unwrap();
    let cells: Vec<f64> = last.split(',').map(|v| v.parse().unwrap()).collect();
    assert_eq!(cells, vec![1.0, 2.0, 4.0]);
    // phase-plane samples of the 1-contact curve satisfy its relation
    let curve = std::fs::read_to_string(dir.join("j1_curve.csv")).unwrap();
    let mut lines = curve.lines();
    assert_eq!(lines.next().unwrap(), "rho,v");
    for line in lines {
        let cells: Vec<f64> = line.split(',').map(|v| v.parse().unwrap()).collect();
        let (rho, v) = (cells[0], cells[1]);
        // v - A/rho = u_l - A/rho_l with A = 1, rho_l = 1, u_l = 2
        assert!((v - 1.0 / rho - 1.0).abs() <= 1e-12 * (1.0 + v.abs() + 1.0 / rho));
    }
}

#[test]
fn sweep_commands_pass_on_reference_data() {
    let dir = temp_dir("sweeps");
    let out = run(&[
        "sweep-a0",
        "--rho-l",
        "2",
        "--u-l",
        "4",
        "--rho-r",
        "1",
        "--u-r",
        "1",
        "--A",
        "7",
        "--beta",
        "0.5",
        "--out-dir",
        dir.to_str().unwrap(),
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let json: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.join("sweep_a0.json")).unwrap()).unwrap();
    assert_eq!(json["pass"], true);
    let csv = std::fs::read_to_string(dir.join("sweep_a0.csv")).unwrap();
    assert!(csv.starts_with("A,region,"));

    let out = run(&[
        "sweep-zero",
        "--rho-l",
        "4",
        "--u-l",
        "3",
        "--rho-r",
        "1",
        "--u-r",
        "1",
        "--A",
        "1",
        "--beta",
        "0",
        "--out-dir",
        dir.to_str().unwrap(),
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );

    // vacuum side dispatch
    let out = run(&[
        "sweep-zero",
        "--rho-l",
        "1",
        "--u-l",
        "2",
        "--rho-r",
        "1",
        "--u-r",
        "3",
        "--A",
        "1",
        "--beta",
        "0",
        "--out-dir",
        dir.to_str().unwrap(),
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let json: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.join("sweep_zero.json")).unwrap())
            .unwrap();
    assert_eq!(json["sweep"], "vacuum");
}

#[test]
fn fv_runs_and_reports() {
    let dir = temp_dir("fv");
    let out = run(&[
        "fv",
        "--rho-l",
        "2",
        "--u-l",
        "4",
        "--rho-r",
        "1",
        "--u-r",
        "0",
        "--A",
        "1",
        "--beta",
        "2",
        "--cells",
        "400",
        "--t-end",
        "0.3",
        "--window",
        "20",
        "--out-dir",
        dir.to_str().unwrap(),
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let json: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.join("fv.json")).unwrap()).unwrap();
    assert_eq!(json["pass"], true);
    assert!(json["max_mass_balance_rel"].as_f64().unwrap() <= 1e-12);
    let snap = std::fs::read_to_string(dir.join("fv_snapshot_0.csv")).unwrap();
    assert!(snap.starts_with("x_center,m,q,u\n"));
    assert_eq!(snap.lines().count(), 401);
}

#[test]
fn transport_limit_solve() {
    let dir = temp_dir("transport");
    let out = run(&[
        "solve",
        "--rho-l",
        "4",
        "--u-l",
        "3",
        "--rho-r",
        "1",
        "--u-r",
        "1",
        "--A",
        "0",
        "--beta",
        "1",
        "--out-dir",
        dir.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let json: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.join("solution.json")).unwrap()).unwrap();
    assert_eq!(json["transport_kind"], "transport_delta");
    let v = json["v_delta"].as_f64().unwrap();
    assert!((v - 7.0 / 3.0).abs() < 1e-15);
    assert_eq!(json["w0"].as_f64().unwrap(), 4.0);
}
