//! End-to-end behaviour of the `doppler` binary and the scenario plumbing.

use std::path::Path;
use std::process::{Command, Output};

use doppler_core::cli::config::ScenarioConfig;
use doppler_core::cli::table::cmd_spectrum;
use doppler_core::minkowski::SPEED_OF_LIGHT;
use tempfile::TempDir;

const JOLT: &str = r#"{
    "model": "jolt", "beta": 0.1, "a0_geom": 0.05, "j0_geom": 0.02,
    "wave": {"f0_hz": 1e12},
    "window": {"ctau_i": 0.0, "ctau_f": 1.0},
    "spectrum": {"n_k": 48, "methods": ["quadrature", "spa"]}
}"#;

fn doppler(args: &[&str], envs: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_doppler"));
    cmd.args(args).env_remove("DOPPLER_WORKERS");
    for (k, v) in envs {
        cmd.env(k, v);
    }
    cmd.output().unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

fn numeric_rows(csv: &str) -> Vec<Vec<f64>> {
    csv.lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| l.split(',').filter_map(|f| f.parse::<f64>().ok()).collect())
        .collect()
}

#[test]
fn spectrum_output_is_deterministic_across_worker_counts() {
    let dir = TempDir::new().unwrap();
    let cfg = write(&dir, "jolt.json", JOLT);
    let a = doppler(&["spectrum", "--config", &cfg], &[]);
    let b = doppler(&["spectrum", "--config", &cfg], &[("DOPPLER_WORKERS", "1")]);
    let c = doppler(&["spectrum", "--config", &cfg], &[("DOPPLER_WORKERS", "3")]);
    assert!(a.status.success(), "{}", String::from_utf8_lossy(&a.stderr));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, c.stdout);
}

#[test]
fn out_flag_writes_the_same_bytes() {
    let dir = TempDir::new().unwrap();
    let cfg = write(&dir, "jolt.json", JOLT);
    let out = dir.path().join("s.csv");
    let piped = doppler(&["spectrum", "--config", &cfg], &[]);
    let filed = doppler(&["spectrum", "--config", &cfg, "--out", out.to_str().unwrap()], &[]);
    assert!(filed.status.success());
    assert_eq!(std::fs::read(&out).unwrap(), piped.stdout);
}

#[test]
fn serialized_config_round_trips_bit_for_bit() {
    let cfg = ScenarioConfig::from_json(JOLT).unwrap();
    let again = ScenarioConfig::from_json(&cfg.to_json()).unwrap();
    assert_eq!(cfg, again);
    let a = cmd_spectrum(&cfg.resolve().unwrap(), None, 8.0)
        .unwrap()
        .to_csv()
        .unwrap();
    let b = cmd_spectrum(&again.resolve().unwrap(), None, 8.0)
        .unwrap()
        .to_csv()
        .unwrap();
    assert_eq!(a, b);
}

#[test]
fn si_and_geometric_units_agree() {
    let geom = ScenarioConfig::from_json(JOLT).unwrap();
    let mut si = geom.clone();
    si.a0_si = Some(0.05 * SPEED_OF_LIGHT * SPEED_OF_LIGHT);
    si.a0_geom = None;
    si.j0_si = Some(0.02 * SPEED_OF_LIGHT.powi(3));
    si.j0_geom = None;
    let a = numeric_rows(
        &cmd_spectrum(&geom.resolve().unwrap(), None, 8.0)
            .unwrap()
            .to_csv()
            .unwrap(),
    );
    let b = numeric_rows(
        &cmd_spectrum(&si.resolve().unwrap(), None, 8.0)
            .unwrap()
            .to_csv()
            .unwrap(),
    );
    assert_eq!(a.len(), b.len());
    for (ra, rb) in a.iter().zip(&b) {
        for (x, y) in ra.iter().zip(rb) {
            if x.is_nan() {
                assert!(y.is_nan());
            } else {
                assert!((x - y).abs() <= 1e-12 * x.abs().max(1e-300), "{x} vs {y}");
            }
        }
    }
}

#[test]
fn methods_flag_overrides_config() {
    let dir = TempDir::new().unwrap();
    let cfg = write(&dir, "jolt.json", JOLT);
    let out = doppler(&["spectrum", "--config", &cfg, "--methods", "spa"], &[]);
    let text = String::from_utf8(out.stdout).unwrap();
    let body: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).skip(1).collect();
    assert_eq!(body.len(), 48);
    assert!(body.iter().all(|l| l.split(',').nth(6) == Some("spa")));
}

#[test]
fn kinematics_columns_hold_invariants() {
    let dir = TempDir::new().unwrap();
    let cfg = write(&dir, "jolt.json", JOLT);
    let out = doppler(&["kinematics", "--config", &cfg], &[]);
    assert!(out.status.success());
    let rows = numeric_rows(&String::from_utf8(out.stdout).unwrap());
    assert_eq!(rows.len(), 101);
    for r in rows {
        let (ctau, abs_a, abs_sigma) = (r[0], r[21], r[22]);
        assert!((abs_a - (0.05 + 0.02 * ctau)).abs() < 1e-8);
        assert!((abs_sigma - 0.02).abs() < 1e-8);
    }
}

#[test]
fn configuration_errors_name_the_field_and_exit_2() {
    let dir = TempDir::new().unwrap();
    let both = write(
        &dir,
        "both.json",
        r#"{"model": "accel", "a0_si": 1e15, "a0_geom": 0.05}"#,
    );
    let out = doppler(&["spectrum", "--config", &both], &[]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("a0"));

    let cfg = write(&dir, "jolt.json", JOLT);
    let out = doppler(&["spectrum", "--config", &cfg], &[("DOPPLER_WORKERS", "many")]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("DOPPLER_WORKERS"));

    let out = doppler(&["spectrum", "--config", &cfg, "--oversample", "0.5"], &[]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn undersampled_request_reports_the_needed_count() {
    let dir = TempDir::new().unwrap();
    let text = JOLT.replace(r#""spectrum""#, r#""sampling": {"n_samples": 32}, "spectrum""#);
    let cfg = write(&dir, "under.json", &text);
    let out = doppler(&["spectrum", "--config", &cfg], &[]);
    assert_eq!(out.status.code(), Some(2));
    let msg = String::from_utf8_lossy(&out.stderr).to_string();
    assert!(msg.contains("32"), "{msg}");
}

#[test]
fn validate_reports_and_fails_under_injection() {
    let ok = doppler(&["validate", "--only", "1,4,9"], &[]);
    assert_eq!(ok.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&ok.stdout).unwrap();
    assert_eq!(report["pass"], true);
    let crit = report["criteria"].as_array().unwrap();
    assert_eq!(crit.len(), 3);
    assert!(crit
        .iter()
        .all(|c| c["runtime_ms"].as_f64().is_some() && c["measurements"].as_array().is_some()));

    let bad = doppler(&["validate", "--only", "1", "--inject", "jolt-sign"], &[]);
    assert_eq!(bad.status.code(), Some(1));
    let report: serde_json::Value = serde_json::from_slice(&bad.stdout).unwrap();
    assert_eq!(report["injection"], "jolt-sign");
    assert_eq!(report["criteria"][0]["pass"], false);
}

#[test]
fn figure_writes_csv_with_metadata() {
    let dir = TempDir::new().unwrap();
    let out = doppler(&["figure", "fig3", "--out", dir.path().to_str().unwrap()], &[]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(Path::new(dir.path()).join("fig3_fs.csv")).unwrap();
    assert!(text.starts_with("# generator: doppler-core"));
    assert!(text.contains("# carrier_hz: "));
    assert!(text.lines().any(|l| l == "k,k_normalized,abs_S,abs_S_normalized,curve"));
}
