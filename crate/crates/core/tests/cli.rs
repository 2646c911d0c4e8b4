use std::path::PathBuf;
use std::process::{Command, Output};

fn scenario(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("scenarios")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn multislope(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_multislope"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

/// Data rows (no header, no comments) split into fields.
fn rows(text: &str) -> Vec<Vec<f64>> {
    text.lines()
        .skip(1)
        .filter(|l| !l.starts_with('#'))
        .map(|l| l.split(',').map(|f| f.parse().unwrap()).collect())
        .collect()
}

#[test]
fn dual_coverage_record() {
    let fig3 = scenario("fig3.toml");
    let out = multislope(&[
        "--scenario",
        &fig3,
        "--T-db",
        "0",
        "coverage",
        "--metric",
        "sinr",
        "--method",
        "dual",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("metric,method,threshold_db,threshold_linear,value,error_estimate")
    );
    let fields: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(&fields[..2], &["sinr", "dual-slope"]);
    let value: f64 = fields[4].parse().unwrap();
    let err: f64 = fields[5].parse().unwrap();
    assert!(value > 0.0 && value < 1.0);
    assert!((value - 0.282403056428618).abs() < 1e-7);
    assert!(err <= 1e-7);
}

#[test]
fn noiseless_snr_is_one() {
    let fig2 = scenario("fig2.toml");
    let out = multislope(&["--scenario", &fig2, "--T-db", "0", "coverage", "--metric", "snr"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let value: f64 = text.lines().nth(1).unwrap().split(',').nth(4).unwrap().parse().unwrap();
    assert_eq!(value, 1.0);
}

#[test]
fn usage_and_domain_errors_exit_two() {
    let out = multislope(&["--scenario", "/nonexistent/scenario.toml", "coverage"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).contains("scenario.toml"));

    let fig4 = scenario("fig4.toml");
    let empty = multislope(&[
        "--scenario",
        &fig4,
        "ccdf",
        "--min-db",
        "0",
        "--max-db",
        "1",
        "--steps",
        "0",
    ]);
    assert_eq!(empty.status.code(), Some(2));

    let bad_t = multislope(&["--scenario", &fig4, "--T-linear", "-1", "coverage"]);
    assert_eq!(bad_t.status.code(), Some(2));

    assert_eq!(multislope(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(multislope(&["validate", "no-such-suite"]).status.code(), Some(2));
}

#[test]
fn divergent_interference_is_reported() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("flat.toml");
    std::fs::write(
        &path,
        "density = 1.0\nnoise = 0.0\n[pathloss]\nexponents = [1, 2]\nbreakpoints = [1]\n",
    )
    .unwrap();
    let out = multislope(&[
        "--scenario",
        path.to_str().unwrap(),
        "--T-db",
        "0",
        "coverage",
        "--metric",
        "sir",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("alpha_last"));
}

#[test]
fn unknown_scenario_keys_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("typo.toml");
    std::fs::write(
        &path,
        "density = 1.0\nnoise = 0.0\nnoize = 1.0\n[pathloss]\nexponents = [2, 4]\nbreakpoints = [1]\n",
    )
    .unwrap();
    let out = multislope(&["--scenario", path.to_str().unwrap(), "--T-db", "0", "coverage"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn ccdf_columns_and_bound() {
    let fig4 = scenario("fig4.toml");
    let out = multislope(&[
        "--scenario",
        &fig4,
        "--trials",
        "4000",
        "ccdf",
        "--min-db",
        "-10",
        "--max-db",
        "10",
        "--steps",
        "5",
        "--with-mc",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert_eq!(
        text.lines().next(),
        Some("threshold_db,analytic,lower_bound,mc_estimate,mc_ci")
    );
    assert!(text.lines().last().unwrap().starts_with('#'));
    let data = rows(&text);
    assert_eq!(data.len(), 5);
    for w in data.windows(2) {
        assert!(w[1][0] > w[0][0]);
        assert!(w[1][1] <= w[0][1]);
    }
    for r in &data {
        assert!(r[2] <= r[1] + 1e-9);
        assert!((r[1] - r[3]).abs() <= 3.0 * r[4], "{r:?}");
    }
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ccdf.csv");
    let fig6 = scenario("fig6.json");
    let args = ["--scenario", &fig6, "ccdf", "--metric", "sinr"];
    let to_stdout = multislope(&args);
    let mut with_out = args.to_vec();
    with_out.extend(["--out", path.to_str().unwrap()]);
    let to_file = multislope(&with_out);
    assert_eq!(to_file.status.code(), Some(0));
    assert!(to_file.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), stdout(&to_stdout));
    assert_eq!(rows(&stdout(&to_stdout)).len(), 21);
}

#[test]
fn sweep_reports_fit() {
    let fig1 = scenario("fig1.toml");
    let out = multislope(&["--scenario", &fig1, "--T-db", "0", "sweep"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert_eq!(
        text.lines().next(),
        Some("lambda,coverage_sir,coverage_snr,coverage_sinr,mu,tau")
    );
    let data = rows(&text);
    assert_eq!(data.len(), 33);
    for w in data.windows(2) {
        assert!(w[1][1] <= w[0][1] + 1e-9);
    }
    assert!(text.contains("# fitted_exponent="));

    let fig5 = scenario("fig5.toml");
    let out = multislope(&["--scenario", &fig5, "--T-db", "0", "sweep", "--alpha0", "1.8"]);
    let text = stdout(&out);
    let slope: f64 = text
        .split("fitted_exponent=")
        .nth(1)
        .and_then(|s| s.split_whitespace().next())
        .unwrap()
        .parse()
        .unwrap();
    assert!((slope - (2.0 - 2.0 / 1.8)).abs() < 0.15, "{slope}");

    let fig3 = scenario("fig3.toml");
    let sinr: Vec<f64> = rows(&stdout(&multislope(&["--scenario", &fig3, "--T-db", "0", "sweep"])))
        .iter()
        .map(|r| r[3])
        .collect();
    let peak = sinr.iter().cloned().fold(f64::MIN, f64::max);
    assert!(peak > sinr[0] && peak > *sinr.last().unwrap());
}

#[test]
fn validation_suites_pass() {
    for args in [
        vec!["validate", "theorem2", "--seed", "7"],
        vec!["validate", "fact1"],
        vec!["validate", "prop2-bound"],
    ] {
        let out = multislope(&args);
        let text = stdout(&out);
        assert_eq!(out.status.code(), Some(0), "{args:?}\n{text}");
        assert!(text.starts_with("property,grid_size,worst_margin,status\n"));
        assert!(text
            .lines()
            .filter(|l| !l.starts_with('#'))
            .skip(1)
            .all(|l| l.ends_with(",pass") || l.ends_with(",info")));
    }
}
