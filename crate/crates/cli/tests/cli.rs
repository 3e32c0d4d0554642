use std::path::Path;
use std::process::{Command, Output};

use mbell_core::bell::{mabk_polynomial, maximize_violation, Plane};
use mbell_core::quantum::StateVector;

fn mbell(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mbell"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn ok(args: &[&str]) -> String {
    let out = mbell(args);
    assert!(out.status.success(), "{args:?}: {}", stderr(&out));
    stdout(&out)
}

fn value_after(text: &str, prefix: &str) -> String {
    text.lines()
        .find_map(|l| l.strip_prefix(prefix))
        .unwrap_or_else(|| panic!("no line starting with '{prefix}' in\n{text}"))
        .split_whitespace()
        .next()
        .unwrap()
        .to_string()
}

fn sweep(dir: &Path, name: &str, extra: &[&str]) -> (String, String) {
    let path = dir.join(name);
    let mut args = vec!["sweep", "--out", path.to_str().unwrap()];
    args.extend_from_slice(extra);
    let report = ok(&args);
    (report, std::fs::read_to_string(path).unwrap())
}

#[test]
fn sweep_columns_and_endpoints() {
    let dir = tempfile::tempdir().unwrap();
    let (report, csv) = sweep(dir.path(), "psi.csv", &["--family", "psi4", "--steps", "11"]);
    assert_eq!(value_after(&report, "fulcrum alpha* = "), "0.8164965809");
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(
        lines[0],
        "alpha,payoff_low_strategy,payoff_high_strategy,payoff_envelope,chi_payoff_opt,chi_mabk_max,delta_chi,fulcrum_flag"
    );
    assert_eq!(lines.len(), 12);
    let last: Vec<&str> = lines[11].split(',').collect();
    assert_eq!(last[0], "1");
    assert_eq!(last[3], "0.25");
    assert_eq!(last[4], "8");
    assert_eq!(last[6], "2.828427125");
    assert_eq!(last[7], "1");
    let first: Vec<&str> = lines[1].split(',').collect();
    assert_eq!(first[3], "0.125");
    assert_eq!(first[7], "0");
}

#[test]
fn six_player_fulcrum_printed() {
    let dir = tempfile::tempdir().unwrap();
    let (report, csv) = sweep(dir.path(), "six.csv", &["--family", "six", "--steps", "3"]);
    assert_eq!(value_after(&report, "fulcrum alpha* = "), "0.5619514869");
    let last: Vec<&str> = csv.lines().last().unwrap().split(',').collect();
    assert_eq!(last[3], "0.3125");
}

#[test]
fn sweep_is_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    for family in ["psi4", "phi4"] {
        let (_, a) = sweep(dir.path(), "a.csv", &["--family", family, "--steps", "21"]);
        let (_, b) = sweep(dir.path(), "b.csv", &["--family", family, "--steps", "21"]);
        assert_eq!(a, b);
    }
}

#[test]
fn optimize_reports_classes() {
    let high = ok(&["optimize", "--family", "psi4", "--alpha", "0.9"]);
    assert_eq!(value_after(&high, "payoff = "), "0.2025");
    assert!(high.lines().any(|l| l.starts_with("class M>") && l.ends_with("match yes")));
    assert!(high.lines().any(|l| l.starts_with("class M<") && l.ends_with("match no")));

    let low = ok(&["optimize", "--family", "psi4", "--alpha", "0.3"]);
    let a: f64 = 0.3;
    let printed = 1.0 / 16.0 + (1.0 - a * a + 2.0 * 2f64.sqrt() * a * (1.0 - a * a).sqrt()) / 16.0;
    let got: f64 = value_after(&low, "payoff = ").parse().unwrap();
    assert!((got - printed).abs() < 1e-9);
    assert!(low.lines().any(|l| l.starts_with("class M<") && l.ends_with("match yes")));

    let fulcrum = format!("{}", (2.0f64 / 3.0).sqrt());
    let both = ok(&["optimize", "--family", "psi4", "--alpha", &fulcrum]);
    assert_eq!(value_after(&both, "payoff = "), "0.1666666667");
    assert_eq!(both.lines().filter(|l| l.ends_with("match yes")).count(), 2);
}

#[test]
fn bell_reports() {
    let ghz = ok(&["bell", "--family", "psi4", "--alpha", "1", "--plane", "xy", "--polynomial", "mabk"]);
    assert_eq!(value_after(&ghz, "delta chi = "), "2.828427125");
    assert_eq!(value_after(&ghz, "lhv bound = "), "4");

    let epr = ok(&["bell", "--family", "psi4", "--alpha", "0", "--plane", "zy"]);
    let (_, best) = maximize_violation(
        &mabk_polynomial(4).unwrap(),
        &StateVector::psi_in(0.0).unwrap(),
        Plane::Zy,
        true,
    )
    .unwrap();
    let got: f64 = value_after(&epr, "delta chi = ").parse().unwrap();
    assert!((got - best / 4.0).abs() < 1e-8);

    let payoff = ok(&["bell", "--family", "psi4", "--alpha", "0.5", "--polynomial", "payoff"]);
    assert_eq!(value_after(&payoff, "lhv bound = "), "20");
}

#[test]
fn uniqueness_report() {
    let z = ok(&["uniqueness", "--axis", "z"]);
    assert!(z.contains("nullspace dimension 2"));
    assert!(z.contains("rank 14"));
    assert!(z.contains("trivial (all win)") && z.contains("trivial (all lose)"));

    let y = ok(&["uniqueness", "--axis", "y"]);
    assert!(y.contains("with sum c = 0"));
    assert!(y.contains("nullspace dimension 1"));
    let classes: Vec<&str> = y
        .lines()
        .filter(|l| l.trim_start().starts_with("(a, b)"))
        .map(|l| l.rsplit(": ").next().unwrap())
        .collect();
    assert_eq!(classes.len(), 2);
    assert!(classes.contains(&"Minority") && classes.contains(&"anti-Minority"));

    let all = ok(&["uniqueness"]);
    for axis in ["Z-elimination", "X-elimination", "Y-elimination"] {
        assert!(all.contains(axis));
    }
}

#[test]
fn errors_are_one_line_and_nonzero() {
    let dir = tempfile::tempdir().unwrap();
    let blocked = dir.path().join("missing").join("x.csv");
    let cases: Vec<Vec<String>> = vec![
        vec!["sweep".into(), "--family".into(), "psi5".into(), "--out".into(), "x.csv".into()],
        vec!["sweep".into(), "--out".into(), blocked.display().to_string(), "--steps".into(), "3".into()],
        vec!["sweep".into(), "--steps".into(), "1".into(), "--out".into(), dir.path().join("y.csv").display().to_string()],
        vec!["optimize".into(), "--alpha".into(), "1.5".into()],
        vec!["optimize".into()],
        vec!["bell".into(), "--alpha".into(), "0.5".into(), "--plane".into(), "qq".into()],
        vec!["bell".into(), "--family".into(), "six".into(), "--alpha".into(), "0.5".into(), "--polynomial".into(), "payoff".into()],
    ];
    for args in cases {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let out = mbell(&args);
        assert!(!out.status.success(), "{args:?}");
        let err = stderr(&out);
        assert_eq!(err.trim_end().lines().count(), 1, "{args:?}: {err}");
    }
}

#[test]
fn config_file_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("cfg.csv");
    let cfg = dir.path().join("run.cfg");
    std::fs::write(
        &cfg,
        format!("# test run\nfamily = six\nsteps = 4\nout = {}\n", out.display()),
    )
    .unwrap();
    let report = ok(&["sweep", "--config", cfg.to_str().unwrap()]);
    assert!(report.contains("family six"));
    assert_eq!(std::fs::read_to_string(&out).unwrap().lines().count(), 5);

    let report = ok(&["sweep", "--config", cfg.to_str().unwrap(), "--steps", "2", "--family", "psi4"]);
    assert!(report.contains("family psi4"));
    assert_eq!(std::fs::read_to_string(&out).unwrap().lines().count(), 3);

    std::fs::write(&cfg, "alpha = 0.9\n").unwrap();
    let opt = ok(&["optimize", "--config", cfg.to_str().unwrap()]);
    assert_eq!(value_after(&opt, "payoff = "), "0.2025");

    std::fs::write(&cfg, "colour = red\n").unwrap();
    let bad = mbell(&["uniqueness", "--config", cfg.to_str().unwrap()]);
    assert!(!bad.status.success());
}
