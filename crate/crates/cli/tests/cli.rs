use serde_json::Value;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_osc-identity"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn csv_rows(o: &Output) -> Vec<Vec<String>> {
    stdout(o)
        .lines()
        .skip(1)
        .map(|l| l.split(',').map(str::to_owned).collect())
        .collect()
}

fn report(o: &Output) -> Value {
    serde_json::from_str(&stdout(o)).expect("valid JSON")
}

#[test]
fn default_check_passes_with_full_report() {
    let o = run(&["check"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let r = report(&o);
    let checks = r["checks"].as_array().unwrap();
    assert!(checks.len() >= 20);
    assert_eq!(r["pass"], Value::Bool(true));
    assert!(checks.iter().all(|c| c["pass"] == Value::Bool(true)));
    for key in ["name", "lhs_re", "lhs_im", "rhs_re", "rhs_im", "abs_diff", "tol", "pass", "seconds"] {
        assert!(checks[0].get(key).is_some(), "missing {key}");
    }
    assert!(r["version"].is_string() && r["config"].is_object());
    assert!(checks.iter().any(|c| c["name"] == "oracle_I2"));
}

#[test]
fn fast_skips_the_four_fold_oracle() {
    let r = report(&run(&["check", "--fast"]));
    let checks = r["checks"].as_array().unwrap();
    assert!(!checks.iter().any(|c| c["name"] == "oracle_I2"));
    assert!(checks.iter().any(|c| c["name"] == "oracle_I1"));
}

#[test]
fn loosened_tolerances_still_pass() {
    let o = run(&["check", "--fast", "--tol-scale", "1e-3"]);
    assert_eq!(o.status.code(), Some(0));
    let r = report(&o);
    let first = &r["checks"][0];
    let rel = first["tol"].as_f64().unwrap() / first["rhs_re"].as_f64().unwrap();
    assert!((rel - 1e-3).abs() < 1e-12);
}

#[test]
fn impossible_tolerances_fail_with_exit_one() {
    let o = run(&["check", "--fast", "--tol-scale", "1e20"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(report(&o)["pass"], Value::Bool(false));
}

#[test]
fn numeric_fields_are_reproducible() {
    let strip = |v: Value| -> Vec<(String, String)> {
        v["checks"]
            .as_array()
            .unwrap()
            .iter()
            .map(|c| (c["name"].to_string(), format!("{}{}{}", c["lhs_re"], c["rhs_re"], c["abs_diff"])))
            .collect()
    };
    let a = strip(report(&run(&["check", "--fast", "--threads", "1"])));
    let b = strip(report(&run(&["check", "--fast"])));
    assert_eq!(a, b);
}

#[test]
fn config_file_is_read_and_validated() {
    let dir = std::env::temp_dir().join(format!("osc-identity-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.conf");
    std::fs::write(&bad, "# window\nx_min = 20\nx_max = -20\n").unwrap();
    assert_eq!(run(&["check", "--config", bad.to_str().unwrap()]).status.code(), Some(2));
    let unknown = dir.join("unknown.conf");
    std::fs::write(&unknown, "colour = red\n").unwrap();
    assert_eq!(run(&["check", "--config", unknown.to_str().unwrap()]).status.code(), Some(2));
    let good = dir.join("good.conf");
    std::fs::write(&good, "t_grid = -1, 1   # short grid\nfast = true\n").unwrap();
    let out = dir.join("report.json");
    let o = run(&["check", "--config", good.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let r: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(r["config"]["t_grid"], serde_json::json!([-1.0, 1.0]));
    assert_eq!(r["config"]["fast"], Value::Bool(true));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn missing_config_is_a_usage_error() {
    assert_eq!(run(&["check", "--config", "/nonexistent/x.conf"]).status.code(), Some(2));
}

fn eval_value(function: &str, arg: &str) -> (f64, f64) {
    let o = run(&["eval", function, arg]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let row = &csv_rows(&o)[0];
    let n = row.len();
    (row[n - 3].parse().unwrap(), row[n - 2].parse().unwrap())
}

#[test]
fn eval_functions() {
    let (u, _) = eval_value("U", "0");
    assert!((u - std::f64::consts::PI / std::f64::consts::SQRT_2).abs() < 1e-9);
    let (re, im) = eval_value("arctan", "0,0.5");
    assert!(re.abs() < 1e-15 && (im - 0.549_306_144_334_054_8).abs() < 1e-12);
    let (t0, _) = eval_value("T0", "1");
    assert!((t0 - (std::f64::consts::PI / 8.0).exp()).abs() < 1e-6);
    assert!((t0 - 1.480_97).abs() < 1e-5);
    let (tinf, _) = eval_value("Tinf", "-1");
    assert!((tinf - (2.0 * (-std::f64::consts::PI / 4.0).exp() - 1.0)).abs() < 1e-5);
    let (c, s) = eval_value("fresnel", "1");
    assert!((c - 0.904_524_237_900_272).abs() < 1e-13 && (s - 0.310_268_301_723_381).abs() < 1e-13);
    for f in ["V", "P", "Q"] {
        eval_value(f, "1");
    }
}

#[test]
fn eval_rejects_unknown_names_and_bad_arguments() {
    assert_eq!(run(&["eval", "W", "0"]).status.code(), Some(2));
    assert_eq!(run(&["eval", "U", "abc"]).status.code(), Some(2));
    assert_eq!(run(&["eval", "arctan", "0,1"]).status.code(), Some(1));
}

#[test]
fn in_table_rows() {
    let o = run(&["in-table", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("n,I_numeric,I_closed,abs_diff,err_estimate\n"));
    let rows = csv_rows(&o);
    let closed: Vec<f64> = rows.iter().map(|r| r[2].parse().unwrap()).collect();
    let pi = std::f64::consts::PI;
    for (c, want) in closed.iter().zip([pi / 2.0, pi * pi / 16.0, pi.powi(3) / 192.0]) {
        assert!((c - want).abs() < 1e-15);
    }
    assert_eq!(format!("{:.7}", closed[2]), "0.1614910");
    let empty = run(&["in-table", "0"]);
    assert_eq!(empty.status.code(), Some(0));
    assert!(csv_rows(&empty).is_empty());
    let six = run(&["in-table", "6"]);
    assert_eq!(six.status.code(), Some(0));
    assert!(csv_rows(&six).iter().all(|r| r[3].parse::<f64>().unwrap() <= 1e-6));
}

#[test]
fn profile_output() {
    let flat = run(&["profile", "0", "--from", "-5", "--to", "5", "--step", "0.25"]);
    assert_eq!(flat.status.code(), Some(0));
    let rows = csv_rows(&flat);
    assert_eq!(rows.len(), 41);
    assert!(rows.iter().all(|r| r[1].parse::<f64>().unwrap() == 1.0));

    let o = run(&["profile", "1", "--from", "-1", "--to", "1", "--step", "0.5"]);
    let at_zero = csv_rows(&o).into_iter().find(|r| r[0].parse::<f64>().unwrap() == 0.0).unwrap();
    assert!((at_zero[1].parse::<f64>().unwrap() - 1.480_97).abs() < 1e-5);

    let edge = run(&["profile", "1", "--from", "30", "--to", "40", "--step", "1"]);
    let last: Vec<f64> = csv_rows(&edge).last().unwrap().iter().map(|v| v.parse().unwrap()).collect();
    let t_inf = 2.0 * (std::f64::consts::PI / 4.0).exp() - 1.0;
    // The approach to the limit oscillates with amplitude about t|A + iB|/(2x).
    let tail = last[2].hypot(last[3]) / (2.0 * last[0]);
    assert!((last[1] - t_inf).abs() < tail, "{last:?} vs {t_inf}");
}

#[test]
fn profile_rejects_bad_ranges() {
    assert_eq!(run(&["profile", "1", "--from", "2", "--to", "1"]).status.code(), Some(2));
    assert_eq!(run(&["profile", "1", "--step", "0"]).status.code(), Some(2));
    assert_eq!(run(&["profile", "1", "--to", "100"]).status.code(), Some(2));
}
