use crate::settings::Settings;
use crate::Failure;
use num_complex::Complex64;
use osc_identity::landau::{closed_form, solve_t, solve_tau_hierarchy, SolveConfig};
use osc_identity::specfun::{arctan_principal, fresnel, AuxKind};
use osc_identity::suite::{run_suite, CheckOutcome, SuiteConfig};
use serde::Serialize;
use std::fmt::Write;

#[derive(Debug, Serialize)]
struct CheckRecord {
    name: String,
    lhs_re: f64,
    lhs_im: f64,
    rhs_re: f64,
    rhs_im: f64,
    abs_diff: f64,
    tol: f64,
    pass: bool,
    seconds: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
}

impl From<&CheckOutcome> for CheckRecord {
    fn from(c: &CheckOutcome) -> Self {
        let r = &c.result;
        Self {
            name: r.name.clone(),
            lhs_re: r.lhs.re,
            lhs_im: r.lhs.im,
            rhs_re: r.rhs.re,
            rhs_im: r.rhs.im,
            abs_diff: r.abs_diff,
            tol: r.tol,
            pass: c.pass(),
            seconds: c.seconds,
            error: c.error.clone(),
        }
    }
}

#[derive(Debug, Serialize)]
struct SuiteReport<'a> {
    version: &'static str,
    config: &'a Settings,
    checks: Vec<CheckRecord>,
    pass: bool,
}

pub fn check(settings: &Settings, cfg: &SuiteConfig) -> Result<(String, bool), Failure> {
    let outcomes = run_suite(cfg).map_err(|e| Failure::Usage(e.to_string()))?;
    let checks: Vec<CheckRecord> = outcomes.iter().map(CheckRecord::from).collect();
    let pass = checks.iter().all(|c| c.pass);
    let report = SuiteReport {
        version: env!("CARGO_PKG_VERSION"),
        config: settings,
        checks,
        pass,
    };
    let mut text = serde_json::to_string_pretty(&report).map_err(|e| Failure::Check(e.to_string()))?;
    text.push('\n');
    Ok((text, pass))
}

fn real_arg(s: &str) -> Result<f64, Failure> {
    s.trim()
        .parse()
        .map_err(|_| Failure::Usage(format!("expected a real number, got {s:?}")))
}

fn complex_arg(s: &str) -> Result<Complex64, Failure> {
    match s.split_once(',') {
        Some((re, im)) => Ok(Complex64::new(real_arg(re)?, real_arg(im)?)),
        None => Ok(Complex64::new(real_arg(s)?, 0.0)),
    }
}

fn computed<T>(r: osc_identity::Result<T>) -> Result<T, Failure> {
    r.map_err(|e| Failure::Check(e.to_string()))
}

/// `T(0,t)` or `T(∞,t)`, with the change under ten times looser ODE
/// tolerances as the error estimate.
fn t_value(t: f64, solve: &SolveConfig, at_infinity: bool) -> Result<(Complex64, f64), Failure> {
    let read = |cfg: &SolveConfig| -> osc_identity::Result<f64> {
        let sol = solve_t(t, cfg)?;
        if at_infinity {
            sol.t_infinity()
        } else {
            sol.t_at_zero()
        }
    };
    let fine = computed(read(solve))?;
    let loose = computed(read(&SolveConfig {
        ode: solve.ode.scaled(10.0),
        ..*solve
    }))?;
    Ok((Complex64::new(fine, 0.0), (fine - loose).abs()))
}

pub fn eval(function: &str, argument: &str, cfg: &SuiteConfig) -> Result<(String, bool), Failure> {
    let quad = &cfg.solve.quad;
    let (value, err) = match function {
        "arctan" => {
            let v = computed(arctan_principal(complex_arg(argument)?))?;
            (v, f64::EPSILON * v.norm())
        }
        "fresnel" => {
            let v = fresnel(real_arg(argument)?).as_complex();
            (v, f64::EPSILON * v.norm())
        }
        "T0" => t_value(real_arg(argument)?, &cfg.solve, false)?,
        "Tinf" => t_value(real_arg(argument)?, &cfg.solve, true)?,
        other => {
            let kind: AuxKind = other
                .parse()
                .map_err(|_| Failure::Usage(format!("unknown function {other:?}")))?;
            let v = computed(kind.eval(real_arg(argument)?, quad))?;
            (v.value, v.abs_error_estimate)
        }
    };
    let text = format!(
        "function,argument,value_re,value_im,abs_error_estimate\n{function},\"{argument}\",{:.16e},{:.16e},{:.3e}\n",
        value.re, value.im, err
    );
    Ok((text, true))
}

pub fn in_table(n: usize, cfg: &SuiteConfig) -> Result<(String, bool), Failure> {
    let mut text = String::from("n,I_numeric,I_closed,abs_diff,err_estimate\n");
    if n == 0 {
        return Ok((text, true));
    }
    let h = computed(solve_tau_hierarchy(n, &cfg.solve))?;
    let mut ok = true;
    for k in 1..=n {
        let exact = closed_form(k);
        let v = h.values[k - 1];
        let diff = (v - exact).abs();
        ok &= diff <= 1e-6 * exact / cfg.tol_scale;
        writeln!(text, "{k},{v:.16e},{exact:.16e},{diff:.16e},{:.16e}", h.errors[k - 1]).unwrap();
    }
    Ok((text, ok))
}

pub fn profile(t: f64, from: f64, to: f64, step: f64, cfg: &SuiteConfig) -> Result<(String, bool), Failure> {
    let (lo, hi) = (cfg.solve.x_min, cfg.solve.x_max);
    if !(t.is_finite() && from < to && step > 0.0 && from >= lo && to <= hi) {
        return Err(Failure::Usage(format!(
            "need finite t, from < to inside [{lo}, {hi}] and step > 0 (got from {from}, to {to}, step {step})"
        )));
    }
    let sol = computed(solve_t(t, &cfg.solve))?;
    let count = ((to - from) / step + 1e-9).floor() as usize + 1;
    let mut text = String::from("x,T,A,B\n");
    for k in 0..count {
        let x = (from + k as f64 * step).min(to);
        let st = computed(sol.state(x))?;
        writeln!(text, "{x:.16e},{:.16e},{:.16e},{:.16e}", st.t, st.a, st.b).unwrap();
    }
    Ok((text, true))
}
