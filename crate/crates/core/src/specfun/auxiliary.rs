use super::SpecialValue;
use crate::error::Result;
use crate::quad::{
    integrate_decaying_tail, integrate_oscillatory_decaying, integrate_tanh_sinh, QuadConfig,
    QuadResult,
};
use num_complex::Complex64;
use std::fmt;
use std::str::FromStr;

/// The four auxiliary functions of the real parameter `t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AuxKind {
    U,
    V,
    P,
    Q,
}

impl AuxKind {
    pub fn eval(self, t: f64, cfg: &QuadConfig) -> Result<SpecialValue> {
        match self {
            AuxKind::U => u_aux(t, cfg),
            AuxKind::V => v_aux(t, cfg),
            AuxKind::P => p_aux(t, cfg),
            AuxKind::Q => q_aux(t, cfg),
        }
    }
}

impl fmt::Display for AuxKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            AuxKind::U => "U",
            AuxKind::V => "V",
            AuxKind::P => "P",
            AuxKind::Q => "Q",
        };
        f.write_str(s)
    }
}

impl FromStr for AuxKind {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "U" | "u" => Ok(AuxKind::U),
            "V" | "v" => Ok(AuxKind::V),
            "P" | "p" => Ok(AuxKind::P),
            "Q" | "q" => Ok(AuxKind::Q),
            _ => Err(format!("unknown auxiliary function {s:?}")),
        }
    }
}

fn finish(parts: &[QuadResult]) -> Result<SpecialValue> {
    for p in parts {
        p.require_converged()?;
    }
    Ok(SpecialValue {
        value: parts.iter().map(|p| p.value).sum(),
        abs_error_estimate: parts.iter().map(|p| p.abs_error_estimate).sum(),
    })
}

/// `∫₀^∞ x^{p}/(1+x²) e^{(t/4) arctan x} dx` for `p = ±1/2`.
fn real_axis_integral(half_power: f64, t: f64, cfg: &QuadConfig) -> Result<SpecialValue> {
    let w = 0.25 * t;
    let f = |x: f64| Complex64::new(x.powf(half_power) / (1.0 + x * x) * (w * x.atan()).exp(), 0.0);
    let head = integrate_tanh_sinh(f, 0.0, 1.0, cfg)?;
    // The algebraic tail converges slowly; ask for more so the sum keeps the
    // requested relative accuracy.
    let tail = integrate_decaying_tail(f, 1.0, &cfg.with_rel_tol(cfg.rel_tol * 1e-2))?;
    finish(&[head, tail])
}

/// `U(t) = ∫₀^∞ √x/(1+x²) e^{(t/4) arctan x} dx`.
pub fn u_aux(t: f64, cfg: &QuadConfig) -> Result<SpecialValue> {
    real_axis_integral(0.5, t, cfg)
}

/// `V(t) = ∫₀^∞ x^{-1/2}/(1+x²) e^{(t/4) arctan x} dx`.
pub fn v_aux(t: f64, cfg: &QuadConfig) -> Result<SpecialValue> {
    real_axis_integral(-0.5, t, cfg)
}

// 1 - tanh u, accurate for large u.
#[inline]
fn one_minus_tanh(u: f64) -> f64 {
    2.0 / (1.0 + (2.0 * u).exp())
}

/// `√(tanh u) - 1`.
#[inline]
fn p_envelope(u: f64) -> f64 {
    let th = u.tanh();
    -one_minus_tanh(u) / (1.0 + th.sqrt())
}

/// `1/√(tanh u) - 1`.
#[inline]
fn q_envelope(u: f64) -> f64 {
    let rt = u.tanh().sqrt();
    one_minus_tanh(u) / (rt * (1.0 + rt))
}

/// `∫₀^∞ g(u) e^{iωu} du` with `ω = t/4`, split at `u = 1`.
fn half_line_oscillatory(g: fn(f64) -> f64, t: f64, cfg: &QuadConfig) -> Result<SpecialValue> {
    let omega = 0.25 * t;
    let head = integrate_tanh_sinh(
        |u| Complex64::from_polar(g(u), omega * u),
        0.0,
        1.0,
        cfg,
    )?;
    let shifted = integrate_oscillatory_decaying(|u| Complex64::new(g(u + 1.0), 0.0), omega, cfg)?;
    let tail = shifted.scale(Complex64::from_polar(1.0, omega));
    finish(&[head, tail])
}

/// `P(t) = ∫₀¹ (√y-1)/(1-y²) e^{(it/4) artanh y} dy`, evaluated after
/// `y = tanh u` as `∫₀^∞ (√(tanh u) - 1) e^{itu/4} du`.
pub fn p_aux(t: f64, cfg: &QuadConfig) -> Result<SpecialValue> {
    half_line_oscillatory(p_envelope, t, cfg)
}

/// `Q(t) = ∫₀¹ (1/√y-1)/(1-y²) e^{(it/4) artanh y} dy`, evaluated after
/// `y = tanh u`.
pub fn q_aux(t: f64, cfg: &QuadConfig) -> Result<SpecialValue> {
    half_line_oscillatory(q_envelope, t, cfg)
}

fn unit_interval(g: fn(f64) -> f64, t: f64, cfg: &QuadConfig) -> Result<SpecialValue> {
    let w = 0.25 * t;
    let r = integrate_tanh_sinh(|y| Complex64::from_polar(g(y), w * y.atanh()), 0.0, 1.0, cfg)?;
    finish(&[r])
}

/// `P(t)` straight from its definition on `[0, 1]`. Slower and less robust for
/// large `|t|`; kept as an independent second route.
pub fn p_aux_direct(t: f64, cfg: &QuadConfig) -> Result<SpecialValue> {
    // (√y - 1)/(1 - y²) without cancellation
    unit_interval(|y| -1.0 / ((1.0 + y.sqrt()) * (1.0 + y)), t, cfg)
}

/// `Q(t)` straight from its definition on `[0, 1]`.
pub fn q_aux_direct(t: f64, cfg: &QuadConfig) -> Result<SpecialValue> {
    unit_interval(|y| {
        let r = y.sqrt();
        1.0 / (r * (1.0 + r) * (1.0 + y))
    }, t, cfg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{PI, SQRT_2};

    fn cfg() -> QuadConfig {
        QuadConfig::default()
    }

    #[test]
    fn mellin_values_at_zero() {
        let u = u_aux(0.0, &cfg()).unwrap();
        let v = v_aux(0.0, &cfg()).unwrap();
        assert!((u.value.re - PI / SQRT_2).abs() < 1e-10, "{}", u.value);
        assert!((v.value.re - PI / SQRT_2).abs() < 1e-10, "{}", v.value);
    }

    #[test]
    fn reflection_symmetry() {
        for &t in &[-3.0, -1.0, 1.0, 3.0] {
            let u = u_aux(t, &cfg()).unwrap().value.re;
            let v = v_aux(-t, &cfg()).unwrap().value.re;
            let d = (u - (PI * t / 8.0).exp() * v).abs();
            assert!(d <= 1e-10 * u, "t={t}: {d:e}");
        }
    }

    #[test]
    fn positive_and_increasing() {
        let mut prev = (0.0, 0.0);
        for k in -4..=4 {
            let t = k as f64;
            let u = u_aux(t, &cfg()).unwrap().value.re;
            let v = v_aux(t, &cfg()).unwrap().value.re;
            assert!(u > 0.0 && v > 0.0);
            if k > -4 {
                assert!(u > prev.0 && v > prev.1);
            }
            prev = (u, v);
        }
    }

    #[test]
    fn two_routes_for_p_and_q() {
        for &t in &[0.0, 2.0, -1.0] {
            let p = p_aux(t, &cfg()).unwrap().value;
            let pd = p_aux_direct(t, &cfg()).unwrap().value;
            let q = q_aux(t, &cfg()).unwrap().value;
            let qd = q_aux_direct(t, &cfg()).unwrap().value;
            assert!((p - pd).norm() < 1e-9, "P({t}) {p} vs {pd}");
            assert!((q - qd).norm() < 1e-9, "Q({t}) {q} vs {qd}");
        }
    }

    #[test]
    fn real_at_zero() {
        let p = p_aux(0.0, &cfg()).unwrap().value;
        let q = q_aux(0.0, &cfg()).unwrap().value;
        assert_eq!(p.im, 0.0);
        assert_eq!(q.im, 0.0);
        assert!(p.re < 0.0 && q.re > 0.0);
    }

    #[test]
    fn kind_round_trip() {
        for k in [AuxKind::U, AuxKind::V, AuxKind::P, AuxKind::Q] {
            assert_eq!(k.to_string().parse::<AuxKind>().unwrap(), k);
        }
        assert!("W".parse::<AuxKind>().is_err());
    }
}
