use super::{integrate_adaptive, integrate_tanh_sinh, QuadConfig, QuadResult};
use crate::error::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::PI;

// Longest single panel used by the oscillatory kernel when ω is small.
const MAX_CHUNK: f64 = 8.0;

/// `∫_a^∞ f` for an eventually monotone, absolutely integrable `f`.
///
/// Panels `[a, a+w], [a+w, a+3w], ...` double in width (`w = max(|a|, 1)`).
/// The first panel uses tanh–sinh so an integrable singularity at `a` is
/// allowed; the rest use adaptive Gauss–Kronrod. Summation stops once the
/// latest panel, plus the geometric extrapolation of the panels still to
/// come, falls below a quarter of the tolerance. The error
/// estimate includes a geometric estimate of the neglected remainder.
pub fn integrate_decaying_tail<F>(f: F, a: f64, cfg: &QuadConfig) -> Result<QuadResult>
where
    F: Fn(f64) -> Complex64,
{
    cfg.validate()?;
    if !a.is_finite() {
        return Err(Error::InvalidInterval { a, b: f64::INFINITY });
    }
    let mut width = a.abs().max(1.0);
    let mut lo = a;
    let mut sum = Complex64::new(0.0, 0.0);
    let mut panel_err = 0.0;
    let mut n_evals = 0;
    let mut all_converged = true;
    let mut prev_mag = f64::NAN;

    for panel in 0..cfg.max_subdivisions {
        let hi = lo + width;
        let local = cfg.with_abs_tol(cfg.abs_tol.max(0.125 * cfg.rel_tol * sum.norm()));
        let r = if panel == 0 {
            integrate_tanh_sinh(&f, lo, hi, &local)?
        } else {
            integrate_adaptive(&f, lo, hi, &local)?
        };
        sum += r.value;
        panel_err += r.abs_error_estimate;
        n_evals += r.n_evals;
        all_converged &= r.converged;

        let mag = r.value.norm();
        let ratio = if prev_mag > 0.0 { (mag / prev_mag).min(0.9) } else { 0.0 };
        let remainder = mag * ratio / (1.0 - ratio);
        // Slowly decaying (algebraic) tails also need the neglected
        // remainder under the threshold, not just the last panel.
        if panel >= 1 && mag + remainder < 0.25 * cfg.tolerance(sum.norm()) {
            let abs_error_estimate = panel_err + remainder;
            return Ok(QuadResult {
                value: sum,
                abs_error_estimate,
                n_evals,
                converged: all_converged && abs_error_estimate <= cfg.tolerance(sum.norm()),
            });
        }
        prev_mag = mag;
        lo = hi;
        width *= 2.0;
        if !lo.is_finite() {
            break;
        }
    }

    Ok(QuadResult {
        value: sum,
        abs_error_estimate: panel_err + prev_mag,
        n_evals,
        converged: false,
    })
}

/// `∫₀^∞ g(u) e^{iωu} du` for an exponentially decaying envelope `g`.
///
/// The half-line is cut at multiples of the period `2π/|ω|` (periods longer
/// than a fixed chunk length are split evenly) and each piece is integrated
/// with adaptive Gauss–Kronrod. Summation stops after two consecutive pieces
/// fall below tolerance. `ω = 0` reduces to [`integrate_decaying_tail`].
pub fn integrate_oscillatory_decaying<G>(g: G, omega: f64, cfg: &QuadConfig) -> Result<QuadResult>
where
    G: Fn(f64) -> Complex64,
{
    cfg.validate()?;
    if !omega.is_finite() {
        return Err(Error::InvalidConfig(format!("omega must be finite, got {omega}")));
    }
    if omega == 0.0 {
        return integrate_decaying_tail(g, 0.0, cfg);
    }
    let period = 2.0 * PI / omega.abs();
    let pieces_per_period = (period / MAX_CHUNK).ceil().max(1.0);
    let chunk = period / pieces_per_period;
    let max_chunks = cfg.max_periods.saturating_mul(pieces_per_period as usize);
    let integrand = |u: f64| g(u) * Complex64::from_polar(1.0, omega * u);

    let mut sum = Complex64::new(0.0, 0.0);
    let mut err = 0.0;
    let mut n_evals = 0;
    let mut all_converged = true;
    let mut quiet = 0;

    for k in 0..max_chunks {
        let lo = chunk * k as f64;
        let hi = chunk * (k + 1) as f64;
        let local = cfg.with_abs_tol(cfg.abs_tol.max(0.125 * cfg.rel_tol * sum.norm()));
        let r = integrate_adaptive(&integrand, lo, hi, &local)?;
        sum += r.value;
        err += r.abs_error_estimate;
        n_evals += r.n_evals;
        all_converged &= r.converged;

        if r.value.norm() < cfg.tolerance(sum.norm()) {
            quiet += 1;
        } else {
            quiet = 0;
        }
        if quiet >= 2 {
            return Ok(QuadResult {
                value: sum,
                abs_error_estimate: err,
                n_evals,
                converged: all_converged && err <= cfg.tolerance(sum.norm()),
            });
        }
    }

    Ok(QuadResult {
        value: sum,
        abs_error_estimate: err,
        n_evals,
        converged: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::SQRT_2;

    fn re(f: impl Fn(f64) -> f64) -> impl Fn(f64) -> Complex64 {
        move |x| Complex64::new(f(x), 0.0)
    }

    #[test]
    fn exponential_tail() {
        let r = integrate_decaying_tail(re(|x| (-x).exp()), 0.0, &QuadConfig::default()).unwrap();
        assert!(r.converged);
        assert!((r.value.re - 1.0).abs() < 1e-12);
    }

    #[test]
    fn algebraic_tail_from_one() {
        let r = integrate_decaying_tail(re(|x| x.powf(-1.5)), 1.0, &QuadConfig::default()).unwrap();
        assert!(r.converged);
        assert!((r.value.re - 2.0).abs() < 1e-9, "{}", r.value.re);
    }

    #[test]
    fn mellin_value_with_singular_first_panel() {
        // ∫₀^∞ x^{s-1}/(1+x²) dx = (π/2) csc(πs/2); s = 3/2 gives π/√2.
        let r = integrate_decaying_tail(
            re(|x| x.sqrt() / (1.0 + x * x)),
            0.0,
            &QuadConfig::default(),
        )
        .unwrap();
        assert!(r.converged);
        assert!((r.value.re - PI / SQRT_2).abs() < 1e-9);
    }

    #[test]
    fn damped_phase() {
        let r = integrate_oscillatory_decaying(re(|u| (-u).exp()), 1.0, &QuadConfig::default())
            .unwrap();
        assert!(r.converged);
        assert!((r.value - Complex64::new(0.5, 0.5)).norm() < 1e-12);
    }

    #[test]
    fn zero_frequency_falls_back_to_tail() {
        let r = integrate_oscillatory_decaying(re(|u| (-2.0 * u).exp()), 0.0, &QuadConfig::default())
            .unwrap();
        assert!((r.value.re - 0.5).abs() < 1e-12);
        assert_eq!(r.value.im, 0.0);
    }

    #[test]
    fn tiny_frequency_still_sees_the_envelope() {
        let r = integrate_oscillatory_decaying(re(|u| (-u).exp()), 1e-9, &QuadConfig::default())
            .unwrap();
        let exact = Complex64::new(1.0, 0.0) / Complex64::new(1.0, -1e-9);
        assert!((r.value - exact).norm() < 1e-12);
    }

    #[test]
    fn period_cap_flags_non_convergence() {
        let cfg = QuadConfig {
            max_periods: 2,
            ..QuadConfig::default()
        };
        let r = integrate_oscillatory_decaying(re(|u| 1.0 / (1.0 + u)), 10.0, &cfg).unwrap();
        assert!(!r.converged);
    }
}
