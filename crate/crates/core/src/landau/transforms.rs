use super::generating::GeneratingSolution;
use super::{IdentityResult, SolveConfig};
use crate::error::{Error, Result};
use crate::quad::{integrate_adaptive, integrate_tanh_sinh};
use num_complex::Complex64;
use std::f64::consts::{FRAC_PI_2, PI};

fn check_s(s: f64) -> Result<()> {
    if s > 0.0 && s.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidConfig(format!("s must be positive and finite, got {s}")))
    }
}

/// `√s ∫_lo^hi T(x) e^{-sx²} dx` over the dense output.
fn windowed(sol: &GeneratingSolution, s: f64, lo: f64, hi: f64, cfg: &SolveConfig) -> Result<f64> {
    let r = integrate_adaptive(
        |x| {
            let t = sol.state(x).map(|st| st.t).unwrap_or(f64::NAN);
            Complex64::new(t * (-s * x * x).exp(), 0.0)
        },
        lo,
        hi,
        &cfg.quad,
    )?
    .require_converged()?;
    Ok(s.sqrt() * r.value.re)
}

/// `√s ∫_{|x|>X} e^{-sx²} dx` on one side.
fn gaussian_tail(s: f64, big_x: f64) -> f64 {
    0.5 * PI.sqrt() * libm::erfc(s.sqrt() * big_x)
}

/// `√s ∫ T(x,t) e^{-sx²} dx = √π T(0,t) e^{(t/4) arccot s}`.
///
/// Outside the window `T` is replaced by its limits `1` and `T(∞)`.
pub fn even_transform_check(sol: &GeneratingSolution, s: f64, cfg: &SolveConfig) -> Result<IdentityResult> {
    check_s(s)?;
    let (lo, hi) = (sol.trajectory.x_first(), sol.trajectory.x_last());
    let lhs = gaussian_tail(s, -lo) + windowed(sol, s, lo, hi, cfg)? + sol.t_infinity()? * gaussian_tail(s, hi);
    let arccot = FRAC_PI_2 - s.atan();
    let rhs = PI.sqrt() * sol.t_at_zero()? * (0.25 * sol.t * arccot).exp();
    Ok(IdentityResult::real(format!("even_transform(t={},s={s})", sol.t), lhs, rhs, 1e-5))
}

/// Right-hand side of the truncated transform:
/// `(√π/2) e^{-(t/4)arctan s} [1 + t/(2√π) ∫₀ˢ r^{-1/2}(rα+β)/(1+r²) e^{(t/4)arctan r} dr]`.
pub fn truncated_transform_closed(t: f64, s: f64, alpha: f64, beta: f64, cfg: &SolveConfig) -> Result<f64> {
    check_s(s)?;
    let w = 0.25 * t;
    let inner = integrate_tanh_sinh(
        |r| Complex64::new((r * alpha + beta) / (r.sqrt() * (1.0 + r * r)) * (w * r.atan()).exp(), 0.0),
        0.0,
        s,
        &cfg.quad,
    )?
    .require_converged()?;
    Ok(0.5 * PI.sqrt() * (-w * s.atan()).exp() * (1.0 + t / (2.0 * PI.sqrt()) * inner.value.re))
}

/// `√s ∫_{-∞}^0 T(x,t) e^{-sx²} dx` against its closed solution in `s`.
pub fn truncated_transform_check(sol: &GeneratingSolution, s: f64, cfg: &SolveConfig) -> Result<IdentityResult> {
    check_s(s)?;
    let lo = sol.trajectory.x_first();
    let lhs = gaussian_tail(s, -lo) + windowed(sol, s, lo, 0.0, cfg)?;
    let (alpha, beta) = sol.alpha_beta()?;
    let rhs = truncated_transform_closed(sol.t, s, alpha, beta, cfg)?;
    Ok(IdentityResult::real(format!("truncated_transform(t={},s={s})", sol.t), lhs, rhs, 1e-5))
}

/// Closed solution at large `s` against its limit `(√π/2) T(0,t)`.
///
/// The integral converges like `s^{-1/2}`, so the tolerance is the size of
/// that remainder.
pub fn truncated_transform_limit(sol: &GeneratingSolution, s: f64, cfg: &SolveConfig) -> Result<IdentityResult> {
    let (alpha, beta) = sol.alpha_beta()?;
    let lhs = truncated_transform_closed(sol.t, s, alpha, beta, cfg)?;
    let rhs = 0.5 * PI.sqrt() * sol.t_at_zero()?;
    let tol = sol.t.abs() * (alpha.abs() + beta.abs()) * (PI * sol.t.abs() / 8.0).exp() / s.sqrt();
    Ok(IdentityResult::real(format!("truncated_transform_limit(t={},s={s})", sol.t), lhs, rhs, tol))
}

#[cfg(test)]
mod tests {
    use super::super::solve_t;
    use super::*;

    #[test]
    fn trivial_at_t_zero() {
        let cfg = SolveConfig::default();
        let sol = solve_t(0.0, &cfg).unwrap();
        let e = even_transform_check(&sol, 0.7, &cfg).unwrap();
        assert!((e.rhs.re - PI.sqrt()).abs() < 1e-15 && e.pass);
        let d = truncated_transform_check(&sol, 0.7, &cfg).unwrap();
        assert!((d.rhs.re - 0.5 * PI.sqrt()).abs() < 1e-15 && d.pass);
    }

    #[test]
    fn t_one() {
        let cfg = SolveConfig::default();
        let sol = solve_t(1.0, &cfg).unwrap();
        let e = even_transform_check(&sol, 1.0, &cfg).unwrap();
        let expected = PI.sqrt() * (PI / 8.0 + PI / 16.0).exp();
        assert!((e.rhs.re - expected).abs() < 1e-6);
        assert!(e.pass, "{e:?}");
        let d = truncated_transform_check(&sol, 1.0, &cfg).unwrap();
        assert!(d.pass, "{d:?}");
        let big = even_transform_check(&sol, 100.0, &cfg).unwrap();
        assert!((big.lhs.re / (PI.sqrt() * sol.t_at_zero().unwrap()) - 1.0).abs() < 0.02);
        assert!(truncated_transform_limit(&sol, 1e4, &cfg).unwrap().pass);
    }

    #[test]
    fn rejects_bad_s() {
        let cfg = SolveConfig::default();
        let sol = solve_t(0.5, &cfg).unwrap();
        assert!(even_transform_check(&sol, 0.0, &cfg).is_err());
        assert!(truncated_transform_check(&sol, -1.0, &cfg).is_err());
    }
}
