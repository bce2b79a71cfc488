use super::generating::GeneratingSolution;
use super::{IdentityResult, SolveConfig};
use crate::error::Result;
use crate::quad::{integrate_decaying_tail, integrate_tanh_sinh, QuadConfig};
use crate::specfun::{expm1_ratio, p_aux, q_aux, sqrt_i, u_aux, v_aux};
use num_complex::Complex64;
use std::f64::consts::PI;

const I: Complex64 = Complex64::new(0.0, 1.0);
// Below this |t| the closed forms are replaced by their limits.
const SMALL_T: f64 = 1e-6;

/// `∂U/∂t` or `∂V/∂t` at `t = 0`: `∫₀^∞ x^p/(1+x²) · arctan(x)/4 dx`.
fn t_derivative_at_zero(half_power: f64, cfg: &QuadConfig) -> Result<f64> {
    let f = |x: f64| Complex64::new(x.powf(half_power) / (1.0 + x * x) * 0.25 * x.atan(), 0.0);
    let head = integrate_tanh_sinh(f, 0.0, 1.0, cfg)?.require_converged()?;
    let tail = integrate_decaying_tail(f, 1.0, &cfg.with_rel_tol(cfg.rel_tol * 1e-2))?.require_converged()?;
    Ok(head.value.re + tail.value.re)
}

/// `P` and `Q` expressed through `U` and `V`:
///
/// `P = -4i/t + √i (U + i e^{πt/8} V)/(e^{πt/4} - 1)`,
/// `Q = -4i/t + √i (e^{πt/8} U + i V)/(e^{πt/4} - 1)`.
///
/// For `|t| < 1e-6` the `t → 0` limits
/// `P(0) = √i (4/π)(U'(0) + iV'(0) - (π/8)U(0))`,
/// `Q(0) = √i (4/π)(U'(0) + iV'(0) - i(π/8)U(0))` are returned.
pub fn pq_from_uv(t: f64, cfg: &QuadConfig) -> Result<(Complex64, Complex64)> {
    let si = sqrt_i();
    if t.abs() < SMALL_T {
        let u0 = u_aux(0.0, cfg)?.value.re;
        let u1 = t_derivative_at_zero(0.5, cfg)?;
        let v1 = t_derivative_at_zero(-0.5, cfg)?;
        let base = Complex64::new(u1, v1);
        let p = si * (4.0 / PI) * (base - PI / 8.0 * u0);
        let q = si * (4.0 / PI) * (base - I * (PI / 8.0 * u0));
        return Ok((p, q));
    }
    let u = u_aux(t, cfg)?.value.re;
    let v = v_aux(t, cfg)?.value.re;
    let e8 = (PI * t / 8.0).exp();
    let denom = (PI * t / 4.0).exp_m1();
    let lead = Complex64::new(0.0, -4.0 / t);
    let p = lead + si * Complex64::new(u, e8 * v) / denom;
    let q = lead + si * Complex64::new(e8 * u, v) / denom;
    Ok((p, q))
}

/// `U = (4√i/t)(e^{πt/8} - 1) + i√i (P - e^{πt/8} Q)` with `P`, `Q` from
/// quadrature.
pub fn pq_intermediate_u(t: f64, cfg: &QuadConfig) -> Result<IdentityResult> {
    let u = u_aux(t, cfg)?.value;
    let p = p_aux(t, cfg)?.value;
    let q = q_aux(t, cfg)?.value;
    let e8 = (PI * t / 8.0).exp();
    let si = sqrt_i();
    let rhs = si * 4.0 * expm1_ratio(PI / 8.0, t) + I * si * (p - q * e8);
    Ok(IdentityResult::new(format!("U_from_PQ(t={t})"), u, rhs, 1e-8))
}

/// `α = 2√π (e^{πt/4}-1) U / (t(U²+V²))` and the same with `V` for `β`.
pub fn alpha_beta_closed(t: f64, u: f64, v: f64) -> (f64, f64) {
    let k = 2.0 * PI.sqrt() * expm1_ratio(PI / 4.0, t) / (u * u + v * v);
    (k * u, k * v)
}

/// The linear system `αU + βV = (2√π/t)(e^{πt/4}-1)`, `αV - βU = 0`, and the
/// explicit quotient forms, with `α`, `β` taken from the solution.
pub fn alpha_beta_checks(sol: &GeneratingSolution, cfg: &SolveConfig) -> Result<Vec<IdentityResult>> {
    let t = sol.t;
    let (alpha, beta) = sol.alpha_beta()?;
    let u = u_aux(t, &cfg.quad)?.value.re;
    let v = v_aux(t, &cfg.quad)?.value.re;
    let (ac, bc) = alpha_beta_closed(t, u, v);
    Ok(vec![
        IdentityResult::real(
            format!("alpha*U+beta*V(t={t})"),
            alpha * u + beta * v,
            2.0 * PI.sqrt() * expm1_ratio(PI / 4.0, t),
            1e-6,
        ),
        IdentityResult::real(format!("alpha*V-beta*U(t={t})"), alpha * v - beta * u, 0.0, 1e-6),
        IdentityResult::real(format!("alpha_closed(t={t})"), alpha, ac, 1e-6),
        IdentityResult::real(format!("beta_closed(t={t})"), beta, bc, 1e-6),
    ])
}

/// `1 = (2√i/√π)(α - iβ) - (i√i t/(2√π))(αP - iβQ)` with `P`, `Q` from
/// direct quadrature.
pub fn bracket_residual(sol: &GeneratingSolution, cfg: &SolveConfig) -> Result<IdentityResult> {
    let t = sol.t;
    let (alpha, beta) = sol.alpha_beta()?;
    let p = p_aux(t, &cfg.quad)?.value;
    let q = q_aux(t, &cfg.quad)?.value;
    let si = sqrt_i();
    let sp = PI.sqrt();
    let rhs = 2.0 * si / sp * Complex64::new(alpha, -beta)
        - I * si * t / (2.0 * sp) * (alpha * p - I * beta * q);
    Ok(IdentityResult::new(
        format!("bracket_residual(t={t})"),
        Complex64::new(1.0, 0.0),
        rhs,
        1e-6,
    ))
}

/// `T(0,t) e^{πt/8} = 1 + t/(2√π) (αU + βV)`.
pub fn t0_relation(sol: &GeneratingSolution, cfg: &SolveConfig) -> Result<IdentityResult> {
    let t = sol.t;
    let (alpha, beta) = sol.alpha_beta()?;
    let u = u_aux(t, &cfg.quad)?.value.re;
    let v = v_aux(t, &cfg.quad)?.value.re;
    let lhs = sol.t_at_zero()? * (PI * t / 8.0).exp();
    let rhs = 1.0 + t / (2.0 * PI.sqrt()) * (alpha * u + beta * v);
    Ok(IdentityResult::real(format!("T_zero_vs_alpha_beta(t={t})"), lhs, rhs, 1e-6))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::FRESNEL_LIMIT;
    use std::f64::consts::SQRT_2;

    #[test]
    fn closed_alpha_beta_at_zero() {
        let w = PI / SQRT_2;
        let (a, b) = alpha_beta_closed(0.0, w, w);
        assert!((a - FRESNEL_LIMIT).abs() < 1e-15 && (b - FRESNEL_LIMIT).abs() < 1e-15);
    }

    #[test]
    fn pq_agree_with_quadrature() {
        let cfg = QuadConfig::default();
        for &t in &[1.0, -3.0] {
            let (p, q) = pq_from_uv(t, &cfg).unwrap();
            let pd = p_aux(t, &cfg).unwrap().value;
            let qd = q_aux(t, &cfg).unwrap().value;
            assert!((p - pd).norm() < 1e-8, "P({t}): {p} vs {pd}");
            assert!((q - qd).norm() < 1e-8, "Q({t}): {q} vs {qd}");
        }
    }

    #[test]
    fn small_t_limit_is_continuous() {
        let cfg = QuadConfig::default();
        let (p0, q0) = pq_from_uv(0.0, &cfg).unwrap();
        let (p1, q1) = pq_from_uv(1e-3, &cfg).unwrap();
        assert!((p0 - p1).norm() < 1e-2 && (q0 - q1).norm() < 1e-2);
        assert!((p0 - p_aux(0.0, &cfg).unwrap().value).norm() < 1e-8);
        assert!((q0 - q_aux(0.0, &cfg).unwrap().value).norm() < 1e-8);
    }

    #[test]
    fn intermediate_u_relation() {
        assert!(pq_intermediate_u(1.5, &QuadConfig::default()).unwrap().pass);
    }
}
