use super::asymptotic::{left_triple, require_regime};
use super::{IdentityResult, SolveConfig, TSystemState};
use crate::error::Result;
use crate::ode::{integrate, OdeSystem, Trajectory};
use num_complex::Complex64;
use std::f64::consts::PI;

/// `h_max` tied to the local oscillation of `cos x²`.
pub(crate) fn oscillation_step(h_max: f64, x: f64) -> f64 {
    h_max.min(PI / (4.0 * (1.0 + x.abs())))
}

/// `T' = t(cA + sB)`, `A' = cT`, `B' = sT` with `c = cos x²`, `s = sin x²`.
#[derive(Debug, Clone, Copy)]
pub struct TSystem {
    pub t: f64,
    pub h_max: f64,
}

impl OdeSystem for TSystem {
    fn rhs(&self, x: f64, y: &[f64], dy: &mut [f64]) {
        let (s, c) = (x * x).sin_cos();
        dy[0] = self.t * (c * y[1] + s * y[2]);
        dy[1] = c * y[0];
        dy[2] = s * y[0];
    }

    fn max_step(&self, x: f64) -> f64 {
        oscillation_step(self.h_max, x)
    }
}

/// Solution of the generating system for one value of `t`.
#[derive(Debug, Clone)]
pub struct GeneratingSolution {
    pub t: f64,
    pub trajectory: Trajectory,
    /// Truncation of the asymptotic data used at the two window edges.
    pub seed_truncation: f64,
}

/// Integrate the `(T, A, B)` system across `[x_min, x_max]`, seeded with the
/// asymptotic solution at `x_min`.
pub fn solve_t(t: f64, cfg: &SolveConfig) -> Result<GeneratingSolution> {
    cfg.validate()?;
    let seed = left_triple(t, -cfg.x_min);
    require_regime(cfg.x_min, seed.truncation, cfg.init_tol)?;
    let sys = TSystem {
        t,
        h_max: cfg.ode.h_max,
    };
    let trajectory = integrate(sys, cfg.x_min, &[seed.t, seed.a, seed.b], cfg.x_max, &cfg.ode)?;
    Ok(GeneratingSolution {
        t,
        trajectory,
        seed_truncation: seed.truncation,
    })
}

/// Derivatives of `T` up to fourth order, read off the state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Derivatives {
    pub d1: f64,
    pub d2: f64,
    pub d3: f64,
    pub d4: f64,
}

impl GeneratingSolution {
    pub fn state(&self, x: f64) -> Result<TSystemState> {
        Ok(TSystemState::from_slice(&self.trajectory.eval(x)?))
    }

    pub fn t_at_zero(&self) -> Result<f64> {
        Ok(self.state(0.0)?.t)
    }

    /// `(α, β) = (A(0), B(0))`.
    pub fn alpha_beta(&self) -> Result<(f64, f64)> {
        let s = self.state(0.0)?;
        Ok((s.a, s.b))
    }

    /// `T(+∞)` from the state at `x` and the costate series at `x`.
    pub fn limit_from(&self, x: f64) -> Result<f64> {
        let s = self.state(x)?;
        let co = left_triple(self.t, x);
        Ok(co.t * s.t + self.t * (co.a * s.a + co.b * s.b))
    }

    /// `T(+∞)` read at the right edge of the window.
    pub fn t_infinity(&self) -> Result<f64> {
        self.limit_from(self.trajectory.x_last())
    }

    /// Analytic derivatives from the system:
    /// `T' = tΨ`, `T'' = t(T + 2xΦ)`, `T''' = tT' + 2tΦ - 4x²T'`,
    /// `T'''' = tT'' + 2tΦ' - 8xT' - 4x²T''` with `Ψ = cA + sB`,
    /// `Φ = cB - sA`, `Φ' = -2xΨ`.
    pub fn derivatives(&self, x: f64) -> Result<Derivatives> {
        let st = self.state(x)?;
        let t = self.t;
        let (s, c) = (x * x).sin_cos();
        let psi = c * st.a + s * st.b;
        let phi = c * st.b - s * st.a;
        let dphi = -2.0 * x * psi;
        let d1 = t * psi;
        let d2 = t * (st.t + 2.0 * x * phi);
        let d3 = t * d1 + 2.0 * t * phi - 4.0 * x * x * d1;
        let d4 = t * d2 + 2.0 * t * dphi - 8.0 * x * d1 - 4.0 * x * x * d2;
        Ok(Derivatives { d1, d2, d3, d4 })
    }
}

/// `T(0, t) = e^{πt/8}`.
pub fn t_zero(sol: &GeneratingSolution) -> Result<IdentityResult> {
    let lhs = sol.t_at_zero()?;
    let rhs = (PI * sol.t / 8.0).exp();
    Ok(IdentityResult::real(format!("T_zero(t={})", sol.t), lhs, rhs, 1e-6))
}

/// `T(∞, t) = 2e^{πt/4} - 1`.
pub fn t_infinity(sol: &GeneratingSolution) -> Result<IdentityResult> {
    let lhs = sol.t_infinity()?;
    let rhs = 2.0 * (PI * sol.t / 4.0).exp() - 1.0;
    Ok(IdentityResult::real(format!("T_infinity(t={})", sol.t), lhs, rhs, 1e-5))
}

/// `T(∞, t) = 2T(0, t)e^{πt/8} - 1`, both sides from the numerical solution.
pub fn t_infinity_from_t_zero(sol: &GeneratingSolution) -> Result<IdentityResult> {
    let lhs = sol.t_infinity()?;
    let rhs = 2.0 * sol.t_at_zero()? * (PI * sol.t / 8.0).exp() - 1.0;
    Ok(IdentityResult::real(format!("T_infinity_vs_T_zero(t={})", sol.t), lhs, rhs, 1e-5))
}

/// Largest `|T'''' - [(t-4x²)T'' - 12xT']|` over `n` points of `[lo, hi]`,
/// divided by the largest `|T''|` seen (or 1 when `T''` vanishes).
pub fn ode4_residual(sol: &GeneratingSolution, lo: f64, hi: f64, n: usize) -> Result<f64> {
    let t = sol.t;
    let mut worst: f64 = 0.0;
    let mut scale: f64 = 0.0;
    for i in 0..n {
        let x = lo + (hi - lo) * i as f64 / (n - 1).max(1) as f64;
        let d = sol.derivatives(x)?;
        let r = d.d4 - ((t - 4.0 * x * x) * d.d2 - 12.0 * x * d.d1);
        worst = worst.max(r.abs());
        scale = scale.max(d.d2.abs());
    }
    Ok(if scale > 0.0 { worst / scale } else { worst })
}

/// Fourth-order central difference of `g` at `x` with step `h`.
fn central_difference<G: Fn(f64) -> Result<f64>>(g: G, x: f64, h: f64) -> Result<f64> {
    Ok((g(x - 2.0 * h)? - 8.0 * g(x - h)? + 8.0 * g(x + h)? - g(x + 2.0 * h)?) / (12.0 * h))
}

/// Boundary relations at `x = 0`:
/// `T'(0) = tα`, `T''(0) = tT(0)`, `T'''(0) = t²α + 2tβ`.
///
/// Each left-hand side is a finite difference of the next-lower derivative
/// along the dense output, so it does not reuse the closed expression.
pub fn boundary_conditions(sol: &GeneratingSolution) -> Result<Vec<IdentityResult>> {
    const H: f64 = 0.005;
    let t = sol.t;
    let (alpha, beta) = sol.alpha_beta()?;
    let t0 = sol.t_at_zero()?;
    let d1 = central_difference(|x| Ok(sol.state(x)?.t), 0.0, H)?;
    let d2 = central_difference(|x| Ok(sol.derivatives(x)?.d1), 0.0, H)?;
    let d3 = central_difference(|x| Ok(sol.derivatives(x)?.d2), 0.0, H)?;
    Ok(vec![
        IdentityResult::real(format!("dT(0)=t*alpha(t={t})"), d1, t * alpha, 1e-6),
        IdentityResult::real(format!("d2T(0)=t*T(0)(t={t})"), d2, t * t0, 1e-6),
        IdentityResult::real(format!("d3T(0)=t^2*alpha+2t*beta(t={t})"), d3, t * t * alpha + 2.0 * t * beta, 1e-6),
    ])
}

/// Value of the last-stage residual as an [`IdentityResult`].
pub fn ode4_check(sol: &GeneratingSolution) -> Result<IdentityResult> {
    let r = ode4_residual(sol, -5.0, 5.0, 401)?;
    Ok(IdentityResult {
        name: format!("ode4_residual(t={})", sol.t),
        lhs: Complex64::new(r, 0.0),
        rhs: Complex64::new(0.0, 0.0),
        abs_diff: r,
        tol: 1e-7,
        pass: r <= 1e-7,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::FRESNEL_LIMIT;

    #[test]
    fn trivial_at_t_zero() {
        let sol = solve_t(0.0, &SolveConfig::default()).unwrap();
        for &x in &[-30.0, -1.0, 0.0, 2.5, 40.0] {
            assert_eq!(sol.state(x).unwrap().t, 1.0);
        }
        let (a, b) = sol.alpha_beta().unwrap();
        assert!((a - FRESNEL_LIMIT).abs() < 1e-8 && (b - FRESNEL_LIMIT).abs() < 1e-8);
        assert_eq!(ode4_residual(&sol, -5.0, 5.0, 50).unwrap(), 0.0);
    }

    #[test]
    fn closed_forms_at_t_one() {
        let sol = solve_t(1.0, &SolveConfig::default()).unwrap();
        assert!(t_zero(&sol).unwrap().pass);
        assert!(t_infinity(&sol).unwrap().pass);
        assert!(t_infinity_from_t_zero(&sol).unwrap().pass);
        assert!(ode4_check(&sol).unwrap().pass);
        for r in boundary_conditions(&sol).unwrap() {
            assert!(r.pass, "{r:?}");
        }
    }

    #[test]
    fn limit_is_independent_of_read_point() {
        let sol = solve_t(-1.0, &SolveConfig::default()).unwrap();
        let a = sol.limit_from(20.0).unwrap();
        let b = sol.limit_from(40.0).unwrap();
        assert!((a - b).abs() < 1e-8, "{a} {b}");
    }
}
