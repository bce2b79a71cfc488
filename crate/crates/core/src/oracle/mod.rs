//! Brute-force evaluation of the ordered integrals at `n ≤ 2`.
//!
//! Each integrand is damped by `e^{-εΣx²}`, integrated directly, and the
//! damping is removed by polynomial extrapolation in `ε`. Nothing here uses
//! the ODE solvers, so agreement with the hierarchy is a genuine cross-check.

mod collocation;
mod extrapolate;
mod nested;

pub use extrapolate::{cutoff, extrapolants, neville_at_zero, DampingSchedule, Extrapolated};

use crate::error::{Error, Result};
use crate::quad::QuadConfig;
use crate::specfun::{fresnel, FRESNEL_LIMIT};
use extrapolate::extrapolate;
use nested::{damped_double, Inner};
use rayon::prelude::*;

// Largest |x| accepted by `direct_tau1`.
const TAU1_RANGE: f64 = 10.0;
// Panel refinements tried by the collocation route before giving up.
const MAX_REFINEMENTS: usize = 4;

/// `∬_{x₂<x₁} cos(x₁²-x₂²) e^{-ε(x₁²+x₂²)}`, with an error bound.
pub fn damped_i1(eps: f64, cfg: &QuadConfig) -> Result<(f64, f64)> {
    check_eps(eps)?;
    damped_double(eps, 0.0, f64::INFINITY, Inner::Ordered, cfg)
}

/// Same integrand over the whole plane.
pub fn damped_full_plane(eps: f64, cfg: &QuadConfig) -> Result<(f64, f64)> {
    check_eps(eps)?;
    damped_double(eps, 0.0, f64::INFINITY, Inner::Full, cfg)
}

/// Damped `τ₁(x)`: the ordered integral with `x₁ < x`.
///
/// For `x < 0` the Gaussian is centred on `x`, so only the far left is
/// damped; centred on `0` it would also suppress the `1/(8x²)` that makes
/// up most of the value.
pub fn damped_tau1(x: f64, eps: f64, cfg: &QuadConfig) -> Result<(f64, f64)> {
    check_eps(eps)?;
    damped_double(eps, x.min(0.0), x, Inner::Ordered, cfg)
}

/// Damped four-fold ordered integral, by cumulative panel quadrature.
///
/// The panels are refined until two successive grids agree to the
/// tolerance of `cfg`.
pub fn damped_i2(eps: f64, cfg: &QuadConfig) -> Result<(f64, f64)> {
    check_eps(eps)?;
    let x = cutoff(eps);
    let eval = |refine: f64| {
        let plus = collocation::ordered_chain(eps, x, &[-1.0, 1.0, -1.0, 1.0], refine);
        let minus = collocation::ordered_chain(eps, x, &[1.0, -1.0, -1.0, 1.0], refine);
        0.5 * (plus.re + minus.re)
    };
    let mut refine = 1.0;
    let mut prev = eval(refine);
    for _ in 0..MAX_REFINEMENTS {
        refine *= 0.5;
        let next = eval(refine);
        let err = (next - prev).abs();
        if err <= cfg.tolerance(next.abs()) {
            return Ok((next, err));
        }
        prev = next;
    }
    Err(Error::NonConvergence {
        estimate: prev.into(),
        abs_error: f64::NAN,
    })
}

fn check_eps(eps: f64) -> Result<()> {
    if eps > 0.0 && eps.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidConfig(format!("damping must be positive and finite, got {eps}")))
    }
}

fn run<F>(sched: &DampingSchedule, f: F) -> Result<Extrapolated>
where
    F: Fn(f64) -> Result<(f64, f64)> + Sync,
{
    sched.validate()?;
    let parts: Vec<(f64, f64)> = sched.eps_list.par_iter().map(|&e| f(e)).collect::<Result<_>>()?;
    let noise = parts.iter().map(|p| p.1).fold(0.0, f64::max);
    extrapolate(sched, parts.into_iter().map(|p| p.0).collect(), noise)
}

/// `I₁` with the damping extrapolated away.
pub fn direct_i1(sched: &DampingSchedule, cfg: &QuadConfig) -> Result<Extrapolated> {
    run(sched, |e| damped_i1(e, cfg))
}

/// `τ₁(x)` for `|x| ≤ 10`.
pub fn direct_tau1(x: f64, sched: &DampingSchedule, cfg: &QuadConfig) -> Result<Extrapolated> {
    if !(x.abs() <= TAU1_RANGE) {
        return Err(Error::InvalidConfig(format!("|x| must be <= {TAU1_RANGE}, got {x}")));
    }
    run(sched, |e| damped_tau1(x, e, cfg))
}

/// `I₂` with the damping extrapolated away.
pub fn direct_i2(sched: &DampingSchedule, cfg: &QuadConfig) -> Result<Extrapolated> {
    run(sched, |e| damped_i2(e, cfg))
}

/// Leading estimate of `I₁ - τ₁(x)` for large positive `x`:
/// `√(π/2) [(√(π/8) - C(x)) + (√(π/8) - S(x))]`.
pub fn tau1_tail_estimate(x: f64) -> f64 {
    let f = fresnel(x);
    (std::f64::consts::PI / 2.0).sqrt() * (2.0 * FRESNEL_LIMIT - f.c - f.s)
}
