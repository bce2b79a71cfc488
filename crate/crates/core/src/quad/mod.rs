//! One-dimensional quadrature kernels.
//!
//! Every integrand is complex-valued (`Fn(f64) -> Complex64`); real integrands
//! simply return a zero imaginary part. The kernels are deterministic: the
//! abscissas and the summation order depend only on the inputs.
//!
//! * [`integrate_adaptive`]: globally adaptive Gauss–Kronrod 15(7).
//! * [`integrate_tanh_sinh`]: double-exponential rule for integrable endpoint
//!   singularities.
//! * [`integrate_decaying_tail`]: semi-infinite range by interval doubling.
//! * [`integrate_oscillatory_decaying`]: `∫₀^∞ g(u) e^{iωu} du`, period by
//!   period.

mod gauss_kronrod;
mod tails;
mod tanh_sinh;

pub use gauss_kronrod::integrate_adaptive;
pub use tails::{integrate_decaying_tail, integrate_oscillatory_decaying};
pub use tanh_sinh::integrate_tanh_sinh;

use crate::error::{Error, Result};
use num_complex::Complex64;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadConfig {
    pub rel_tol: f64,
    pub abs_tol: f64,
    /// Panel budget for adaptive bisection and for tail doubling.
    pub max_subdivisions: usize,
    /// Deepest tanh–sinh refinement level (step `2^-level`).
    pub max_level: usize,
    /// Cap on the number of periods summed by the oscillatory kernel.
    pub max_periods: usize,
}

impl Default for QuadConfig {
    fn default() -> Self {
        Self {
            rel_tol: 1e-10,
            abs_tol: 1e-15,
            max_subdivisions: 4000,
            max_level: 10,
            max_periods: 400,
        }
    }
}

impl QuadConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0) {
            return Err(Error::InvalidConfig(format!("rel_tol must be > 0, got {}", self.rel_tol)));
        }
        if !(self.abs_tol >= 0.0) {
            return Err(Error::InvalidConfig(format!("abs_tol must be >= 0, got {}", self.abs_tol)));
        }
        if self.max_subdivisions < 1 {
            return Err(Error::InvalidConfig("max_subdivisions must be >= 1".into()));
        }
        if self.max_level < 3 {
            return Err(Error::InvalidConfig("max_level must be >= 3".into()));
        }
        if self.max_periods < 2 {
            return Err(Error::InvalidConfig("max_periods must be >= 2".into()));
        }
        Ok(())
    }

    /// Target absolute error for an integral of magnitude `magnitude`.
    pub fn tolerance(&self, magnitude: f64) -> f64 {
        self.abs_tol.max(self.rel_tol * magnitude)
    }

    pub fn with_rel_tol(mut self, rel_tol: f64) -> Self {
        self.rel_tol = rel_tol;
        self
    }

    pub fn with_abs_tol(mut self, abs_tol: f64) -> Self {
        self.abs_tol = abs_tol;
        self
    }

    /// Scale both tolerances by `factor`.
    pub fn scaled(mut self, factor: f64) -> Self {
        self.rel_tol *= factor;
        self.abs_tol *= factor;
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: Complex64,
    pub abs_error_estimate: f64,
    pub n_evals: usize,
    pub converged: bool,
}

impl QuadResult {
    /// Turn a non-converged result into [`Error::NonConvergence`].
    pub fn require_converged(self) -> Result<Self> {
        if self.converged {
            Ok(self)
        } else {
            Err(Error::NonConvergence {
                estimate: self.value,
                abs_error: self.abs_error_estimate,
            })
        }
    }

    /// Sum of independent pieces; errors add, convergence requires every piece.
    pub fn sum<I: IntoIterator<Item = QuadResult>>(parts: I) -> Option<QuadResult> {
        parts.into_iter().reduce(|acc, p| QuadResult {
            value: acc.value + p.value,
            abs_error_estimate: acc.abs_error_estimate + p.abs_error_estimate,
            n_evals: acc.n_evals + p.n_evals,
            converged: acc.converged && p.converged,
        })
    }

    pub fn scale(self, factor: Complex64) -> QuadResult {
        QuadResult {
            value: self.value * factor,
            abs_error_estimate: self.abs_error_estimate * factor.norm(),
            ..self
        }
    }
}

fn check_interval(a: f64, b: f64) -> Result<()> {
    if a.is_finite() && b.is_finite() && a < b {
        Ok(())
    } else {
        Err(Error::InvalidInterval { a, b })
    }
}

/// Evaluate `f`, rejecting NaN and infinities.
#[inline]
fn eval<F: Fn(f64) -> Complex64>(f: &F, x: f64) -> Result<Complex64> {
    let v = f(x);
    if v.re.is_finite() && v.im.is_finite() {
        Ok(v)
    } else {
        Err(Error::NonFiniteIntegrand { x })
    }
}
