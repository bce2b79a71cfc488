//! The generating function `T(x, t)`, the τ-hierarchy and the identities
//! that connect them to the auxiliary functions.

mod asymptotic;
mod generating;
mod hierarchy;
mod relations;
mod series;
mod transforms;

pub use asymptotic::{left_coefficients, left_triple, AsymptoticCoefficients, AsymptoticTriple};
pub use generating::{
    boundary_conditions, ode4_check, ode4_residual, solve_t, t_infinity, t_infinity_from_t_zero,
    t_zero, Derivatives, GeneratingSolution, TSystem,
};
pub use hierarchy::{
    closed_form, kn_hierarchy, solve_hierarchy, solve_tau_hierarchy, HierarchyResult,
    HierarchySolution,
};
pub use relations::{
    alpha_beta_checks, alpha_beta_closed, bracket_residual, pq_from_uv, pq_intermediate_u, t0_relation,
};
pub use series::{series_extract, symmetric_grid, SeriesFit};
pub use transforms::{
    even_transform_check, truncated_transform_check, truncated_transform_closed,
    truncated_transform_limit,
};

use crate::error::{Error, Result};
use crate::ode::OdeConfig;
use crate::quad::QuadConfig;
use num_complex::Complex64;

/// `(T, A, B)` at one abscissa: `A = ∫_{-∞}^x cos(y²) T dy`, `B` likewise
/// with `sin`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TSystemState {
    pub t: f64,
    pub a: f64,
    pub b: f64,
}

impl TSystemState {
    pub fn from_slice(y: &[f64]) -> Self {
        Self {
            t: y[0],
            a: y[1],
            b: y[2],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolveConfig {
    pub x_min: f64,
    pub x_max: f64,
    pub ode: OdeConfig,
    pub quad: QuadConfig,
    /// Bound on the truncation of the asymptotic data at the window edges.
    pub init_tol: f64,
}

impl Default for SolveConfig {
    fn default() -> Self {
        Self {
            x_min: -40.0,
            x_max: 40.0,
            ode: OdeConfig::default(),
            quad: QuadConfig::default(),
            init_tol: 1e-12,
        }
    }
}

impl SolveConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.x_min <= -10.0) {
            return Err(Error::InvalidConfig(format!("x_min must be <= -10, got {}", self.x_min)));
        }
        if !(self.x_max >= 10.0) || !self.x_max.is_finite() || !self.x_min.is_finite() {
            return Err(Error::InvalidConfig(format!("x_max must be finite and >= 10, got {}", self.x_max)));
        }
        if !(self.init_tol > 0.0) {
            return Err(Error::InvalidConfig(format!("init_tol must be > 0, got {}", self.init_tol)));
        }
        self.ode.validate()?;
        self.quad.validate()
    }
}

/// One named identity with both sides and the verdict.
#[derive(Debug, Clone, PartialEq)]
pub struct IdentityResult {
    pub name: String,
    pub lhs: Complex64,
    pub rhs: Complex64,
    pub abs_diff: f64,
    pub tol: f64,
    pub pass: bool,
}

impl IdentityResult {
    pub fn new(name: impl Into<String>, lhs: Complex64, rhs: Complex64, tol: f64) -> Self {
        let abs_diff = (lhs - rhs).norm();
        Self {
            name: name.into(),
            lhs,
            rhs,
            abs_diff,
            tol,
            pass: abs_diff <= tol,
        }
    }

    pub fn real(name: impl Into<String>, lhs: f64, rhs: f64, tol: f64) -> Self {
        Self::new(name, Complex64::new(lhs, 0.0), Complex64::new(rhs, 0.0), tol)
    }

    /// Same comparison with the tolerance divided by `factor`.
    pub fn rescaled(&self, factor: f64) -> Self {
        let tol = self.tol / factor;
        Self {
            tol,
            pass: self.abs_diff <= tol,
            ..self.clone()
        }
    }
}
