//! Dormand–Prince 5(4) integrator with proportional-integral step control
//! and continuous (dense) output.

mod dopri5;

pub use dopri5::{integrate, integrate_final, Stats};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OdeConfig {
    pub rtol: f64,
    pub atol: f64,
    pub h_init: f64,
    pub h_min: f64,
    pub h_max: f64,
    pub max_steps: usize,
}

impl Default for OdeConfig {
    fn default() -> Self {
        Self {
            rtol: 1e-10,
            atol: 1e-12,
            h_init: 1e-3,
            h_min: 1e-14,
            h_max: 1.0,
            max_steps: 2_000_000,
        }
    }
}

impl OdeConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.rtol > 0.0 && self.atol > 0.0) {
            return Err(Error::InvalidConfig(format!(
                "rtol and atol must be > 0, got {} and {}",
                self.rtol, self.atol
            )));
        }
        if !(self.h_min > 0.0 && self.h_min <= self.h_init && self.h_init <= self.h_max) {
            return Err(Error::InvalidConfig(format!(
                "need 0 < h_min <= h_init <= h_max, got {} {} {}",
                self.h_min, self.h_init, self.h_max
            )));
        }
        if self.max_steps == 0 {
            return Err(Error::InvalidConfig("max_steps must be >= 1".into()));
        }
        Ok(())
    }

    /// Scale both tolerances by `factor`.
    pub fn scaled(mut self, factor: f64) -> Self {
        self.rtol *= factor;
        self.atol *= factor;
        self
    }
}

/// A first-order system `y' = f(x, y)`.
pub trait OdeSystem {
    fn rhs(&self, x: f64, y: &[f64], dy: &mut [f64]);

    /// Largest step the system tolerates at `x`.
    fn max_step(&self, _x: f64) -> f64 {
        f64::INFINITY
    }
}

impl<F: Fn(f64, &[f64], &mut [f64])> OdeSystem for F {
    fn rhs(&self, x: f64, y: &[f64], dy: &mut [f64]) {
        self(x, y, dy)
    }
}

/// Accepted steps of a solution together with their interpolants.
///
/// Each step stores five coefficient vectors; the interpolant is exact at
/// both ends of the step.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    dim: usize,
    xs: Vec<f64>,
    ys: Vec<f64>,
    coeffs: Vec<f64>,
    pub stats: Stats,
}

impl Trajectory {
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Step endpoints, strictly increasing.
    pub fn xs(&self) -> &[f64] {
        &self.xs
    }

    pub fn x_first(&self) -> f64 {
        self.xs[0]
    }

    pub fn x_last(&self) -> f64 {
        *self.xs.last().unwrap()
    }

    /// State at the `i`-th step endpoint.
    pub fn state(&self, i: usize) -> &[f64] {
        &self.ys[i * self.dim..(i + 1) * self.dim]
    }

    pub fn last_state(&self) -> &[f64] {
        self.state(self.xs.len() - 1)
    }

    pub fn eval(&self, x: f64) -> Result<Vec<f64>> {
        let mut out = vec![0.0; self.dim];
        self.eval_into(x, &mut out)?;
        Ok(out)
    }

    pub fn eval_into(&self, x: f64, out: &mut [f64]) -> Result<()> {
        let (lo, hi) = (self.x_first(), self.x_last());
        if !(x >= lo && x <= hi) {
            return Err(Error::OutOfRange { x, lo, hi });
        }
        let k = self.xs.partition_point(|&xi| xi < x);
        if self.xs[k] == x {
            out.copy_from_slice(self.state(k));
            return Ok(());
        }
        let step = k - 1;
        let (x0, x1) = (self.xs[step], self.xs[k]);
        let s = (x - x0) / (x1 - x0);
        let s1 = 1.0 - s;
        let d = self.dim;
        let r = &self.coeffs[step * 5 * d..(step + 1) * 5 * d];
        for i in 0..d {
            out[i] = r[i] + s * (r[d + i] + s1 * (r[2 * d + i] + s * (r[3 * d + i] + s1 * r[4 * d + i])));
        }
        Ok(())
    }
}
