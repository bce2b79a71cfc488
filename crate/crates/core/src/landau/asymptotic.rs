//! Asymptotic solution of the generating system as `x → -∞`.
//!
//! With `X = -x > 0` the solution has the form
//!
//! ```text
//! T     = Σ c_m X^{-2m},             c₀ = 1
//! A + iB = e^{iX²} Σ g_m X^{-(2m+1)}, g₀ = i/2
//! ```
//!
//! where `c_m = t(2m-1) Im(g_{m-1}) / (4m)` and
//! `g_m = (i/2)(c_m - (2m-1) g_{m-1})`. Both are polynomials of degree `m` in
//! `t`, so the same recursion seeds the τ-hierarchy coefficient by
//! coefficient. At `t = 0` it reduces to the Fresnel remainder series.
//!
//! Mirrored, the same triple is the costate of the system: for any `x`,
//! `T(+∞) = T̃(x)·T(x) + t·Ã(x)·A(x) + t·B̃(x)·B(x)` where the tilde
//! quantities are this series evaluated at `X = x`.

use crate::error::{Error, Result};
use crate::specfun::cis_square;
use num_complex::Complex64;

const MAX_TERMS: usize = 400;

/// Value of the left asymptotic triple at one `(t, X)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymptoticTriple {
    pub t: f64,
    pub a: f64,
    pub b: f64,
    /// Size of the first omitted term (largest of the three components).
    pub truncation: f64,
}

/// Sum the series for a numeric `t` at `X > 0`, stopping at the smallest term
/// or once terms drop below `1e-18` relative.
pub fn left_triple(t: f64, big_x: f64) -> AsymptoticTriple {
    let inv2 = 1.0 / (big_x * big_x);
    let mut c_sum = 1.0;
    let mut g = Complex64::new(0.0, 0.5);
    let mut g_sum = g / big_x;
    let mut scale_c = 1.0; // X^{-2m}
    let mut prev = f64::INFINITY;
    let mut truncation = f64::INFINITY;
    for m in 1..MAX_TERMS {
        let k = (2 * m - 1) as f64;
        let c = t * k * g.im / (4.0 * m as f64);
        let g_next = Complex64::new(0.0, 0.5) * (c - g * k);
        scale_c *= inv2;
        let tc = c.abs() * scale_c;
        let tg = g_next.norm() * scale_c / big_x;
        let size = tc.max(tg);
        if size > prev {
            truncation = size;
            break;
        }
        c_sum += c * scale_c;
        g_sum += g_next * (scale_c / big_x);
        g = g_next;
        prev = size;
        truncation = size;
        if size <= 1e-18 * (c_sum.abs() + g_sum.norm()) {
            break;
        }
    }
    let w = cis_square(big_x) * g_sum;
    AsymptoticTriple {
        t: c_sum,
        a: w.re,
        b: w.im,
        truncation,
    }
}

/// Coefficients of `t^j`, `j = 0..=degree`, of the left triple at `X`.
#[derive(Debug, Clone, PartialEq)]
pub struct AsymptoticCoefficients {
    pub t: Vec<f64>,
    pub a: Vec<f64>,
    pub b: Vec<f64>,
    pub truncation: f64,
}

/// The series in polynomial form, truncated to degree `degree` in `t`.
pub fn left_coefficients(degree: usize, big_x: f64) -> AsymptoticCoefficients {
    let n = degree + 1;
    let inv2 = 1.0 / (big_x * big_x);
    let mut c_sum = vec![0.0; n];
    c_sum[0] = 1.0;
    let mut g = vec![Complex64::new(0.0, 0.0); n];
    g[0] = Complex64::new(0.0, 0.5);
    let mut g_sum: Vec<Complex64> = g.iter().map(|v| v / big_x).collect();
    let mut scale = 1.0;
    let mut prev = f64::INFINITY;
    let mut truncation = f64::INFINITY;
    for m in 1..MAX_TERMS {
        let k = (2 * m - 1) as f64;
        // c_m = t·k·Im(g_{m-1})/(4m): shift degrees up by one.
        let mut c = vec![0.0; n];
        for j in 1..n {
            c[j] = k * g[j - 1].im / (4.0 * m as f64);
        }
        let g_next: Vec<Complex64> = (0..n)
            .map(|j| Complex64::new(0.0, 0.5) * (c[j] - g[j] * k))
            .collect();
        scale *= inv2;
        let size = c
            .iter()
            .map(|v| v.abs())
            .chain(g_next.iter().map(|v| v.norm() / big_x))
            .fold(0.0, f64::max)
            * scale;
        if size > prev {
            truncation = size;
            break;
        }
        for j in 0..n {
            c_sum[j] += c[j] * scale;
            g_sum[j] += g_next[j] * (scale / big_x);
        }
        g = g_next;
        prev = size;
        truncation = size;
        if size <= 1e-20 {
            break;
        }
    }
    let phase = cis_square(big_x);
    let w: Vec<Complex64> = g_sum.iter().map(|v| phase * v).collect();
    AsymptoticCoefficients {
        t: c_sum,
        a: w.iter().map(|v| v.re).collect(),
        b: w.iter().map(|v| v.im).collect(),
        truncation,
    }
}

/// Fail with [`Error::InitRegime`] when the series cannot reach `target` at
/// `x`.
pub fn require_regime(x: f64, truncation: f64, target: f64) -> Result<()> {
    if truncation <= target {
        Ok(())
    } else {
        Err(Error::InitRegime {
            x,
            target,
            achieved: truncation,
        })
    }
}
