use super::generating::solve_t;
use super::SolveConfig;
use crate::error::{Error, Result};
use nalgebra::{DMatrix, DVector};
use rayon::prelude::*;

const MAX_CONDITION: f64 = 1e12;

#[derive(Debug, Clone, PartialEq)]
pub struct SeriesFit {
    /// Coefficients of `t^0 .. t^degree`.
    pub coefficients: Vec<f64>,
    /// Ratio of extreme singular values of the design matrix.
    pub condition: f64,
    /// Largest absolute fit residual on the grid.
    pub max_residual: f64,
}

/// Least-squares polynomial fit of `T(∞, t)` over `t_grid`.
///
/// The grid should be symmetric about `0` with `|t| ≤ 1` and hold at least
/// `degree + 1` points. Coefficient `n` estimates `I_n`.
pub fn series_extract(t_grid: &[f64], degree: usize, cfg: &SolveConfig) -> Result<SeriesFit> {
    if t_grid.len() < degree + 1 {
        return Err(Error::InvalidConfig(format!(
            "need at least {} grid points for degree {degree}, got {}",
            degree + 1,
            t_grid.len()
        )));
    }
    let values: Vec<f64> = t_grid
        .par_iter()
        .map(|&t| solve_t(t, cfg)?.t_infinity())
        .collect::<Result<_>>()?;
    fit(t_grid, &values, degree)
}

pub(crate) fn fit(ts: &[f64], values: &[f64], degree: usize) -> Result<SeriesFit> {
    let m = ts.len();
    let design = DMatrix::from_fn(m, degree + 1, |i, j| ts[i].powi(j as i32));
    let rhs = DVector::from_column_slice(values);
    let svd = design.clone().svd(true, true);
    let sv = &svd.singular_values;
    let (smax, smin) = sv.iter().fold((0.0f64, f64::INFINITY), |(hi, lo), &s| (hi.max(s), lo.min(s)));
    let condition = smax / smin;
    if !(condition <= MAX_CONDITION) {
        return Err(Error::IllConditioned { cond: condition });
    }
    let coef = svd
        .solve(&rhs, 0.0)
        .map_err(|e| Error::InvalidConfig(e.to_string()))?;
    let max_residual = (&design * &coef - &rhs).amax();
    Ok(SeriesFit {
        coefficients: coef.iter().copied().collect(),
        condition,
        max_residual,
    })
}

/// `n` points evenly spaced over `[-1, 1]`.
pub fn symmetric_grid(n: usize) -> Vec<f64> {
    (0..n).map(|i| -1.0 + 2.0 * i as f64 / (n - 1) as f64).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_a_polynomial() {
        let ts = symmetric_grid(9);
        let vals: Vec<f64> = ts.iter().map(|t| 1.0 - 2.0 * t + 0.5 * t * t * t).collect();
        let f = fit(&ts, &vals, 4).unwrap();
        let want = [1.0, -2.0, 0.0, 0.5, 0.0];
        for (c, w) in f.coefficients.iter().zip(want) {
            assert!((c - w).abs() < 1e-12);
        }
    }

    #[test]
    fn degenerate_grid_is_ill_conditioned() {
        let ts = vec![0.5; 6];
        let vals = vec![1.0; 6];
        assert!(matches!(fit(&ts, &vals, 3), Err(Error::IllConditioned { .. })));
    }
}
