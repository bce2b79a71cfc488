use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct DampingSchedule {
    /// Gaussian damping strengths, strictly decreasing.
    pub eps_list: Vec<f64>,
    /// Degree of the polynomial in `ε` used to remove the damping.
    pub extrapolation_order: usize,
}

impl Default for DampingSchedule {
    fn default() -> Self {
        Self {
            eps_list: vec![0.2, 0.1, 0.05, 0.025],
            extrapolation_order: 2,
        }
    }
}

impl DampingSchedule {
    pub fn validate(&self) -> Result<()> {
        if self.eps_list.iter().any(|e| !(*e > 0.0 && e.is_finite())) {
            return Err(Error::InvalidConfig("damping strengths must be positive and finite".into()));
        }
        if self.eps_list.windows(2).any(|w| w[1] >= w[0]) {
            return Err(Error::InvalidConfig("damping strengths must be strictly decreasing".into()));
        }
        if self.eps_list.len() < self.extrapolation_order + 1 {
            return Err(Error::InvalidConfig(format!(
                "order {} needs at least {} damping strengths, got {}",
                self.extrapolation_order,
                self.extrapolation_order + 1,
                self.eps_list.len()
            )));
        }
        Ok(())
    }

    /// `count` strengths halving from `first`.
    pub fn halving(first: f64, count: usize, extrapolation_order: usize) -> Self {
        Self {
            eps_list: (0..count).map(|k| first * 0.5f64.powi(k as i32)).collect(),
            extrapolation_order,
        }
    }

    /// Single strength, no extrapolation.
    pub fn fixed(eps: f64) -> Self {
        Self {
            eps_list: vec![eps],
            extrapolation_order: 0,
        }
    }
}

/// Cutoff where the Gaussian weight `e^{-εX²}` drops to `e^{-36}`.
pub fn cutoff(eps: f64) -> f64 {
    6.0 / eps.sqrt()
}

/// Value of the interpolating polynomial through `(xs, ys)` at `0` (Neville).
pub fn neville_at_zero(xs: &[f64], ys: &[f64]) -> f64 {
    let mut p = ys.to_vec();
    let n = xs.len();
    for level in 1..n {
        for i in 0..n - level {
            let (xa, xb) = (xs[i], xs[i + level]);
            p[i] = (xb * p[i] - xa * p[i + 1]) / (xb - xa);
        }
    }
    p[0]
}

/// Damping-free estimates built from the damped values.
///
/// Entry `k` interpolates the points `k-d..=k` with `d = min(k, order)`, so
/// the sequence runs from the raw first value to the last full-order fit.
pub fn extrapolants(eps: &[f64], values: &[f64], order: usize) -> Vec<f64> {
    (0..eps.len())
        .map(|k| {
            let d = k.min(order);
            neville_at_zero(&eps[k - d..=k], &values[k - d..=k])
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct Extrapolated {
    pub value: f64,
    /// Difference of the last two extrapolants plus propagated quadrature error.
    pub abs_error_estimate: f64,
    pub damped: Vec<f64>,
    pub extrapolants: Vec<f64>,
}

/// Extrapolate `ε → 0`; `noise` bounds the error of each damped value.
pub fn extrapolate(sched: &DampingSchedule, damped: Vec<f64>, noise: f64) -> Result<Extrapolated> {
    let ex = extrapolants(&sched.eps_list, &damped, sched.extrapolation_order);
    let n = ex.len();
    let value = ex[n - 1];
    // Amplification of independent errors by the last full-order fit.
    let d = (n - 1).min(sched.extrapolation_order);
    let gain = lagrange_gain(&sched.eps_list[n - 1 - d..]);
    let floor = gain * noise;
    let last_step = if n >= 2 { (ex[n - 1] - ex[n - 2]).abs() } else { 0.0 };
    if n >= 3 {
        let prev_step = (ex[n - 2] - ex[n - 3]).abs();
        if last_step > prev_step && last_step > 10.0 * floor {
            return Err(Error::ExtrapolationUnstable {
                prev: ex[n - 2],
                last: ex[n - 1],
            });
        }
    }
    Ok(Extrapolated {
        value,
        abs_error_estimate: last_step + floor,
        damped,
        extrapolants: ex,
    })
}

/// `Σ|ℓ_k(0)|` for the Lagrange basis on `xs`.
fn lagrange_gain(xs: &[f64]) -> f64 {
    (0..xs.len())
        .map(|k| {
            xs.iter()
                .enumerate()
                .filter(|(j, _)| *j != k)
                .map(|(_, xj)| xj / (xj - xs[k]))
                .product::<f64>()
                .abs()
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn neville_reproduces_polynomials() {
        let xs = [0.4, 0.2, 0.1];
        let ys: Vec<f64> = xs.iter().map(|x| 3.0 - x + 2.0 * x * x).collect();
        assert!((neville_at_zero(&xs, &ys) - 3.0).abs() < 1e-14);
    }

    #[test]
    fn schedule_validation() {
        assert!(DampingSchedule::default().validate().is_ok());
        let bad = DampingSchedule {
            eps_list: vec![0.1, 0.2],
            extrapolation_order: 1,
        };
        assert!(bad.validate().is_err());
        let short = DampingSchedule {
            eps_list: vec![0.1, 0.05],
            extrapolation_order: 2,
        };
        assert!(short.validate().is_err());
        assert!(DampingSchedule::fixed(0.0).validate().is_err());
    }

    #[test]
    fn diverging_sequence_is_rejected() {
        let sched = DampingSchedule::default();
        let damped = vec![1.0, 1.0, 1.0, 5.0];
        assert!(matches!(
            extrapolate(&sched, damped, 0.0),
            Err(Error::ExtrapolationUnstable { .. })
        ));
    }

    #[test]
    fn gain_of_halving_nodes() {
        assert!((lagrange_gain(&[0.1, 0.05]) - 3.0).abs() < 1e-12);
    }
}
