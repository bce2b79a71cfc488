use super::extrapolate::cutoff;
use crate::error::{Error, Result};
use crate::quad::{integrate_adaptive, QuadConfig};
use num_complex::Complex64;
use std::cell::RefCell;

// Panel budget for the inner integrals, which span many oscillations.
const INNER_PANELS: usize = 20_000;

fn kernel(x1: f64, x2: f64, eps: f64, c: f64) -> f64 {
    let (d1, d2) = (x1 - c, x2 - c);
    ((x1 - x2) * (x1 + x2)).cos() * (-eps * (d1 * d1 + d2 * d2)).exp()
}

/// Upper limit of the inner variable.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) enum Inner {
    /// `x₂ < x₁`.
    Ordered,
    /// `x₂ < X`.
    Full,
}

/// `∫_{lo}^{hi} dx₁ ∫_{lo}^{…} dx₂ cos(x₁²-x₂²) e^{-ε((x₁-c)²+(x₂-c)²)}` by
/// iterated Gauss–Kronrod, with `[lo, c + X]` the Gaussian's support.
/// Returns the value and an error bound.
pub(crate) fn damped_double(eps: f64, c: f64, hi: f64, inner: Inner, cfg: &QuadConfig) -> Result<(f64, f64)> {
    let lo = c - cutoff(eps);
    let hi = hi.min(c + cutoff(eps));
    if !(hi > lo) {
        return Err(Error::InvalidInterval { a: lo, b: hi });
    }
    let x = c + cutoff(eps);
    let inner_cfg = QuadConfig {
        max_subdivisions: cfg.max_subdivisions.max(INNER_PANELS),
        ..cfg.with_rel_tol(cfg.rel_tol * 0.1).with_abs_tol(cfg.rel_tol * 0.1)
    };
    // The integrals are of order one, so absolute accuracy is what matters.
    let outer_cfg = cfg.with_abs_tol(cfg.abs_tol.max(cfg.rel_tol * 0.1));
    let failure: RefCell<Option<Error>> = RefCell::new(None);
    let inner_err = RefCell::new(0.0f64);
    let outer = integrate_adaptive(
        |x1| {
            let top = match inner {
                Inner::Ordered => x1,
                Inner::Full => x,
            };
            if top <= lo {
                return Complex64::new(0.0, 0.0);
            }
            match integrate_adaptive(|x2| Complex64::new(kernel(x1, x2, eps, c), 0.0), lo, top, &inner_cfg)
                .and_then(|r| r.require_converged())
            {
                Ok(r) => {
                    let mut e = inner_err.borrow_mut();
                    *e = e.max(r.abs_error_estimate);
                    Complex64::new(r.value.re, 0.0)
                }
                Err(err) => {
                    failure.borrow_mut().get_or_insert(err);
                    Complex64::new(f64::NAN, 0.0)
                }
            }
        },
        lo,
        hi,
        &outer_cfg,
    );
    if let Some(err) = failure.into_inner() {
        return Err(err);
    }
    let outer = outer?.require_converged()?;
    let err = outer.abs_error_estimate + inner_err.into_inner() * (hi - lo);
    Ok((outer.value.re, err))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn damped_ordered_matches_closed_form() {
        let cfg = QuadConfig::default().with_rel_tol(1e-8);
        for &eps in &[0.5, 0.2] {
            let (v, e) = damped_double(eps, 0.0, f64::INFINITY, Inner::Ordered, &cfg).unwrap();
            let exact = PI / (2.0 * (1.0 + eps * eps).sqrt());
            assert!((v - exact).abs() < 1e-7, "eps {eps}: {v} vs {exact} (err {e})");
        }
    }
}
