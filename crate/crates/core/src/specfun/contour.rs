//! Numerical evaluation of the closed contour integral of
//!
//! `f(z) = [(√z-√i)/(1+z²)·A + (1/√z-1/√i)/(1+z²)·B] · e^{(t/4) arctan z}`
//!
//! around the quarter disc of radius `R` in the first quadrant, indented at
//! the pole `z = i` and running along the right side of the cut `(i, i∞)`.

use super::{arctan_principal, expm1_ratio, sqrt_i, u_aux, v_aux};
use crate::error::{Error, Result};
use crate::quad::{integrate_adaptive, integrate_decaying_tail, integrate_tanh_sinh, QuadConfig, QuadResult};
use num_complex::Complex64;
use std::cell::Cell;
use std::f64::consts::{FRAC_PI_2, PI};

const I: Complex64 = Complex64::new(0.0, 1.0);

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContourParams {
    pub a: Complex64,
    pub b: Complex64,
    pub t: f64,
    /// Outer radius.
    pub r: f64,
    /// Radius of the indent around `i`, also the offset of the cut segment.
    pub eps: f64,
}

impl ContourParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.eps > 0.0 && self.eps < 0.5) {
            return Err(Error::InvalidConfig(format!("eps must lie in (0, 1/2), got {}", self.eps)));
        }
        if !(self.r > 1.0 + 2.0 * self.eps) || !self.r.is_finite() {
            return Err(Error::InvalidConfig(format!(
                "R must exceed 1 + 2 eps, got R = {}",
                self.r
            )));
        }
        if !self.t.is_finite() || !(self.a.norm().is_finite() && self.b.norm().is_finite()) {
            return Err(Error::InvalidConfig("A, B and t must be finite".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContourSegments {
    /// `J₁ .. J₅` in contour order.
    pub j: [Complex64; 5],
    pub sum: Complex64,
    /// Sum of the quadrature error estimates of the five pieces.
    pub abs_error_estimate: f64,
}

/// `f(z)` given a precomputed `arctan z`.
///
/// The bracket is rewritten with `(√z-√i)(√z+√i) = z-i` so that it stays
/// accurate next to the pole.
fn integrand(a: Complex64, b: Complex64, t: f64, z: Complex64, atan_z: Complex64) -> Complex64 {
    let si = sqrt_i();
    let sz = z.sqrt();
    let common = ((sz + si) * (z + I)).inv();
    let bracket = common * (a - b / (sz * si));
    bracket * (0.25 * t * atan_z).exp()
}

/// Same bracket on `z = iy`, `y > 0`, in real arithmetic.
fn imaginary_axis(a: Complex64, b: Complex64, t: f64, y: f64, atan_z: Complex64) -> Complex64 {
    let si = sqrt_i();
    let ry = y.sqrt();
    // (√y-1)/(1-y²) and (1/√y-1)/(1-y²) without cancellation
    let pa = -1.0 / ((1.0 + ry) * (1.0 + y));
    let pb = 1.0 / (ry * (1.0 + ry) * (1.0 + y));
    (a * si * pa - b * I * si * pb) * (0.25 * t * atan_z).exp()
}

struct PoleGuard {
    eps: f64,
    hit: Cell<Option<Error>>,
}

impl PoleGuard {
    fn check(&self, z: Complex64) -> bool {
        let dist = (z - I).norm().min((z + I).norm());
        if dist < 0.1 * self.eps {
            self.hit.set(Some(Error::PoleTooClose { z, dist }));
            false
        } else {
            true
        }
    }

    fn finish(self) -> Result<()> {
        match self.hit.into_inner() {
            Some(e) => Err(e),
            None => Ok(()),
        }
    }
}

fn converged(r: QuadResult) -> Result<QuadResult> {
    r.require_converged()
}

/// Evaluate the five pieces of the closed contour.
///
/// * `J₁`: `z = x`, `x ∈ (0, R)`.
/// * `J₂`: `z = Re^{iφ}`, `φ ∈ (0, π/2)`.
/// * `J₃`: `z = iy` on the right side of the cut, `y` from `R` down to `1+ε`,
///   with `arctan z = π/2 + i artanh(1/y)`.
/// * `J₄`: `z = i - iεe^{iφ}`, traversed from `φ = π` to `φ = 0`.
/// * `J₅`: `z = iy`, `y` from `1-ε` down to `0`, with `arctan z = i artanh y`.
pub fn contour_segments(p: &ContourParams, cfg: &QuadConfig) -> Result<ContourSegments> {
    p.validate()?;
    let (a, b, t, r, eps) = (p.a, p.b, p.t, p.r, p.eps);
    let guard = PoleGuard {
        eps,
        hit: Cell::new(None),
    };
    let f = |z: Complex64, atan_z: Complex64| {
        if guard.check(z) {
            integrand(a, b, t, z, atan_z)
        } else {
            Complex64::new(0.0, 0.0)
        }
    };

    let real_axis = |x: f64| f(Complex64::new(x, 0.0), Complex64::new(x.atan(), 0.0));
    let j1a = converged(integrate_tanh_sinh(real_axis, 0.0, 1.0, cfg)?)?;
    let j1b = converged(integrate_adaptive(real_axis, 1.0, r, cfg)?)?;

    let j2 = converged(integrate_adaptive(
        |phi| {
            let z = Complex64::from_polar(r, phi);
            let v = arctan_principal(z).unwrap_or(Complex64::new(f64::NAN, 0.0));
            f(z, v) * I * z
        },
        0.0,
        FRAC_PI_2,
        cfg,
    )?)?;

    let cut = |y: f64| {
        let z = Complex64::new(0.0, y);
        if !guard.check(z) {
            return Complex64::new(0.0, 0.0);
        }
        imaginary_axis(a, b, t, y, Complex64::new(FRAC_PI_2, (1.0 / y).atanh()))
    };
    let j3 = converged(integrate_adaptive(cut, 1.0 + eps, r, cfg)?)?.scale(-I);

    let j4 = converged(integrate_adaptive(
        |phi| {
            let e = Complex64::from_polar(eps, phi);
            let z = I - I * e;
            let v = arctan_principal(z).unwrap_or(Complex64::new(f64::NAN, 0.0));
            f(z, v) * e
        },
        0.0,
        PI,
        cfg,
    )?)?
    .scale(Complex64::new(-1.0, 0.0));

    let segment = |y: f64| {
        let z = Complex64::new(0.0, y);
        if !guard.check(z) {
            return Complex64::new(0.0, 0.0);
        }
        imaginary_axis(a, b, t, y, Complex64::new(0.0, y.atanh()))
    };
    let j5 = converged(integrate_tanh_sinh(segment, 0.0, 1.0 - eps, cfg)?)?.scale(-I);

    guard.finish()?;

    let j = [j1a.value + j1b.value, j2.value, j3.value, j4.value, j5.value];
    let abs_error_estimate = [j1a, j1b, j2, j3, j4, j5]
        .iter()
        .map(|q| q.abs_error_estimate)
        .sum();
    Ok(ContourSegments {
        j,
        sum: j.iter().sum(),
        abs_error_estimate,
    })
}

/// `J₁` over the whole half-line `(0, ∞)`.
pub fn j1_half_line(a: Complex64, b: Complex64, t: f64, cfg: &QuadConfig) -> Result<Complex64> {
    let f = |x: f64| integrand(a, b, t, Complex64::new(x, 0.0), Complex64::new(x.atan(), 0.0));
    let head = converged(integrate_tanh_sinh(f, 0.0, 1.0, cfg)?)?;
    let tail = converged(integrate_decaying_tail(f, 1.0, &cfg.with_rel_tol(cfg.rel_tol * 1e-2))?)?;
    Ok(head.value + tail.value)
}

/// Closed form of `J₁` as `R → ∞`:
/// `A·U(t) + B·V(t) - (4√i/t)(A-iB)(e^{πt/8}-1)`.
pub fn j1_decomposition(a: Complex64, b: Complex64, t: f64, cfg: &QuadConfig) -> Result<Complex64> {
    let u = u_aux(t, cfg)?.value;
    let v = v_aux(t, cfg)?.value;
    let elementary = 4.0 * expm1_ratio(PI / 8.0, t);
    Ok(a * u + b * v - sqrt_i() * (a - I * b) * elementary)
}

/// Upper bound on `|J₂|` from the modulus of the integrand on the arc.
pub fn j2_bound(p: &ContourParams) -> f64 {
    let r = p.r;
    let d = r * r - 1.0;
    r * FRAC_PI_2
        * ((r.sqrt() + 1.0) / d * p.a.norm() + (1.0 / r.sqrt() + 1.0) / d * p.b.norm())
        * (PI * p.t.abs() / 8.0).exp()
}

/// Leading-order bound on `|J₄|`: `π ε (|A|+|B|)/4 · e^{π|t|/8}`.
pub fn j4_bound(p: &ContourParams) -> f64 {
    PI * p.eps * (p.a.norm() + p.b.norm()) / 4.0 * (PI * p.t.abs() / 8.0).exp()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn params(a: Complex64, b: Complex64, t: f64, r: f64, eps: f64) -> ContourParams {
        ContourParams { a, b, t, r, eps }
    }

    #[test]
    fn closure_on_the_reference_cases() {
        let cfg = QuadConfig::default();
        for &(a, b, t) in &[(c(1.0, 0.0), c(0.0, 0.0), 1.0), (c(0.0, 0.0), c(1.0, 0.0), 1.0), (c(1.0, 0.0), c(0.0, 1.0), -1.0)] {
            let s = contour_segments(&params(a, b, t, 1e4, 1e-4), &cfg).unwrap();
            assert!(s.sum.norm() < 1e-6, "{a} {b} {t}: {}", s.sum);
        }
    }

    #[test]
    fn arc_and_indent_bounds() {
        let cfg = QuadConfig::default();
        let p = params(c(1.0, 0.0), c(1.0, 0.0), 0.0, 100.0, 1e-3);
        let s = contour_segments(&p, &cfg).unwrap();
        assert!(s.j[1].norm() <= j2_bound(&p));
        assert!(s.j[3].norm() <= 1.1 * j4_bound(&p));
    }

    #[test]
    fn half_line_matches_decomposition() {
        let cfg = QuadConfig::default();
        for &t in &[0.0, 1.0, -2.0] {
            let (a, b) = (c(1.0, 0.5), c(-0.3, 2.0));
            let direct = j1_half_line(a, b, t, &cfg).unwrap();
            let closed = j1_decomposition(a, b, t, &cfg).unwrap();
            assert!((direct - closed).norm() < 1e-8, "t={t}: {direct} vs {closed}");
        }
    }

    #[test]
    fn integrand_is_finite_at_the_pole_limit() {
        let v = integrand(c(1.0, 0.0), c(0.0, 0.0), 0.0, I * (1.0 - 1e-12), c(0.0, 0.0));
        let expected = (4.0 * I * sqrt_i()).inv();
        assert!((v - expected).norm() < 1e-9);
    }

    #[test]
    fn invalid_parameters() {
        let cfg = QuadConfig::default();
        assert!(contour_segments(&params(c(1.0, 0.0), c(0.0, 0.0), 1.0, 1.1, 0.1), &cfg).is_err());
        assert!(contour_segments(&params(c(1.0, 0.0), c(0.0, 0.0), 1.0, 10.0, 0.6), &cfg).is_err());
    }
}
