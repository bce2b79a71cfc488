use crate::error::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::{FRAC_1_SQRT_2, PI};

/// `√i = e^{iπ/4}` on the principal branch.
pub const fn sqrt_i() -> Complex64 {
    Complex64::new(FRAC_1_SQRT_2, FRAC_1_SQRT_2)
}

fn principal_arg_diff(a: f64, b: f64) -> f64 {
    let mut d = a - b;
    if d > PI {
        d -= 2.0 * PI;
    } else if d <= -PI {
        d += 2.0 * PI;
    }
    d
}

/// `arctan z = (1/2i) ln((1 + iz)/(1 - iz))` with the principal logarithm,
/// `arg ∈ (-π, π]`.
///
/// The cuts run along `(-i∞, -i)` and `(i, i∞)`. Points exactly on a cut get
/// the value of the logarithm at argument `+π`, which is the limit taken from
/// the right half-plane. `z = ±i` is a logarithmic pole.
///
/// `arg w` and `ln|w|` are formed from `1 ± iz` separately, so the function is
/// accurate near the origin and exactly odd and conjugate-symmetric off the
/// imaginary axis.
pub fn arctan_principal(z: Complex64) -> Result<Complex64> {
    let (x, y) = (z.re, z.im);
    if y == 0.0 {
        return Ok(Complex64::new(x.atan(), 0.0));
    }
    if x == 0.0 && y.abs() == 1.0 {
        return Err(Error::PoleAt { z });
    }
    if x == 0.0 && y.abs() < 1.0 {
        return Ok(Complex64::new(0.0, y.atanh()));
    }
    // 1 + iz = (1 - y) + ix,  1 - iz = (1 + y) - ix
    let arg_w = principal_arg_diff(x.atan2(1.0 - y), (-x).atan2(1.0 + y));
    let ay = y.abs();
    let near = (1.0 - ay).hypot(x);
    let far = (1.0 + ay).hypot(x);
    // ln|1+iz| - ln|1-iz|; near the origin both moduli are close to one.
    let ln_ratio = if near > 0.5 * far {
        0.5 * (-4.0 * ay / (far * far)).ln_1p()
    } else {
        near.ln() - far.ln()
    };
    let ln_abs_w = y.signum() * ln_ratio;
    Ok(Complex64::new(0.5 * arg_w, -0.5 * ln_abs_w))
}
