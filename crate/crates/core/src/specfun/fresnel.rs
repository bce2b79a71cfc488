use super::cis_square;
use crate::error::{Error, Result};
use num_complex::Complex64;

/// `√(π/8)`, the common limit of both Fresnel integrals at `+∞`.
pub const FRESNEL_LIMIT: f64 = 0.626_657_068_657_750_1;

// Below this the power series is used, above it the continued fraction.
const SERIES_MAX: f64 = 1.88;
// Smallest argument accepted by the asymptotic remainder series.
const REMAINDER_MIN: f64 = 4.0;

/// `C(x) = ∫₀ˣ cos y² dy` and `S(x) = ∫₀ˣ sin y² dy`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FresnelPair {
    pub c: f64,
    pub s: f64,
}

impl FresnelPair {
    /// `C + iS = ∫₀ˣ e^{iy²} dy`.
    pub fn as_complex(self) -> Complex64 {
        Complex64::new(self.c, self.s)
    }

    fn from_complex(z: Complex64) -> Self {
        Self { c: z.re, s: z.im }
    }
}

/// Tails `∫ₓ^∞ cos y² dy`, `∫ₓ^∞ sin y² dy` with a bound on the truncation
/// error of the asymptotic series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FresnelRemainder {
    pub c: f64,
    pub s: f64,
    pub abs_error_estimate: f64,
}

fn series(x: f64) -> Complex64 {
    // Σ i^k x^{2k+1} / (k! (2k+1))
    let ix2 = Complex64::new(0.0, x * x);
    let mut power = Complex64::new(x, 0.0);
    let mut sum = power;
    for k in 1..60 {
        power = power * ix2 / k as f64;
        let term = power / (2 * k + 1) as f64;
        sum += term;
        if term.norm() <= 1e-17 * sum.norm() {
            break;
        }
    }
    sum
}

/// `∫ₓ^∞ e^{iy²} dy = e^{ix²} G(x)` with `G` from a continued fraction
/// evaluated by the modified Lentz method.
fn tail_continued_fraction(x: f64) -> Complex64 {
    const TINY: f64 = 1e-300;
    let mut b = Complex64::new(1.0, -2.0 * x * x);
    let mut cc = Complex64::new(1.0 / TINY, 0.0);
    let mut d = b.inv();
    let mut h = d;
    let mut n = -1.0;
    for _ in 0..200 {
        n += 2.0;
        let a = -n * (n + 1.0);
        b += 4.0;
        d = (d * a + b).inv();
        cc = b + cc.inv() * a;
        let del = cc * d;
        h *= del;
        if (del - 1.0).norm() < 1e-16 {
            break;
        }
    }
    cis_square(x) * h * x
}

/// Unnormalized Fresnel integrals, accurate to about 1e-15 absolute for all
/// finite `x`.
pub fn fresnel(x: f64) -> FresnelPair {
    let ax = x.abs();
    let value = if ax < SERIES_MAX {
        series(ax)
    } else {
        Complex64::new(FRESNEL_LIMIT, FRESNEL_LIMIT) - tail_continued_fraction(ax)
    };
    let value = if x < 0.0 { -value } else { value };
    FresnelPair::from_complex(value)
}

/// Asymptotic tails for `x ≥ 4`, truncated at the smallest term.
///
/// `∫ₓ^∞ e^{iy²} dy ~ e^{ix²} Σ g_k x^{-(2k+1)}` with `g₀ = i/2`,
/// `g_k = -(i/2)(2k-1) g_{k-1}`. The reported error is the first omitted
/// term.
pub fn fresnel_remainder(x: f64) -> Result<FresnelRemainder> {
    if !(x >= REMAINDER_MIN) {
        return Err(Error::DomainTooSmall {
            x,
            min: REMAINDER_MIN,
        });
    }
    let inv_x2 = 1.0 / (x * x);
    let mut term = Complex64::new(0.0, 0.5) / x;
    let mut sum = term;
    let mut omitted = f64::INFINITY;
    for k in 1..200 {
        let next = term * Complex64::new(0.0, -0.5 * (2 * k - 1) as f64) * inv_x2;
        if next.norm() >= term.norm() {
            omitted = next.norm();
            break;
        }
        sum += next;
        term = next;
        omitted = term.norm();
        if term.norm() < 1e-18 * sum.norm() {
            break;
        }
    }
    let value = cis_square(x) * sum;
    Ok(FresnelRemainder {
        c: value.re,
        s: value.im,
        abs_error_estimate: omitted,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad::{integrate_adaptive, QuadConfig};

    // Reference values computed at 30 digits.
    const TABLE: [(f64, f64, f64); 11] = [
        (0.5, 0.496_884_029_214_794_7, 0.041_481_024_268_547_48),
        (1.0, 0.904_524_237_900_272_1, 0.310_268_301_723_381_1),
        (1.8, 0.635_365_431_122_276_4, 0.893_480_669_778_534),
        (2.0, 0.461_461_462_433_216_4, 0.804_776_489_343_756_1),
        (3.0, 0.702_863_557_730_268_7, 0.773_562_526_893_769),
        (4.0, 0.594_460_327_497_823, 0.747_133_844_648_114_7),
        (6.0, 0.544_204_025_387_184_6, 0.638_459_189_315_010_4),
        (10.0, 0.601_125_184_813_444_3, 0.583_670_899_929_623_3),
        (37.25, 0.615_206_661_587_953_8, 0.619_652_775_311_298_4),
        (100.0, 0.625_129_234_763_602_5, 0.631_417_921_866_933_7),
        (999.7, 0.626_767_859_413_805_6, 0.627_144_793_452_997_8),
    ];

    #[test]
    fn reference_table() {
        for &(x, c, s) in &TABLE {
            let f = fresnel(x);
            assert!((f.c - c).abs() < 1e-13, "C({x}) = {} vs {c}", f.c);
            assert!((f.s - s).abs() < 1e-13, "S({x}) = {} vs {s}", f.s);
        }
    }

    #[test]
    fn both_sides_of_the_switch_agree() {
        let lo = series(SERIES_MAX);
        let hi = Complex64::new(FRESNEL_LIMIT, FRESNEL_LIMIT) - tail_continued_fraction(SERIES_MAX);
        assert!((lo - hi).norm() < 2e-15);
    }

    #[test]
    fn odd_and_zero() {
        assert_eq!(fresnel(0.0), FresnelPair { c: 0.0, s: 0.0 });
        for &x in &[0.3, 1.7, 2.5, 40.0] {
            let (p, m) = (fresnel(x), fresnel(-x));
            assert_eq!(p.c, -m.c);
            assert_eq!(p.s, -m.s);
        }
    }

    #[test]
    fn limit_at_infinity() {
        let f = fresnel(1e8);
        assert!((f.c - FRESNEL_LIMIT).abs() < 1e-8);
        assert!((f.s - FRESNEL_LIMIT).abs() < 1e-8);
        assert!((FRESNEL_LIMIT - (std::f64::consts::PI / 8.0).sqrt()).abs() < 1e-16);
    }

    #[test]
    fn quadrature_cross_check() {
        let cfg = QuadConfig::default().with_rel_tol(1e-13);
        let r = integrate_adaptive(|y| Complex64::new(0.0, y * y).exp(), 0.0, 1.0, &cfg).unwrap();
        let f = fresnel(1.0);
        assert!((r.value - f.as_complex()).norm() < 1e-13);
    }

    #[test]
    fn remainder_is_complementary() {
        for &x in &[4.0, 5.5, 10.0, 50.0] {
            let r = fresnel_remainder(x).unwrap();
            let f = fresnel(x);
            let dc = (r.c - (FRESNEL_LIMIT - f.c)).abs();
            let ds = (r.s - (FRESNEL_LIMIT - f.s)).abs();
            assert!(dc <= r.abs_error_estimate + 1e-15, "{x}: {dc} > {}", r.abs_error_estimate);
            assert!(ds <= r.abs_error_estimate + 1e-15);
            if x >= 10.0 {
                assert!(dc < 1e-10 && ds < 1e-10);
            }
        }
    }

    #[test]
    fn remainder_leading_term() {
        let x = 50.0;
        let r = fresnel_remainder(x).unwrap();
        // ∫ₓ^∞ cos y² dy = -sin(x²)/(2x) + O(x⁻³)
        let lead = -(x * x).sin() / (2.0 * x);
        assert!(((r.c - lead) / lead).abs() < 1.0 / (x * x));
        assert!(((r.c + lead) / lead).abs() > 1.0);
    }

    #[test]
    fn remainder_rejects_small_arguments() {
        assert!(matches!(
            fresnel_remainder(3.99),
            Err(Error::DomainTooSmall { .. })
        ));
        assert!(fresnel_remainder(f64::NAN).is_err());
    }
}
