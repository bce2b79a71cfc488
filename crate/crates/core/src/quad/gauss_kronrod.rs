use super::{check_interval, eval, QuadConfig, QuadResult};
use crate::error::Result;
use num_complex::Complex64;
use std::cmp::Ordering;
use std::collections::BinaryHeap;

// Kronrod abscissas; odd indices are the 7-point Gauss abscissas.
const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
];

const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];

const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: Complex64,
    err: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Panel {}

impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Panel {
    // Largest error first; ties broken by position so the order is total.
    fn cmp(&self, other: &Self) -> Ordering {
        self.err
            .total_cmp(&other.err)
            .then_with(|| other.a.total_cmp(&self.a))
    }
}

/// One Gauss–Kronrod 15(7) panel with the QUADPACK error heuristic.
fn gk15<F: Fn(f64) -> Complex64>(f: &F, a: f64, b: f64) -> Result<Panel> {
    let centr = 0.5 * (a + b);
    let hlgth = 0.5 * (b - a);

    let fc = eval(f, centr)?;
    let mut resg = fc * WG[3];
    let mut resk = fc * WGK[7];
    let mut resabs = fc.norm() * WGK[7];
    let mut fv1 = [Complex64::new(0.0, 0.0); 7];
    let mut fv2 = [Complex64::new(0.0, 0.0); 7];

    for j in 0..3 {
        let jtw = 2 * j + 1;
        let dx = hlgth * XGK[jtw];
        let f1 = eval(f, centr - dx)?;
        let f2 = eval(f, centr + dx)?;
        fv1[jtw] = f1;
        fv2[jtw] = f2;
        resg += (f1 + f2) * WG[j];
        resk += (f1 + f2) * WGK[jtw];
        resabs += (f1.norm() + f2.norm()) * WGK[jtw];
    }
    for j in 0..4 {
        let jtwm1 = 2 * j;
        let dx = hlgth * XGK[jtwm1];
        let f1 = eval(f, centr - dx)?;
        let f2 = eval(f, centr + dx)?;
        fv1[jtwm1] = f1;
        fv2[jtwm1] = f2;
        resk += (f1 + f2) * WGK[jtwm1];
        resabs += (f1.norm() + f2.norm()) * WGK[jtwm1];
    }

    let reskh = resk * 0.5;
    let mut resasc = WGK[7] * (fc - reskh).norm();
    for j in 0..7 {
        resasc += WGK[j] * ((fv1[j] - reskh).norm() + (fv2[j] - reskh).norm());
    }

    let value = resk * hlgth;
    let resabs = resabs * hlgth.abs();
    let resasc = resasc * hlgth.abs();
    let mut err = ((resk - resg) * hlgth).norm();
    if resasc != 0.0 && err != 0.0 {
        err = resasc * (200.0 * err / resasc).powf(1.5).min(1.0);
    }
    if resabs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * resabs);
    }
    Ok(Panel { a, b, value, err })
}

/// Globally adaptive Gauss–Kronrod 15(7) quadrature of `f` over `[a, b]`.
///
/// The panel with the largest error estimate is bisected until the summed
/// estimate meets `max(abs_tol, rel_tol·|I|)` or `max_subdivisions` panels
/// exist. Budget exhaustion is reported through `converged = false`, not as
/// an error.
pub fn integrate_adaptive<F>(f: F, a: f64, b: f64, cfg: &QuadConfig) -> Result<QuadResult>
where
    F: Fn(f64) -> Complex64,
{
    cfg.validate()?;
    check_interval(a, b)?;

    let first = gk15(&f, a, b)?;
    let mut n_evals = 15;
    let mut total = first.value;
    let mut total_err = first.err;
    let mut heap = BinaryHeap::new();
    heap.push(first);
    let mut stuck = false;

    while total_err > cfg.tolerance(total.norm()) && heap.len() < cfg.max_subdivisions {
        let worst = match heap.pop() {
            Some(p) => p,
            None => break,
        };
        let mid = 0.5 * (worst.a + worst.b);
        if !(mid > worst.a && mid < worst.b) {
            heap.push(worst);
            stuck = true;
            break;
        }
        let left = gk15(&f, worst.a, mid)?;
        let right = gk15(&f, mid, worst.b)?;
        n_evals += 30;
        total += left.value + right.value - worst.value;
        total_err += left.err + right.err - worst.err;
        heap.push(left);
        heap.push(right);
    }

    // Final sum in interval order so the result does not depend on
    // accumulated running-sum drift.
    let mut panels = heap.into_vec();
    panels.sort_by(|p, q| p.a.total_cmp(&q.a));
    let value = panels
        .iter()
        .fold(Complex64::new(0.0, 0.0), |acc, p| acc + p.value);
    let abs_error_estimate = panels.iter().map(|p| p.err).sum::<f64>();
    let converged = !stuck && abs_error_estimate <= cfg.tolerance(value.norm());

    Ok(QuadResult {
        value,
        abs_error_estimate,
        n_evals,
        converged,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use std::f64::consts::PI;

    fn re(f: impl Fn(f64) -> f64) -> impl Fn(f64) -> Complex64 {
        move |x| Complex64::new(f(x), 0.0)
    }

    #[test]
    fn polynomial_is_exact() {
        let r = integrate_adaptive(re(|x| x * x), 0.0, 1.0, &QuadConfig::default()).unwrap();
        assert!(r.converged);
        assert!((r.value.re - 1.0 / 3.0).abs() < 1e-15);
        assert_eq!(r.n_evals, 15);
    }

    #[test]
    fn long_lorentzian() {
        let r = integrate_adaptive(re(|x| 1.0 / (1.0 + x * x)), 0.0, 1e6, &QuadConfig::default())
            .unwrap();
        assert!(r.converged);
        let exact = 1e6f64.atan();
        assert!((r.value.re - exact).abs() < 1e-9);
        assert!((r.value.re - PI / 2.0).abs() < 1e-6 + 1e-9);
    }

    #[test]
    fn nan_integrand_is_reported() {
        let err = integrate_adaptive(re(|x| (x - 0.5).ln()), 0.0, 1.0, &QuadConfig::default())
            .unwrap_err();
        assert!(matches!(err, Error::NonFiniteIntegrand { .. }));
    }

    #[test]
    fn exhausted_budget_is_flagged() {
        let cfg = QuadConfig {
            max_subdivisions: 2,
            ..QuadConfig::default()
        };
        let r = integrate_adaptive(re(|x| (50.0 * x).sin()), 0.0, 10.0, &cfg).unwrap();
        assert!(!r.converged);
        assert!(r.require_converged().is_err());
    }

    #[test]
    fn rejects_reversed_interval() {
        let err = integrate_adaptive(re(|x| x), 1.0, 0.0, &QuadConfig::default()).unwrap_err();
        assert!(matches!(err, Error::InvalidInterval { .. }));
    }
}
