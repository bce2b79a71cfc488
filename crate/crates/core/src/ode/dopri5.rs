use super::{OdeConfig, OdeSystem, Trajectory};
use crate::error::{Error, Result};

const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;

const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const A71: f64 = 35.0 / 384.0;
const A73: f64 = 500.0 / 1113.0;
const A74: f64 = 125.0 / 192.0;
const A75: f64 = -2187.0 / 6784.0;
const A76: f64 = 11.0 / 84.0;

const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

const D1: f64 = -12715105075.0 / 11282082432.0;
const D3: f64 = 87487479700.0 / 32700410799.0;
const D4: f64 = -10690763975.0 / 1880347072.0;
const D5: f64 = 701980252875.0 / 199316789632.0;
const D6: f64 = -1453857185.0 / 822651844.0;
const D7: f64 = 69997945.0 / 29380423.0;

// PI controller constants.
const BETA: f64 = 0.04;
const SAFE: f64 = 0.9;
const FAC_MIN: f64 = 0.2;
const FAC_MAX: f64 = 10.0;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Stats {
    pub accepted: usize,
    pub rejected: usize,
    pub rhs_evals: usize,
}

struct Work {
    k: [Vec<f64>; 7],
    tmp: Vec<f64>,
    y1: Vec<f64>,
}

/// Drive the integration, calling `on_step(x, y, dense)` after each
/// accepted step. `dense` holds the five interpolation coefficient vectors.
fn run<S, C>(sys: &S, x0: f64, y0: &[f64], x1: f64, cfg: &OdeConfig, mut on_step: C) -> Result<(Vec<f64>, Stats)>
where
    S: OdeSystem + ?Sized,
    C: FnMut(f64, &[f64], &[f64]),
{
    cfg.validate()?;
    if !(x0.is_finite() && x1.is_finite() && x0 < x1) {
        return Err(Error::InvalidInterval { a: x0, b: x1 });
    }
    let n = y0.len();
    let mut w = Work {
        k: std::array::from_fn(|_| vec![0.0; n]),
        tmp: vec![0.0; n],
        y1: vec![0.0; n],
    };
    let mut dense = vec![0.0; 5 * n];
    let mut y = y0.to_vec();
    let mut x = x0;
    let mut stats = Stats::default();
    let expo1 = 0.2 - BETA * 0.75;
    let mut facold: f64 = 1e-4;
    let mut h = cfg.h_init;
    let mut last_rejected = false;

    sys.rhs(x, &y, &mut w.k[0]);
    stats.rhs_evals += 1;

    loop {
        if stats.accepted + stats.rejected >= cfg.max_steps {
            return Err(Error::MaxStepsExceeded { x, max_steps: cfg.max_steps });
        }
        h = h.min(cfg.h_max).min(sys.max_step(x));
        let remaining = x1 - x;
        let last = h >= remaining * (1.0 - 1e-12);
        if last {
            h = remaining;
        } else if h < cfg.h_min {
            return Err(Error::StepUnderflow { x, h });
        }

        stage(sys, x, &y, h, &mut w);
        stats.rhs_evals += 6;

        let mut err = 0.0f64;
        for i in 0..n {
            let e = h * (E1 * w.k[0][i] + E3 * w.k[2][i] + E4 * w.k[3][i] + E5 * w.k[4][i] + E6 * w.k[5][i] + E7 * w.k[6][i]);
            let sk = cfg.atol + cfg.rtol * y[i].abs().max(w.y1[i].abs());
            err = err.max((e / sk).abs());
        }
        if !err.is_finite() || w.y1.iter().any(|v| !v.is_finite()) {
            // Treat as a rejection with maximal shrink; give up once h is tiny.
            stats.rejected += 1;
            if h * FAC_MIN < cfg.h_min {
                return Err(Error::NonFiniteState { x });
            }
            h *= FAC_MIN;
            last_rejected = true;
            continue;
        }

        let fac11 = err.powf(expo1);
        let fac = (fac11 / facold.powf(BETA) / SAFE).clamp(1.0 / FAC_MAX, 1.0 / FAC_MIN);
        let mut h_new = h / fac;

        if err <= 1.0 {
            facold = err.max(1e-4);
            stats.accepted += 1;
            let x_new = if last { x1 } else { x + h };
            for i in 0..n {
                let ydiff = w.y1[i] - y[i];
                let bspl = h * w.k[0][i] - ydiff;
                dense[i] = y[i];
                dense[n + i] = ydiff;
                dense[2 * n + i] = bspl;
                dense[3 * n + i] = ydiff - h * w.k[6][i] - bspl;
                dense[4 * n + i] = h
                    * (D1 * w.k[0][i] + D3 * w.k[2][i] + D4 * w.k[3][i] + D5 * w.k[4][i] + D6 * w.k[5][i] + D7 * w.k[6][i]);
            }
            on_step(x_new, &w.y1, &dense);
            std::mem::swap(&mut y, &mut w.y1);
            let k7 = std::mem::take(&mut w.k[6]);
            w.k[6] = std::mem::replace(&mut w.k[0], k7);
            x = x_new;
            if last {
                return Ok((y, stats));
            }
            if last_rejected {
                h_new = h_new.min(h);
            }
            last_rejected = false;
        } else {
            h_new = h / (fac11 / SAFE).min(1.0 / FAC_MIN);
            stats.rejected += 1;
            last_rejected = true;
        }
        h = h_new;
    }
}

#[inline]
fn stage<S: OdeSystem + ?Sized>(sys: &S, x: f64, y: &[f64], h: f64, w: &mut Work) {
    let n = y.len();
    let Work { k, tmp, y1 } = w;
    let [k1, k2, k3, k4, k5, k6, k7] = k;
    for i in 0..n {
        tmp[i] = y[i] + h * A21 * k1[i];
    }
    sys.rhs(x + C2 * h, tmp, k2);
    for i in 0..n {
        tmp[i] = y[i] + h * (A31 * k1[i] + A32 * k2[i]);
    }
    sys.rhs(x + C3 * h, tmp, k3);
    for i in 0..n {
        tmp[i] = y[i] + h * (A41 * k1[i] + A42 * k2[i] + A43 * k3[i]);
    }
    sys.rhs(x + C4 * h, tmp, k4);
    for i in 0..n {
        tmp[i] = y[i] + h * (A51 * k1[i] + A52 * k2[i] + A53 * k3[i] + A54 * k4[i]);
    }
    sys.rhs(x + C5 * h, tmp, k5);
    for i in 0..n {
        tmp[i] = y[i] + h * (A61 * k1[i] + A62 * k2[i] + A63 * k3[i] + A64 * k4[i] + A65 * k5[i]);
    }
    sys.rhs(x + h, tmp, k6);
    for i in 0..n {
        y1[i] = y[i] + h * (A71 * k1[i] + A73 * k3[i] + A74 * k4[i] + A75 * k5[i] + A76 * k6[i]);
    }
    sys.rhs(x + h, y1, k7);
}

/// Integrate `y' = f(x, y)` from `x0` to `x1 > x0`, keeping every accepted
/// step for dense evaluation.
pub fn integrate<S: OdeSystem>(sys: S, x0: f64, y0: &[f64], x1: f64, cfg: &OdeConfig) -> Result<Trajectory> {
    let dim = y0.len();
    let mut xs = vec![x0];
    let mut ys = y0.to_vec();
    let mut coeffs = Vec::new();
    let (_, stats) = run(&sys, x0, y0, x1, cfg, |x, y, dense| {
        xs.push(x);
        ys.extend_from_slice(y);
        coeffs.extend_from_slice(dense);
    })?;
    Ok(Trajectory {
        dim,
        xs,
        ys,
        coeffs,
        stats,
    })
}

/// Like [`integrate`] but only returns the final state.
pub fn integrate_final<S: OdeSystem>(sys: S, x0: f64, y0: &[f64], x1: f64, cfg: &OdeConfig) -> Result<(Vec<f64>, Stats)> {
    run(&sys, x0, y0, x1, cfg, |_, _, _| {})
}
