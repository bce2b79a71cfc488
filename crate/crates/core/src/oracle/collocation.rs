//! Iterated cumulative quadrature on Gauss–Legendre panels.
//!
//! `∫_{x_m<…<x_1} Π g(x_j) e^{i s_j x_j²}` is built level by level:
//! `L_k(x) = ∫_{-X}^x g(y) e^{i s_k y²} L_{k-1}(y) dy` with `L_0 = 1`, each
//! level sampled at the same nodes.

use num_complex::Complex64;

const NODES: usize = 16;

/// Gauss–Legendre nodes and weights on `[-1, 1]`.
fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut t = vec![0.0; n];
    let mut w = vec![0.0; n];
    for i in 0..n {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (p, dp) = legendre_with_derivative(n, x);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, dp) = legendre_with_derivative(n, x);
        t[i] = x;
        w[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    (t, w)
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    for k in 2..=n {
        let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
        p0 = p1;
        p1 = p2;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

/// `P_0..P_m` at `x`.
fn legendre_all(m: usize, x: f64) -> Vec<f64> {
    let mut p = vec![1.0, x];
    for k in 2..=m {
        p.push(((2 * k - 1) as f64 * x * p[k - 1] - (k - 1) as f64 * p[k - 2]) / k as f64);
    }
    p.truncate(m + 1);
    p
}

/// Rule with its cumulative matrix `S[j][k] = ∫_{-1}^{t_j} ℓ_k`.
struct PanelRule {
    t: Vec<f64>,
    w: Vec<f64>,
    s: Vec<Vec<f64>>,
}

impl PanelRule {
    fn new(n: usize) -> Self {
        let (t, w) = gauss_legendre(n);
        let p_at_nodes: Vec<Vec<f64>> = t.iter().map(|&x| legendre_all(n, x)).collect();
        let s = (0..n)
            .map(|j| {
                let pj = &p_at_nodes[j];
                (0..n)
                    .map(|k| {
                        let pk = &p_at_nodes[k];
                        let mut acc = 0.5 * (t[j] + 1.0);
                        for m in 1..n {
                            acc += 0.5 * pk[m] * (pj[m + 1] - pj[m - 1]);
                        }
                        w[k] * acc
                    })
                    .collect()
            })
            .collect();
        Self { t, w, s }
    }
}

/// Panels over `[-x, x]` narrow enough that `y²` turns by at most about
/// `2·refine` radians across each.
fn breakpoints(x: f64, refine: f64) -> Vec<f64> {
    let mut b = vec![-x];
    let mut at = -x;
    while at < x {
        let h = refine * (0.5f64).min(1.0 / (1.0 + at.abs()));
        at = (at + h).min(x);
        b.push(at);
    }
    b
}

/// `L_m(X)` for the phase signs `signs` listed innermost first.
pub(crate) fn ordered_chain(eps: f64, x: f64, signs: &[f64], refine: f64) -> Complex64 {
    let rule = PanelRule::new(NODES);
    let b = breakpoints(x, refine);
    let mut ys = Vec::with_capacity((b.len() - 1) * NODES);
    let mut halves = Vec::with_capacity(b.len() - 1);
    for pair in b.windows(2) {
        let (mid, half) = (0.5 * (pair[0] + pair[1]), 0.5 * (pair[1] - pair[0]));
        halves.push(half);
        ys.extend(rule.t.iter().map(|t| mid + half * t));
    }
    let mut level = vec![Complex64::new(1.0, 0.0); ys.len()];
    let mut total = Complex64::new(0.0, 0.0);
    for &s in signs {
        let f: Vec<Complex64> = ys
            .iter()
            .zip(&level)
            .map(|(&y, l)| Complex64::from_polar((-eps * y * y).exp(), s * y * y) * l)
            .collect();
        let mut next = vec![Complex64::new(0.0, 0.0); ys.len()];
        let mut prefix = Complex64::new(0.0, 0.0);
        for (p, &half) in halves.iter().enumerate() {
            let fp = &f[p * NODES..(p + 1) * NODES];
            for j in 0..NODES {
                let mut acc = Complex64::new(0.0, 0.0);
                for k in 0..NODES {
                    acc += rule.s[j][k] * fp[k];
                }
                next[p * NODES + j] = prefix + half * acc;
            }
            let mut inc = Complex64::new(0.0, 0.0);
            for k in 0..NODES {
                inc += rule.w[k] * fp[k];
            }
            prefix += half * inc;
        }
        level = next;
        total = prefix;
    }
    total
}
