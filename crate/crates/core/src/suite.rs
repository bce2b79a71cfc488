//! The full list of named identity checks, run in a fixed order.

use crate::error::Result;
use crate::landau::{
    alpha_beta_checks, boundary_conditions, bracket_residual, closed_form, even_transform_check,
    kn_hierarchy, ode4_check, pq_from_uv, series_extract, solve_hierarchy, solve_t, solve_tau_hierarchy,
    symmetric_grid, t0_relation, t_infinity, t_infinity_from_t_zero, t_zero, truncated_transform_check,
    GeneratingSolution, HierarchyResult, IdentityResult, SolveConfig,
};
use crate::oracle::{direct_i1, direct_i2, direct_tau1, DampingSchedule};
use crate::quad::QuadConfig;
use crate::specfun::{contour_segments, p_aux, q_aux, u_aux, v_aux, ContourParams};
use num_complex::Complex64;
use rayon::prelude::*;
use std::f64::consts::{FRAC_PI_2, PI};
use std::time::Instant;

pub const T_GRID: [f64; 6] = [-2.0, -1.0, -0.5, 0.5, 1.0, 2.0];
const TRANSFORM_S: [f64; 3] = [0.5, 1.0, 2.0];
const SYMMETRY_T: [f64; 4] = [-3.0, -1.0, 1.0, 3.0];
const PQ_T: [f64; 4] = [-3.0, -1.0, 1.0, 2.0];
const HIERARCHY_DEPTH: usize = 6;
const KN_DEPTH: usize = 3;

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteConfig {
    pub solve: SolveConfig,
    pub t_grid: Vec<f64>,
    pub damping: DampingSchedule,
    /// Quadrature settings for the brute-force oracle.
    pub oracle_quad: QuadConfig,
    /// Contour radius and indentation.
    pub contour_r: f64,
    pub contour_eps: f64,
    /// Skip the four-fold oracle.
    pub fast: bool,
    /// Every tolerance is divided by this factor.
    pub tol_scale: f64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            solve: SolveConfig::default(),
            t_grid: T_GRID.to_vec(),
            damping: DampingSchedule::default(),
            oracle_quad: QuadConfig::default().with_rel_tol(1e-8),
            contour_r: 1e4,
            contour_eps: 1e-4,
            fast: false,
            tol_scale: 1.0,
        }
    }
}

impl SuiteConfig {
    pub fn validate(&self) -> Result<()> {
        use crate::error::Error;
        self.solve.validate()?;
        self.damping.validate()?;
        self.oracle_quad.validate()?;
        if self.t_grid.iter().any(|t| !t.is_finite()) {
            return Err(Error::InvalidConfig("t grid must be finite".into()));
        }
        if !(self.tol_scale > 0.0 && self.tol_scale.is_finite()) {
            return Err(Error::InvalidConfig(format!("tol_scale must be positive, got {}", self.tol_scale)));
        }
        ContourParams {
            a: Complex64::new(1.0, 0.0),
            b: Complex64::new(0.0, 0.0),
            t: 1.0,
            r: self.contour_r,
            eps: self.contour_eps,
        }
        .validate()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckOutcome {
    pub result: IdentityResult,
    /// Wall-clock time of the job that produced the result.
    pub seconds: f64,
    /// Set when the computation itself failed; the check then fails.
    pub error: Option<String>,
}

impl CheckOutcome {
    pub fn pass(&self) -> bool {
        self.error.is_none() && self.result.pass
    }
}

type Job<'a> = (String, Box<dyn Fn() -> Result<Vec<IdentityResult>> + Sync + 'a>);

fn job<'a, F>(name: impl Into<String>, f: F) -> Job<'a>
where
    F: Fn() -> Result<Vec<IdentityResult>> + Sync + 'a,
{
    (name.into(), Box::new(f))
}

fn one(r: Result<IdentityResult>) -> Result<Vec<IdentityResult>> {
    r.map(|r| vec![r])
}

/// Shared state solved once before the checks run.
struct Prepared {
    solutions: Vec<Result<GeneratingSolution>>,
    hierarchy: Result<HierarchyResult>,
}

fn prepare(cfg: &SuiteConfig) -> Prepared {
    let solutions = cfg.t_grid.par_iter().map(|&t| solve_t(t, &cfg.solve)).collect();
    let hierarchy = solve_tau_hierarchy(HIERARCHY_DEPTH, &cfg.solve);
    Prepared { solutions, hierarchy }
}

fn jobs<'a>(cfg: &'a SuiteConfig, prep: &'a Prepared) -> Vec<Job<'a>> {
    let quad = &cfg.solve.quad;
    let mut out: Vec<Job<'a>> = Vec::new();

    for n in 1..=HIERARCHY_DEPTH {
        out.push(job(format!("I_{n}"), move || {
            let h = prep.hierarchy.clone()?;
            let exact = closed_form(n);
            one(Ok(IdentityResult::real(format!("I_{n}"), h.values[n - 1], exact, 1e-6 * exact)))
        }));
    }

    for (i, &t) in cfg.t_grid.iter().enumerate() {
        let sol = move || prep.solutions[i].as_ref().map_err(Clone::clone);
        out.push(job(format!("T_zero(t={t})"), move || one(t_zero(sol()?))));
        out.push(job(format!("T_infinity(t={t})"), move || one(t_infinity(sol()?))));
        out.push(job(format!("T_infinity_from_T_zero(t={t})"), move || {
            one(t_infinity_from_t_zero(sol()?))
        }));
        out.push(job(format!("T_zero_vs_alpha_beta(t={t})"), move || {
            one(t0_relation(sol()?, &cfg.solve))
        }));
        out.push(job(format!("alpha_beta(t={t})"), move || {
            let mut v = alpha_beta_checks(sol()?, &cfg.solve)?;
            v.truncate(2);
            Ok(v)
        }));
        out.push(job(format!("bracket_residual(t={t})"), move || {
            one(bracket_residual(sol()?, &cfg.solve))
        }));
        for &s in &TRANSFORM_S {
            out.push(job(format!("even_transform(t={t},s={s})"), move || {
                one(even_transform_check(sol()?, s, &cfg.solve))
            }));
            out.push(job(format!("truncated_transform(t={t},s={s})"), move || {
                one(truncated_transform_check(sol()?, s, &cfg.solve))
            }));
        }
    }

    for &t in &SYMMETRY_T {
        out.push(job(format!("UV_symmetry(t={t})"), move || {
            let u = u_aux(t, quad)?.value.re;
            let v = v_aux(-t, quad)?.value.re;
            one(Ok(IdentityResult::real(
                format!("UV_symmetry(t={t})"),
                u,
                (PI * t / 8.0).exp() * v,
                1e-10 * u.abs(),
            )))
        }));
    }

    for &t in &PQ_T {
        out.push(job(format!("PQ_from_UV(t={t})"), move || {
            let (p, q) = pq_from_uv(t, quad)?;
            Ok(vec![
                IdentityResult::new(format!("P_from_UV(t={t})"), p, p_aux(t, quad)?.value, 1e-8),
                IdentityResult::new(format!("Q_from_UV(t={t})"), q, q_aux(t, quad)?.value, 1e-8),
            ])
        }));
    }

    let i = Complex64::new(0.0, 1.0);
    let one_c = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    for (a, b, t) in [(one_c, zero, 1.0), (zero, one_c, 1.0), (one_c, i, -1.0)] {
        let name = format!("contour_closure(A={a},B={b},t={t})");
        out.push(job(name.clone(), move || {
            let p = ContourParams {
                a,
                b,
                t,
                r: cfg.contour_r,
                eps: cfg.contour_eps,
            };
            let seg = contour_segments(&p, quad)?;
            one(Ok(IdentityResult::new(name.clone(), seg.sum, zero, 1e-2)))
        }));
    }

    out.push(job("K_equals_I", move || {
        let k = kn_hierarchy(KN_DEPTH, &cfg.solve)?;
        let h = prep.hierarchy.clone()?;
        Ok((0..KN_DEPTH)
            .map(|n| IdentityResult::real(format!("K_{}=I_{}", n + 1, n + 1), k.values[n], h.values[n], 1e-5))
            .collect())
    }));

    out.push(job("ode4_residual(t=1)", move || {
        let sol = solve_t(1.0, &cfg.solve)?;
        let mut v = vec![ode4_check(&sol)?];
        v.extend(boundary_conditions(&sol)?);
        Ok(v)
    }));

    out.push(job("series_extract", move || {
        let fit = series_extract(&symmetric_grid(17), 8, &cfg.solve)?;
        Ok(vec![
            IdentityResult::real("series_coefficient_1", fit.coefficients[1], closed_form(1), 1e-4),
            IdentityResult::real("series_coefficient_2", fit.coefficients[2], closed_form(2), 1e-3),
        ])
    }));

    out.push(job("oracle_I1", move || {
        let r = direct_i1(&cfg.damping, &cfg.oracle_quad)?;
        one(Ok(IdentityResult::real("oracle_I1", r.value, FRAC_PI_2, 1e-3)))
    }));
    out.push(job("oracle_tau1(0)", move || {
        let r = direct_tau1(0.0, &cfg.damping, &cfg.oracle_quad)?;
        let h = solve_hierarchy(1, &cfg.solve)?;
        one(Ok(IdentityResult::real("oracle_tau1(0)", r.value, h.tau(1, 0.0)?, 1e-3)))
    }));
    if !cfg.fast {
        out.push(job("oracle_I2", move || {
            let r = direct_i2(&cfg.damping, &cfg.oracle_quad)?;
            one(Ok(IdentityResult::real("oracle_I2", r.value, PI * PI / 16.0, 1e-2)))
        }));
    }
    out
}

/// Run every check. Results come back in declaration order whatever the
/// thread count; a check whose computation fails is reported as failed.
pub fn run_suite(cfg: &SuiteConfig) -> Result<Vec<CheckOutcome>> {
    cfg.validate()?;
    let prep = prepare(cfg);
    let list = jobs(cfg, &prep);
    let nested: Vec<Vec<CheckOutcome>> = list
        .par_iter()
        .map(|(name, f)| {
            let start = Instant::now();
            let r = f();
            let seconds = start.elapsed().as_secs_f64();
            match r {
                Ok(v) => v
                    .into_iter()
                    .map(|r| CheckOutcome {
                        result: r.rescaled(cfg.tol_scale),
                        seconds,
                        error: None,
                    })
                    .collect(),
                Err(e) => vec![CheckOutcome {
                    result: IdentityResult {
                        name: name.clone(),
                        lhs: Complex64::new(f64::NAN, f64::NAN),
                        rhs: Complex64::new(f64::NAN, f64::NAN),
                        abs_diff: f64::NAN,
                        tol: 0.0,
                        pass: false,
                    },
                    seconds,
                    error: Some(e.to_string()),
                }],
            }
        })
        .collect();
    Ok(nested.into_iter().flatten().collect())
}
