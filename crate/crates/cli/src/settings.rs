use osc_identity::landau::SolveConfig;
use osc_identity::ode::OdeConfig;
use osc_identity::oracle::DampingSchedule;
use osc_identity::quad::QuadConfig;
use osc_identity::suite::SuiteConfig;
use serde::Serialize;
use std::path::Path;

/// Every tunable, flat, in the form the config file and the report use.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Settings {
    pub x_min: f64,
    pub x_max: f64,
    pub init_tol: f64,
    pub ode_rtol: f64,
    pub ode_atol: f64,
    pub ode_h_max: f64,
    pub ode_max_steps: usize,
    pub quad_rel_tol: f64,
    pub quad_abs_tol: f64,
    pub t_grid: Vec<f64>,
    pub damping: Vec<f64>,
    pub extrapolation_order: usize,
    pub oracle_rel_tol: f64,
    pub contour_r: f64,
    pub contour_eps: f64,
    pub fast: bool,
    pub tol_scale: f64,
    /// 0 lets the thread pool pick.
    pub threads: usize,
}

impl Default for Settings {
    fn default() -> Self {
        let s = SuiteConfig::default();
        Self {
            x_min: s.solve.x_min,
            x_max: s.solve.x_max,
            init_tol: s.solve.init_tol,
            ode_rtol: s.solve.ode.rtol,
            ode_atol: s.solve.ode.atol,
            ode_h_max: s.solve.ode.h_max,
            ode_max_steps: s.solve.ode.max_steps,
            quad_rel_tol: s.solve.quad.rel_tol,
            quad_abs_tol: s.solve.quad.abs_tol,
            t_grid: s.t_grid,
            damping: s.damping.eps_list,
            extrapolation_order: s.damping.extrapolation_order,
            oracle_rel_tol: s.oracle_quad.rel_tol,
            contour_r: s.contour_r,
            contour_eps: s.contour_eps,
            fast: s.fast,
            tol_scale: s.tol_scale,
            threads: 0,
        }
    }
}

fn num<T: std::str::FromStr>(key: &str, v: &str) -> Result<T, String> {
    v.parse().map_err(|_| format!("bad value for {key}: {v:?}"))
}

fn list(key: &str, v: &str) -> Result<Vec<f64>, String> {
    v.split(',').map(|p| num(key, p.trim())).collect()
}

impl Settings {
    pub fn set(&mut self, key: &str, v: &str) -> Result<(), String> {
        match key {
            "x_min" => self.x_min = num(key, v)?,
            "x_max" => self.x_max = num(key, v)?,
            "init_tol" => self.init_tol = num(key, v)?,
            "ode_rtol" => self.ode_rtol = num(key, v)?,
            "ode_atol" => self.ode_atol = num(key, v)?,
            "ode_h_max" => self.ode_h_max = num(key, v)?,
            "ode_max_steps" => self.ode_max_steps = num(key, v)?,
            "quad_rel_tol" => self.quad_rel_tol = num(key, v)?,
            "quad_abs_tol" => self.quad_abs_tol = num(key, v)?,
            "t_grid" => self.t_grid = list(key, v)?,
            "damping" => self.damping = list(key, v)?,
            "extrapolation_order" => self.extrapolation_order = num(key, v)?,
            "oracle_rel_tol" => self.oracle_rel_tol = num(key, v)?,
            "contour_r" => self.contour_r = num(key, v)?,
            "contour_eps" => self.contour_eps = num(key, v)?,
            "fast" => self.fast = num(key, v)?,
            "tol_scale" => self.tol_scale = num(key, v)?,
            "threads" => self.threads = num(key, v)?,
            _ => return Err(format!("unknown key {key:?}")),
        }
        Ok(())
    }

    /// `key = value` lines; `#` starts a comment.
    pub fn parse(&mut self, text: &str) -> Result<(), String> {
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| format!("line {}: expected key = value", i + 1))?;
            self.set(k.trim(), v.trim()).map_err(|e| format!("line {}: {e}", i + 1))?;
        }
        Ok(())
    }

    pub fn load(&mut self, path: &Path) -> Result<(), String> {
        let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        self.parse(&text)
    }

    pub fn suite(&self) -> Result<SuiteConfig, String> {
        if !(self.x_max > self.x_min) {
            return Err(format!("x_max ({}) must exceed x_min ({})", self.x_max, self.x_min));
        }
        let base = SuiteConfig::default();
        let cfg = SuiteConfig {
            solve: SolveConfig {
                x_min: self.x_min,
                x_max: self.x_max,
                init_tol: self.init_tol,
                ode: OdeConfig {
                    rtol: self.ode_rtol,
                    atol: self.ode_atol,
                    h_max: self.ode_h_max,
                    max_steps: self.ode_max_steps,
                    ..base.solve.ode
                },
                quad: QuadConfig {
                    rel_tol: self.quad_rel_tol,
                    abs_tol: self.quad_abs_tol,
                    ..base.solve.quad
                },
            },
            t_grid: self.t_grid.clone(),
            damping: DampingSchedule {
                eps_list: self.damping.clone(),
                extrapolation_order: self.extrapolation_order,
            },
            oracle_quad: base.oracle_quad.with_rel_tol(self.oracle_rel_tol),
            contour_r: self.contour_r,
            contour_eps: self.contour_eps,
            fast: self.fast,
            tol_scale: self.tol_scale,
        };
        cfg.validate().map_err(|e| e.to_string())?;
        Ok(cfg)
    }
}
