use num_complex::Complex64;
use thiserror::Error;

/// Errors raised by the quadrature, special-function, ODE and solver layers.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("invalid integration interval [{a}, {b}]")]
    InvalidInterval { a: f64, b: f64 },

    #[error("integrand returned a non-finite value at x = {x}")]
    NonFiniteIntegrand { x: f64 },

    #[error("no convergence: best estimate {estimate} with error {abs_error}")]
    NonConvergence { estimate: Complex64, abs_error: f64 },

    #[error("argument {x} below the asymptotic regime (needs >= {min})")]
    DomainTooSmall { x: f64, min: f64 },

    #[error("arctan has a logarithmic pole at z = {z}")]
    PoleAt { z: Complex64 },

    #[error("quadrature abscissa {z} lies within {dist} of a pole")]
    PoleTooClose { z: Complex64, dist: f64 },

    #[error("step size underflow at x = {x} (h = {h})")]
    StepUnderflow { x: f64, h: f64 },

    #[error("maximum number of steps ({max_steps}) exceeded at x = {x}")]
    MaxStepsExceeded { x: f64, max_steps: usize },

    #[error("non-finite state at x = {x}")]
    NonFiniteState { x: f64 },

    #[error("x = {x} outside the trajectory range [{lo}, {hi}]")]
    OutOfRange { x: f64, lo: f64, hi: f64 },

    #[error("asymptotic initial data cannot reach {target:e} at |x| = {x} (best {achieved:e})")]
    InitRegime { x: f64, target: f64, achieved: f64 },

    #[error("least-squares fit is ill-conditioned (condition estimate {cond:e})")]
    IllConditioned { cond: f64 },

    #[error("damping extrapolation unstable: successive extrapolants {prev} and {last}")]
    ExtrapolationUnstable { prev: f64, last: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
