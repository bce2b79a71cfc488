pub mod error;
pub mod landau;
pub mod ode;
pub mod oracle;
pub mod quad;
pub mod specfun;
pub mod suite;

pub use error::{Error, Result};
