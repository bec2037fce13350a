pub mod arith;
pub mod constants;
pub mod error;
pub mod error_terms;
pub mod moments;
pub mod numeric;
pub mod spacing;
pub mod truncated_series;
pub mod zeta_atkinson;

pub use error::{Error, Result};
