//! Blaschke-product interpolation in Hardy spaces and two-sided stability
//! bounds for recovering analytic functions from approximate samples.

#[cfg(test)]
macro_rules! assert_close {
    ($a:expr, $b:expr, $tol:expr) => {{
        let (a, b): (f64, f64) = ($a, $b);
        assert!((a - b).abs() <= $tol, "{} vs {} (tol {})", a, b, $tol);
    }};
}

pub mod bounds;
pub mod cli;
pub mod disk;
pub mod error;
pub mod exact;
pub mod interp;
pub mod potential;
pub mod scenarios;

pub use error::{HardyError, Result};
