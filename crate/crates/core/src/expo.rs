//! Range-checked exponentials shared by the closed-form evaluators.

use crate::error::{Error, Result};

/// Largest exponent magnitude accepted by closed-form evaluations.
pub const MAX_EXPONENT: f64 = 700.0;

pub(crate) fn exp(x: f64) -> Result<f64> {
    if !x.is_finite() || x.abs() > MAX_EXPONENT {
        return Err(Error::Range(format!("exponent {x:e} outside ±{MAX_EXPONENT}")));
    }
    Ok(x.exp())
}

pub(crate) fn cosh(x: f64) -> Result<f64> {
    if !x.is_finite() || x.abs() > MAX_EXPONENT {
        return Err(Error::Range(format!("cosh argument {x:e} outside ±{MAX_EXPONENT}")));
    }
    Ok(x.cosh())
}

pub(crate) fn finite(x: f64, what: &str) -> Result<f64> {
    if x.is_finite() {
        Ok(x)
    } else {
        Err(Error::Range(format!("{what} is not finite")))
    }
}
