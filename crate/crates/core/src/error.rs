//! Error type shared by every model in the crate.

use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// An input lies outside its accepted range.
    #[error("invalid {name} = {value}: {reason}")]
    Validation {
        name: &'static str,
        value: f64,
        reason: String,
    },

    /// The sheet cannot bind a TM surface wave at this frequency.
    #[error("no bound TM mode: Re(q)/k0 = {confinement:.6} does not exceed {threshold:.6}")]
    NoBoundMode { confinement: f64, threshold: f64 },

    #[error("dispersion solver did not converge after {iterations} iterations (residual {residual:.3e})")]
    Convergence { iterations: usize, residual: f64 },

    #[error("infeasible patch design: {0}")]
    InfeasibleDesign(String),

    #[error("bisection bracket does not contain the target: {0}")]
    BracketFailure(String),

    #[error("FDTD run unstable at step {step}: |field| = {magnitude:.3e}")]
    Instability { step: usize, magnitude: f64 },
}

impl Error {
    /// True for errors raised by numerical procedures rather than bad inputs.
    pub fn is_numerical(&self) -> bool {
        !matches!(self, Error::Validation { .. })
    }
}

pub(crate) fn invalid(name: &'static str, value: f64, reason: impl Into<String>) -> Error {
    Error::Validation {
        name,
        value,
        reason: reason.into(),
    }
}

/// Rejects NaN/inf and values outside `[lo, hi]`.
pub(crate) fn check_range(name: &'static str, value: f64, lo: f64, hi: f64) -> Result<f64> {
    if !value.is_finite() || value < lo || value > hi {
        return Err(invalid(
            name,
            value,
            alloc::format!("accepted range is [{lo}, {hi}]"),
        ));
    }
    Ok(value)
}

pub(crate) fn check_positive(name: &'static str, value: f64) -> Result<f64> {
    if !value.is_finite() || value <= 0.0 {
        return Err(invalid(name, value, "must be finite and > 0"));
    }
    Ok(value)
}
