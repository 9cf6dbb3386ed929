use thiserror::Error;

/// Errors raised by the channel model, the solvers and the planner.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter `{field}`: {reason}")]
    InvalidParameter { field: &'static str, reason: String },

    #[error("degenerate geometry: the UAV sits on top of the ground receiver")]
    DegenerateGeometry,

    #[error("bracket [{lo}, {hi}] does not enclose a sign change (f(lo) = {f_lo}, f(hi) = {f_hi})")]
    BracketSign { lo: f64, hi: f64, f_lo: f64, f_hi: f64 },

    #[error("{what} did not converge after {iterations} iterations")]
    NoConvergence { what: &'static str, iterations: usize },

    #[error("{what}: residual {residual:e} exceeds tolerance {tolerance:e}")]
    Residual { what: &'static str, residual: f64, tolerance: f64 },

    #[error("no case of the vertical solution table matches (h_opt = {h_opt}, h_cov = {h_cov})")]
    UncoveredCase { h_opt: f64, h_cov: f64 },

    #[error("infeasible: {0}")]
    Infeasible(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(field: &'static str, reason: impl Into<String>) -> Error {
    Error::InvalidParameter { field, reason: reason.into() }
}
