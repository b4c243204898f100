use thiserror::Error;

use crate::params::{Family, Violation};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameters: {}", format_violations(.0))]
    InvalidParams(Vec<Violation>),
    #[error("positivity condition fails already at s = 0")]
    ConditionViolatedAtZero,
    #[error("s = {s} is not strictly inside the domain interval ({lo}, {hi})")]
    OutOfDomain { s: f64, lo: f64, hi: f64 },
    #[error("sphere families are singular at s = 0")]
    SphereAtZero,
    #[error("chart point is invalid: {0}")]
    ChartInvalid(String),
    #[error("degenerate frame: det g = {det:e}")]
    DegenerateFrame { det: f64 },
    #[error("quadrature did not reach tolerance: estimate {error_bound:e} after {panels} panels")]
    MaxSubdivisions { panels: usize, error_bound: f64 },
    #[error("integrand is not integrable on the semi-infinite range")]
    NonIntegrable,
    #[error("integrand returned a non-finite value at t = {at}")]
    NonFinite { at: f64 },
    #[error("Newton iteration did not converge: residual {residual:e} after {iterations} iterations")]
    NoConvergence { iterations: usize, residual: f64 },
    #[error("finite-difference Jacobian is singular (condition estimate {condition:e})")]
    SingularJacobian { condition: f64 },
    #[error("target lies outside the image of the phase map")]
    TargetOutsideImage,
    #[error("classification needs alpha != 0")]
    AlphaZero,
    #[error("operation requires family {expected:?}, found {found:?}")]
    WrongFamily { expected: Family, found: Family },
    #[error("wrong parameters: {0}")]
    WrongParameters(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

fn format_violations(v: &[Violation]) -> String {
    v.iter().map(|x| format!("{}: {}", x.field, x.reason)).collect::<Vec<_>>().join("; ")
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
