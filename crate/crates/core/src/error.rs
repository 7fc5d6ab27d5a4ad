use thiserror::Error;

/// Errors raised by the numerical routines in this crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error(
        "Hermite degree {degree} exceeds the configured cap {cap}; check the truncation settings"
    )]
    DegreeOverflow { degree: usize, cap: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("Gauss-Hermite node solver did not converge for k = {k}")]
    NodeSolver { k: usize },

    #[error("invalid node count k = {k}; expected 1 <= k <= {max}")]
    NodeCount { k: usize, max: usize },

    #[error("tensor grid needs {nodes} nodes, above the budget of {budget}; use quasi-Monte Carlo integration instead")]
    NodeBudget { nodes: u128, budget: usize },

    #[error("{what} = {value} is outside its domain {domain}")]
    Domain {
        what: &'static str,
        value: f64,
        domain: &'static str,
    },

    #[error("expansion is not a probability density: constant coefficient is {constant}")]
    NotADensity { constant: f64 },

    #[error("law is not square integrable against the Gaussian measure: component {component}, coordinate {coordinate} has variance {variance}")]
    Integrability {
        component: usize,
        coordinate: usize,
        variance: f64,
    },

    #[error("law is not smoothable at alpha = {alpha}: component {component}, coordinate {coordinate} would get base variance {base_variance}")]
    Smoothness {
        alpha: f64,
        component: usize,
        coordinate: usize,
        base_variance: f64,
    },

    #[error("invalid law: {0}")]
    InvalidLaw(String),

    #[error("truncation tail {tail:e} exceeds {limit:e} at n = {n}; raise the truncation degree")]
    Truncation { n: usize, tail: f64, limit: f64 },

    #[error("n = {n} is below the eligibility threshold {threshold} for this bound")]
    BoundIneligible { n: usize, threshold: f64 },

    #[error("internal inconsistency: {0}")]
    Inconsistent(String),

    #[error(
        "rate fit needs at least {needed} points above the quadrature noise floor, got {usable}"
    )]
    NoiseFloor { usable: usize, needed: usize },

    #[error("budget exceeded: {0}")]
    Budget(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("invalid config: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
