use thiserror::Error;

/// Errors raised by model evaluation, quadrature and the dispersion-relation
/// checks built on top of them.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("evaluation at branch point omega = {omega} (branch frequency {branch})")]
    BranchPointSingularity { omega: f64, branch: f64 },

    #[error("frequency {re}{im:+}i lies outside the closed upper half-plane")]
    DomainError { re: f64, im: f64 },

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("integrand is not finite at x = {at}; declared singularities do not cover it")]
    SingularityMisdeclared { at: f64 },

    #[error("quadrature did not reach tolerance: value {value}, error estimate {error} after {evaluations} evaluations")]
    ToleranceNotMet {
        value: f64,
        error: f64,
        evaluations: usize,
    },

    #[error(
        "integrand decays like x^-{exponent:.3}; at least x^-1.5 is required for the tail map"
    )]
    DecayTooSlow { exponent: f64 },

    #[error("evaluation point {omega} lies on the singular set of the model")]
    SingularEvaluationPoint { omega: f64 },

    #[error("semicircle radius {rho} too large (limit {limit})")]
    RadiusTooLarge { rho: f64, limit: f64 },

    #[error("unsupported for this model: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
