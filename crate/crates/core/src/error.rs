use alloc::string::String;

use crate::Complex;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("point {point} is not interior to {domain}")]
    OutsideDomain { point: Complex, domain: String },
    #[error("invalid parameter `{name}` = {value}")]
    InvalidParameter { name: &'static str, value: f64 },
    #[error("invalid domain: {0}")]
    InvalidDomain(String),
    #[error("degenerate input: {0}")]
    Degenerate(&'static str),
    #[error("invalid curve: {0}")]
    InvalidCurve(&'static str),
    #[error("illegal prime end: {0}")]
    IllegalPrimeEnd(String),
    #[error("no catalog route between {0} and {1}")]
    UnsupportedPair(String, String),
    #[error("distance minimiser escaped every bracket (last bracket end t = {last_bracket})")]
    Diverging { last_bracket: f64 },
    #[error("adaptive quadrature did not converge (estimate {estimate}, error {error})")]
    Quadrature { estimate: f64, error: f64 },
    #[error("scenario invalid: {0}")]
    ScenarioInvalid(String),
    #[error("model inconsistency: {0}")]
    ModelInconsistency(String),
    #[error("estimation failure: {0}")]
    EstimationFailure(String),
}

impl Error {
    /// Stable machine-readable code.
    pub fn code(&self) -> &'static str {
        match self {
            Error::OutsideDomain { .. } => "OUTSIDE_DOMAIN",
            Error::InvalidParameter { .. } => "INVALID_PARAMETER",
            Error::InvalidDomain(_) => "INVALID_DOMAIN",
            Error::Degenerate(_) => "DEGENERATE_INPUT",
            Error::InvalidCurve(_) => "INVALID_CURVE",
            Error::IllegalPrimeEnd(_) => "ILLEGAL_PRIME_END",
            Error::UnsupportedPair(..) => "UNSUPPORTED_PAIR",
            Error::Diverging { .. } => "DIVERGING",
            Error::Quadrature { .. } => "QUADRATURE_FAILURE",
            Error::ScenarioInvalid(_) => "SCENARIO_INVALID",
            Error::ModelInconsistency(_) => "MODEL_INCONSISTENCY",
            Error::EstimationFailure(_) => "ESTIMATION_FAILURE",
        }
    }

    pub(crate) fn outside(point: Complex, domain: &str) -> Self {
        Error::OutsideDomain { point, domain: String::from(domain) }
    }
}
