use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("characteristics y are not monotone at cell index {index}")]
    NonMonotoneY { index: usize },

    #[error("states live on different grids")]
    GridMismatch,

    #[error("fixed-point iteration did not converge after {iterations} iterations (residual {residual:e})")]
    FixedPointDiverged { iterations: usize, residual: f64 },

    #[error("adaptive step size underflow at t = {t} (h = {h:e})")]
    StepSizeUnderflow { t: f64, h: f64 },

    #[error("no root bracket for Lagrangian label {xi}: profile energy reaches the edge of its x-range")]
    RootBracketFailure { xi: f64 },

    #[error("traveling-wave profile integration blew up: {0}")]
    ProfileBlowup(String),

    #[error("cuspon construction has y_xi < 0 at xi = {xi}")]
    NonMonotoneConstruction { xi: f64 },

    #[error("convergence fit needs at least 3 positive, distinct points")]
    DegenerateFit,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("profile parse error on line {line}: {message}")]
    ProfileParse { line: usize, message: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
