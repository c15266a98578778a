use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid function spec: {0}")]
    InvalidSpec(String),

    #[error("lacunarity violated: {0}")]
    Lacunarity(String),

    #[error("pole {0} lies inside the closed unit disc")]
    PoleInsideDisc(String),

    #[error("point {0} is not inside the unit disc")]
    OutsideDisc(String),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("hypothesis fails: {0}")]
    HypothesisFailed(String),

    #[error("exponent range not covered: {0} (pass --experimental to run anyway)")]
    UncoveredRange(String),

    #[error("no closed form: {0}")]
    NoClosedForm(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
