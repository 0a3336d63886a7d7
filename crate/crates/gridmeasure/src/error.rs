use thiserror::Error;

/// Errors shared across the grid, generator and measure layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("grid index {index} exceeds maximum index {max}")]
    IndexOutOfRange { index: u64, max: u64 },

    #[error("cardinality overflows 64-bit arithmetic")]
    Overflow,

    #[error("grid scales differ: n = {left} vs n = {right}")]
    ScaleMismatch { left: u64, right: u64 },

    #[error("no delta-interval fits: floor(delta * n) = 0 for delta = {delta} at n = {n}")]
    GridTooCoarse { delta: f64, n: u64 },

    #[error("exponent s must lie in (0, 1], got {s}")]
    InvalidS { s: f64 },

    #[error("set too large for the exhaustive oracle: cardinality {cardinality} > {limit}")]
    TooLarge { cardinality: u64, limit: u64 },

    #[error("eta must be positive, got {eta}")]
    InvalidEta { eta: f64 },

    #[error("eps must be positive, got {eps}")]
    InvalidEps { eps: f64 },

    #[error("stage {stage} exceeds the supported maximum {limit}")]
    StageTooLarge { stage: u32, limit: u32 },

    #[error("need at least two distinct box sizes for a slope fit")]
    DegenerateFit,

    #[error("box size {size} does not divide grid extent {n}")]
    BoxSize { size: u64, n: u64 },

    #[error(
        "slope does not change sign on ({lo}, {hi}]: slope({lo}) = {slope_lo}, slope({hi}) = {slope_hi}"
    )]
    NoBracket {
        lo: f64,
        hi: f64,
        slope_lo: f64,
        slope_hi: f64,
    },

    #[error("{0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}
