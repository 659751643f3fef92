use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid simplex point: {0}")]
    InvalidSimplex(String),

    #[error("degenerate mode: the rest mode has no eigencycle set")]
    DegenerateMode,

    #[error("initial deviation is not tangent to the simplex (component sum {0:e})")]
    NotTangent(f64),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("integration step rejected at t={t}: x{index} = {value:e} (dt too large)")]
    StepRejected { t: f64, index: usize, value: f64 },

    #[error("series too short: need at least 2 points, got {0}")]
    SeriesTooShort(usize),

    #[error("degenerate aggregate: mean angular momentum vector has zero norm")]
    DegenerateAggregate,

    #[error("insufficient data: {0}")]
    InsufficientData(String),

    #[error("zero variance input")]
    ZeroVariance,

    #[error("rank-deficient design matrix")]
    RankDeficient,

    #[error("{source_name}, line {line}: {message}")]
    Schema {
        source_name: String,
        line: usize,
        message: String,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
