use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("grid mismatch: {0} vs {1} points per axis")]
    GridMismatch(usize, usize),

    #[error("invalid grid size {0}: must be even and at least 4")]
    InvalidGrid(usize),

    #[error("band limit kmax = {kmax} too large for N = {n}")]
    BandLimit { kmax: usize, n: usize },

    #[error("charge must be non-zero")]
    ZeroCharge,

    #[error("chirality mismatch: expected {expected}, got {got}")]
    Chirality {
        expected: &'static str,
        got: &'static str,
    },

    #[error("radius must be positive everywhere (min {0})")]
    NonPositiveRadius(f64),

    #[error("operation requires a constant fibre radius")]
    VaryingRadius,

    #[error("perturbation is not imaginary self-dual (deviation {0:.3e})")]
    NotSelfDual(f64),

    #[error("trials must be at least 1")]
    NoTrials,

    #[error("parameter out of range: {0}")]
    OutOfRange(String),

    #[error("inconsistent geometry: {0}")]
    Inconsistent(String),

    #[error("objective became non-finite at iteration {0}")]
    Diverged(usize),

    #[error("finite-difference step {0} is too small")]
    StepUnderflow(f64),

    #[error("malformed field dump: {0}")]
    Format(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}
