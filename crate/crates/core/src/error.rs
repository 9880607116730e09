use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("amplitude count {got} does not match product of dims {expected}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("mode {mode} has dimension {dim}; every mode needs dimension >= 2")]
    InvalidDimension { mode: usize, dim: usize },

    #[error("state needs at least {needed} modes, got {got}")]
    TooFewModes { needed: usize, got: usize },

    #[error("all amplitudes are zero")]
    ZeroVector,

    #[error("amplitude {index} is not finite")]
    NonFinite { index: usize },

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    #[error("state is not a product state (reconstruction residual {residual:e})")]
    NotProduct { residual: f64 },

    #[error("no value assigned to variable {0}")]
    MissingVariable(String),

    #[error("{what} is {size}, above the cap of {cap}")]
    TooLarge { what: &'static str, size: usize, cap: usize },

    #[error("wrong shape: {0}")]
    WrongShape(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
