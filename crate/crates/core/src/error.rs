use crate::scalar::Rational;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("incompatible offsets {left} and {right}: difference is not an integer")]
    IncompatibleOffset { left: Rational, right: Rational },

    #[error("window exceeded: x-index {k}, log power {j} lies outside [{k_min}, {k_max}] / log <= {max_log}")]
    WindowExceeded {
        k: i64,
        j: u32,
        k_min: i64,
        k_max: i64,
        max_log: u32,
    },

    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("operator has depth 0; nothing to lower")]
    NothingToLower,

    #[error("degenerate parameters: {0}")]
    DegenerateParameters(String),

    #[error("malformed input: {0}")]
    MalformedInput(String),

    #[error("map is not h(0)-equivariant")]
    NotEquivariant,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("config error at line {line}, key `{key}`: {message}")]
    Config {
        line: usize,
        key: String,
        message: String,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
