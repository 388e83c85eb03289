//! Crate-wide error type.

use thiserror::Error;

#[derive(Error, Debug)]
pub enum Error {
    /// Tensor shapes incompatible with the requested operation.
    #[error("shape error in {op}: {msg}")]
    Shape { op: &'static str, msg: String },

    /// A documented precondition was violated.
    #[error("contract violation: {0}")]
    Contract(String),

    /// A training or optimization loop produced a non-finite loss.
    #[error("training diverged at step {step}: {msg}")]
    Diverged { step: usize, msg: String },

    /// Bad pipeline or model configuration.
    #[error("configuration error: {0}")]
    Config(String),

    /// Config file could not be parsed.
    #[error("config parse error: {0}")]
    ConfigParse(String),

    /// Checkpoint file is malformed, truncated, or has an unknown version.
    #[error("corrupt checkpoint: {0}")]
    Checkpoint(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn shape(op: &'static str, msg: impl Into<String>) -> Self {
        Error::Shape { op, msg: msg.into() }
    }

    pub fn contract(msg: impl Into<String>) -> Self {
        Error::Contract(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
