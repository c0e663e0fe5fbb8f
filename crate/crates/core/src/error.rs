use std::io;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// The min-entropy rate does not exceed 1/2, so no block size makes the
    /// inner-product bound shrink.
    #[error(
        "unsupported min-entropy rate {rate}: the extractors require a rate strictly above 1/2"
    )]
    UnsupportedRate { rate: String },

    #[error("capacity exceeded: field degree {q} is above the supported maximum of {max}")]
    Capacity { q: u64, max: u32 },

    #[error("error bound diverges: an unbounded run needs a positive per-block growth")]
    Divergence,

    #[error("infeasible instance: {0}")]
    Infeasible(String),

    #[error("source cannot be certified: {0}")]
    Uncertifiable(String),

    #[error("source truncated: needed {needed} bits, found {available}")]
    Truncated { needed: u64, available: u64 },

    #[error("worker failed on block {block_index}: {reason}")]
    Worker { block_index: u64, reason: String },

    #[error("malformed document: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] io::Error),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}
