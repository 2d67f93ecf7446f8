use thiserror::Error;

use crate::catalog::ParseError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("not a permutation: {0}")]
    NotAPermutation(String),

    #[error("generator list is empty")]
    NoGenerators,

    #[error("closure exceeded the cap of {cap} elements")]
    CapExceeded { cap: usize },

    #[error("invalid group spec: {0}")]
    InvalidSpec(String),

    #[error("invalid semidirect action: {0}")]
    InvalidAction(String),

    #[error("broken element census: {count} elements of order {order} is not a multiple of phi({order}) = {phi}")]
    InconsistentCensus { order: u64, count: u64, phi: u64 },

    #[error("group id order {id_order} does not match group order {order}")]
    IdMismatch { id_order: usize, order: usize },

    #[error("brute-force enumeration supports orders 1..={max}, got {order}")]
    OracleRange { order: usize, max: usize },

    #[error("catalog synthesis failed: {0}")]
    Synthesis(String),

    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
}
