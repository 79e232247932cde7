// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

/// Errors raised by the algebra engine and the representation layer.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("operands belong to different generator pools")]
    PoolMismatch,
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("generator pool holds at most {max} generators, got {got}")]
    PoolTooLarge { max: usize, got: usize },
    #[error("duplicate generator label `{0}`")]
    DuplicateGenerator(String),
    #[error("parity violation: {0}")]
    Parity(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("axis {axis} out of range for {nvars} even variable(s)")]
    Axis { axis: usize, nvars: usize },
    #[error("space mismatch: {0}")]
    SpaceMismatch(String),
    #[error("invalid family parameters: {0}")]
    InvalidParams(String),
}

pub type Result<T> = std::result::Result<T, Error>;
