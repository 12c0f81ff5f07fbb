// Copyright 2026 The spinpoly Authors
// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

/// Errors raised by the spinpoly library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("division by the zero polynomial")]
    ZeroPolynomial,

    #[error("parity violation: {0}")]
    Parity(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("duplicate eigenvalue at positions {0} and {1}")]
    DuplicateEigenvalue(usize, usize),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
