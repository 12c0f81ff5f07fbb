// Copyright 2026 The spinpoly Authors
// SPDX-License-Identifier: Apache-2.0

//! Exact reduction of functions of spin-j matrices to order-2j matrix
//! polynomials.

pub mod basis;
pub mod bench;
pub mod bridge;
pub mod cayley;
pub mod cfn;
pub mod error;
pub mod exact;
pub mod expcoeffs;
pub mod fixtures;
mod memo;
pub mod plotdata;
pub mod quad;
pub mod special;
pub mod verify;

pub use basis::HalfInt;
pub use bridge::Eigenvalue;
pub use error::{Error, Result};
pub use exact::{BigRational, GaussianRational, RationalFunction, RationalPoly, Scalar};
pub use plotdata::{Figure, Grid};
