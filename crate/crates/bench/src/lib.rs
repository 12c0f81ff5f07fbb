// Copyright 2026 The spinpoly Authors
// SPDX-License-Identifier: Apache-2.0

//! Shared inputs for the criterion benches.

use spinpoly_core::bench::DEFAULT_TWO_J;
use spinpoly_core::HalfInt;

/// The benchmarked spins, smallest first.
pub fn spins() -> Vec<HalfInt> {
    DEFAULT_TWO_J.iter().map(|&t| HalfInt::from_two_j(t)).collect()
}

/// `n` points spread over `[lo, hi]`, so one iteration touches the whole range.
pub fn sweep(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| lo + (hi - lo) * i as f64 / (n.max(2) - 1) as f64).collect()
}
