// Copyright 2026 The spinpoly Authors
// SPDX-License-Identifier: Apache-2.0

//! Wall-clock comparison of Cayley and exponential evaluation cost.
//!
//! The criterion benches in the bench crate measure the same operations
//! with statistical rigor; this harness gives a quick table from the CLI.

use std::hint::black_box;
use std::time::Instant;

use serde::Serialize;

use crate::basis::HalfInt;
use crate::cayley::{b_coeffs, build_b_coeffs, cayley_poly};
use crate::expcoeffs::{exp_poly, trunc_series};

pub const DEFAULT_TWO_J: [u32; 3] = [10, 50, 100];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Phase {
    /// Exact `𝔅_k` rational functions built with every cache bypassed.
    BTableExact,
    /// All `𝔄_k` at one `α`.
    CayleyEval,
    /// All `A_k` at one `θ`.
    ExpEval,
}

impl Phase {
    pub const ALL: [Phase; 3] = [Phase::BTableExact, Phase::CayleyEval, Phase::ExpEval];

    pub fn name(self) -> &'static str {
        match self {
            Phase::BTableExact => "b_table_exact",
            Phase::CayleyEval => "cayley_eval",
            Phase::ExpEval => "exp_eval",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchRow {
    pub two_j: u32,
    pub phase: Phase,
    pub median_ns: f64,
    pub samples: usize,
}

/// Median ns/op of each phase for each `2j`. `samples` sets how many
/// timed batches enter each median.
pub fn run_bench(two_js: &[u32], samples: usize) -> Vec<BenchRow> {
    let samples = samples.max(1);
    let mut rows = Vec::new();
    for &two_j in two_js {
        let j = HalfInt::from_two_j(two_j);
        // Warm the caches the per-point phases rely on.
        b_coeffs(j);
        for k in 0..j.dim() {
            let _ = trunc_series(j, k);
        }
        cayley_poly(j, 0.5);
        for phase in Phase::ALL {
            let (batch, per_sample): (usize, Box<dyn Fn(usize)>) = match phase {
                Phase::BTableExact => (
                    1,
                    Box::new(move |_| {
                        black_box(build_b_coeffs(j));
                    }),
                ),
                Phase::CayleyEval => (
                    256,
                    Box::new(move |i| {
                        black_box(cayley_poly(j, alpha_at(i)));
                    }),
                ),
                Phase::ExpEval => (
                    64,
                    Box::new(move |i| {
                        black_box(exp_poly(j, 0.37 * i as f64));
                    }),
                ),
            };
            let mut times: Vec<f64> = (0..samples)
                .map(|_| {
                    let start = Instant::now();
                    for i in 0..batch {
                        per_sample(i);
                    }
                    start.elapsed().as_nanos() as f64 / batch as f64
                })
                .collect();
            times.sort_by(f64::total_cmp);
            rows.push(BenchRow { two_j, phase, median_ns: times[times.len() / 2], samples });
        }
    }
    rows
}

/// Sample points in `[−3, 3]`, where the `O(j)` evaluation stays in range.
fn alpha_at(i: usize) -> f64 {
    -3.0 + 6.0 * ((i * 37) % 101) as f64 / 100.0
}
