// Copyright 2026 The spinpoly Authors
// SPDX-License-Identifier: Apache-2.0

//! Small special-function helpers evaluated in log space.

use std::f64::consts::PI;

/// Trigamma at a positive integer argument: `Ψ₁(1 + j) = ζ(2) − Σ_{k=1}^{j} 1/k²`.
pub fn trigamma_int(j: u64) -> f64 {
    // Sum smallest terms first.
    let tail: f64 = (1..=j).rev().map(|k| 1.0 / (k as f64 * k as f64)).sum();
    PI * PI / 6.0 - tail
}

/// `ln n!`
pub fn ln_factorial(n: u64) -> f64 {
    (2..=n).map(|k| (k as f64).ln()).sum()
}

/// `ln Γ(x)` for `x = two_x / 2 > 0`, i.e. integer or half-integer arguments only.
pub fn ln_gamma_half_integer(two_x: u64) -> f64 {
    assert!(two_x > 0, "gamma argument must be positive");
    if two_x.is_multiple_of(2) {
        ln_factorial(two_x / 2 - 1)
    } else {
        // Γ(n + 1/2) = √π ∏_{l=0}^{n-1} (l + 1/2)
        let n = (two_x - 1) / 2;
        0.5 * PI.ln() + (0..n).map(|l| (l as f64 + 0.5).ln()).sum::<f64>()
    }
}

/// `ln sinh(x)` for `x > 0`, without overflow for large `x`.
pub fn ln_sinh(x: f64) -> f64 {
    debug_assert!(x > 0.0);
    if x > 20.0 {
        x - std::f64::consts::LN_2 + (-(-2.0 * x).exp()).ln_1p()
    } else {
        x.sinh().ln()
    }
}

/// `ln cosh(x)`, without overflow for large `|x|`.
pub fn ln_cosh(x: f64) -> f64 {
    let x = x.abs();
    if x > 20.0 {
        x - std::f64::consts::LN_2 + (-2.0 * x).exp().ln_1p()
    } else {
        x.cosh().ln()
    }
}
