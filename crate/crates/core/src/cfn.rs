// Copyright 2026 The spinpoly Authors
// SPDX-License-Identifier: Apache-2.0

//! Central factorial numbers of the first kind, `t(n, k)`.
//!
//! Rows are obtained by expanding the generating products
//!
//! ```text
//! ∏_{l=0}^{m-1} (x² − l²)           = Σ_k t(2m, 2k) x^{2k}
//! x ∏_{l=0}^{m-1} (x² − (l + 1/2)²) = Σ_k t(2m+1, 2k+1) x^{2k+1}
//! ```
//!
//! exactly, and memoized by `n`. Magnitudes are always taken from the
//! signed exact values.

use std::f64::consts::PI;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use crate::basis::HalfInt;
use crate::error::{Error, Result};
use crate::exact::{int, ln_abs, rat, BigRational, RationalPoly};
use crate::memo::Memo;
use crate::special::{ln_factorial, trigamma_int};

static ROWS: Memo<usize, Vec<BigRational>> = Memo::new();

/// Full row `[t(n, 0), t(n, 1), …, t(n, n)]`.
pub fn cfn_row(n: usize) -> Arc<Vec<BigRational>> {
    ROWS.get_or_compute(n, || generating_product(n).into_coeffs())
}

fn generating_product(n: usize) -> RationalPoly {
    let m = n / 2;
    let mut p = if n.is_multiple_of(2) { RationalPoly::one() } else { RationalPoly::x() };
    for l in 0..m {
        let root_sq = if n.is_multiple_of(2) {
            int((l * l) as i64)
        } else {
            let h = rat(2 * l as i64 + 1, 2);
            &h * &h
        };
        let factor = RationalPoly::new(vec![-root_sq, BigRational::zero(), BigRational::one()]);
        p = &p * &factor;
    }
    // Monic of degree n, so the trimmed vector already has length n + 1.
    p
}

/// `t(n, k)` for any indices; zero for mixed parity or `k > n`.
pub fn cfn(n: usize, k: usize) -> BigRational {
    if k > n || (n + k) % 2 == 1 {
        return BigRational::zero();
    }
    cfn_row(n).get(k).cloned().unwrap_or_else(BigRational::zero)
}

/// `t(2m, 2k)` for `1 ≤ k ≤ m`.
pub fn cfn_even(m: usize, k: usize) -> Result<BigRational> {
    if k == 0 || k > m {
        return Err(Error::IndexOutOfRange(format!("cfn_even needs 1 <= k <= m, got m={m}, k={k}")));
    }
    Ok(cfn(2 * m, 2 * k))
}

/// `t(2m+1, 2k+1)` for `0 ≤ k ≤ m`.
pub fn cfn_odd(m: usize, k: usize) -> Result<BigRational> {
    if k > m {
        return Err(Error::IndexOutOfRange(format!("cfn_odd needs k <= m, got m={m}, k={k}")));
    }
    Ok(cfn(2 * m + 1, 2 * k + 1))
}

/// `|t(2j+2, 2j+2−2k)|` for `k = 0 ..= ⌊j + 1/2⌋`: the coefficients of
/// `4^k α^{2k}` in `det(1 − 2iα n·J)`.
pub fn det_cfn_row(j: HalfInt) -> Vec<BigRational> {
    let n = j.two_j() as usize + 2;
    (0..=j.half_floor_plus_half()).map(|k| cfn(n, n - 2 * k).abs()).collect()
}

/// `|t(2j+2, 2)| = (j!)²` for integer `j`, returned as the factorial square.
pub fn cfn_t2(j: u64) -> BigRational {
    let f: BigRational = (1..=j).fold(BigRational::one(), |acc, k| acc * int(k as i64));
    &f * &f
}

/// `|t(2j+2, 4)|` both exactly and through the trigamma identity.
#[derive(Debug, Clone, PartialEq)]
pub struct T4Value {
    pub exact: BigRational,
    pub via_trigamma: f64,
}

pub fn cfn_t4(j: u64) -> Result<T4Value> {
    if j == 0 {
        return Err(Error::IndexOutOfRange("cfn_t4 needs j >= 1".into()));
    }
    let exact = cfn(2 * j as usize + 2, 4).abs();
    let fact_sq = (2.0 * ln_factorial(j)).exp();
    let via_trigamma = fact_sq * (PI * PI / 6.0 - trigamma_int(j));
    Ok(T4Value { exact, via_trigamma })
}

/// `(2α)^{2(1−l)} |t(2j+2, 2l)| / (j!)²`, evaluated in log space.
pub fn cfn_asymptotic_ratio(l: usize, j: u64, alpha: f64) -> Result<f64> {
    if l == 0 {
        return Err(Error::IndexOutOfRange("l must be >= 1".into()));
    }
    if alpha == 0.0 {
        return Err(Error::Domain("alpha must be nonzero".into()));
    }
    let t = cfn(2 * j as usize + 2, 2 * l);
    if t.is_zero() {
        return Ok(0.0);
    }
    let ln = ln_abs(&t) - 2.0 * ln_factorial(j) + 2.0 * (1.0 - l as f64) * (2.0 * alpha.abs()).ln();
    Ok(ln.exp())
}

/// Large-`j` limit of [`cfn_asymptotic_ratio`]: `(π/2α)^{2(l−1)} / (2l−1)!`.
pub fn cfn_asymptotic_limit(l: usize, alpha: f64) -> f64 {
    let x = PI / (2.0 * alpha.abs());
    let n = 2 * (l as u64) - 2;
    (n as f64 * x.ln() - ln_factorial(2 * l as u64 - 1)).exp()
}
