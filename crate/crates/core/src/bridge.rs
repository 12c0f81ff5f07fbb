// Copyright 2026 The spinpoly Authors
// SPDX-License-Identifier: Apache-2.0

//! Links between the exponential and Cayley coefficients.
//!
//! The Laplace transform takes one family to the other,
//! `𝔅_k(α) = (1/k!) ∫₀^∞ e^{−t} A_k(2αt) dt`, and every term reduces to
//!
//! ```text
//! I_m = (1/m!) ∫₀^∞ e^{−t} sin^m(αt) dt
//! K_n = (1/n!) ∫₀^∞ e^{−t} sin^n(αt) cos(αt) dt = I_{n+1}/α
//! ```
//!
//! Separately, equating the two forms on one eigenstate gives an
//! eigenvalue-dependent map between `θ` and `α`.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Serialize, Serializer};

use crate::basis::{spectrum, HalfInt};
use crate::cayley::b_coeffs;
use crate::error::{Error, Result};
use crate::exact::{int, parse_rational, to_f64, BigRational};
use crate::expcoeffs::{a_coeff_trunc, cfn_series_poly, epsilon};
use crate::quad::integrate;

/// `∏_{l} 1/(1 + c_l² α²)` over `c_l = 2l` (even `m`) or `c_l = 2l − 1` (odd
/// `m`), `l = 1 … ⌈m/2⌉`.
fn sin_power_product(m: usize, alpha: f64) -> f64 {
    let a2 = alpha * alpha;
    (1..=m.div_ceil(2))
        .map(|l| {
            let c = if m.is_multiple_of(2) { 2 * l } else { 2 * l - 1 } as f64;
            1.0 / (1.0 + c * c * a2)
        })
        .product()
}

/// `I_m(α) = (1/m!) ∫₀^∞ e^{−t} sin^m(αt) dt`.
pub fn laplace_sin_power(m: usize, alpha: f64) -> f64 {
    alpha.powi(m as i32) * sin_power_product(m, alpha)
}

/// `K_n(α) = (1/n!) ∫₀^∞ e^{−t} sin^n(αt) cos(αt) dt = I_{n+1}/α`,
/// written without the division so that it holds at `α = 0`.
pub fn laplace_sin_power_cos(n: usize, alpha: f64) -> f64 {
    alpha.powi(n as i32) * sin_power_product(n + 1, alpha)
}

/// Composite Gauss–Legendre panels used by the quadrature oracles.
pub const QUAD_PANELS: usize = 64;
/// Nodes per panel.
pub const QUAD_ORDER: usize = 32;
/// Upper limit replacing infinity; `e^{−40} ≈ 4e−18`.
pub const QUAD_T: f64 = 40.0;

fn ln_factorial_exact(m: usize) -> f64 {
    crate::special::ln_factorial(m as u64)
}

/// `I_m` by quadrature of the defining integral on `[0, 40]`.
pub fn laplace_sin_power_quadrature(m: usize, alpha: f64) -> f64 {
    let scale = (-ln_factorial_exact(m)).exp();
    integrate(|t| (-t).exp() * (alpha * t).sin().powi(m as i32), 0.0, QUAD_T, QUAD_PANELS, QUAD_ORDER) * scale
}

/// `K_n` by quadrature of the defining integral on `[0, 40]`.
pub fn laplace_sin_power_cos_quadrature(n: usize, alpha: f64) -> f64 {
    let scale = (-ln_factorial_exact(n)).exp();
    integrate(
        |t| {
            let (s, c) = (alpha * t).sin_cos();
            (-t).exp() * s.powi(n as i32) * c
        },
        0.0,
        QUAD_T,
        QUAD_PANELS,
        QUAD_ORDER,
    ) * scale
}

/// `𝔅_k(α)` from the Laplace transform of `A_k`, analytically.
///
/// For even `2j − k`, `A_k = Σ_m c_m sin^m(θ/2)` and each term maps to
/// `m! I_m`. For odd `2j − k`, `A_k = (1/(k+1)) Σ_m c'_m m sin^{m−1} cos`
/// from the series of `A_{k+1}`, and each term maps to `(m−1)! K_{m−1}`.
pub fn b_from_a_laplace(j: HalfInt, k: usize, alpha: f64) -> Result<f64> {
    let eps = epsilon(j, k)?;
    // c_m m!/k! as exact weights
    let fact_ratio = |m: usize, base: usize| -> BigRational {
        if m >= base {
            (base + 1..=m).fold(int(1), |acc, i| acc * int(i as i64))
        } else {
            (m + 1..=base).fold(int(1), |acc, i| acc / int(i as i64))
        }
    };
    if eps == 0 {
        let series = cfn_series_poly(j, k)?;
        Ok(series
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| !num_traits::Zero::is_zero(*c))
            .map(|(m, c)| to_f64(&(c * fact_ratio(m, k))) * laplace_sin_power(m, alpha))
            .sum())
    } else {
        let series = cfn_series_poly(j, k + 1)?;
        Ok(series
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| !num_traits::Zero::is_zero(*c))
            .map(|(m, c)| to_f64(&(c * fact_ratio(m, k + 1))) * laplace_sin_power_cos(m - 1, alpha))
            .sum())
    }
}

/// `(1/k!) ∫₀^T e^{−t} A_k(2αt) dt` by composite Gauss–Legendre with
/// `panels` subintervals, evaluating `A_k` from the truncated series.
pub fn quadrature_check(j: HalfInt, k: usize, alpha: f64, t_max: f64, panels: usize) -> Result<f64> {
    epsilon(j, k)?;
    if t_max <= 0.0 || panels == 0 {
        return Err(Error::Domain("quadrature needs T > 0 and at least one panel".into()));
    }
    let scale = (-ln_factorial_exact(k)).exp();
    let v = integrate(
        |t| (-t).exp() * a_coeff_trunc(j, k, 2.0 * alpha * t).expect("k checked"),
        0.0,
        t_max,
        panels,
        QUAD_ORDER,
    );
    Ok(v * scale)
}

/// `𝔅_k` computed directly and through the Laplace bridge.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LaplacePair {
    pub j: HalfInt,
    pub k: usize,
    pub alpha: f64,
    pub b_direct: f64,
    pub b_via_laplace: f64,
}

impl LaplacePair {
    pub fn compute(j: HalfInt, k: usize, alpha: f64) -> Result<Self> {
        let b_via_laplace = b_from_a_laplace(j, k, alpha)?;
        let b_direct = b_coeffs(j).b[k].eval_f64(alpha);
        Ok(Self { j, k, alpha, b_direct, b_via_laplace })
    }

    pub fn discrepancy(&self) -> f64 {
        (self.b_direct - self.b_via_laplace).abs()
    }

    /// `|direct − laplace| ≤ 1e−9 · max(1, |direct|)`
    pub fn agrees(&self) -> bool {
        self.discrepancy() <= 1e-9 * self.b_direct.abs().max(1.0)
    }
}

/// A signed half-integer eigenvalue `M` of `n·J`, stored as `2M`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Eigenvalue {
    two_m: i64,
}

impl Eigenvalue {
    pub const fn from_two_m(two_m: i64) -> Self {
        Self { two_m }
    }

    pub const fn two_m(self) -> i64 {
        self.two_m
    }

    pub fn as_f64(self) -> f64 {
        self.two_m as f64 / 2.0
    }

    /// Eigenvalues of `n·J` for spin `j`, from `j` down to `−j`.
    pub fn all(j: HalfInt) -> Vec<Self> {
        spectrum(j).eigs.into_iter().map(Self::from_two_m).collect()
    }
}

impl fmt::Display for Eigenvalue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.two_m % 2 == 0 {
            write!(f, "{}", self.two_m / 2)
        } else {
            write!(f, "{}/2", self.two_m)
        }
    }
}

impl FromStr for Eigenvalue {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let twice = parse_rational(s)? * int(2);
        if !twice.is_integer() {
            return Err(Error::Parse(format!("{s:?} is not a half-integer")));
        }
        let two_m = i64::try_from(twice.to_integer()).map_err(|_| Error::Parse(format!("{s:?} is too large")))?;
        Ok(Self { two_m })
    }
}

impl Serialize for Eigenvalue {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Direction of the eigenvalue-dependent parameter map.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShearDirection {
    /// `α(θ) = tan(Mθ/2)/(2M)`
    ThetaToAlpha,
    /// `θ(α) = (2/M) arctan(2Mα)`
    AlphaToTheta,
}

pub fn shear_maps(m: Eigenvalue, value: f64, direction: ShearDirection) -> Result<f64> {
    if m.two_m == 0 {
        return Err(Error::Domain("the map is undefined for M = 0".into()));
    }
    let mf = m.as_f64();
    match direction {
        ShearDirection::ThetaToAlpha => {
            let half = mf * value / 2.0;
            let (s, c) = half.sin_cos();
            if c.abs() < 1e-15 * s.abs().max(1.0) {
                return Err(Error::Domain(format!("tan pole at Mθ/2 = {half}")));
            }
            Ok(s / c / (2.0 * mf))
        }
        ShearDirection::AlphaToTheta => Ok(2.0 / mf * (2.0 * mf * value).atan()),
    }
}

/// Checks `e^{iθM} = (1 + 2iαM)/(1 − 2iαM)` with `α = α(θ; M)` to 1e−12.
/// `M = 0` reduces to `1 = 1` for any `α`.
pub fn verify_exp_equal_cayley(m: Eigenvalue, theta: f64) -> Result<bool> {
    Ok(exp_cayley_mismatch(m, theta)? < 1e-12)
}

/// `|e^{iθM} − (1 + 2iαM)/(1 − 2iαM)|` with `α = α(θ; M)`.
pub fn exp_cayley_mismatch(m: Eigenvalue, theta: f64) -> Result<f64> {
    if m.two_m == 0 {
        return Ok(0.0);
    }
    let alpha = shear_maps(m, theta, ShearDirection::ThetaToAlpha)?;
    let z = Complex64::new(0.0, 2.0 * alpha * m.as_f64());
    let cayley = (1.0 + z) / (1.0 - z);
    Ok((Complex64::from_polar(1.0, theta * m.as_f64()) - cayley).norm())
}

/// `α(θ; M)` for every positive eigenvalue `M` of spin `j`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ShearReport {
    pub j: HalfInt,
    pub theta: f64,
    /// `(M, α(θ; M))`, or `None` at a pole of the map.
    pub alphas: Vec<(Eigenvalue, Option<f64>)>,
    /// Two eigenvalues of different magnitude give different `α`.
    pub inconsistent: bool,
}

pub fn shear_report(j: HalfInt, theta: f64) -> ShearReport {
    let alphas: Vec<(Eigenvalue, Option<f64>)> = Eigenvalue::all(j)
        .into_iter()
        .filter(|m| m.two_m > 0)
        .map(|m| (m, shear_maps(m, theta, ShearDirection::ThetaToAlpha).ok()))
        .collect();
    let values: Vec<f64> = alphas.iter().filter_map(|(_, a)| *a).collect();
    let inconsistent = values.len() < alphas.len()
        || values.windows(2).any(|w| (w[0] - w[1]).abs() > 1e-12 * w[0].abs().max(w[1].abs()).max(1.0));
    ShearReport { j, theta, alphas, inconsistent }
}
