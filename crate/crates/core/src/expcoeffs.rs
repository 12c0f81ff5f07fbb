// Copyright 2026 The spinpoly Authors
// SPDX-License-Identifier: Apache-2.0

//! Coefficients `A_k(θ)` of the exponential rotation polynomial
//!
//! ```text
//! exp(iθ n·J) = Σ_{k=0}^{2j} A_k(θ) (2i n·J)^k / k!
//! ```
//!
//! The primary path is the truncated series
//! `A_k = s^k c^ε Trunc_{⌊(2j−k)/2⌋}[(1−x)^{−ε/2} (arcsin√x/√x)^k]` at
//! `x = s²`, with `s = sin(θ/2)`, `c = cos(θ/2)` and `ε = (2j−k) mod 2`.
//! The series coefficients are exact rationals; only the final evaluation
//! is floating point. The central-factorial series and the derivative
//! relation are independent checks.

use std::sync::Arc;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::basis::{spectrum, HalfInt};
use crate::cfn::cfn;
use crate::error::{Error, Result};
use crate::exact::{int, simplest_within, BigRational, RationalPoly, Scalar};
use crate::memo::Memo;

/// `(2j − k) mod 2`.
pub fn epsilon(j: HalfInt, k: usize) -> Result<u8> {
    check_k(j, k)?;
    Ok(((j.two_j() as usize - k) % 2) as u8)
}

fn check_k(j: HalfInt, k: usize) -> Result<()> {
    if k > j.two_j() as usize {
        return Err(Error::IndexOutOfRange(format!("k = {k} exceeds 2j = {}", j.two_j())));
    }
    Ok(())
}

fn central_binomial_over_four(n: usize) -> BigRational {
    // C(2n, n) / 4^n = ∏_{i=1}^{n} (2i − 1)/(2i)
    (1..=n).fold(BigRational::one(), |acc, i| acc * BigRational::new((2 * i - 1).into(), (2 * i).into()))
}

static ARCSIN_POWERS: Memo<(usize, usize), RationalPoly> = Memo::new();
static TRUNC_SERIES: Memo<(usize, usize, u8), RationalPoly> = Memo::new();
static CFN_SERIES: Memo<(u32, usize), RationalPoly> = Memo::new();
static TRUNC_F64: Memo<HalfInt, Vec<Vec<f64>>> = Memo::new();

/// Taylor coefficients of `(arcsin√x/√x)^k` through `x^order`.
///
/// Built from `arcsin√x/√x = Σ C(2n,n) xⁿ / (4ⁿ(2n+1))` with the power
/// recurrence `g_n = (1/n) Σ_{i=1}^{n} ((k+1)i − n) f_i g_{n−i}`.
pub fn arcsin_power_series(k: usize, order: usize) -> Arc<RationalPoly> {
    ARCSIN_POWERS.get_or_compute((k, order), || {
        let f: Vec<BigRational> = (0..=order).map(|n| central_binomial_over_four(n) / int(2 * n as i64 + 1)).collect();
        let mut g = vec![BigRational::one()];
        let kk = k as i64;
        for n in 1..=order {
            let sum = (1..=n).fold(BigRational::zero(), |acc, i| {
                let w = (kk + 1) * i as i64 - n as i64;
                acc + &f[i] * &g[n - i] * int(w)
            });
            g.push(sum / int(n as i64));
        }
        RationalPoly::new(g)
    })
}

/// `Trunc_{⌊(2j−k)/2⌋}[(1−x)^{−ε/2}(arcsin√x/√x)^k]` as an exact polynomial in `x`.
pub fn trunc_series(j: HalfInt, k: usize) -> Result<Arc<RationalPoly>> {
    let eps = epsilon(j, k)?;
    let order = (j.two_j() as usize - k) / 2;
    Ok(TRUNC_SERIES.get_or_compute((k, order, eps), || {
        let base = arcsin_power_series(k, order);
        if eps == 0 {
            return (*base).clone();
        }
        let inv_sqrt = RationalPoly::new((0..=order).map(central_binomial_over_four).collect());
        base.mul_truncated(&inv_sqrt, order)
    }))
}

/// `sin(θ/2)` and `cos(θ/2)` over any scalar kind.
#[derive(Debug, Clone, PartialEq)]
pub struct HalfAngle<T> {
    pub sin: T,
    pub cos: T,
}

impl HalfAngle<f64> {
    pub fn from_theta(theta: f64) -> Self {
        let (sin, cos) = (theta / 2.0).sin_cos();
        Self { sin, cos }
    }
}

impl HalfAngle<BigRational> {
    /// An exact rational point on the unit circle within `1e-14` of
    /// `(sin(θ/2), cos(θ/2))`, from the tangent half-angle parametrization
    /// at a small-denominator tangent.
    ///
    /// Returns the point together with the angle `θ'` it represents exactly
    /// modulo `4π`.
    pub fn rational_near(theta: f64) -> Result<(Self, f64)> {
        use std::f64::consts::{PI, TAU};
        if !theta.is_finite() {
            return Err(Error::Domain(format!("theta = {theta} is not finite")));
        }
        // phi = θ/2 reduced to (−π, π]; e^{iφ} only depends on φ mod 2π.
        let mut phi = (theta / 2.0).rem_euclid(TAU);
        if phi > PI {
            phi -= TAU;
        }
        let flip = phi.abs() > PI / 2.0;
        let psi = if flip { phi - PI.copysign(phi) } else { phi };
        let u = simplest_within((psi / 2.0).tan(), 2e-15)?;
        let u_f = crate::exact::to_f64(&u);
        let one_u2 = BigRational::one() + &u * &u;
        let mut cos = (BigRational::one() - &u * &u) / &one_u2;
        let mut sin = int(2) * &u / &one_u2;
        let mut phi_eff = 2.0 * u_f.atan();
        if flip {
            cos = -cos;
            sin = -sin;
            phi_eff += PI.copysign(phi);
        }
        Ok((Self { sin, cos }, 2.0 * phi_eff))
    }
}

/// `A_k` at a given half-angle, over any scalar kind. Exact when the
/// half-angle is exact.
pub fn a_coeff_at<T: Scalar>(j: HalfInt, k: usize, half: &HalfAngle<T>) -> Result<T> {
    let eps = epsilon(j, k)?;
    let poly = trunc_series(j, k)?;
    let x = half.sin.clone() * half.sin.clone();
    let mut v = poly.eval_with(&x);
    for _ in 0..k {
        v = v * half.sin.clone();
    }
    if eps == 1 {
        v = v * half.cos.clone();
    }
    Ok(v)
}

/// `A_k(θ)` from the truncated series.
pub fn a_coeff_trunc(j: HalfInt, k: usize, theta: f64) -> Result<f64> {
    a_coeff_at(j, k, &HalfAngle::from_theta(theta))
}

/// Exact coefficients `(k!/2^k)(2^m/m!)|t(m,k)|` of `s^m` in the
/// central-factorial series for `A_k`, `2j − k` even.
pub fn cfn_series_poly(j: HalfInt, k: usize) -> Result<Arc<RationalPoly>> {
    if epsilon(j, k)? != 0 {
        return Err(Error::Parity(format!("2j − k must be even, got 2j = {}, k = {k}", j.two_j())));
    }
    Ok(CFN_SERIES.get_or_compute((j.two_j(), k), || {
        let two_j = j.two_j() as usize;
        let mut coeffs = vec![BigRational::zero(); two_j + 1];
        // k!/2^k · 2^m/m! = 2^{m−k} / (m!/k!)
        let mut w = BigRational::one();
        for (m, slot) in coeffs.iter_mut().enumerate().skip(k) {
            if m > k {
                w = w * int(2) / int(m as i64);
            }
            *slot = &w * cfn(m, k).abs();
        }
        RationalPoly::new(coeffs)
    }))
}

/// `A_k(θ) = (k!/2^k) Σ_{m=k}^{2j} (2^m/m!) |t(m,k)| sin^m(θ/2)`, `2j − k` even.
pub fn a_coeff_cfn_series(j: HalfInt, k: usize, theta: f64) -> Result<f64> {
    Ok(cfn_series_poly(j, k)?.eval_f64((theta / 2.0).sin()))
}

/// `A_{k−1}(θ) = (2/k) dA_k/dθ` on a grid, differentiating the
/// central-factorial series of `A_k` term by term. Needs `k ≥ 1`, `2j − k` even.
pub fn a_coeff_derivative_path(j: HalfInt, k: usize, thetas: &[f64]) -> Result<Vec<f64>> {
    if k == 0 {
        return Err(Error::IndexOutOfRange("derivative path needs k >= 1".into()));
    }
    let series = cfn_series_poly(j, k)?;
    let scale = BigRational::new(1.into(), (k as i64).into());
    // (2/k) · (m/2) s^{m−1} c = (1/k) · m s^{m−1} c
    let d = series.derivative().scale(&scale);
    Ok(thetas
        .iter()
        .map(|&t| {
            let (s, c) = (t / 2.0).sin_cos();
            d.eval_f64(s) * c
        })
        .collect())
}

/// All coefficients `A_0 … A_{2j}` at one angle.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExpCoeffTable {
    pub j: HalfInt,
    pub theta: f64,
    pub a: Vec<f64>,
}

impl ExpCoeffTable {
    /// Coefficients of `S^k` with `S = 2 n·J`: `A_k i^k / k!`.
    pub fn s_basis(&self) -> Vec<Complex64> {
        let mut fact = 1.0;
        self.a
            .iter()
            .enumerate()
            .map(|(k, &a)| {
                if k > 0 {
                    fact *= k as f64;
                }
                Complex64::i().powu(k as u32) * (a / fact)
            })
            .collect()
    }

    /// Coefficients of `(n·J)^k`: `A_k (2i)^k / k!`.
    pub fn nj_basis(&self) -> Vec<Complex64> {
        self.s_basis().into_iter().enumerate().map(|(k, c)| c * 2f64.powi(k as i32)).collect()
    }

    /// `Σ_k A_k (2i m)^k / k!` at the `n·J` eigenvalue `m = two_m / 2`.
    pub fn reconstruct(&self, two_m: i64) -> Complex64 {
        let lambda = Complex64::new(two_m as f64, 0.0);
        self.s_basis().iter().rev().fold(Complex64::zero(), |acc, c| acc * lambda + c)
    }
}

/// Same values as [`a_coeff_trunc`] for every `k`, with the series
/// coefficients converted to `f64` once per spin.
pub fn exp_poly(j: HalfInt, theta: f64) -> ExpCoeffTable {
    let series = TRUNC_F64.get_or_compute(j, || {
        (0..j.dim())
            .map(|k| trunc_series(j, k).expect("k within range").coeffs().iter().map(crate::exact::to_f64).collect())
            .collect()
    });
    let (s, c) = (theta / 2.0).sin_cos();
    let x = s * s;
    let a = series
        .iter()
        .enumerate()
        .map(|(k, coeffs)| {
            let v = coeffs.iter().rev().fold(0.0, |acc, &q| acc * x + q) * s.powi(k as i32);
            if epsilon(j, k) == Ok(1) {
                v * c
            } else {
                v
            }
        })
        .collect();
    ExpCoeffTable { j, theta, a }
}

/// Result of checking the exponential polynomial against `e^{iθm}`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExpReconstruction {
    pub j: HalfInt,
    pub theta: f64,
    /// The exact polynomial equals `(c + is)^{2m}` at every eigenvalue.
    pub exact_identity: bool,
    /// Largest `|Σ_k A_k (2im)^k/k! − e^{iθm}|` over eigenvalues, after
    /// rounding the exact left side to floating point.
    pub max_error: f64,
}

/// Reconstructs `exp(iθ n·J)` on its eigenvalues in exact arithmetic at a
/// rational point on the unit circle next to `θ/2`.
///
/// Summing in the monomial basis in `f64` loses about `log10(j^{2j}/(2j)!)`
/// digits to cancellation, so this is the accurate oracle for large `j`.
pub fn exp_reconstruction_exact(j: HalfInt, theta: f64) -> Result<ExpReconstruction> {
    let (half, _) = HalfAngle::<BigRational>::rational_near(theta)?;
    let a: Vec<BigRational> = (0..j.dim()).map(|k| a_coeff_at(j, k, &half)).collect::<Result<_>>()?;
    // Integer arithmetic throughout: with a_k = n_k/L and the half-angle
    // point (c + is) = (x + iy)/d, the identity for eigenvalue λ = 2m reads
    //   d^|λ| Σ_k n_k (iλ)^k (K!/k!) = L K! (x ± iy)^|λ|,   K = 2j.
    let den = a.iter().fold(BigInt::one(), |l, q| l.lcm(q.denom()));
    let nums: Vec<BigInt> = a.iter().map(|q| q.numer() * (&den / q.denom())).collect();
    let top = nums.len().saturating_sub(1);
    // K!/k! for k = 0..=K
    let mut falling = vec![BigInt::one(); top + 1];
    for k in (0..top).rev() {
        falling[k] = &falling[k + 1] * (k + 1);
    }
    let d = half.cos.denom().lcm(half.sin.denom());
    let x = half.cos.numer() * (&d / half.cos.denom());
    let y = half.sin.numer() * (&d / half.sin.denom());
    let scale = &den * &falling[0];
    let mut exact_identity = true;
    let mut max_error: f64 = 0.0;
    for two_m in spectrum(j).eigs {
        let (mut re, mut im) = (BigInt::zero(), BigInt::zero());
        let mut power = BigInt::one();
        for (k, n) in nums.iter().enumerate() {
            let term = n * &power * &falling[k];
            match k % 4 {
                0 => re += term,
                1 => im += term,
                2 => re -= term,
                _ => im -= term,
            }
            power *= two_m;
        }
        let steps = two_m.unsigned_abs();
        let y_signed = if two_m >= 0 { y.clone() } else { -&y };
        let (mut pr, mut pi) = (BigInt::one(), BigInt::zero());
        for _ in 0..steps {
            (pr, pi) = (&pr * &x - &pi * &y_signed, &pr * &y_signed + &pi * &x);
        }
        let d_pow = num_traits::pow(d.clone(), steps as usize);
        exact_identity &= &re * &d_pow == &pr * &scale && &im * &d_pow == &pi * &scale;
        let lhs = Complex64::new(ratio_f64(&re, &scale), ratio_f64(&im, &scale));
        let target = Complex64::from_polar(1.0, theta * two_m as f64 / 2.0);
        max_error = max_error.max((lhs - target).norm());
    }
    Ok(ExpReconstruction { j, theta, exact_identity, max_error })
}

fn ratio_f64(n: &BigInt, d: &BigInt) -> f64 {
    crate::exact::to_f64(&BigRational::new(n.clone(), d.clone()))
}
