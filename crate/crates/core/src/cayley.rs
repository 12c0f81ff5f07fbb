// Copyright 2026 The spinpoly Authors
// SPDX-License-Identifier: Apache-2.0

//! Cayley-transform coefficients.
//!
//! ```text
//! (1 + 2iα n·J)/(1 − 2iα n·J) = Σ_k 𝔄_k(α) (2i n·J)^k
//! 𝔅_k(α) = α^k Trunc_{2j−k}[det(α)] / det(α)
//! det(α) = ∏_{n=1}^{⌊j+1/2⌋} (1 + 4α²(j+1−n)²)
//! ```
//!
//! with `𝔄₀ = 2𝔅₀ − 1` and `𝔄_k = 2𝔅_k` for `k ≥ 1`. The `𝔅_k` are the
//! coefficients of the resolvent `(1 − 2iα n·J)⁻¹` in powers of `2i n·J`.

use std::f64::consts::PI;
use std::sync::Arc;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::basis::{spectrum, HalfInt};
use crate::cfn::cfn;
use crate::error::{Error, Result};
use crate::exact::{from_f64, int, ln_abs, to_f64, BigRational, RationalFunction, RationalPoly, Scalar};
use crate::memo::Memo;
use crate::special::{ln_cosh, ln_factorial, ln_sinh};

pub use crate::special::trigamma_int;

static DET: Memo<HalfInt, RationalPoly> = Memo::new();
static DET_LN: Memo<HalfInt, Vec<Option<f64>>> = Memo::new();
static B_COEFFS: Memo<HalfInt, CayleyCoeffs> = Memo::new();
static DET_F64: Memo<HalfInt, Vec<f64>> = Memo::new();

/// `det(1 − 2iα n·J)` as an exact even polynomial in `α`.
pub fn det_poly(j: HalfInt) -> Arc<RationalPoly> {
    DET.get_or_compute(j, || det_product(j))
}

fn det_product(j: HalfInt) -> RationalPoly {
    let jr = BigRational::new(j.two_j().into(), 2.into());
    (1..=j.half_floor_plus_half()).fold(RationalPoly::one(), |acc, n| {
        let r = &jr + int(1) - int(n as i64);
        let f = RationalPoly::new(vec![int(1), int(0), int(4) * &r * &r]);
        &acc * &f
    })
}

/// `Σ_k 4^k |t(2j+2, 2j+2−2k)| α^{2k}`.
pub fn det_cfn_form(j: HalfInt) -> RationalPoly {
    det_cfn_form_with(j, cfn)
}

/// [`det_cfn_form`] with a caller-supplied `t(n, k)` table.
pub fn det_cfn_form_with(j: HalfInt, t: impl Fn(usize, usize) -> BigRational) -> RationalPoly {
    let n = j.two_j() as usize + 2;
    let mut coeffs = Vec::new();
    let mut four_k = BigRational::one();
    for k in 0..=j.half_floor_plus_half() {
        coeffs.push(&four_k * t(n, n - 2 * k).abs());
        coeffs.push(BigRational::zero());
        four_k *= int(4);
    }
    RationalPoly::new(coeffs)
}

/// `ln |Γ(j+1+iy)|²` for half-integer `j ≥ 0` and `y ≠ 0`.
fn ln_gamma_abs_sq(j: HalfInt, y: f64) -> f64 {
    let y = y.abs();
    let py = PI * y;
    if j.is_integer() {
        // |Γ(1+iy)|² = πy / sinh(πy)
        let prod: f64 = (1..=j.floor()).map(|n| ((n * n) as f64 + y * y).ln()).sum();
        py.ln() - ln_sinh(py) + prod
    } else {
        // |Γ(1/2+iy)|² = π / cosh(πy)
        let prod: f64 = (0..j.half_floor_plus_half())
            .map(|l| {
                let h = l as f64 + 0.5;
                (h * h + y * y).ln()
            })
            .sum();
        PI.ln() - ln_cosh(py) + prod
    }
}

/// Closed-form determinant through `|Γ(j+1+1/(2iα))|²`, evaluated in log space.
pub fn det_gamma(j: HalfInt, alpha: f64) -> Result<f64> {
    Ok(ln_det_gamma(j, alpha)?.exp())
}

/// `ln` of [`det_gamma`], usable where the determinant itself overflows.
pub fn ln_det_gamma(j: HalfInt, alpha: f64) -> Result<f64> {
    if alpha == 0.0 || !alpha.is_finite() {
        return Err(Error::Domain(format!("gamma form needs finite nonzero alpha, got {alpha}")));
    }
    let a = alpha.abs();
    let x = PI / (2.0 * a);
    let hyper = if j.is_integer() { ln_sinh(x) } else { ln_cosh(x) };
    Ok(-PI.ln() + (j.two_j() as f64 + 1.0) * (2.0 * a).ln() + hyper + ln_gamma_abs_sq(j, 1.0 / (2.0 * a)))
}

/// Large-`j` normalization of the determinant.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DetAsymptotics {
    /// `det / ((4α²)^{⌊j+1/2⌋} Γ(j+1)²)`
    pub ratio: f64,
    /// `(2α/π) sinh(π/2α)` for integer `j`, `cosh(π/2α)/π` otherwise.
    pub limit: f64,
}

pub fn det_asymptotics(j: HalfInt, alpha: f64) -> Result<DetAsymptotics> {
    if alpha == 0.0 {
        return Err(Error::Domain("alpha must be nonzero".into()));
    }
    let a = alpha.abs();
    let x = PI / (2.0 * a);
    let ln_det = ln_poly_at(j, a);
    let ln_norm = j.half_floor_plus_half() as f64 * (4.0 * a * a).ln()
        + 2.0 * crate::special::ln_gamma_half_integer(j.two_j() as u64 + 2);
    let limit = if j.is_integer() { (ln_sinh(x) - x.ln()).exp() } else { (ln_cosh(x) - PI.ln()).exp() };
    Ok(DetAsymptotics { ratio: (ln_det - ln_norm).exp(), limit })
}

/// `ln d_n` for the (nonnegative) coefficients of `det_poly`, `None` for zeros.
fn det_ln_coeffs(j: HalfInt) -> Arc<Vec<Option<f64>>> {
    DET_LN.get_or_compute(j, || det_poly(j).coeffs().iter().map(|c| (!c.is_zero()).then(|| ln_abs(c))).collect())
}

fn log_sum_exp(terms: impl Iterator<Item = f64>) -> f64 {
    let v: Vec<f64> = terms.collect();
    let m = v.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if m == f64::NEG_INFINITY {
        return m;
    }
    m + v.iter().map(|t| (t - m).exp()).sum::<f64>().ln()
}

fn ln_poly_at(j: HalfInt, a: f64) -> f64 {
    let la = a.ln();
    log_sum_exp(det_ln_coeffs(j).iter().enumerate().filter_map(|(n, c)| c.map(|c| c + n as f64 * la)))
}

/// `(Trunc_{2j−k}[det]/det, 1 − that)` at `|α|`, both from positive sums.
fn trunc_split(j: HalfInt, k: usize, alpha: f64) -> (f64, f64) {
    let a = alpha.abs();
    if a == 0.0 {
        return (1.0, 0.0);
    }
    let la = a.ln();
    let cut = j.two_j() as usize - k;
    let coeffs = det_ln_coeffs(j);
    let terms = |keep: bool| {
        coeffs
            .iter()
            .enumerate()
            .filter(move |(n, _)| (*n <= cut) == keep)
            .filter_map(move |(n, c)| c.map(|c| c + n as f64 * la))
    };
    let ln_total = ln_poly_at(j, a);
    ((log_sum_exp(terms(true)) - ln_total).exp(), (log_sum_exp(terms(false)) - ln_total).exp())
}

/// `𝔅_k(α)/α^k = Trunc_{2j−k}[det]/det`, stable for large `j` and `α`.
pub fn b_over_alpha_power(j: HalfInt, k: usize, alpha: f64) -> Result<f64> {
    check_k(j, k)?;
    Ok(trunc_split(j, k, alpha).0)
}

fn check_k(j: HalfInt, k: usize) -> Result<()> {
    if k > j.two_j() as usize {
        return Err(Error::IndexOutOfRange(format!("k = {k} exceeds 2j = {}", j.two_j())));
    }
    Ok(())
}

/// Exact `𝔅_k` and `𝔄_k` for one spin, stored over the common
/// denominator `det_poly(j)` without reduction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CayleyCoeffs {
    pub j: HalfInt,
    pub b: Vec<RationalFunction>,
    pub a: Vec<RationalFunction>,
}

impl CayleyCoeffs {
    fn from_b(j: HalfInt, b: Vec<RationalFunction>) -> Self {
        let a = b
            .iter()
            .enumerate()
            .map(|(k, bk)| {
                let twice = bk.scale(&int(2));
                if k == 0 {
                    RationalFunction::new(twice.num() - bk.den(), bk.den().clone()).expect("nonzero den")
                } else {
                    twice
                }
            })
            .collect();
        Self { j, b, a }
    }

    /// Canonical (reduced) forms of every coefficient.
    pub fn reduced(&self) -> Self {
        Self {
            j: self.j,
            b: self.b.iter().map(RationalFunction::reduce).collect(),
            a: self.a.iter().map(RationalFunction::reduce).collect(),
        }
    }

    pub fn b_at<T: Scalar>(&self, alpha: &T) -> Result<Vec<T>> {
        self.b.iter().map(|f| f.eval_with(alpha)).collect()
    }

    pub fn a_at<T: Scalar>(&self, alpha: &T) -> Result<Vec<T>> {
        self.a.iter().map(|f| f.eval_with(alpha)).collect()
    }

    /// Coefficients of `(n·J)^k`: `𝔄_k (2i)^k`.
    pub fn nj_basis_at(&self, alpha: f64) -> Result<Vec<Complex64>> {
        Ok(self
            .a_at(&alpha)?
            .into_iter()
            .enumerate()
            .map(|(k, a)| Complex64::new(0.0, 2.0).powu(k as u32) * a)
            .collect())
    }
}

/// `𝔅_k = α^k Trunc_{2j−k}[det]/det` for `k = 0 … 2j`, memoized.
pub fn b_coeffs(j: HalfInt) -> Arc<CayleyCoeffs> {
    B_COEFFS.get_or_compute(j, || build_b_coeffs(j))
}

/// [`b_coeffs`] built from scratch, bypassing every cache.
pub fn build_b_coeffs(j: HalfInt) -> CayleyCoeffs {
    let det = det_product(j);
    let b = (0..j.dim())
        .map(|k| {
            let num = det.truncate(j.two_j() as usize - k).shift(k);
            RationalFunction::new(num, det.clone()).expect("det(0) = 1")
        })
        .collect();
    CayleyCoeffs::from_b(j, b)
}

/// `𝔄_0 … 𝔄_{2j}` at one `α` in `O(j)` operations, from prefix sums of
/// the determinant's coefficients. Overflows once `det(α)` exceeds the
/// `f64` range; use [`b_over_alpha_power`] there.
pub fn cayley_poly(j: HalfInt, alpha: f64) -> Vec<f64> {
    let d = det_f64_coeffs(j);
    let mut prefix = Vec::with_capacity(d.len());
    let mut acc = 0.0;
    let mut power = 1.0;
    for c in d.iter() {
        acc += c * power;
        prefix.push(acc);
        power *= alpha;
    }
    let det = acc;
    let two_j = j.two_j() as usize;
    let mut alpha_k = 1.0;
    (0..=two_j)
        .map(|k| {
            let b = alpha_k * prefix[two_j - k] / det;
            alpha_k *= alpha;
            if k == 0 {
                2.0 * b - 1.0
            } else {
                2.0 * b
            }
        })
        .collect()
}

fn det_f64_coeffs(j: HalfInt) -> Arc<Vec<f64>> {
    DET_F64.get_or_compute(j, || {
        // Degree 2⌊j+1/2⌋, which is 2j + 1 for semi-integer j.
        let mut c = det_poly(j).to_f64_coeffs();
        c.resize(2 * j.half_floor_plus_half() + 1, 0.0);
        c
    })
}

/// An affine form `p + q X` in the unknown top coefficient `X = 𝔅_{2j}`.
#[derive(Clone)]
struct Affine {
    p: RationalPoly,
    q: RationalPoly,
}

/// `𝔅_k` by upward recursion.
///
/// Multiplying `Σ_k b_k M^k` by `1 − αM` with `M = 2i n·J` and reducing
/// `M^{2j+1}` with the fundamental identity gives
/// `b_k = α b_{k−1} + α d_k b_{2j}` with `b_{−1} = 0` and
/// `d_k = −(2i)^{2j+1−k} t(2j+2, k+1)`. The `d_k` vanish unless `2j+1−k`
/// is even, which produces the pairing `b_{k} = α b_{k−1}` on the other
/// parity. Each `b_k` is carried as an affine form in `X = b_{2j}`, and the
/// last step closes the system: `X = P + QX`.
pub fn b_coeffs_recursion(j: HalfInt) -> CayleyCoeffs {
    b_coeffs_recursion_with(j, cfn)
}

/// [`b_coeffs_recursion`] with a caller-supplied `t(n, k)` table.
pub fn b_coeffs_recursion_with(j: HalfInt, t: impl Fn(usize, usize) -> BigRational) -> CayleyCoeffs {
    let two_j = j.two_j() as usize;
    let alpha = RationalPoly::x();
    let mut forms: Vec<Affine> = Vec::with_capacity(two_j + 1);
    for k in 0..=two_j {
        let (p, mut q) = match forms.last() {
            Some(prev) => (&prev.p * &alpha, &prev.q * &alpha),
            None => (RationalPoly::one(), RationalPoly::zero()),
        };
        let e = two_j + 1 - k;
        if e.is_multiple_of(2) {
            // −(2i)^e t = −(−4)^{e/2} t; the sign law makes this −4^{e/2}|t|.
            let four_pow = (0..e / 2).fold(BigRational::one(), |acc, _| acc * int(-4));
            let d = -(four_pow * t(two_j + 2, k + 1));
            q = &q + &alpha.scale(&d);
        }
        forms.push(Affine { p, q });
    }
    let top = forms.last().expect("2j+1 >= 1 forms");
    let den = &RationalPoly::one() - &top.q;
    let x_num = top.p.clone();
    let b = forms
        .iter()
        .map(|f| {
            // p + q P/(1−Q) = (p(1−Q) + qP)/(1−Q)
            let num = &(&f.p * &den) + &(&f.q * &x_num);
            RationalFunction::new(num, den.clone()).expect("1 − Q has constant term 1")
        })
        .collect();
    CayleyCoeffs::from_b(j, b)
}

/// First violation of the pairing and parity laws among the exact `𝔅_k`:
/// `𝔅_k(−α) = (−1)^k 𝔅_k(α)`, `𝔄_k` from `𝔅_k`, and `𝔅_{k+1} = α𝔅_k` for
/// odd `k` (integer `j`, where also `𝔅₀ = 1`) or even `k` (semi-integer `j`).
pub fn pairing_violation(j: HalfInt) -> Option<String> {
    let c = b_coeffs(j);
    let alpha = RationalPoly::x();
    let one = RationalFunction::from_poly(RationalPoly::one());
    for (k, b) in c.b.iter().enumerate() {
        let sign = if k % 2 == 0 { int(1) } else { int(-1) };
        if !b.reflect().equivalent(&b.scale(&sign)) {
            return Some(format!("B_{k}(-a) != (-1)^{k} B_{k}(a)"));
        }
        let twice = b.scale(&int(2));
        let expect = if k == 0 { &twice - &one } else { twice };
        if !c.a[k].equivalent(&expect) {
            return Some(format!("A_{k} is not derived from B_{k}"));
        }
    }
    if j.is_integer() && !c.b[0].equivalent(&one) {
        return Some("B_0 != 1 for integer j".into());
    }
    let first = if j.is_integer() { 1 } else { 0 };
    for k in (first..j.two_j() as usize).step_by(2) {
        if !c.b[k + 1].equivalent(&c.b[k].mul_poly(&alpha)) {
            return Some(format!("B_{} != a B_{k}", k + 1));
        }
    }
    None
}

/// Coefficients `r_m` with `Σ_m r_m λ^m = 1/(1 − αλ)` on every eigenvalue
/// `λ` of a diagonalizable matrix with distinct eigenvalues:
/// `r_n = α^n Trunc_{N−1−n}[det(1−αM)] / det(1−αM)`.
pub fn resolvent_coeffs<T: Scalar>(eigenvalues: &[T], alpha: &T) -> Result<Vec<T>> {
    for (i, a) in eigenvalues.iter().enumerate() {
        if let Some(k) = eigenvalues[i + 1..].iter().position(|b| b == a) {
            return Err(Error::DuplicateEigenvalue(i, i + 1 + k));
        }
    }
    // d(x) = ∏ (1 − λ_i x), coefficients over T.
    let mut d: Vec<T> = vec![T::one()];
    for lambda in eigenvalues {
        if (T::one() - alpha.clone() * lambda.clone()).is_zero() {
            return Err(Error::Domain("1 − αλ vanishes".into()));
        }
        let mut next = d.clone();
        next.push(T::zero());
        for (i, c) in d.iter().enumerate() {
            next[i + 1] = next[i + 1].clone() - c.clone() * lambda.clone();
        }
        d = next;
    }
    let n = eigenvalues.len();
    let powers: Vec<T> =
        std::iter::successors(Some(T::one()), |p| Some(p.clone() * alpha.clone())).take(n + 1).collect();
    let det = d.iter().zip(&powers).fold(T::zero(), |acc, (c, p)| acc + c.clone() * p.clone());
    Ok((0..n)
        .map(|m| {
            let trunc = d[..n - m].iter().zip(&powers).fold(T::zero(), |acc, (c, p)| acc + c.clone() * p.clone());
            powers[m].clone() * trunc / det.clone()
        })
        .collect())
}

/// Eigenvalues `2im` of `M = 2i n·J`, in spectrum order.
pub fn spin_resolvent_eigenvalues(j: HalfInt) -> Vec<Complex64> {
    spectrum(j).eigs.iter().map(|&e| Complex64::new(0.0, e as f64)).collect()
}

/// `(value, 1 − value)`, each computed without cancellation.
fn split_series(x: f64, ln_norm: f64, skip: usize, odd: bool) -> (f64, f64) {
    // Terms x^{2n+o}/(2n+o)! / norm, o = 1 (odd) or 0 (even).
    let term = |n: usize| {
        let p = (2 * n + usize::from(odd)) as u64;
        (p as f64 * x.ln() - ln_factorial(p) - ln_norm).exp()
    };
    let head: f64 = (0..skip).map(term).sum();
    if head <= 0.5 {
        return (1.0 - head, head);
    }
    let mut tail = 0.0;
    let mut n = skip;
    loop {
        let t = term(n);
        tail += t;
        if (n as f64) > x && t <= tail * 1e-18 {
            break;
        }
        n += 1;
    }
    (tail, 1.0 - tail)
}

fn asymp_bosonic_split(k: usize, alpha: f64) -> (f64, f64) {
    if alpha == 0.0 {
        return (1.0, 0.0);
    }
    let x = PI / (2.0 * alpha.abs());
    split_series(x, ln_sinh(x), k, true)
}

fn asymp_fermionic_split(k: usize, alpha: f64) -> (f64, f64) {
    if alpha == 0.0 {
        return (1.0, 0.0);
    }
    let x = PI / (2.0 * alpha.abs());
    split_series(x, ln_cosh(x), k + 1, false)
}

/// `1 − [Σ_{n<k} x^{2n}/(2n+1)!] / [sinh(x)/x]`, `x = π/2|α|`; equals 1 at `α = 0`.
pub fn asymp_bosonic(k: usize, alpha: f64) -> Result<f64> {
    if k == 0 {
        return Err(Error::IndexOutOfRange("asymp_bosonic needs k >= 1".into()));
    }
    Ok(asymp_bosonic_split(k, alpha).0)
}

/// `1 − [Σ_{n≤k} x^{2n}/(2n)!] / cosh(x)`, `x = π/2|α|`; equals 1 at `α = 0`.
pub fn asymp_fermionic(k: usize, alpha: f64) -> f64 {
    asymp_fermionic_split(k, alpha).0
}

/// `𝔅_k/α^k` for integer `j` and `k ∈ {1, 2, 3, 4}` from the gamma closed forms:
///
/// ```text
/// 𝔅₁/α = 𝔅₂/α² = 1 − R
/// 𝔅₃/α³ = 𝔅₄/α⁴ = 1 − R (1 + (π² − 6Ψ₁(1+j))/(24α²))
/// R = π (j!)² / (2|α| sinh(π/2|α|) |Γ(j+1+1/(2iα))|²)
/// ```
pub fn b_exact_largej(j: HalfInt, k: usize, alpha: f64) -> Result<f64> {
    if !j.is_integer() {
        return Err(Error::Parity("closed forms hold for integer j only".into()));
    }
    if !(1..=4).contains(&k) {
        return Err(Error::IndexOutOfRange(format!("k = {k} not in 1..=4")));
    }
    check_k(j, k)?;
    if alpha == 0.0 {
        return Err(Error::Domain("alpha must be nonzero".into()));
    }
    let a = alpha.abs();
    let x = PI / (2.0 * a);
    let jj = j.floor();
    let mut ln_r =
        PI.ln() + 2.0 * ln_factorial(jj as u64) - (2.0 * a).ln() - ln_sinh(x) - ln_gamma_abs_sq(j, 1.0 / (2.0 * a));
    if k >= 3 {
        ln_r += (1.0 + (PI * PI - 6.0 * trigamma_int(jj as u64)) / (24.0 * a * a)).ln();
    }
    Ok(-ln_r.exp_m1())
}

/// Large-`j` limit of `𝔅_k/α^k` with the statistics of `j`: 1 for `k = 0`
/// and integer `j`, `asymp_bosonic(⌈k/2⌉)` for other integer-`j` cases,
/// `asymp_fermionic(⌊k/2⌋)` for semi-integer `j`.
pub fn b_limit(j: HalfInt, k: usize, alpha: f64) -> f64 {
    match (j.is_integer(), k) {
        (true, 0) => 1.0,
        (true, _) => asymp_bosonic_split(k.div_ceil(2), alpha).0,
        (false, _) => asymp_fermionic(k / 2, alpha),
    }
}

/// `Δ_k = (𝔄_k^∞ − 𝔄_k)/𝔄_k`, where `𝔄_k^∞` replaces `𝔅_k/α^k` by its
/// large-`j` limit of matching statistics: `asymp_bosonic(⌈k/2⌉)` for
/// integer `j`, `asymp_fermionic(⌊k/2⌋)` for semi-integer `j`.
///
/// For integer `j`, `𝔄₀ = 1` identically and `Δ₀ = 0`.
pub fn relative_error(j: HalfInt, k: usize, alpha: f64) -> Result<f64> {
    check_k(j, k)?;
    if k == 0 {
        if j.is_integer() {
            return Ok(0.0);
        }
        let (v, tv) = trunc_split(j, 0, alpha);
        let (a, ta) = asymp_fermionic_split(0, alpha);
        let a0 = v - tv;
        if a0 == 0.0 {
            return Err(Error::Domain("𝔄₀ vanishes".into()));
        }
        let diff = if v > 0.5 && a > 0.5 { tv - ta } else { a - v };
        return Ok(2.0 * diff / a0);
    }
    if alpha == 0.0 {
        return Err(Error::Domain("𝔄_k vanishes at alpha = 0 for k >= 1".into()));
    }
    let (v, tv) = trunc_split(j, k, alpha);
    // Same selection as `b_limit`, kept as a split to avoid cancellation.
    let (a, ta) =
        if j.is_integer() { asymp_bosonic_split(k.div_ceil(2), alpha) } else { asymp_fermionic_split(k / 2, alpha) };
    let diff = if v > 0.5 && a > 0.5 { tv - ta } else { a - v };
    Ok(diff / v)
}

/// Result of checking the Cayley polynomial against `(1+2iαm)/(1−2iαm)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CayleyReconstruction {
    pub j: HalfInt,
    pub alpha: f64,
    pub exact_identity: bool,
    pub max_error: f64,
}

/// Evaluates `Σ_k 𝔄_k(α)(2im)^k` exactly at the binary rational `α` and
/// compares with `(1+2iαm)/(1−2iαm)` on every eigenvalue.
pub fn cayley_reconstruction_exact(j: HalfInt, alpha: f64) -> Result<CayleyReconstruction> {
    let ar = from_f64(alpha)?;
    let a = b_coeffs(j).a_at(&ar)?;
    // Integer arithmetic throughout: with a_k = n_k/L and α = p/q the
    // identity for eigenvalue λ reads
    //   (q² + λ²p²) Σ_k n_k (iλ)^k = L (q + iλp)².
    let den = a.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    let nums: Vec<BigInt> = a.iter().map(|c| c.numer() * (&den / c.denom())).collect();
    let (p, q) = (ar.numer(), ar.denom());
    let mut exact_identity = true;
    let mut max_error: f64 = 0.0;
    for two_m in spectrum(j).eigs {
        let (mut re, mut im) = (BigInt::zero(), BigInt::zero());
        let mut power = BigInt::one();
        for (k, n) in nums.iter().enumerate() {
            let term = n * &power;
            match k % 4 {
                0 => re += term,
                1 => im += term,
                2 => re -= term,
                _ => im -= term,
            }
            power *= two_m;
        }
        let lp = p * two_m;
        let norm = q * q + &lp * &lp;
        exact_identity &= &re * &norm == &den * (q * q - &lp * &lp) && &im * &norm == &den * 2 * q * &lp;
        let lhs =
            Complex64::new(to_f64(&BigRational::new(re, den.clone())), to_f64(&BigRational::new(im, den.clone())));
        let target = Complex64::new(1.0, alpha * two_m as f64) / Complex64::new(1.0, -alpha * two_m as f64);
        max_error = max_error.max((lhs - target).norm());
    }
    Ok(CayleyReconstruction { j, alpha, exact_identity, max_error })
}

/// Only even powers, each with a positive coefficient.
pub fn all_coefficients_positive(p: &RationalPoly) -> bool {
    p.coeffs().iter().enumerate().all(|(n, c)| if n % 2 == 0 { c.is_positive() } else { c.is_zero() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use approx::assert_relative_eq;

    fn h(two_j: u32) -> HalfInt {
        HalfInt::from_two_j(two_j)
    }

    fn rf(num: &[i64], den: &[i64]) -> RationalFunction {
        RationalFunction::new(RationalPoly::from_ints(num), RationalPoly::from_ints(den)).unwrap()
    }

    #[test]
    fn determinants() {
        assert_eq!(*det_poly(h(3)), RationalPoly::from_ints(&[1, 0, 10, 0, 9]));
        assert_eq!(*det_poly(h(6)), RationalPoly::from_ints(&[1, 0, 56, 0, 784, 0, 2304]));
        assert_eq!(*det_poly(h(0)), RationalPoly::one());
        for two_j in 0..=40 {
            assert_eq!(*det_poly(h(two_j)), det_cfn_form(h(two_j)), "2j = {two_j}");
            assert!(all_coefficients_positive(&det_poly(h(two_j))));
        }
    }

    #[test]
    fn gamma_form_examples() {
        assert_relative_eq!(det_gamma(h(2), 0.5).unwrap(), 2.0, max_relative = 1e-10);
        assert_relative_eq!(det_gamma(h(1), 1.0).unwrap(), 2.0, max_relative = 1e-10);
        assert_relative_eq!(det_gamma(h(5), 1.0).unwrap(), 520.0, max_relative = 1e-10);
        assert_relative_eq!(det_gamma(h(0), 0.3).unwrap(), 1.0, max_relative = 1e-12);
        assert!(det_gamma(h(2), 0.0).is_err());
    }

    #[test]
    fn gamma_form_matches_polynomial() {
        let alphas = [2.0, -2.0, 1.0, -1.0, 0.5, -0.5, 0.1, -0.1];
        for two_j in 0..=30 {
            let det = det_poly(h(two_j));
            for &a in &alphas {
                let exact = det.eval_f64(a);
                assert_relative_eq!(det_gamma(h(two_j), a).unwrap(), exact, max_relative = 1e-10);
            }
        }
    }

    #[test]
    fn spin_half_and_one() {
        let c = b_coeffs(h(1)).reduced();
        assert_eq!(c.b[0], rf(&[1], &[1, 0, 1]));
        assert_eq!(c.b[1], rf(&[0, 1], &[1, 0, 1]));
        assert_eq!(c.a[0], rf(&[1, 0, -1], &[1, 0, 1]));
        let c = b_coeffs(h(2)).reduced();
        assert_eq!(c.b[0], rf(&[1], &[1]));
        assert_eq!(c.b[1], rf(&[0, 1], &[1, 0, 4]));
        assert_eq!(c.b[2], rf(&[0, 0, 1], &[1, 0, 4]));
        let c = b_coeffs(h(3));
        assert!(c.a[0].equivalent(&rf(&[1, 0, 10, 0, -9], &[1, 0, 10, 0, 9])));
        assert!(c.a[1].equivalent(&rf(&[0, 2, 0, 20], &[1, 0, 10, 0, 9])));
    }

    #[test]
    fn recursion_matches_truncation() {
        for two_j in 0..=16 {
            let direct = b_coeffs(h(two_j)).reduced();
            let rec = b_coeffs_recursion(h(two_j)).reduced();
            assert_eq!(direct, rec, "2j = {two_j}");
        }
    }

    #[test]
    fn recursion_derivative_normalization() {
        for two_j in 0..=6 {
            let rec = b_coeffs_recursion(h(two_j));
            for (m, b) in rec.b.iter().enumerate() {
                let taylor = b.taylor(m).unwrap();
                // b_m = α^m + O(α^{m+1}), so d^m b_m/dα^m at 0 is m!.
                assert_eq!(taylor[m], int(1), "2j={two_j} m={m}");
                assert!(taylor[..m].iter().all(Zero::is_zero));
            }
        }
        let half = b_coeffs_recursion(h(1)).reduced();
        assert_eq!(half.b[0], rf(&[1], &[1, 0, 1]));
    }

    #[test]
    fn resolvent_examples() {
        let r = resolvent_coeffs(&[rat(3, 1)], &rat(1, 7)).unwrap();
        assert_eq!(r, vec![rat(7, 4)]);
        let eigs = [int(1), int(2), int(3)];
        let alpha = rat(1, 10);
        let r = resolvent_coeffs(&eigs, &alpha).unwrap();
        for l in &eigs {
            let lhs = r.iter().rev().fold(BigRational::zero(), |acc, c| acc * l + c);
            assert_eq!(lhs, int(1) / (int(1) - &alpha * l));
        }
        assert!(matches!(resolvent_coeffs(&[int(1), int(1)], &alpha), Err(Error::DuplicateEigenvalue(0, 1))));
        assert!(matches!(resolvent_coeffs(&[int(2)], &rat(1, 2)), Err(Error::Domain(_))));
    }

    #[test]
    fn resolvent_on_spin_spectrum() {
        for two_j in 0..=16u32 {
            let j = h(two_j);
            let eigs = spin_resolvent_eigenvalues(j);
            let c = b_coeffs(j);
            for i in 0..20 {
                let a = -3.0 + 6.0 * i as f64 / 19.0;
                let r = resolvent_coeffs(&eigs, &Complex64::new(a, 0.0)).unwrap();
                for (bk, rk) in c.b_at(&a).unwrap().iter().zip(&r) {
                    assert!((rk - bk).norm() < 1e-11, "2j={two_j} α={a}");
                }
            }
        }
    }

    #[test]
    fn pairing_and_parity() {
        for two_j in 0..=16u32 {
            assert_eq!(pairing_violation(h(two_j)), None, "2j = {two_j}");
        }
    }

    #[test]
    fn fast_evaluation_matches_exact() {
        for two_j in 0..=20u32 {
            let j = h(two_j);
            assert_eq!(build_b_coeffs(j), *b_coeffs(j));
            for a in [-2.5, -0.3, 0.0, 0.7, 3.0] {
                let exact = b_coeffs(j).a_at(&a).unwrap();
                for (x, y) in cayley_poly(j, a).iter().zip(&exact) {
                    assert!((x - y).abs() <= 1e-13 * y.abs().max(1.0), "2j={two_j} α={a}");
                }
            }
        }
    }

    #[test]
    fn highest_coefficients() {
        for two_j in 1..=16u32 {
            let j = h(two_j);
            let c = b_coeffs(j);
            let n = two_j as usize;
            let inv_det = RationalFunction::new(RationalPoly::one(), (*det_poly(j)).clone()).unwrap();
            let top = RationalFunction::new(RationalPoly::monomial(int(1), n), RationalPoly::one()).unwrap();
            let next = RationalFunction::new(RationalPoly::monomial(int(1), n - 1), RationalPoly::one()).unwrap();
            assert!(c.b[n].equivalent(&(&inv_det * &top)));
            assert!(c.b[n - 1].equivalent(&(&inv_det * &next)));
        }
    }

    #[test]
    fn float_reconstruction_small_spins() {
        for two_j in 0..=10u32 {
            let j = h(two_j);
            for i in 0..20 {
                let a = -3.0 + 6.0 * i as f64 / 19.0;
                let coeffs = b_coeffs(j).a_at(&a).unwrap();
                for two_m in spectrum(j).eigs {
                    let lambda = Complex64::new(0.0, two_m as f64);
                    let lhs = coeffs.iter().rev().fold(Complex64::zero(), |acc, c| acc * lambda + c);
                    let z = Complex64::new(0.0, a * two_m as f64);
                    assert!((lhs - (1.0 + z) / (1.0 - z)).norm() < 1e-10);
                }
            }
        }
    }

    #[test]
    fn exact_reconstruction() {
        for two_j in [0u32, 1, 4, 9] {
            for &a in &[-3.0, -0.25, 0.0, 1.0 / 3.0, 2.5] {
                let r = cayley_reconstruction_exact(h(two_j), a).unwrap();
                assert!(r.exact_identity && r.max_error < 1e-14, "{r:?}");
            }
        }
    }

    #[test]
    fn asymptotic_examples() {
        let b1 = asymp_bosonic(1, 1.0).unwrap();
        assert_relative_eq!(b1, 1.0 - 1.0 / ((2.0 / PI) * (PI / 2.0).sinh()), max_relative = 1e-14);
        assert_relative_eq!(b1, 0.317_430_55, epsilon = 1e-8);
        assert_eq!(asymp_bosonic(3, 0.0).unwrap(), 1.0);
        assert!(asymp_bosonic(1, 1e6).unwrap() < 1e-10);
        assert!(asymp_bosonic(0, 1.0).is_err());
        let mut prev = 1.0;
        for k in 1..=10 {
            let v = asymp_bosonic(k, 1.0).unwrap();
            assert!(v < prev && v > 0.0);
            prev = v;
        }
        assert_relative_eq!(asymp_fermionic(0, 0.8), 1.0 - 1.0 / (PI / 1.6).cosh(), max_relative = 1e-14);
        assert_relative_eq!(asymp_fermionic(1, PI / 2.0), 1.0 - 1.5 / 1f64.cosh(), max_relative = 1e-12);
        assert_relative_eq!(asymp_fermionic(1, PI / 2.0), 0.0279, epsilon = 1e-4);
        assert!(asymp_fermionic(2, 1e6) < 1e-10);
        assert_eq!(asymp_fermionic(2, 0.0), 1.0);
    }

    #[test]
    fn asymptotic_small_alpha_tails() {
        // Tails are summed directly when the value is close to zero.
        for &a in &[3.0, 10.0, 100.0] {
            let x = PI / (2.0 * a);
            let direct = 1.0 - x / x.sinh();
            assert_relative_eq!(asymp_bosonic(1, a).unwrap(), direct, max_relative = 1e-9);
        }
    }

    #[test]
    fn large_j_closed_forms() {
        assert_relative_eq!(b_exact_largej(h(2), 1, 1.0).unwrap(), 0.2, max_relative = 1e-12);
        for jj in 1..=12u32 {
            let j = HalfInt::from_integer(jj);
            let c = b_coeffs(j);
            for &a in &[0.2, 0.5, 1.0, 2.0, 4.5] {
                let b = c.b_at(&a).unwrap();
                for (k, bk) in b.iter().enumerate().take(5.min(2 * jj as usize + 1)).skip(1) {
                    let exact = bk / a.powi(k as i32);
                    assert_relative_eq!(b_exact_largej(j, k, a).unwrap(), exact, max_relative = 1e-9);
                }
            }
        }
        assert!(b_exact_largej(h(3), 1, 1.0).is_err());
        assert!(b_exact_largej(h(2), 3, 1.0).is_err());
        assert!(b_exact_largej(h(2), 1, 0.0).is_err());
    }

    #[test]
    fn trunc_ratio_matches_rational_function() {
        for two_j in 0..=12u32 {
            let c = b_coeffs(h(two_j));
            for &a in &[0.05, 0.7, 3.0] {
                for (k, b) in c.b.iter().enumerate() {
                    let direct = b.eval_f64(a) / a.powi(k as i32);
                    assert_relative_eq!(b_over_alpha_power(h(two_j), k, a).unwrap(), direct, max_relative = 1e-12);
                }
            }
        }
    }

    #[test]
    fn relative_error_behaviour() {
        let alphas: Vec<f64> = (1..=50).map(|i| 0.1 * i as f64).collect();
        for k in 1..=2 {
            for &a in &alphas {
                let d: Vec<f64> = [2u32, 4, 16].iter().map(|&t| relative_error(h(t), k, a).unwrap()).collect();
                assert!(d.iter().all(|&x| x >= 0.0), "k={k} α={a} {d:?}");
                assert!(d[0] >= d[1] && d[1] >= d[2], "k={k} α={a} {d:?}");
            }
        }
        assert!(relative_error(h(2), 1, 0.0).is_err());
        assert!(relative_error(h(2), 3, 1.0).is_err());
        assert_eq!(relative_error(h(4), 0, 1.0).unwrap(), 0.0);
    }

    #[test]
    fn large_j_convergence_rate() {
        // 𝔅₁/α approaches its limit like 1/(4α²j): j = 50 sits about 3.4e-3 away at α = 1.
        let gap = asymp_bosonic(1, 1.0).unwrap() - b_over_alpha_power(HalfInt::from_integer(50), 1, 1.0).unwrap();
        assert!(gap > 3.0e-3 && gap < 3.6e-3, "gap = {gap}");
        let gap200 = asymp_bosonic(1, 1.0).unwrap() - b_over_alpha_power(HalfInt::from_integer(200), 1, 1.0).unwrap();
        assert!(gap200 < gap / 3.5);
    }

    #[test]
    fn determinant_asymptotic_split() {
        let bos = det_asymptotics(HalfInt::from_integer(40), 1.0).unwrap();
        let fer = det_asymptotics(h(81), 1.0).unwrap();
        assert!((bos.ratio / bos.limit - 1.0).abs() < 0.02, "{bos:?}");
        assert!((fer.ratio / fer.limit - 1.0).abs() < 0.02, "{fer:?}");
        assert!((bos.limit - fer.limit).abs() > 0.1);
    }
}
