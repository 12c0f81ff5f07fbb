// Copyright 2026 The spinpoly Authors
// SPDX-License-Identifier: Apache-2.0

//! Spin-j spectrum, the Vandermonde matrix of `S = 2J₃`, its exact inverse,
//! the dual matrices, and coefficient projection.
//!
//! Matrix indices in the documentation are 1-based, `(k, l)` with
//! `1 ≤ k, l ≤ 2j+1`; storage is 0-based, so entry `(k, l)` lives at
//! `rows[k-1][l-1]`. Function values are always ordered
//! `f(2j), f(2j−2), …, f(−2j)`, i.e. in the order of [`DiagSpectrum::eigs`].

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use itertools::Itertools;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::cfn::cfn;
use crate::error::{Error, Result};
use crate::exact::{format_rational, int, parse_rational, BigRational, RationalPoly, Scalar};
use crate::memo::Memo;

/// Spin label `j`, stored exactly as `2j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfInt {
    two_j: u32,
}

impl HalfInt {
    pub const fn from_two_j(two_j: u32) -> Self {
        Self { two_j }
    }

    pub const fn from_integer(j: u32) -> Self {
        Self { two_j: 2 * j }
    }

    pub const fn two_j(self) -> u32 {
        self.two_j
    }

    /// Matrix dimension `2j + 1`.
    pub const fn dim(self) -> usize {
        self.two_j as usize + 1
    }

    pub const fn is_integer(self) -> bool {
        self.two_j.is_multiple_of(2)
    }

    /// `⌊j⌋`
    pub const fn floor(self) -> u32 {
        self.two_j / 2
    }

    /// `⌊j + 1/2⌋`, the number of nontrivial factors in the Cayley determinant.
    pub const fn half_floor_plus_half(self) -> usize {
        (self.two_j as usize).div_ceil(2)
    }

    pub fn as_f64(self) -> f64 {
        self.two_j as f64 / 2.0
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.two_j / 2)
        } else {
            write!(f, "{}/2", self.two_j)
        }
    }
}

impl FromStr for HalfInt {
    type Err = Error;

    /// Accepts `"3/2"`, `"1.5"` and `"3"`; anything that is not exactly a
    /// nonnegative half-integer is rejected.
    fn from_str(s: &str) -> Result<Self> {
        let r = parse_rational(s)?;
        let twice = r * int(2);
        if !twice.is_integer() || twice < BigRational::zero() {
            return Err(Error::Parse(format!("{s:?} is not a nonnegative half-integer")));
        }
        let two_j = u32::try_from(twice.to_integer()).map_err(|_| Error::Parse(format!("{s:?} is too large")))?;
        Ok(Self { two_j })
    }
}

impl Serialize for HalfInt {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Eigenvalues of `S = 2J₃`: `[2j, 2j−2, …, −2j]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagSpectrum {
    pub j: HalfInt,
    pub eigs: Vec<i64>,
}

pub fn spectrum(j: HalfInt) -> DiagSpectrum {
    let top = j.two_j() as i64;
    DiagSpectrum { j, eigs: (0..j.dim() as i64).map(|i| top - 2 * i).collect() }
}

/// Dense matrix of exact rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: Vec<Vec<BigRational>>,
    ncols: usize,
}

impl ExactMatrix {
    pub fn new(rows: Vec<Vec<BigRational>>) -> Result<Self> {
        let ncols = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != ncols) {
            return Err(Error::LengthMismatch { expected: ncols, got: bad.len() });
        }
        Ok(Self { rows, ncols })
    }

    /// Builds a matrix from integer entries scaled by `1/den`.
    pub fn from_scaled_ints(den: i64, rows: &[&[i64]]) -> Self {
        let d = int(den);
        let rows = rows.iter().map(|r| r.iter().map(|&x| int(x) / &d).collect()).collect();
        Self::new(rows).expect("rectangular literal")
    }

    pub fn identity(n: usize) -> Self {
        let rows = (0..n)
            .map(|i| (0..n).map(|k| if i == k { BigRational::one() } else { BigRational::zero() }).collect())
            .collect();
        Self { rows, ncols: n }
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    /// 0-based entry access.
    pub fn get(&self, r: usize, c: usize) -> &BigRational {
        &self.rows[r][c]
    }

    pub fn row(&self, r: usize) -> &[BigRational] {
        &self.rows[r]
    }

    pub fn rows(&self) -> &[Vec<BigRational>] {
        &self.rows
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.ncols != other.nrows() {
            return Err(Error::LengthMismatch { expected: self.ncols, got: other.nrows() });
        }
        let rows = self
            .rows
            .iter()
            .map(|r| {
                (0..other.ncols)
                    .map(|c| {
                        r.iter()
                            .zip(&other.rows)
                            .filter(|(a, _)| !a.is_zero())
                            .fold(BigRational::zero(), |acc, (a, orow)| acc + a * &orow[c])
                    })
                    .collect()
            })
            .collect();
        Ok(Self { rows, ncols: other.ncols })
    }

    /// `self · v` for a column vector of any scalar kind.
    pub fn apply<T: Scalar>(&self, v: &[T]) -> Result<Vec<T>> {
        if v.len() != self.ncols {
            return Err(Error::LengthMismatch { expected: self.ncols, got: v.len() });
        }
        Ok(self
            .rows
            .iter()
            .map(|r| {
                r.iter()
                    .zip(v)
                    .filter(|(a, _)| !a.is_zero())
                    .fold(T::zero(), |acc, (a, x)| acc + T::from_rational(a) * x.clone())
            })
            .collect())
    }

    /// Exact inverse by Gauss–Jordan elimination with nonzero pivoting.
    pub fn inverse(&self) -> Result<Self> {
        let n = self.nrows();
        if n != self.ncols {
            return Err(Error::LengthMismatch { expected: n, got: self.ncols });
        }
        let mut a = self.rows.clone();
        let mut inv = Self::identity(n).rows;
        for col in 0..n {
            let pivot =
                (col..n).find(|&r| !a[r][col].is_zero()).ok_or_else(|| Error::Domain("singular matrix".into()))?;
            a.swap(col, pivot);
            inv.swap(col, pivot);
            let p = a[col][col].clone();
            for x in a[col].iter_mut().chain(inv[col].iter_mut()) {
                *x /= &p;
            }
            for r in 0..n {
                if r == col || a[r][col].is_zero() {
                    continue;
                }
                let factor = a[r][col].clone();
                for c in 0..n {
                    if !a[col][c].is_zero() {
                        let d = &factor * &a[col][c];
                        a[r][c] -= d;
                    }
                    if !inv[col][c].is_zero() {
                        let d = &factor * &inv[col][c];
                        inv[r][c] -= d;
                    }
                }
            }
        }
        Ok(Self { rows: inv, ncols: n })
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.nrows())
    }
}

impl fmt::Display for ExactMatrix {
    /// CSV with `p/q` entries.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.rows {
            writeln!(f, "{}", r.iter().map(format_rational).join(","))?;
        }
        Ok(())
    }
}

static VANDERMONDE: Memo<HalfInt, ExactMatrix> = Memo::new();
static VANDERMONDE_INV: Memo<HalfInt, ExactMatrix> = Memo::new();
static COVARIANTS: Memo<HalfInt, Vec<RationalPoly>> = Memo::new();

/// `V[j]` with entry `(k, l) = eigs[k]^{l−1}`.
pub fn vandermonde(j: HalfInt) -> Arc<ExactMatrix> {
    VANDERMONDE.get_or_compute(j, || {
        let rows = spectrum(j)
            .eigs
            .iter()
            .map(|&e| {
                let e = int(e);
                std::iter::successors(Some(BigRational::one()), |p| Some(p * &e)).take(j.dim()).collect()
            })
            .collect();
        ExactMatrix::new(rows).expect("square")
    })
}

/// `V[j]⁻¹` by exact elimination.
pub fn vandermonde_inverse(j: HalfInt) -> Arc<ExactMatrix> {
    VANDERMONDE_INV.get_or_compute(j, || vandermonde(j).inverse().expect("Vandermonde nodes are distinct"))
}

fn check_index(j: HalfInt, name: &str, i: usize) -> Result<()> {
    if i == 0 || i > j.dim() {
        return Err(Error::IndexOutOfRange(format!("{name} = {i} outside 1..={}", j.dim())));
    }
    Ok(())
}

/// The numerator polynomial `N_k(l, j)`: a signed sum over all
/// `(2j+1−k)`-subsets of `{1, …, 2j+1} \ {l}` of `∏ (j+1−m)`.
pub fn findumonde_numerator(j: HalfInt, k: usize, l: usize) -> Result<BigRational> {
    check_index(j, "k", k)?;
    check_index(j, "l", l)?;
    let n = j.dim();
    let jr = BigRational::new(j.two_j().into(), 2.into());
    let factors: Vec<BigRational> = (1..=n).filter(|&m| m != l).map(|m| &jr + int(1) - int(m as i64)).collect();
    let sum = factors
        .iter()
        .combinations(n - k)
        .map(|subset| subset.into_iter().fold(BigRational::one(), |acc, f| acc * f))
        .fold(BigRational::zero(), |acc, t| acc + t);
    Ok(if (n - k).is_multiple_of(2) { sum } else { -sum })
}

/// Closed-form entry `(k, l)` of `V[j]⁻¹`:
/// `2^{1−k} (−1)^{1−l} N_k(l, j) / ((2j+1−l)! (l−1)!)`.
pub fn findumonde_entry(j: HalfInt, k: usize, l: usize) -> Result<BigRational> {
    let num = findumonde_numerator(j, k, l)?;
    let fact = |n: usize| (1..=n).fold(BigRational::one(), |acc, i| acc * int(i as i64));
    let two_pow = (1..k).fold(BigRational::one(), |acc, _| acc * int(2));
    let sign = if (l - 1).is_multiple_of(2) { int(1) } else { int(-1) };
    Ok(sign * num / (two_pow * fact(j.dim() - l) * fact(l - 1)))
}

/// Diagonal dual matrices `T_0, …, T_{2j}` with `Tr(T_n S^m) = δ_{nm}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualMatrixSet {
    pub j: HalfInt,
    /// `t[n]` is the diagonal of `T_n`.
    pub t: Vec<Vec<BigRational>>,
}

impl DualMatrixSet {
    /// `Tr(T_n S^m)`
    pub fn trace_pairing(&self, n: usize, m: u32) -> BigRational {
        spectrum(self.j)
            .eigs
            .iter()
            .zip(&self.t[n])
            .fold(BigRational::zero(), |acc, (&e, w)| acc + w * num_traits::pow(int(e), m as usize))
    }
}

pub fn dual_matrices(j: HalfInt) -> DualMatrixSet {
    DualMatrixSet { j, t: vandermonde_inverse(j).rows().to_vec() }
}

/// `[f₀, …, f_{2j}] = V[j]⁻¹ · fvals`, so that `f(S) = Σ f_m S^m`.
pub fn project_coefficients<T: Scalar>(j: HalfInt, fvals: &[T]) -> Result<Vec<T>> {
    vandermonde_inverse(j).apply(fvals)
}

/// Frobenius covariants `P_i(x) = ∏_{k≠i} (x − λ_k)/(λ_i − λ_k)` as exact
/// polynomials, in spectrum order.
pub fn frobenius_covariants(j: HalfInt) -> Arc<Vec<RationalPoly>> {
    COVARIANTS.get_or_compute(j, || {
        let eigs = spectrum(j).eigs;
        eigs.iter()
            .enumerate()
            .map(|(i, &li)| {
                eigs.iter().enumerate().filter(|&(k, _)| k != i).fold(RationalPoly::one(), |acc, (_, &lk)| {
                    let d = int(li - lk);
                    let factor = RationalPoly::new(vec![int(-lk) / &d, BigRational::one() / &d]);
                    &acc * &factor
                })
            })
            .collect()
    })
}

/// Monomial coefficients of `Σ_i f(λ_i) P_i(x)`.
pub fn lagrange_sylvester<T: Scalar>(j: HalfInt, fvals: &[T]) -> Result<Vec<T>> {
    if fvals.len() != j.dim() {
        return Err(Error::LengthMismatch { expected: j.dim(), got: fvals.len() });
    }
    let cov = frobenius_covariants(j);
    Ok((0..j.dim())
        .map(|m| {
            cov.iter().zip(fvals).fold(T::zero(), |acc, (p, f)| {
                let c = p.coeff(m);
                if c.is_zero() {
                    acc
                } else {
                    acc + T::from_rational(&c) * f.clone()
                }
            })
        })
        .collect())
}

/// `Σ_m coeffs[m] λ^m` by Horner.
pub fn eval_spin_poly<T: Scalar>(coeffs: &[T], lambda: &T) -> T {
    coeffs.iter().rev().fold(T::zero(), |acc, c| acc * lambda.clone() + c.clone())
}

/// Outcome of the exact fundamental-identity check for one spin.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FiReport {
    pub j: HalfInt,
    pub passed: bool,
    /// Eigenvalue of `S` at which the identity first failed.
    pub first_failure: Option<i64>,
}

/// Checks `λ^{2j+1} = −Σ_{k=0}^{2j} 2^{1+2j−k} t(2j+2, 1+k) λ^k` exactly at
/// every eigenvalue `λ` of `S`.
pub fn verify_fundamental_identity(j: HalfInt) -> FiReport {
    verify_fundamental_identity_with(j, cfn)
}

/// As [`verify_fundamental_identity`] with a caller-supplied `t(n, k)`.
pub fn verify_fundamental_identity_with(j: HalfInt, t: impl Fn(usize, usize) -> BigRational) -> FiReport {
    let n = j.two_j() as usize;
    let coeffs: Vec<BigRational> = (0..=n)
        .map(|k| {
            let scale = (0..n + 1 - k).fold(BigRational::one(), |acc, _| acc * int(2));
            -(t(n + 2, k + 1) * scale)
        })
        .collect();
    let first_failure = spectrum(j).eigs.into_iter().find(|&e| {
        let lambda = int(e);
        let lhs = (0..=n).fold(BigRational::one(), |acc, _| acc * &lambda);
        lhs != eval_spin_poly(&coeffs, &lambda)
    });
    FiReport { j, passed: first_failure.is_none(), first_failure }
}
