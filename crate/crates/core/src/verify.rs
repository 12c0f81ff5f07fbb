// Copyright 2026 The spinpoly Authors
// SPDX-License-Identifier: Apache-2.0

//! Cross-module invariant suite, run for every `2j` up to a bound.
//!
//! Exact checks pass or fail outright. Floating-point checks compare
//! against a base tolerance multiplied by `VerifyOptions::tol_scale`, so a
//! breach can be provoked deliberately by shrinking the scale.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::Serialize;

use crate::basis::{
    dual_matrices, lagrange_sylvester, project_coefficients, spectrum, vandermonde, vandermonde_inverse,
    verify_fundamental_identity, HalfInt,
};
use crate::bridge::{exp_cayley_mismatch, Eigenvalue, LaplacePair};
use crate::cayley::{b_coeffs, b_coeffs_recursion, cayley_reconstruction_exact, pairing_violation, resolvent_coeffs};
use crate::exact::{from_f64, int, BigRational, GaussianRational};
use crate::expcoeffs::{a_coeff_cfn_series, a_coeff_derivative_path, a_coeff_trunc, epsilon, exp_reconstruction_exact};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyOptions {
    pub max_two_j: u32,
    /// Multiplies every floating-point tolerance.
    pub tol_scale: f64,
    /// Only run the fundamental-identity check.
    pub fi_only: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self { max_two_j: 10, tol_scale: 1.0, fi_only: false }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Failure {
    pub module: &'static str,
    pub op: &'static str,
    pub two_j: u32,
    pub k: Option<usize>,
    /// θ or α at which the check failed.
    pub param: Option<f64>,
    pub detail: String,
    /// `None` for exact checks.
    pub tolerance: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub max_two_j: u32,
    pub checks: usize,
    pub failures: Vec<Failure>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

const THETAS: [f64; 7] = [-4.0 * PI, -2.5, -0.7, 0.3, 1.9, PI, 3.0 * PI + 0.4];
const ALPHAS: [f64; 6] = [-3.0, -1.25, -0.2, 0.35, 1.0, 2.75];

const TOL_SERIES: f64 = 1e-10;
const TOL_RECONSTRUCT: f64 = 1e-9;
const TOL_LAPLACE: f64 = 1e-9;
const TOL_SHEAR: f64 = 1e-12;

/// Runs the suite in parallel over `2j`; the report lists failures in
/// increasing `2j` regardless of scheduling.
pub fn run_verify(opts: VerifyOptions) -> VerifyReport {
    let per_spin: Vec<(usize, Vec<Failure>)> =
        (0..=opts.max_two_j).into_par_iter().map(|two_j| Suite::new(two_j, opts).run()).collect();
    let checks = per_spin.iter().map(|(n, _)| n).sum();
    let failures = per_spin.into_iter().flat_map(|(_, f)| f).collect();
    VerifyReport { max_two_j: opts.max_two_j, checks, failures }
}

struct Suite {
    j: HalfInt,
    opts: VerifyOptions,
    checks: usize,
    failures: Vec<Failure>,
}

impl Suite {
    fn new(two_j: u32, opts: VerifyOptions) -> Self {
        Self { j: HalfInt::from_two_j(two_j), opts, checks: 0, failures: Vec::new() }
    }

    fn exact(
        &mut self,
        module: &'static str,
        op: &'static str,
        k: Option<usize>,
        ok: bool,
        detail: impl FnOnce() -> String,
    ) {
        self.checks += 1;
        if !ok {
            self.failures.push(Failure {
                module,
                op,
                two_j: self.j.two_j(),
                k,
                param: None,
                detail: detail(),
                tolerance: None,
            });
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn float(
        &mut self,
        module: &'static str,
        op: &'static str,
        k: Option<usize>,
        param: f64,
        err: f64,
        base_tol: f64,
        scale: f64,
    ) {
        self.checks += 1;
        let tol = base_tol * self.opts.tol_scale * scale;
        if err.is_nan() || err > tol {
            self.failures.push(Failure {
                module,
                op,
                two_j: self.j.two_j(),
                k,
                param: Some(param),
                detail: format!("error {err:e}"),
                tolerance: Some(tol),
            });
        }
    }

    fn fail(&mut self, module: &'static str, op: &'static str, k: Option<usize>, param: Option<f64>, detail: String) {
        self.checks += 1;
        self.failures.push(Failure { module, op, two_j: self.j.two_j(), k, param, detail, tolerance: None });
    }

    fn run(mut self) -> (usize, Vec<Failure>) {
        self.basis();
        if !self.opts.fi_only {
            self.exponential();
            self.cayley();
            self.bridge();
        }
        (self.checks, self.failures)
    }

    fn basis(&mut self) {
        let j = self.j;
        let fi = verify_fundamental_identity(j);
        self.exact("basis", "verify_fundamental_identity", None, fi.passed, || {
            format!("fails at eigenvalue {:?}", fi.first_failure)
        });
        if self.opts.fi_only {
            return;
        }
        let product = vandermonde(j).mul(&vandermonde_inverse(j)).map(|p| p.is_identity()).unwrap_or(false);
        self.exact("basis", "vandermonde_inverse", None, product, || "V·V⁻¹ != I".into());
        let duals = dual_matrices(j);
        let ortho =
            (0..j.dim()).all(|n| (0..j.dim()).all(|m| duals.trace_pairing(n, m as u32) == int(i64::from(n == m))));
        self.exact("basis", "dual_matrices", None, ortho, || "Tr(T_n S^m) != δ".into());
        // f(λ) = λ^{2j+1} + 1 exercises the reduction by the fundamental identity.
        let fvals: Vec<BigRational> =
            spectrum(j).eigs.iter().map(|&e| num_traits::pow(int(e), j.dim()) + int(1)).collect();
        let agree = match (project_coefficients(j, &fvals), lagrange_sylvester(j, &fvals)) {
            (Ok(a), Ok(b)) => a == b,
            _ => false,
        };
        self.exact("basis", "lagrange_sylvester", None, agree, || "projection and covariants disagree".into());
    }

    fn exponential(&mut self) {
        let j = self.j;
        for k in 0..j.dim() {
            if epsilon(j, k) != Ok(0) {
                continue;
            }
            for &theta in &THETAS {
                match (a_coeff_trunc(j, k, theta), a_coeff_cfn_series(j, k, theta)) {
                    (Ok(a), Ok(b)) => self.float(
                        "expcoeffs",
                        "a_coeff_cfn_series",
                        Some(k),
                        theta,
                        (a - b).abs(),
                        TOL_SERIES,
                        a.abs().max(1.0),
                    ),
                    (Err(e), _) | (_, Err(e)) => {
                        self.fail("expcoeffs", "a_coeff_cfn_series", Some(k), Some(theta), e.to_string())
                    }
                }
            }
            if k == 0 {
                continue;
            }
            match a_coeff_derivative_path(j, k, &THETAS) {
                Ok(derived) => {
                    for (&theta, d) in THETAS.iter().zip(derived) {
                        match a_coeff_trunc(j, k - 1, theta) {
                            Ok(a) => self.float(
                                "expcoeffs",
                                "a_coeff_derivative_path",
                                Some(k - 1),
                                theta,
                                (a - d).abs(),
                                TOL_SERIES,
                                a.abs().max(1.0),
                            ),
                            Err(e) => self.fail("expcoeffs", "a_coeff_trunc", Some(k - 1), Some(theta), e.to_string()),
                        }
                    }
                }
                Err(e) => self.fail("expcoeffs", "a_coeff_derivative_path", Some(k), None, e.to_string()),
            }
        }
        for &theta in &THETAS {
            match exp_reconstruction_exact(j, theta) {
                Ok(r) => {
                    self.exact("expcoeffs", "exp_reconstruction_exact", None, r.exact_identity, || {
                        format!("exact identity fails at θ = {theta}")
                    });
                    self.float("expcoeffs", "exp_reconstruction", None, theta, r.max_error, TOL_RECONSTRUCT, 1.0);
                }
                Err(e) => self.fail("expcoeffs", "exp_reconstruction_exact", None, Some(theta), e.to_string()),
            }
        }
    }

    fn cayley(&mut self) {
        let j = self.j;
        let direct = b_coeffs(j);
        let recursion = b_coeffs_recursion(j);
        let same = direct.b.iter().zip(&recursion.b).all(|(a, b)| a.equivalent(b));
        self.exact("cayley", "b_coeffs_recursion", None, same, || "recursion differs from truncation form".into());
        let violation = pairing_violation(j);
        self.exact("cayley", "pairing_and_parity", None, violation.is_none(), || violation.unwrap_or_default());
        let eigs: Vec<GaussianRational> =
            spectrum(j).eigs.iter().map(|&e| GaussianRational::new(int(0), int(e))).collect();
        for &alpha in &ALPHAS {
            let Ok(ar) = from_f64(alpha) else { continue };
            let ag = GaussianRational::new(ar.clone(), int(0));
            let agree = match (resolvent_coeffs(&eigs, &ag), direct.b_at(&ar)) {
                (Ok(r), Ok(b)) => r.iter().zip(&b).all(|(r, b)| r.im == int(0) && &r.re == b),
                _ => false,
            };
            self.exact("cayley", "resolvent_coeffs", None, agree, || format!("resolvent differs at α = {alpha}"));
            match cayley_reconstruction_exact(j, alpha) {
                Ok(r) => {
                    self.exact("cayley", "cayley_reconstruction_exact", None, r.exact_identity, || {
                        format!("exact identity fails at α = {alpha}")
                    });
                    self.float(
                        "cayley",
                        "cayley_reconstruction",
                        None,
                        alpha,
                        r.max_error,
                        TOL_RECONSTRUCT / 10.0,
                        1.0,
                    );
                }
                Err(e) => self.fail("cayley", "cayley_reconstruction_exact", None, Some(alpha), e.to_string()),
            }
        }
    }

    fn bridge(&mut self) {
        let j = self.j;
        for k in 0..j.dim() {
            for &alpha in &ALPHAS {
                match LaplacePair::compute(j, k, alpha) {
                    Ok(p) => self.float(
                        "bridge",
                        "b_from_a_laplace",
                        Some(k),
                        alpha,
                        p.discrepancy(),
                        TOL_LAPLACE,
                        p.b_direct.abs().max(1.0),
                    ),
                    Err(e) => self.fail("bridge", "b_from_a_laplace", Some(k), Some(alpha), e.to_string()),
                }
            }
        }
        for m in Eigenvalue::all(j) {
            for &theta in &THETAS {
                // Poles of tan(Mθ/2) are outside the map's domain.
                if let Ok(err) = exp_cayley_mismatch(m, theta) {
                    self.float("bridge", "verify_exp_equal_cayley", None, theta, err, TOL_SHEAR, 1.0);
                }
            }
        }
    }
}
