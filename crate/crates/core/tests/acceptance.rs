// Copyright 2026 The spinpoly Authors
// SPDX-License-Identifier: Apache-2.0

//! Acceptance criteria, one PASS/FAIL line each.
//!
//! Runs without the libtest harness so that criteria execute one after
//! another (wall-clock budgets are measured without contention) and every
//! line reaches the output uncaptured. Exits nonzero if any criterion fails.

// Comparisons are written `!(x < tol)` so that NaN counts as a failure.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_traits::{One, Zero};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

use spinpoly_core::basis::{findumonde_entry, vandermonde_inverse, verify_fundamental_identity, ExactMatrix};
use spinpoly_core::bridge::{shear_report, verify_exp_equal_cayley, Eigenvalue, LaplacePair};
use spinpoly_core::cayley::{
    asymp_bosonic, b_coeffs, b_coeffs_recursion, b_exact_largej, b_over_alpha_power, cayley_reconstruction_exact,
    det_asymptotics, det_gamma, det_poly, pairing_violation, relative_error, resolvent_coeffs,
};
use spinpoly_core::cfn::{cfn, cfn_t2};
use spinpoly_core::exact::{from_f64, int, to_f64, GaussianRational};
use spinpoly_core::expcoeffs::{a_coeff_cfn_series, a_coeff_derivative_path, epsilon, exp_reconstruction_exact};
use spinpoly_core::fixtures::run_fixtures;
use spinpoly_core::plotdata::{plot_data, Figure, Grid};
use spinpoly_core::{BigRational, HalfInt};

type Verdict = Result<String, String>;
type Criterion = (&'static str, fn() -> Verdict);

fn h(two_j: u32) -> HalfInt {
    HalfInt::from_two_j(two_j)
}

fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    Grid::new(a, b, n).unwrap().points()
}

fn within(elapsed: Duration, budget: Duration) -> Result<(), String> {
    if elapsed <= budget {
        Ok(())
    } else {
        Err(format!("took {:.2?}, budget {:.2?}", elapsed, budget))
    }
}

fn golden_fixtures() -> Verdict {
    let start = Instant::now();
    let report = run_fixtures();
    // The four inverse fixtures are compared again here through the
    // independent closed form, entry by entry.
    let golden: [(u32, i64, &[&[i64]]); 4] = [
        (1, 2, &[&[1, 1], &[1, -1]]),
        (2, 8, &[&[0, 8, 0], &[2, 0, -2], &[1, -2, 1]]),
        (3, 48, &[&[-3, 27, 27, -3], &[-1, 27, -27, 1], &[3, -3, -3, 3], &[1, -3, 3, -1]]),
        (
            4,
            384,
            &[
                &[0, 0, 384, 0, 0],
                &[-16, 128, 0, -128, 16],
                &[-4, 64, -120, 64, -4],
                &[4, -8, 0, 8, -4],
                &[1, -4, 6, -4, 1],
            ],
        ),
    ];
    for (two_j, den, rows) in golden {
        let g = ExactMatrix::from_scaled_ints(den, rows);
        if *vandermonde_inverse(h(two_j)) != g {
            return Err(format!("V⁻¹ mismatch at 2j = {two_j}"));
        }
        for (k, row) in g.rows().iter().enumerate() {
            for (l, x) in row.iter().enumerate() {
                if findumonde_entry(h(two_j), k + 1, l + 1).ok().as_ref() != Some(x) {
                    return Err(format!("closed-form entry ({}, {}) mismatch at 2j = {two_j}", k + 1, l + 1));
                }
            }
        }
    }
    let elapsed = start.elapsed();
    if let Some(f) = report.first_failure() {
        return Err(format!("fixture {} failed: {:?}", f.name, f.diffs));
    }
    within(elapsed, Duration::from_secs(1))?;
    Ok(format!("{} fixtures exact, {:.0?}", report.outcomes.len(), elapsed))
}

fn fundamental_identity() -> Verdict {
    let start = Instant::now();
    for two_j in 0..=40 {
        let r = verify_fundamental_identity(h(two_j));
        if !r.passed {
            return Err(format!("2j = {two_j} fails at eigenvalue {:?}", r.first_failure));
        }
    }
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(5))?;
    Ok(format!("exact for 2j <= 40, {elapsed:.0?}"))
}

fn exponential_reconstruction() -> Verdict {
    let thetas = linspace(-4.0 * PI, 4.0 * PI, 50);
    let mut worst: f64 = 0.0;
    for two_j in 0..=25 {
        for &theta in &thetas {
            let r = exp_reconstruction_exact(h(two_j), theta).map_err(|e| e.to_string())?;
            if !r.exact_identity {
                return Err(format!("polynomial differs from (c + is)^2m at 2j = {two_j}, θ = {theta}"));
            }
            worst = worst.max(r.max_error);
            if !(r.max_error < 1e-9) {
                return Err(format!("error {:e} at 2j = {two_j}, θ = {theta}", r.max_error));
            }
        }
        // 2π: +1 on every eigenvalue for integer j, −1 for semi-integer j.
        let r = exp_reconstruction_exact(h(two_j), 2.0 * PI).map_err(|e| e.to_string())?;
        let sign = if two_j % 2 == 0 { "+" } else { "-" };
        if !(r.exact_identity && r.max_error < 1e-9) {
            return Err(format!("2π rotation is not {sign}identity at 2j = {two_j}"));
        }
    }
    Ok(format!("2j <= 25, 50 angles in [-4π, 4π], max error {worst:.1e}; 2π sign checks pass"))
}

fn cayley_reconstruction() -> Verdict {
    let alphas = linspace(-3.0, 3.0, 20);
    let mut worst: f64 = 0.0;
    for two_j in 0..=25 {
        for &alpha in &alphas {
            let r = cayley_reconstruction_exact(h(two_j), alpha).map_err(|e| e.to_string())?;
            worst = worst.max(r.max_error);
            if !(r.exact_identity && r.max_error < 1e-10) {
                return Err(format!("2j = {two_j}, α = {alpha}: exact {} error {:e}", r.exact_identity, r.max_error));
            }
        }
    }
    Ok(format!("2j <= 25, 20 values of α in [-3, 3], max error {worst:.1e}"))
}

fn four_way_cayley() -> Verdict {
    let alphas = [-3.0, -1.7, -0.45, -0.05, 0.2, 0.9, 1.5, 3.0];
    let mut worst: f64 = 0.0;
    for two_j in 0..=12 {
        let j = h(two_j);
        let direct = b_coeffs(j);
        let recursion = b_coeffs_recursion(j);
        if !direct.b.iter().zip(&recursion.b).all(|(a, b)| a.equivalent(b)) {
            return Err(format!("truncation form and recursion differ at 2j = {two_j}"));
        }
        let eigs: Vec<GaussianRational> = spinpoly_core::basis::spectrum(j)
            .eigs
            .iter()
            .map(|&e| GaussianRational::new(BigRational::zero(), int(e)))
            .collect();
        for &alpha in &alphas {
            let ar = from_f64(alpha).unwrap();
            let exact = direct.b_at(&ar).unwrap();
            let resolvent = resolvent_coeffs(&eigs, &GaussianRational::new(ar.clone(), BigRational::zero())).unwrap();
            if !resolvent.iter().zip(&exact).all(|(r, b)| r.im.is_zero() && &r.re == b) {
                return Err(format!("resolvent differs at 2j = {two_j}, α = {alpha}"));
            }
            for (k, b) in exact.iter().enumerate() {
                let p = LaplacePair::compute(j, k, alpha).map_err(|e| e.to_string())?;
                let err = (to_f64(b) - p.b_via_laplace).abs();
                worst = worst.max(err);
                if !(err < 1e-10) {
                    return Err(format!("Laplace bridge off by {err:e} at 2j = {two_j}, k = {k}, α = {alpha}"));
                }
            }
        }
    }
    Ok(format!("truncation = recursion = resolvent exactly, Laplace within {worst:.1e}, 2j <= 12"))
}

fn pairing_parity() -> Verdict {
    for two_j in 0..=16 {
        if let Some(v) = pairing_violation(h(two_j)) {
            return Err(format!("2j = {two_j}: {v}"));
        }
    }
    Ok("exact rational-function identities for 2j <= 16".into())
}

fn closed_form_determinant() -> Verdict {
    let alphas = [0.05, 0.2, 0.5, 0.9, 1.0, 1.7, 3.0, 7.5];
    let mut worst: f64 = 0.0;
    for two_j in 0..=30 {
        let p = det_poly(h(two_j));
        for &alpha in &alphas {
            let exact = to_f64(&p.eval(&from_f64(alpha).unwrap()));
            let gamma = det_gamma(h(two_j), alpha).map_err(|e| e.to_string())?;
            let rel = (gamma / exact - 1.0).abs();
            worst = worst.max(rel);
            if !(rel < 1e-10) {
                return Err(format!("2j = {two_j}, α = {alpha}: relative {rel:e}"));
            }
        }
    }
    let bos = det_asymptotics(HalfInt::from_integer(40), 1.0).map_err(|e| e.to_string())?;
    let fer = det_asymptotics(h(81), 1.0).map_err(|e| e.to_string())?;
    let (eb, ef) = ((bos.ratio / bos.limit - 1.0).abs(), (fer.ratio / fer.limit - 1.0).abs());
    if !(eb < 0.02 && ef < 0.02) {
        return Err(format!("asymptotic split off by {eb:.3} (j = 40) and {ef:.3} (j = 81/2)"));
    }
    Ok(format!("gamma form within {worst:.1e} for 2j <= 30; split within {:.2}% / {:.2}%", 100.0 * eb, 100.0 * ef))
}

fn large_j_limits() -> Verdict {
    let mut problems = Vec::new();

    // Δ_k ≥ 0 and decreasing in j.
    let spins = [1u32, 2, 8, 50];
    let alphas = linspace(0.05, 5.0, 100);
    for k in 1..=4usize {
        for &alpha in &alphas {
            let deltas: Vec<(u32, f64)> = spins
                .iter()
                .filter(|&&j| k <= 2 * j as usize)
                .map(|&j| (j, relative_error(HalfInt::from_integer(j), k, alpha).unwrap()))
                .collect();
            if let Some((j, d)) = deltas.iter().find(|(_, d)| *d < 0.0) {
                problems.push(format!("Δ_{k}^[{j}]({alpha}) = {d:e} < 0"));
            }
            if let Some(w) = deltas.windows(2).find(|w| !(w[1].1 < w[0].1)) {
                problems.push(format!("Δ_{k}({alpha}) not decreasing from j = {} to {}", w[0].0, w[1].0));
            }
        }
    }

    // 𝔅₁^[50]/α at α = 1, from the exact product ∏ 4n²/(1 + 4n²), against the limit.
    let limit = 1.0 - (PI / 2.0) / (PI / 2.0).sinh();
    let lib_limit = asymp_bosonic(1, 1.0).unwrap();
    if (lib_limit - limit).abs() > 1e-14 {
        problems.push(format!("asymp_bosonic(1, 1) = {lib_limit}, closed form {limit}"));
    }
    let product = (1..=50i64).fold(BigRational::one(), |acc, n| acc * int(4 * n * n) / int(1 + 4 * n * n));
    let b50 = to_f64(&(BigRational::one() - product));
    let lib_b50 = b_over_alpha_power(HalfInt::from_integer(50), 1, 1.0).unwrap();
    let closed_b50 = b_exact_largej(HalfInt::from_integer(50), 1, 1.0).unwrap();
    if (lib_b50 - b50).abs() > 1e-13 || (closed_b50 - b50).abs() > 1e-12 {
        problems.push(format!("B1[50]/α: exact {b50}, library {lib_b50}, gamma form {closed_b50}"));
    }
    let gap = (b50 - limit).abs();
    if !(gap < 1e-3) {
        problems.push(format!("B1[50]/α(1) = {b50:.8} vs limit {limit:.8}: gap {gap:.3e} exceeds 1e-3"));
    }

    // |t(2j+2, 2)| = (j!)².
    for j in 0..=20u64 {
        let t = cfn(2 * j as usize + 2, 2);
        if num_traits::Signed::abs(&t) != cfn_t2(j) {
            problems.push(format!("|t({}, 2)| != ({j}!)²", 2 * j + 2));
        }
    }

    // Figure data: every figure emits, and sampled values match oracles.
    if let Err(e) = figure_data() {
        problems.push(e);
    }

    if problems.is_empty() {
        Ok(format!("Δ ≥ 0 and decreasing, B1[50]/α gap {gap:.1e}, (j!)² exact, 6 figures emitted and checked"))
    } else {
        Err(problems.join("; "))
    }
}

fn figure_data() -> Result<(), String> {
    for figure in Figure::ALL {
        let rows = plot_data(figure, None, None).map_err(|e| format!("{figure}: {e}"))?;
        if rows.is_empty() || rows.iter().any(|r| !r.value.is_finite()) {
            return Err(format!("{figure}: empty or non-finite output"));
        }
        for r in rows.iter().step_by(37) {
            let (j, k) = parse_series(&r.series);
            let oracle = match figure {
                Figure::ExpA => {
                    if epsilon(j, k).unwrap() == 0 {
                        a_coeff_cfn_series(j, k, r.x).unwrap()
                    } else {
                        a_coeff_derivative_path(j, k + 1, &[r.x]).unwrap()[0]
                    }
                }
                Figure::CayleyB12 | Figure::CayleyB34 => match j.two_j() {
                    u32::MAX => unreachable!(),
                    _ if r.series.starts_with("limit") => {
                        let x = PI / (2.0 * r.x);
                        if k == 1 {
                            1.0 - x / x.sinh()
                        } else {
                            1.0 - (x + x.powi(3) / 6.0) / x.sinh()
                        }
                    }
                    _ => exact_b_over_alpha(j, k, r.x),
                },
                Figure::InvDet => 1.0 / det_gamma(j, r.x).unwrap_or(1.0),
                Figure::Delta12 | Figure::Delta34 => {
                    let b = exact_b_over_alpha(j, k, r.x);
                    let lim = asymp_bosonic(k.div_ceil(2), r.x).unwrap();
                    (lim - b) / b
                }
            };
            let tol = match figure {
                Figure::Delta12 | Figure::Delta34 => 1e-8 * oracle.abs().max(1e-6),
                _ => 1e-9 * oracle.abs().max(1.0),
            };
            if !((r.value - oracle).abs() <= tol) {
                return Err(format!("{figure} {} at x = {}: {} vs oracle {}", r.series, r.x, r.value, oracle));
            }
        }
    }
    Ok(())
}

/// `(j, k)` from labels such as `A3 j=137/2`, `B1/a^1 j=8`, `limit k=3`.
fn parse_series(s: &str) -> (HalfInt, usize) {
    if let Some(k) = s.strip_prefix("limit k=") {
        return (HalfInt::from_integer(0), k.parse().unwrap());
    }
    let (head, j) = s.split_once(" j=").unwrap();
    let k: String = head.chars().skip_while(|c| !c.is_ascii_digit()).take_while(char::is_ascii_digit).collect();
    (j.parse().unwrap(), k.parse().unwrap_or(0))
}

/// `𝔅_k/α^k` by exact rational evaluation of the stored rational function.
fn exact_b_over_alpha(j: HalfInt, k: usize, alpha: f64) -> f64 {
    let a = from_f64(alpha).unwrap();
    let b = b_coeffs(j).b[k].eval(&a).unwrap();
    to_f64(&(b / num_traits::pow(a, k)))
}

fn parameter_shear() -> Verdict {
    for two_j in 3..=12 {
        for theta in [0.3, 1.1, 2.0] {
            if !shear_report(h(two_j), theta).inconsistent {
                return Err(format!("α(θ; M) agrees across |M| for 2j = {two_j}, θ = {theta}"));
            }
        }
    }
    for theta in [0.3, 1.1, 2.0] {
        if shear_report(h(2), theta).inconsistent || shear_report(h(1), theta).inconsistent {
            return Err("spurious shear for j <= 1".into());
        }
    }
    let mut runner = TestRunner::new(Config { cases: 200, failure_persistence: None, ..Config::default() });
    let strategy = (-40i64..=40, -4.0 * PI..4.0 * PI);
    let checked = std::cell::Cell::new(0usize);
    runner
        .run(&strategy, |(two_m, theta)| {
            let m = Eigenvalue::from_two_m(two_m);
            match verify_exp_equal_cayley(m, theta) {
                Ok(ok) => prop_assert!(ok, "M = {m}, θ = {theta}"),
                // A pole of tan(Mθ/2); the map has no finite α there.
                Err(_) => prop_assume!(false),
            }
            checked.set(checked.get() + 1);
            Ok(())
        })
        .map_err(|e| e.to_string())?;
    Ok(format!("α(θ; M) differs across |M| for 3/2 <= j <= 6; exp = Cayley at {} random (M, θ)", checked.get()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("golden fixtures", golden_fixtures),
        ("fundamental identity", fundamental_identity),
        ("exponential reconstruction", exponential_reconstruction),
        ("Cayley reconstruction", cayley_reconstruction),
        ("four-way Cayley agreement", four_way_cayley),
        ("pairing and parity", pairing_parity),
        ("closed-form determinant", closed_form_determinant),
        ("large-j limits", large_j_limits),
        ("parameter shear", parameter_shear),
    ];
    let start = Instant::now();
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let verdict = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        match verdict {
            Ok(msg) => println!("PASS criterion {} ({name}): {msg} [{:.1?}]", i + 1, t.elapsed()),
            Err(msg) => {
                failed += 1;
                println!("FAIL criterion {} ({name}): {msg} [{:.1?}]", i + 1, t.elapsed());
            }
        }
    }
    let total = start.elapsed();
    println!("acceptance: {} of {} criteria passed in {total:.1?}", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
