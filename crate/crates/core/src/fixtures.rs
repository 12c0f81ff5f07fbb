// Copyright 2026 The spinpoly Authors
// SPDX-License-Identifier: Apache-2.0

//! Embedded golden values for small spins, compared exactly.
//!
//! Basis fixtures cover `S^m`, the dual matrices `T_n` and `V⁻¹` for
//! `j ≤ 2`. Cayley fixtures cover `det(1 − 2iα n·J)` and the coefficients
//! of `(n·J)^k` in the Cayley transform for `j ≤ 3`. The latter are stored
//! as real rational functions `R_k = (−1)^{⌊k/2⌋} 2^k 𝔄_k`; the matrix
//! coefficient is `i R_k` for odd `k` and `R_k` for even `k`.
//!
//! Every check that depends on central factorial numbers takes them from a
//! caller-supplied table, so a corrupted table can be injected.

use serde::Serialize;

use crate::basis::{dual_matrices, findumonde_entry, spectrum, vandermonde, vandermonde_inverse, ExactMatrix, HalfInt};
use crate::cayley::{b_coeffs, b_coeffs_recursion_with, det_cfn_form_with, det_poly, CayleyCoeffs};
use crate::cfn::cfn;
use crate::exact::{format_rational, int, rat, BigRational, RationalFunction, RationalPoly};

/// Golden values for one fixture.
#[derive(Debug, Clone, Copy)]
pub enum Golden {
    /// Diagonals of `S^0 … S^{2j}`.
    Powers(&'static [&'static [i64]]),
    /// Diagonals of `T_0 … T_{2j}`, each scaled by its own denominator.
    Duals(&'static [(i64, &'static [i64])]),
    /// `V⁻¹ = (1/den) rows`.
    Inverse { den: i64, rows: &'static [&'static [i64]] },
    /// Expanded determinant and the `c` of its factors `1 + c α²`.
    Det { expanded: &'static [i64], factors: &'static [i64] },
    /// `R_0 … R_{2j}` over the determinant with the given factors.
    CayleyForms { factors: &'static [i64], forms: &'static [Form] },
}

/// One Cayley coefficient as given in closed form.
#[derive(Debug, Clone, Copy)]
pub enum Form {
    /// The constant 1.
    One,
    /// Integer numerator coefficients over the determinant.
    OverDet(&'static [i64]),
}

#[derive(Debug, Clone, Copy)]
pub struct Fixture {
    pub name: &'static str,
    pub two_j: u32,
    pub golden: Golden,
}

impl Fixture {
    pub fn j(&self) -> HalfInt {
        HalfInt::from_two_j(self.two_j)
    }
}

/// All embedded fixtures, basis fixtures first.
pub const FIXTURES: &[Fixture] = &[
    Fixture { name: "C1", two_j: 1, golden: Golden::Powers(&[&[1, 1], &[1, -1]]) },
    Fixture { name: "C2/duals", two_j: 1, golden: Golden::Duals(&[(2, &[1, 1]), (2, &[1, -1])]) },
    Fixture { name: "C2/inverse", two_j: 1, golden: Golden::Inverse { den: 2, rows: &[&[1, 1], &[1, -1]] } },
    Fixture { name: "C3", two_j: 2, golden: Golden::Powers(&[&[1, 1, 1], &[2, 0, -2], &[4, 0, 4]]) },
    Fixture {
        name: "C4/duals",
        two_j: 2,
        golden: Golden::Duals(&[(1, &[0, 1, 0]), (4, &[1, 0, -1]), (8, &[1, -2, 1])]),
    },
    Fixture {
        name: "C4/inverse",
        two_j: 2,
        golden: Golden::Inverse { den: 8, rows: &[&[0, 8, 0], &[2, 0, -2], &[1, -2, 1]] },
    },
    Fixture {
        name: "C5",
        two_j: 3,
        golden: Golden::Powers(&[&[1, 1, 1, 1], &[3, 1, -1, -3], &[9, 1, 1, 9], &[27, 1, -1, -27]]),
    },
    Fixture {
        name: "C6/duals",
        two_j: 3,
        golden: Golden::Duals(&[
            (16, &[-1, 9, 9, -1]),
            (48, &[-1, 27, -27, 1]),
            (16, &[1, -1, -1, 1]),
            (48, &[1, -3, 3, -1]),
        ]),
    },
    Fixture {
        name: "C7/inverse",
        two_j: 3,
        golden: Golden::Inverse {
            den: 48,
            rows: &[&[-3, 27, 27, -3], &[-1, 27, -27, 1], &[3, -3, -3, 3], &[1, -3, 3, -1]],
        },
    },
    Fixture {
        name: "C8/powers",
        two_j: 4,
        golden: Golden::Powers(&[
            &[1, 1, 1, 1, 1],
            &[4, 2, 0, -2, -4],
            &[16, 4, 0, 4, 16],
            &[64, 8, 0, -8, -64],
            &[256, 16, 0, 16, 256],
        ]),
    },
    Fixture {
        name: "C8/duals",
        two_j: 4,
        golden: Golden::Duals(&[
            (384, &[0, 0, 384, 0, 0]),
            (384, &[-16, 128, 0, -128, 16]),
            (384, &[-4, 64, -120, 64, -4]),
            (384, &[4, -8, 0, 8, -4]),
            (384, &[1, -4, 6, -4, 1]),
        ]),
    },
    Fixture {
        name: "C8/inverse",
        two_j: 4,
        golden: Golden::Inverse {
            den: 384,
            rows: &[
                &[0, 0, 384, 0, 0],
                &[-16, 128, 0, -128, 16],
                &[-4, 64, -120, 64, -4],
                &[4, -8, 0, 8, -4],
                &[1, -4, 6, -4, 1],
            ],
        },
    },
    Fixture { name: "E1", two_j: 1, golden: Golden::Det { expanded: &[1, 0, 1], factors: &[1] } },
    Fixture {
        name: "E2",
        two_j: 1,
        golden: Golden::CayleyForms { factors: &[1], forms: &[Form::OverDet(&[1, 0, -1]), Form::OverDet(&[0, 4])] },
    },
    Fixture { name: "E3", two_j: 2, golden: Golden::Det { expanded: &[1, 0, 4], factors: &[4] } },
    Fixture {
        name: "E4",
        two_j: 2,
        golden: Golden::CayleyForms {
            factors: &[4],
            forms: &[Form::One, Form::OverDet(&[0, 4]), Form::OverDet(&[0, 0, -8])],
        },
    },
    Fixture { name: "E5", two_j: 3, golden: Golden::Det { expanded: &[1, 0, 10, 0, 9], factors: &[1, 9] } },
    Fixture {
        name: "E6",
        two_j: 3,
        golden: Golden::CayleyForms {
            factors: &[1, 9],
            forms: &[
                Form::OverDet(&[1, 0, 10, 0, -9]),
                Form::OverDet(&[0, 4, 0, 40]),
                Form::OverDet(&[0, 0, -8]),
                Form::OverDet(&[0, 0, 0, -16]),
            ],
        },
    },
    Fixture { name: "E7", two_j: 4, golden: Golden::Det { expanded: &[1, 0, 20, 0, 64], factors: &[4, 16] } },
    Fixture {
        name: "E8",
        two_j: 4,
        golden: Golden::CayleyForms {
            factors: &[4, 16],
            forms: &[
                Form::One,
                Form::OverDet(&[0, 4, 0, 80]),
                Form::OverDet(&[0, 0, -8, 0, -160]),
                Form::OverDet(&[0, 0, 0, -16]),
                Form::OverDet(&[0, 0, 0, 0, 32]),
            ],
        },
    },
    Fixture {
        name: "E9",
        two_j: 5,
        golden: Golden::Det { expanded: &[1, 0, 35, 0, 259, 0, 225], factors: &[1, 9, 25] },
    },
    Fixture {
        name: "E10",
        two_j: 5,
        golden: Golden::CayleyForms {
            factors: &[1, 9, 25],
            forms: &[
                Form::OverDet(&[1, 0, 35, 0, 259, 0, -225]),
                Form::OverDet(&[0, 4, 0, 140, 0, 1036]),
                Form::OverDet(&[0, 0, -8, 0, -280]),
                Form::OverDet(&[0, 0, 0, -16, 0, -560]),
                Form::OverDet(&[0, 0, 0, 0, 32]),
                Form::OverDet(&[0, 0, 0, 0, 0, 64]),
            ],
        },
    },
    Fixture {
        name: "E11",
        two_j: 6,
        golden: Golden::Det { expanded: &[1, 0, 56, 0, 784, 0, 2304], factors: &[4, 16, 36] },
    },
    Fixture {
        name: "E12",
        two_j: 6,
        golden: Golden::CayleyForms {
            factors: &[4, 16, 36],
            forms: &[
                Form::One,
                Form::OverDet(&[0, 4, 0, 224, 0, 3136]),
                Form::OverDet(&[0, 0, -8, 0, -448, 0, -6272]),
                Form::OverDet(&[0, 0, 0, -16, 0, -896]),
                Form::OverDet(&[0, 0, 0, 0, 32, 0, 1792]),
                Form::OverDet(&[0, 0, 0, 0, 0, 64]),
                Form::OverDet(&[0, 0, 0, 0, 0, 0, -128]),
            ],
        },
    },
];

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FixtureOutcome {
    pub name: &'static str,
    pub j: HalfInt,
    /// Empty when the fixture matched.
    pub diffs: Vec<String>,
}

impl FixtureOutcome {
    pub fn passed(&self) -> bool {
        self.diffs.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FixtureReport {
    pub outcomes: Vec<FixtureOutcome>,
}

impl FixtureReport {
    pub fn passed(&self) -> usize {
        self.outcomes.iter().filter(|o| o.passed()).count()
    }

    pub fn all_passed(&self) -> bool {
        self.outcomes.iter().all(FixtureOutcome::passed)
    }

    pub fn first_failure(&self) -> Option<&FixtureOutcome> {
        self.outcomes.iter().find(|o| !o.passed())
    }
}

/// Checks every fixture against the library.
pub fn run_fixtures() -> FixtureReport {
    run_fixtures_with(cfn)
}

/// Checks every fixture, taking `t(n, k)` from `t` wherever the library
/// would consult the central factorial table.
pub fn run_fixtures_with(t: impl Fn(usize, usize) -> BigRational) -> FixtureReport {
    let outcomes = FIXTURES.iter().map(|f| FixtureOutcome { name: f.name, j: f.j(), diffs: check(f, &t) }).collect();
    FixtureReport { outcomes }
}

/// A central factorial table with the sign of `t(n, k)` flipped.
pub fn flipped_cfn(n: usize, k: usize) -> impl Fn(usize, usize) -> BigRational {
    move |a, b| if (a, b) == (n, k) { -cfn(a, b) } else { cfn(a, b) }
}

fn check(f: &Fixture, t: &dyn Fn(usize, usize) -> BigRational) -> Vec<String> {
    let j = f.j();
    let mut diffs = Vec::new();
    let mut expect = |what: String, ok: bool| {
        if !ok {
            diffs.push(what);
        }
    };
    match f.golden {
        Golden::Powers(powers) => {
            let v = vandermonde(j);
            let eigs = spectrum(j).eigs;
            for (m, diag) in powers.iter().enumerate() {
                let column: Vec<i64> = (0..j.dim()).map(|r| exact_i64(v.get(r, m))).collect();
                expect(format!("S^{m}: expected {diag:?}, got {column:?}"), column == *diag);
                let direct: Vec<i64> = eigs.iter().map(|e| e.pow(m as u32)).collect();
                expect(format!("S^{m} from spectrum: expected {diag:?}, got {direct:?}"), direct == *diag);
            }
        }
        Golden::Duals(duals) => {
            let set = dual_matrices(j);
            for (n, &(den, diag)) in duals.iter().enumerate() {
                let golden: Vec<BigRational> = diag.iter().map(|&x| rat(x, den)).collect();
                expect(format!("T_{n}: expected {}, got {}", fmt_row(&golden), fmt_row(&set.t[n])), set.t[n] == golden);
                for m in 0..j.dim() {
                    let pairing = set.trace_pairing(n, m as u32);
                    let delta = int(i64::from(n == m));
                    expect(format!("Tr(T_{n} S^{m}) = {}", format_rational(&pairing)), pairing == delta);
                }
            }
        }
        Golden::Inverse { den, rows } => {
            let golden = ExactMatrix::from_scaled_ints(den, rows);
            let inv = vandermonde_inverse(j);
            expect(format!("V⁻¹: expected\n{golden}got\n{inv}"), *inv == golden);
            for (k, row) in golden.rows().iter().enumerate() {
                for (l, g) in row.iter().enumerate() {
                    match findumonde_entry(j, k + 1, l + 1) {
                        Ok(c) if &c == g => {}
                        Ok(c) => expect(
                            format!(
                                "closed form ({}, {}): expected {}, got {}",
                                k + 1,
                                l + 1,
                                format_rational(g),
                                format_rational(&c)
                            ),
                            false,
                        ),
                        Err(e) => expect(format!("closed form ({}, {}): {e}", k + 1, l + 1), false),
                    }
                }
            }
        }
        Golden::Det { expanded, factors } => {
            let golden = RationalPoly::from_ints(expanded);
            let factored = factored_det(factors);
            expect(format!("factored form {factored} differs from {golden}"), factored == golden);
            let direct = det_poly(j);
            expect(format!("det: expected {golden}, got {direct}"), *direct == golden);
            let via_cfn = det_cfn_form_with(j, t);
            expect(format!("det from t(n,k): expected {golden}, got {via_cfn}"), via_cfn == golden);
        }
        Golden::CayleyForms { factors, forms } => {
            let den = factored_det(factors);
            let golden: Vec<RationalFunction> = forms
                .iter()
                .map(|form| match form {
                    Form::One => RationalFunction::from_poly(RationalPoly::one()),
                    Form::OverDet(num) => {
                        RationalFunction::new(RationalPoly::from_ints(num), den.clone()).expect("nonzero det")
                    }
                })
                .collect();
            let direct = b_coeffs(j);
            let recursion = b_coeffs_recursion_with(j, t);
            for (label, coeffs) in [("truncation", &*direct), ("recursion", &recursion)] {
                let got = nj_forms(coeffs);
                expect(
                    format!("{label}: {} coefficients, expected {}", got.len(), golden.len()),
                    got.len() == golden.len(),
                );
                for (k, (g, c)) in golden.iter().zip(&got).enumerate() {
                    expect(format!("{label} (n·J)^{k}: expected {g}, got {}", c.reduce()), g.equivalent(c));
                }
            }
        }
    }
    diffs
}

/// `R_k = (−1)^{⌊k/2⌋} 2^k 𝔄_k`.
pub fn nj_forms(c: &CayleyCoeffs) -> Vec<RationalFunction> {
    c.a.iter()
        .enumerate()
        .map(|(k, a)| {
            let sign = if (k / 2) % 2 == 0 { 1 } else { -1 };
            a.scale(&int(sign * (1i64 << k)))
        })
        .collect()
}

fn factored_det(factors: &[i64]) -> RationalPoly {
    factors.iter().fold(RationalPoly::one(), |acc, &c| &acc * &RationalPoly::from_ints(&[1, 0, c]))
}

fn exact_i64(r: &BigRational) -> i64 {
    if r.is_integer() {
        i64::try_from(r.to_integer()).unwrap_or(i64::MAX)
    } else {
        i64::MAX
    }
}

fn fmt_row(row: &[BigRational]) -> String {
    let parts: Vec<String> = row.iter().map(format_rational).collect();
    format!("[{}]", parts.join(", "))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_fixtures_pass() {
        let report = run_fixtures();
        for o in &report.outcomes {
            assert!(o.passed(), "{}: {:?}", o.name, o.diffs);
        }
        assert_eq!(report.outcomes.len(), 24);
    }

    #[test]
    fn corrupted_table_is_caught() {
        let report = run_fixtures_with(flipped_cfn(4, 2));
        assert_eq!(report.first_failure().map(|o| o.name), Some("E4"));
        // Only the recursion consults signs; magnitudes feed the determinant.
        assert_eq!(report.passed(), 23);
    }

    #[test]
    fn five_halves_determinant() {
        let f = FIXTURES.iter().find(|f| f.name == "E9").unwrap();
        assert!(check(f, &cfn).is_empty());
    }
}
