// Copyright 2026 The spinpoly Authors
// SPDX-License-Identifier: Apache-2.0

//! `spinpoly`: coefficient tables, verification suites, golden fixtures,
//! figure data and timings for spin-matrix polynomials.
//!
//! Exit status is 0 on success, 1 when a verification or comparison
//! fails, and 2 on a usage error.

mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;

use spinpoly_core::basis::{dual_matrices, vandermonde, vandermonde_inverse, ExactMatrix};
use spinpoly_core::bench::{run_bench, DEFAULT_TWO_J};
use spinpoly_core::bridge::{
    quadrature_check, shear_report, verify_exp_equal_cayley, LaplacePair, QUAD_PANELS, QUAD_T,
};
use spinpoly_core::cayley::{b_coeffs, b_limit, b_over_alpha_power, relative_error};
use spinpoly_core::cfn::{cfn, cfn_row};
use spinpoly_core::exact::format_rational;
use spinpoly_core::expcoeffs::{a_coeff_trunc, exp_poly};
use spinpoly_core::fixtures::{flipped_cfn, run_fixtures, run_fixtures_with, FixtureReport};
use spinpoly_core::plotdata::{parse_real, plot_data};
use spinpoly_core::verify::{run_verify, VerifyOptions};
use spinpoly_core::{Figure, Grid, HalfInt, RationalFunction};

use output::{Cell, Format, Sink, Table};

#[derive(Parser)]
#[command(name = "spinpoly", version, about = "Polynomial forms of functions of spin-j matrices")]
struct Cli {
    /// Output format; tables default to `pretty`, figure data to `csv`.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write to a file instead of stdout.
    #[arg(long, short, global = true, value_name = "PATH")]
    output: Option<PathBuf>,
    /// Shorthand for `--format csv`, optionally with an output path.
    #[arg(long, global = true, num_args = 0..=1, value_name = "PATH")]
    csv: Option<Option<PathBuf>>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Central factorial numbers t(n, k) as exact `p/q`.
    ///
    /// Columns: n, k, t. With --table: n, k, numerator, denominator for
    /// every n up to --n.
    Cfn {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        table: bool,
    },
    /// Vandermonde matrix, its inverse, or the dual matrices, as `p/q` CSV.
    Basis {
        #[arg(long)]
        j: HalfInt,
        #[command(flatten)]
        which: BasisWhich,
    },
    /// Cross-module invariant suite; prints a JSON report.
    Verify {
        /// Only the fundamental identity.
        #[arg(long)]
        fi: bool,
        #[arg(long, default_value_t = 10)]
        max_two_j: u32,
        /// Multiplies every floating-point tolerance.
        #[arg(long, default_value_t = 1.0)]
        tol_scale: f64,
    },
    /// Compares against the embedded golden fixtures.
    Fixtures {
        /// Flip the sign of t(N, K) before comparing, e.g. `4,2`.
        #[arg(long, value_name = "N,K", value_parser = parse_pair)]
        corrupt_cfn: Option<(usize, usize)>,
    },
    /// Coefficient tables.
    #[command(subcommand)]
    Coeffs(Coeffs),
    /// Large-j behaviour of the Cayley coefficients.
    ///
    /// Columns: alpha, j, k, b_over_alpha_k (B_k/α^k), limit, delta.
    Asymp {
        #[arg(long, value_delimiter = ',', required = true)]
        j_list: Vec<HalfInt>,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value = "0.05:5:200")]
        alpha_grid: Grid,
    },
    /// B_k directly and through the Laplace transform of A_k.
    ///
    /// Columns: j, k, alpha, b_direct, b_via_laplace, discrepancy, agrees
    /// and, with --quadrature, a numerically integrated value.
    Bridge {
        #[arg(long)]
        j: HalfInt,
        #[arg(long)]
        k: usize,
        #[arg(long, allow_hyphen_values = true, value_parser = real)]
        alpha: f64,
        #[arg(long)]
        quadrature: bool,
    },
    /// Eigenvalue-dependent α(θ; M) for every positive M.
    ///
    /// Columns: M, alpha, exp_equals_cayley.
    Shear {
        #[arg(long)]
        j: HalfInt,
        #[arg(long, allow_hyphen_values = true, value_parser = real)]
        theta: f64,
    },
    /// Long-format figure data. Columns: x, series, value.
    Plotdata {
        #[arg(long)]
        figure: Figure,
        /// Spins to plot; repeatable or comma separated.
        #[arg(long, value_delimiter = ',')]
        j: Vec<HalfInt>,
        /// Horizontal axis grid `start:stop:count`.
        #[arg(long, visible_aliases = ["theta", "alpha"], allow_hyphen_values = true)]
        grid: Option<Grid>,
    },
    /// Median ns/op for exact table construction, Cayley and exponential
    /// evaluation. Columns: two_j, phase, median_ns.
    Bench {
        #[arg(long, value_delimiter = ',')]
        two_j: Vec<u32>,
        #[arg(long, default_value_t = 15)]
        samples: usize,
    },
}

#[derive(Args)]
#[group(multiple = false)]
struct BasisWhich {
    /// V⁻¹ (the default).
    #[arg(long)]
    inverse: bool,
    /// Diagonals of T_0 … T_2j, one per row.
    #[arg(long)]
    duals: bool,
    /// V itself.
    #[arg(long)]
    vandermonde: bool,
}

#[derive(Subcommand)]
enum Coeffs {
    /// Exponential coefficients A_k(θ). Columns: theta, k, A_k.
    Exp {
        #[arg(long)]
        j: HalfInt,
        #[arg(long, allow_hyphen_values = true, value_parser = real, conflicts_with = "theta_grid")]
        theta: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        theta_grid: Option<Grid>,
        #[arg(long)]
        k: Option<usize>,
    },
    /// Cayley coefficients.
    ///
    /// Columns: alpha, k, A_k, B_k. With --exact: coeff, k, numerator,
    /// denominator, polynomial coefficients in ascending powers of α.
    Cayley {
        #[arg(long)]
        j: HalfInt,
        #[arg(long, conflicts_with_all = ["alpha", "alpha_grid"])]
        exact: bool,
        /// With --exact, reduce each coefficient to lowest terms.
        #[arg(long, requires = "exact")]
        reduced: bool,
        #[arg(long, allow_hyphen_values = true, value_parser = real, conflicts_with = "alpha_grid")]
        alpha: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        alpha_grid: Option<Grid>,
        #[arg(long)]
        k: Option<usize>,
    },
}

fn real(s: &str) -> Result<f64, String> {
    parse_real(s).map_err(|e| e.to_string())
}

fn parse_pair(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s.split_once(',').ok_or("expected N,K")?;
    let p = |x: &str| x.trim().parse::<usize>().map_err(|e| format!("{x:?}: {e}"));
    Ok((p(a)?, p(b)?))
}

enum Failure {
    /// A check ran and did not pass.
    Verification,
    Usage(String),
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(msg) = configure_threads() {
        eprintln!("error: {msg}");
        return ExitCode::from(2);
    }
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

/// Honors `SPINPOLY_THREADS` as a cap on worker threads.
fn configure_threads() -> Result<(), String> {
    let Ok(v) = std::env::var("SPINPOLY_THREADS") else { return Ok(()) };
    let n: usize = v.trim().parse().map_err(|_| format!("SPINPOLY_THREADS must be a positive integer, got {v:?}"))?;
    if n == 0 {
        return Err("SPINPOLY_THREADS must be at least 1".into());
    }
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| e.to_string())
}

fn run(cli: Cli) -> Outcome {
    let default_format = match cli.command {
        Command::Plotdata { .. } | Command::Basis { .. } => Format::Csv,
        Command::Cfn { table: true, .. } => Format::Csv,
        Command::Verify { .. } => Format::Json,
        _ => Format::Pretty,
    };
    let sink = match cli.csv {
        Some(path) => Sink { format: Format::Csv, path: path.or(cli.output) },
        None => Sink { format: cli.format.unwrap_or(default_format), path: cli.output },
    };
    match cli.command {
        Command::Cfn { n, k, table } => cmd_cfn(&sink, n, k, table),
        Command::Basis { j, which } => cmd_basis(&sink, j, &which),
        Command::Verify { fi, max_two_j, tol_scale } => {
            cmd_verify(&sink, VerifyOptions { max_two_j, tol_scale, fi_only: fi })
        }
        Command::Fixtures { corrupt_cfn } => cmd_fixtures(&sink, corrupt_cfn),
        Command::Coeffs(Coeffs::Exp { j, theta, theta_grid, k }) => cmd_exp(&sink, j, thetas(theta, theta_grid)?, k),
        Command::Coeffs(Coeffs::Cayley { j, exact, reduced, alpha, alpha_grid, k }) => {
            if exact {
                cmd_cayley_exact(&sink, j, reduced, k)
            } else {
                cmd_cayley(&sink, j, thetas(alpha, alpha_grid)?, k)
            }
        }
        Command::Asymp { j_list, k, alpha_grid } => cmd_asymp(&sink, &j_list, k, alpha_grid),
        Command::Bridge { j, k, alpha, quadrature } => cmd_bridge(&sink, j, k, alpha, quadrature),
        Command::Shear { j, theta } => cmd_shear(&sink, j, theta),
        Command::Plotdata { figure, j, grid } => {
            let spins = (!j.is_empty()).then_some(j.as_slice());
            let mut t = Table::new(&["x", "series", "value"]);
            for r in plot_data(figure, spins, grid)? {
                t.push(vec![r.x.into(), r.series.into(), r.value.into()]);
            }
            Ok(sink.table(&t)?)
        }
        Command::Bench { two_j, samples } => {
            let two_js = if two_j.is_empty() { DEFAULT_TWO_J.to_vec() } else { two_j };
            let mut t = Table::new(&["two_j", "phase", "median_ns"]);
            for r in run_bench(&two_js, samples) {
                t.push(vec![r.two_j.into(), r.phase.name().into(), r.median_ns.into()]);
            }
            Ok(sink.table(&t)?)
        }
    }
}

fn thetas(single: Option<f64>, grid: Option<Grid>) -> Result<Vec<f64>, Failure> {
    match (single, grid) {
        (Some(x), _) => Ok(vec![x]),
        (None, Some(g)) => Ok(g.points()),
        (None, None) => Err(Failure::Usage("give a single point or a grid".into())),
    }
}

fn check_k(j: HalfInt, k: Option<usize>) -> Result<Vec<usize>, Failure> {
    match k {
        Some(k) if k > j.two_j() as usize => Err(Failure::Usage(format!("k = {k} exceeds 2j = {}", j.two_j()))),
        Some(k) => Ok(vec![k]),
        None => Ok((0..j.dim()).collect()),
    }
}

fn cmd_cfn(sink: &Sink, n: usize, k: Option<usize>, table: bool) -> Outcome {
    if table {
        let mut t = Table::new(&["n", "k", "numerator", "denominator"]);
        for m in 0..=n {
            for (kk, v) in cfn_row(m).iter().enumerate() {
                if k.is_none_or(|k| k == kk) {
                    t.push(vec![m.into(), kk.into(), v.numer().to_string().into(), v.denom().to_string().into()]);
                }
            }
        }
        return Ok(sink.table(&t)?);
    }
    let mut t = Table::new(&["n", "k", "t"]);
    let ks: Vec<usize> = match k {
        Some(k) => vec![k],
        None => (0..=n).collect(),
    };
    for kk in ks {
        t.push(vec![n.into(), kk.into(), format_rational(&cfn(n, kk)).into()]);
    }
    Ok(sink.table(&t)?)
}

fn matrix_table(m: &ExactMatrix) -> Table {
    let mut t = Table::default();
    for r in m.rows() {
        t.push(r.iter().map(|x| Cell::Text(format_rational(x))).collect());
    }
    t
}

fn cmd_basis(sink: &Sink, j: HalfInt, which: &BasisWhich) -> Outcome {
    let t = if which.duals {
        let mut t = Table::default();
        for row in dual_matrices(j).t {
            t.push(row.iter().map(|x| Cell::Text(format_rational(x))).collect());
        }
        t
    } else if which.vandermonde {
        matrix_table(&vandermonde(j))
    } else {
        matrix_table(&vandermonde_inverse(j))
    };
    Ok(sink.table(&t)?)
}

fn cmd_verify(sink: &Sink, opts: VerifyOptions) -> Outcome {
    let report = run_verify(opts);
    match sink.format {
        Format::Json => sink.write(&(serde_json::to_string_pretty(&report)? + "\n"))?,
        _ => {
            let mut t = Table::new(&["module", "op", "two_j", "k", "param", "tolerance", "detail"]);
            for f in &report.failures {
                t.push(vec![
                    f.module.into(),
                    f.op.into(),
                    f.two_j.into(),
                    f.k.map_or(Cell::Text(String::new()), Cell::from),
                    f.param.map_or(Cell::Text(String::new()), Cell::from),
                    f.tolerance.map_or(Cell::Text(String::new()), Cell::from),
                    f.detail.as_str().into(),
                ]);
            }
            sink.table(&t)?;
        }
    }
    eprintln!("{} checks, {} failures, 2j <= {}", report.checks, report.failures.len(), report.max_two_j);
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

fn cmd_fixtures(sink: &Sink, corrupt: Option<(usize, usize)>) -> Outcome {
    let report: FixtureReport = match corrupt {
        Some((n, k)) => run_fixtures_with(flipped_cfn(n, k)),
        None => run_fixtures(),
    };
    let total = report.outcomes.len();
    if sink.format == Format::Json {
        sink.write(&(serde_json::to_string_pretty(&report)? + "\n"))?;
    } else {
        let mut text = String::new();
        for o in &report.outcomes {
            let status = if o.passed() { "PASS" } else { "FAIL" };
            text += &format!("{status} {} (j = {})\n", o.name, o.j);
            for d in &o.diffs {
                for line in d.lines() {
                    text += &format!("    {line}\n");
                }
            }
        }
        match report.first_failure() {
            None => text += &format!("{total} fixtures passed\n"),
            Some(f) => text += &format!("{} of {total} fixtures passed; first failure: {}\n", report.passed(), f.name),
        }
        sink.write(&text)?;
    }
    if report.all_passed() {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

fn cmd_exp(sink: &Sink, j: HalfInt, thetas: Vec<f64>, k: Option<usize>) -> Outcome {
    let ks = check_k(j, k)?;
    let values: Vec<Vec<f64>> = thetas
        .par_iter()
        .map(|&th| match k {
            Some(k) => a_coeff_trunc(j, k, th).map(|a| vec![a]),
            None => Ok(exp_poly(j, th).a),
        })
        .collect::<Result<_, _>>()?;
    let mut t = Table::new(&["theta", "k", "A_k"]);
    for (th, row) in thetas.iter().zip(values) {
        for (&kk, a) in ks.iter().zip(row) {
            t.push(vec![(*th).into(), kk.into(), a.into()]);
        }
    }
    Ok(sink.table(&t)?)
}

fn cmd_cayley(sink: &Sink, j: HalfInt, alphas: Vec<f64>, k: Option<usize>) -> Outcome {
    let ks = check_k(j, k)?;
    let coeffs = b_coeffs(j);
    let values: Vec<(Vec<f64>, Vec<f64>)> = alphas
        .par_iter()
        .map(|a| Ok::<_, spinpoly_core::Error>((coeffs.a_at(a)?, coeffs.b_at(a)?)))
        .collect::<Result<_, _>>()?;
    let mut t = Table::new(&["alpha", "k", "A_k", "B_k"]);
    for (alpha, (a, b)) in alphas.iter().zip(values) {
        for &kk in &ks {
            t.push(vec![(*alpha).into(), kk.into(), a[kk].into(), b[kk].into()]);
        }
    }
    Ok(sink.table(&t)?)
}

fn poly_cell(f: &RationalFunction, num: bool) -> Cell {
    let p = if num { f.num() } else { f.den() };
    let parts: Vec<String> = p.coeffs().iter().map(format_rational).collect();
    Cell::Text(if parts.is_empty() { "0/1".into() } else { parts.join(" ") })
}

fn cmd_cayley_exact(sink: &Sink, j: HalfInt, reduced: bool, k: Option<usize>) -> Outcome {
    let ks = check_k(j, k)?;
    let coeffs = if reduced { b_coeffs(j).reduced() } else { (*b_coeffs(j)).clone() };
    let mut t = Table::new(&["coeff", "k", "numerator", "denominator"]);
    for (name, set) in [("A", &coeffs.a), ("B", &coeffs.b)] {
        for &kk in &ks {
            t.push(vec![name.into(), kk.into(), poly_cell(&set[kk], true), poly_cell(&set[kk], false)]);
        }
    }
    Ok(sink.table(&t)?)
}

fn cmd_asymp(sink: &Sink, j_list: &[HalfInt], k: usize, grid: Grid) -> Outcome {
    let alphas = grid.points();
    let mut t = Table::new(&["alpha", "j", "k", "b_over_alpha_k", "limit", "delta"]);
    for &j in j_list {
        let rows: Vec<(f64, f64, f64)> = alphas
            .par_iter()
            .map(|&a| {
                Ok::<_, spinpoly_core::Error>((
                    b_over_alpha_power(j, k, a)?,
                    b_limit(j, k, a),
                    relative_error(j, k, a)?,
                ))
            })
            .collect::<Result<_, _>>()?;
        for (&a, (b, lim, d)) in alphas.iter().zip(rows) {
            t.push(vec![a.into(), j.to_string().into(), k.into(), b.into(), lim.into(), d.into()]);
        }
    }
    Ok(sink.table(&t)?)
}

fn cmd_bridge(sink: &Sink, j: HalfInt, k: usize, alpha: f64, quadrature: bool) -> Outcome {
    let pair = LaplacePair::compute(j, k, alpha)?;
    let mut headers = vec!["j", "k", "alpha", "b_direct", "b_via_laplace", "discrepancy", "agrees"];
    let mut row: Vec<Cell> = vec![
        j.to_string().into(),
        k.into(),
        alpha.into(),
        pair.b_direct.into(),
        pair.b_via_laplace.into(),
        pair.discrepancy().into(),
        pair.agrees().into(),
    ];
    if quadrature {
        headers.push("quadrature");
        row.push(quadrature_check(j, k, alpha, QUAD_T, QUAD_PANELS)?.into());
    }
    let mut t = Table::new(&headers);
    t.push(row);
    sink.table(&t)?;
    if pair.agrees() {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

fn cmd_shear(sink: &Sink, j: HalfInt, theta: f64) -> Outcome {
    let report = shear_report(j, theta);
    if sink.format == Format::Json {
        sink.write(&(serde_json::to_string_pretty(&report)? + "\n"))?;
        return Ok(());
    }
    let mut t = Table::new(&["M", "alpha", "exp_equals_cayley"]);
    for (m, alpha) in &report.alphas {
        let verified = verify_exp_equal_cayley(*m, theta).map_or(Cell::Text("pole".into()), Cell::from);
        t.push(vec![m.to_string().into(), alpha.map_or(Cell::Text("pole".into()), Cell::from), verified]);
    }
    sink.table(&t)?;
    let summary = format!("inconsistent across |M|: {}", report.inconsistent);
    if sink.format == Format::Pretty && sink.path.is_none() {
        println!("{summary}");
    } else {
        eprintln!("{summary}");
    }
    Ok(())
}
