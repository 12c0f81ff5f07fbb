// Copyright 2026 The spinpoly Authors
// SPDX-License-Identifier: Apache-2.0

//! Long-format `(x, series, value)` tables for regenerating the coefficient
//! plots externally.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::basis::HalfInt;
use crate::cayley::{asymp_bosonic, b_over_alpha_power, det_poly, relative_error};
use crate::error::{Error, Result};
use crate::expcoeffs::a_coeff_trunc;

/// `count` evenly spaced points from `start` to `stop` inclusive.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Grid {
    pub start: f64,
    pub stop: f64,
    pub count: usize,
}

impl Grid {
    pub fn new(start: f64, stop: f64, count: usize) -> Result<Self> {
        if count == 0 {
            return Err(Error::Parse("grid count must be at least 1".into()));
        }
        if !(start.is_finite() && stop.is_finite()) || stop < start {
            return Err(Error::Parse(format!("grid needs finite start <= stop, got {start}:{stop}")));
        }
        Ok(Self { start, stop, count })
    }

    pub fn points(&self) -> Vec<f64> {
        if self.count == 1 {
            return vec![self.start];
        }
        let step = (self.stop - self.start) / (self.count - 1) as f64;
        (0..self.count).map(|i| if i + 1 == self.count { self.stop } else { self.start + step * i as f64 }).collect()
    }
}

/// Parses `start:stop:count`; endpoints accept a `pi` or `π` suffix, as in
/// `0:4pi:800` or `-π:π:9`.
impl FromStr for Grid {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let [a, b, n] = parts.as_slice() else {
            return Err(Error::Parse(format!("expected start:stop:count, got {s:?}")));
        };
        let count = n.trim().parse().map_err(|_| Error::Parse(format!("bad grid count {n:?}")))?;
        Self::new(parse_real(a)?, parse_real(b)?, count)
    }
}

/// A real number with an optional `pi`/`π` factor and divisor: `2.5`,
/// `pi`, `-3π`, `0.5*pi`, `3pi/4`.
pub fn parse_real(s: &str) -> Result<f64> {
    if let Some((num, den)) = s.rsplit_once('/') {
        let d: f64 = den.trim().parse().map_err(|_| Error::Parse(format!("bad divisor in {s:?}")))?;
        if d == 0.0 {
            return Err(Error::Parse(format!("zero divisor in {s:?}")));
        }
        return Ok(parse_real(num)? / d);
    }
    let t = s.trim();
    let (body, scale) = match t.strip_suffix("pi").or_else(|| t.strip_suffix('π')) {
        Some(body) => (body.trim_end_matches('*'), PI),
        None => (t, 1.0),
    };
    let v = match body {
        "" | "+" => 1.0,
        "-" => -1.0,
        b => b.parse::<f64>().map_err(|_| Error::Parse(format!("bad number {s:?}")))?,
    };
    Ok(v * scale)
}

/// Named figure datasets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Figure {
    /// `A_0 … A_5` against `θ` for `j = 69` and `j = 137/2`.
    ExpA,
    /// `𝔅₁/α = 𝔅₂/α²` for `j = 1, 2, 8` and the large-`j` limit.
    CayleyB12,
    /// `𝔅₃/α³ = 𝔅₄/α⁴` for `j = 2, 4, 12` and the large-`j` limit.
    CayleyB34,
    /// `1/det(1 − 2iα n·J)` for `j = 1/2 … 3`.
    InvDet,
    /// `Δ₁ = Δ₂` for `j = 1, 2, 8`.
    Delta12,
    /// `Δ₃ = Δ₄` for `j = 2, 12`; `j = 1` has no third coefficient.
    Delta34,
}

impl Figure {
    pub const ALL: [Figure; 6] =
        [Figure::ExpA, Figure::CayleyB12, Figure::CayleyB34, Figure::InvDet, Figure::Delta12, Figure::Delta34];

    pub fn name(self) -> &'static str {
        match self {
            Figure::ExpA => "exp-A",
            Figure::CayleyB12 => "cayley-B12",
            Figure::CayleyB34 => "cayley-B34",
            Figure::InvDet => "inv-det",
            Figure::Delta12 => "delta12",
            Figure::Delta34 => "delta34",
        }
    }

    /// Spins plotted by default, as `2j`.
    pub fn default_two_j(self) -> &'static [u32] {
        match self {
            Figure::ExpA => &[138, 137],
            Figure::CayleyB12 | Figure::Delta12 => &[2, 4, 16],
            Figure::CayleyB34 => &[4, 8, 24],
            Figure::InvDet => &[1, 2, 3, 4, 5, 6],
            Figure::Delta34 => &[4, 24],
        }
    }

    /// The horizontal axis: `θ` for the exponential, `α` otherwise.
    pub fn default_grid(self) -> Grid {
        match self {
            Figure::ExpA => Grid { start: 0.0, stop: 4.0 * PI, count: 800 },
            Figure::InvDet => Grid { start: 0.0, stop: 3.0, count: 301 },
            _ => Grid { start: 0.025, stop: 5.0, count: 200 },
        }
    }

    /// Coefficient indices plotted per spin.
    fn ks(self) -> &'static [usize] {
        match self {
            Figure::ExpA => &[0, 1, 2, 3, 4, 5],
            Figure::CayleyB12 | Figure::Delta12 => &[1],
            Figure::CayleyB34 | Figure::Delta34 => &[3],
            Figure::InvDet => &[0],
        }
    }
}

impl fmt::Display for Figure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Figure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Figure::ALL.into_iter().find(|f| f.name() == s).ok_or_else(|| {
            let names: Vec<&str> = Figure::ALL.iter().map(|f| f.name()).collect();
            Error::Parse(format!("unknown figure {s:?}; expected one of {}", names.join(", ")))
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PlotRow {
    pub x: f64,
    pub series: String,
    pub value: f64,
}

/// Emits one figure. `spins` and `grid` default to the figure's own.
/// Rows are grouped by series in a fixed order; grid points are evaluated
/// in parallel and gathered before emission.
pub fn plot_data(figure: Figure, spins: Option<&[HalfInt]>, grid: Option<Grid>) -> Result<Vec<PlotRow>> {
    let spins: Vec<HalfInt> = match spins {
        Some(s) => s.to_vec(),
        None => figure.default_two_j().iter().map(|&t| HalfInt::from_two_j(t)).collect(),
    };
    let xs = grid.unwrap_or_else(|| figure.default_grid()).points();
    let mut rows = Vec::new();
    for &j in &spins {
        for &k in figure.ks() {
            if k > j.two_j() as usize {
                continue;
            }
            let series = match figure {
                Figure::ExpA => format!("A{k} j={j}"),
                Figure::CayleyB12 | Figure::CayleyB34 => format!("B{k}/a^{k} j={j}"),
                Figure::InvDet => format!("1/det j={j}"),
                Figure::Delta12 | Figure::Delta34 => format!("Delta{k} j={j}"),
            };
            let values: Vec<f64> = xs
                .par_iter()
                .map(|&x| match figure {
                    Figure::ExpA => a_coeff_trunc(j, k, x),
                    Figure::CayleyB12 | Figure::CayleyB34 => b_over_alpha_power(j, k, x),
                    Figure::InvDet => Ok(1.0 / det_poly(j).eval_f64(x)),
                    Figure::Delta12 | Figure::Delta34 => relative_error(j, k, x),
                })
                .collect::<Result<_>>()?;
            rows.extend(xs.iter().zip(values).map(|(&x, value)| PlotRow { x, series: series.clone(), value }));
        }
    }
    if let Some(level) = match figure {
        Figure::CayleyB12 => Some(1),
        Figure::CayleyB34 => Some(2),
        _ => None,
    } {
        let series = format!("limit k={}", 2 * level - 1);
        let values: Vec<f64> = xs.par_iter().map(|&x| asymp_bosonic(level, x)).collect::<Result<_>>()?;
        rows.extend(xs.iter().zip(values).map(|(&x, value)| PlotRow { x, series: series.clone(), value }));
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn grids() {
        let g: Grid = "0:4pi:800".parse().unwrap();
        assert_eq!(g.count, 800);
        assert_relative_eq!(g.stop, 4.0 * PI);
        let pts = g.points();
        assert_eq!(pts.len(), 800);
        assert_eq!(pts[0], 0.0);
        assert_eq!(pts[799], 4.0 * PI);
        let g: Grid = "-π:π:3".parse().unwrap();
        assert_eq!(g.points(), vec![-PI, 0.0, PI]);
        assert_eq!("2:2:1".parse::<Grid>().unwrap().points(), vec![2.0]);
        assert!("1:0:5".parse::<Grid>().is_err());
        assert!("0:1:0".parse::<Grid>().is_err());
        assert!("0:1".parse::<Grid>().is_err());
        assert!("0:xpi:4".parse::<Grid>().is_err());
        assert_eq!(parse_real("0.5*pi").unwrap(), PI / 2.0);
        assert_eq!(parse_real("-pi").unwrap(), -PI);
        assert_eq!(parse_real("1.25").unwrap(), 1.25);
        assert_eq!(parse_real("3pi/4").unwrap(), 0.75 * PI);
        assert_eq!(parse_real("-π/2").unwrap(), -PI / 2.0);
        assert!(parse_real("pi/0").is_err());
        assert!(parse_real("1/x").is_err());
    }

    #[test]
    fn figure_names_round_trip() {
        for f in Figure::ALL {
            assert_eq!(f.name().parse::<Figure>().unwrap(), f);
        }
        assert!("cayley-B56".parse::<Figure>().is_err());
    }

    #[test]
    fn every_figure_emits() {
        for f in Figure::ALL {
            let grid = match f {
                Figure::ExpA => Grid::new(0.0, 4.0 * PI, 9).unwrap(),
                _ => Grid::new(0.1, 5.0, 7).unwrap(),
            };
            let rows = plot_data(f, None, Some(grid)).unwrap();
            assert!(!rows.is_empty(), "{f}");
            assert!(rows.iter().all(|r| r.value.is_finite()), "{f}");
        }
    }

    #[test]
    fn inverse_determinant_starts_at_one_and_orders_curves() {
        let grid = Grid::new(0.0, 2.0, 5).unwrap();
        let rows = plot_data(Figure::InvDet, None, Some(grid)).unwrap();
        for chunk in rows.chunks(5) {
            assert_eq!(chunk[0].value, 1.0);
        }
        // Larger spins lie below smaller ones away from the origin.
        for i in 1..5 {
            let column: Vec<f64> = rows.chunks(5).map(|c| c[i].value).collect();
            assert!(column.windows(2).all(|w| w[1] < w[0]));
        }
    }
}
