// Copyright 2026 The spinpoly Authors
// SPDX-License-Identifier: Apache-2.0

//! Composite Gauss–Legendre quadrature.

use std::f64::consts::PI;
use std::sync::Arc;

use crate::memo::Memo;

/// Nodes and weights on `[-1, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussLegendre {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

static RULES: Memo<usize, GaussLegendre> = Memo::new();

/// `n`-point rule, nodes from Newton iteration on `P_n`.
pub fn gauss_legendre(n: usize) -> Arc<GaussLegendre> {
    assert!(n >= 1, "rule needs at least one node");
    RULES.get_or_compute(n, || {
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        for i in 0..n.div_ceil(2) {
            let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        GaussLegendre { nodes, weights }
    })
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    for k in 2..=n {
        let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
        p0 = p1;
        p1 = p2;
    }
    if n == 0 {
        return (1.0, 0.0);
    }
    (p1, n as f64 * (x * p1 - p0) / (x * x - 1.0))
}

/// `∫_a^b f` with `panels` equal subintervals and an `order`-point rule on each.
pub fn integrate(f: impl Fn(f64) -> f64, a: f64, b: f64, panels: usize, order: usize) -> f64 {
    let rule = gauss_legendre(order);
    let h = (b - a) / panels as f64;
    (0..panels)
        .map(|p| {
            let mid = a + (p as f64 + 0.5) * h;
            rule.nodes.iter().zip(&rule.weights).map(|(x, w)| w * f(mid + 0.5 * h * x)).sum::<f64>() * 0.5 * h
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn weights_sum_to_two() {
        for n in [1, 2, 5, 16, 32] {
            assert_relative_eq!(gauss_legendre(n).weights.iter().sum::<f64>(), 2.0, max_relative = 1e-14);
        }
    }

    #[test]
    fn exact_for_polynomials() {
        // An n-point rule integrates degree 2n−1 exactly.
        let r = integrate(|x| x.powi(9) + 3.0 * x.powi(4), 0.0, 2.0, 1, 5);
        assert_relative_eq!(r, 2f64.powi(10) / 10.0 + 3.0 * 32.0 / 5.0, max_relative = 1e-14);
    }

    #[test]
    fn laplace_of_cosine() {
        let r = integrate(|t| (-t).exp() * (3.0 * t).cos(), 0.0, 40.0, 64, 32);
        assert_relative_eq!(r, 1.0 / 10.0, epsilon = 1e-15);
    }
}
