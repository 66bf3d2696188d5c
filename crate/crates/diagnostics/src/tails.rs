use std::f64::consts::LN_2;

use hypdrift_geometry::Model;
use hypdrift_groups::GroupAction;
use hypdrift_stats::{ols, LineFit};
use hypdrift_walk::{sample_path, WalkMeasure};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{DiagnosticsError, Result};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TailPoint {
    pub a: f64,
    pub probability: f64,
    pub stderr: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DeviationTail {
    pub k: usize,
    pub n: usize,
    pub batch: usize,
    pub points: Vec<TailPoint>,
    /// Fit of `log P̂(D > a)` against `a` over the points with `P̂ > 0`.
    pub fit: Option<LineFit>,
    /// Fewer than two grid points carry mass.
    pub degenerate: bool,
    pub mean_deviation: f64,
}

impl DeviationTail {
    /// Every tail value is strictly below the one before it.
    pub fn strictly_decreasing(&self) -> bool {
        self.points.windows(2).all(|w| w[1].probability < w[0].probability)
    }
}

/// `ln sinh t` for `t > 0` without overflow.
fn ln_sinh(t: f64) -> f64 {
    t + (-(-2.0 * t).exp_m1()).ln() - LN_2
}

fn ln_cosh(t: f64) -> f64 {
    t + (-2.0 * t).exp().ln_1p() - LN_2
}

/// Distance from the vertex `K` to the side `[O, N]` of a hyperbolic triangle
/// with `|ON| = a`, `|OK| = b`, `|KN| = c`. Works from side lengths alone, so
/// far-out vertices never need coordinates.
pub fn plane_vertex_to_side(a: f64, b: f64, c: f64) -> f64 {
    if a <= 1e-12 {
        return b;
    }
    if ln_cosh(a) + ln_cosh(b) <= ln_cosh(c) {
        return b;
    }
    if ln_cosh(a) + ln_cosh(c) <= ln_cosh(b) {
        return c;
    }
    let s = 0.5 * (a + b + c);
    let parts = [s, s - a, s - b, s - c];
    if parts.iter().any(|&t| t <= 0.0) {
        return 0.0;
    }
    let ln_sinh_h = LN_2 + 0.5 * parts.iter().map(|&t| ln_sinh(t)).sum::<f64>() - ln_sinh(a);
    if ln_sinh_h > 30.0 {
        ln_sinh_h + LN_2
    } else {
        ln_sinh_h.exp().asinh()
    }
}

/// The same distance on a tree, where it is the Gromov product at `K`.
pub fn tree_vertex_to_side(a: f64, b: f64, c: f64) -> f64 {
    (0.5 * (b + c - a)).max(0.0)
}

/// Empirical `P(d(ω_k o, [o, ω_n o]) > a)` over the grid, with a log-linear fit.
pub fn deviation_tail<A: GroupAction>(
    measure: &WalkMeasure<A>,
    k: usize,
    n: usize,
    a_grid: &[f64],
    batch: usize,
    seed: u64,
) -> Result<DeviationTail> {
    if k > n {
        return Err(DiagnosticsError::BadSplit { k, n });
    }
    if batch == 0 || a_grid.is_empty() {
        return Err(DiagnosticsError::Invalid("deviation tails need a nonempty grid and batch".into()));
    }
    let action = measure.action();
    let side = match action.model() {
        Model::Plane => plane_vertex_to_side,
        Model::Tree => tree_vertex_to_side,
    };
    let deviations: Vec<f64> = (0..batch as u64)
        .into_par_iter()
        .map(|i| {
            let w = sample_path(measure, n, seed, i).positions_at(measure, &[k, n]);
            let increment = action.mul(&action.inverse(&w[0]), &w[1]);
            side(action.displacement(&w[1]), action.displacement(&w[0]), action.displacement(&increment))
        })
        .collect();
    if deviations.iter().any(|d| !d.is_finite()) {
        return Err(DiagnosticsError::NonFinite { n });
    }
    let m = batch as f64;
    let points: Vec<TailPoint> = a_grid
        .iter()
        .map(|&a| {
            let p = deviations.iter().filter(|&&d| d > a).count() as f64 / m;
            TailPoint { a, probability: p, stderr: (p * (1.0 - p) / m).sqrt() }
        })
        .collect();
    let (xs, ys): (Vec<f64>, Vec<f64>) = points.iter().filter(|p| p.probability > 0.0).map(|p| (p.a, p.probability.ln())).unzip();
    let fit = if xs.len() >= 2 { ols(&xs, &ys).ok() } else { None };
    Ok(DeviationTail {
        k,
        n,
        batch,
        degenerate: fit.is_none(),
        fit,
        points,
        mean_deviation: deviations.iter().sum::<f64>() / m,
    })
}
