use hypdrift_geometry::Isometry;
use hypdrift_stats::{ols, Estimate};
use serde::Serialize;

use crate::action::GroupAction;
use crate::ball::explore_depths;
use crate::error::{GroupError, Result};

/// A word norm with the search that certified it.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct WordNorm {
    pub norm: usize,
    /// Displacement margin beyond `d(o, g·o)` at which the breadth-first
    /// answer stabilized; zero for normal-form norms.
    pub margin: f64,
}

const MARGINS: [f64; 4] = [1.0, 2.0, 4.0, 8.0];

/// Word norms of several elements from one breadth-first search over the
/// elements within `max d(o, g·o) + margin`, repeated with doubling margins
/// until two consecutive searches agree.
pub fn word_norms<A: GroupAction>(action: &A, targets: &[A::Elem], cap: usize) -> Result<(Vec<usize>, f64)> {
    if let Some(norms) = targets.iter().map(|g| action.exact_norm(g)).collect::<Option<Vec<_>>>() {
        return Ok((norms, 0.0));
    }
    let keys: Vec<A::Key> = targets.iter().map(|g| action.key(g)).collect();
    let reach = targets.iter().map(|g| action.displacement(g)).fold(0.0, f64::max);
    let mut previous: Option<Vec<usize>> = None;
    for margin in MARGINS {
        let (depths, complete) = explore_depths(action, reach + margin, cap);
        if !complete {
            return Err(GroupError::NotFound);
        }
        let found: Option<Vec<usize>> = keys.iter().map(|k| depths.get(k).map(|&d| d as usize)).collect();
        if found.is_some() && found == previous {
            return Ok((found.unwrap_or_default(), margin));
        }
        previous = found;
    }
    previous.map(|n| (n, MARGINS[MARGINS.len() - 1])).ok_or(GroupError::NotFound)
}

/// Length of a shortest generator word for `g`.
pub fn word_norm<A: GroupAction>(action: &A, g: &A::Elem, cap: usize) -> Result<WordNorm> {
    let (norms, margin) = word_norms(action, std::slice::from_ref(g), cap)?;
    Ok(WordNorm { norm: norms[0], margin })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DistortionRow {
    pub n: usize,
    pub word_norm: usize,
    pub displacement: f64,
    pub ratio: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct DistortionReport {
    pub rows: Vec<DistortionRow>,
    pub fit_window: (usize, usize),
    /// Slope of `log ‖pⁿ‖` against `d(o, pⁿo)` over the window.
    pub log_c: Estimate,
    /// Smallest ratio `log ‖pⁿ‖ / d(o, pⁿo)` over the window.
    pub min_ratio: f64,
    pub margin: f64,
}

/// Rows `(n, ‖pⁿ‖, d(o, pⁿo), log ‖pⁿ‖ / d(o, pⁿo))` for `n = 1..=N`, and
/// the exponent `log c` fitted over `n ∈ fit_window`.
pub fn parabolic_distortion_report<A: GroupAction>(
    action: &A,
    parabolic: &A::Elem,
    n_max: usize,
    fit_window: (usize, usize),
    cap: usize,
) -> Result<DistortionReport> {
    if !action.flags().has_parabolics {
        return Err(GroupError::NoParabolics(action.name()));
    }
    if let Isometry::Plane(m) = action.isometry(parabolic) {
        let tr = m.trace().abs();
        if (tr - 2.0).abs() > 1e-9 || action.displacement(parabolic) < 1e-9 {
            return Err(GroupError::NotParabolic(tr));
        }
    }
    let mut powers = Vec::with_capacity(n_max);
    let mut p = action.identity();
    for _ in 0..n_max {
        p = action.mul(&p, parabolic);
        powers.push(p.clone());
    }
    let (norms, margin) = word_norms(action, &powers, cap)?;
    let rows: Vec<DistortionRow> = powers
        .iter()
        .zip(&norms)
        .enumerate()
        .map(|(k, (g, &norm))| {
            let d = action.displacement(g);
            DistortionRow { n: k + 1, word_norm: norm, displacement: d, ratio: (norm as f64).ln() / d }
        })
        .collect();
    let (lo, hi) = (fit_window.0.max(1), fit_window.1.min(n_max));
    let window: Vec<&DistortionRow> = rows.iter().filter(|r| r.n >= lo && r.n <= hi).collect();
    let x: Vec<f64> = window.iter().map(|r| r.displacement).collect();
    let y: Vec<f64> = window.iter().map(|r| (r.word_norm as f64).ln()).collect();
    let fit = ols(&x, &y)?;
    let min_ratio = window.iter().map(|r| r.ratio).fold(f64::INFINITY, f64::min);
    let log_c = Estimate::new(fit.slope, fit.slope_stderr, window.len() as u64, 0, "parabolic-distortion-ols");
    Ok(DistortionReport { rows, fit_window: (lo, hi), log_c, min_ratio, margin })
}
