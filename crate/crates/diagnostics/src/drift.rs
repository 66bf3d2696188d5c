use hypdrift_groups::GroupAction;
use hypdrift_stats::{Estimate, Moments};
use hypdrift_walk::{sample_path, WalkMeasure};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{DiagnosticsError, Result};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DriftEstimate {
    pub n: usize,
    /// Batch mean of `d(o, ω_n o)/n`.
    pub estimate: Estimate,
    /// The same at `n/2`; the two should agree once the walk has settled.
    pub half: Estimate,
}

/// `ℓ_μ = lim d(o, ω_n o)/n` from `batch` independent paths.
pub fn drift<A: GroupAction>(measure: &WalkMeasure<A>, n: usize, batch: usize, seed: u64) -> Result<DriftEstimate> {
    if n < 100 {
        return Err(DiagnosticsError::ShortWalk(n));
    }
    let action = measure.action();
    let half = n / 2;
    let rows: Vec<(f64, f64)> = (0..batch as u64)
        .into_par_iter()
        .map(|i| {
            let w = sample_path(measure, n, seed, i).positions_at(measure, &[half, n]);
            (action.displacement(&w[0]) / half as f64, action.displacement(&w[1]) / n as f64)
        })
        .collect();
    let mut full = Moments::default();
    let mut first = Moments::default();
    for &(h, f) in &rows {
        first.push(h);
        full.push(f);
    }
    if rows.iter().any(|(h, f)| !h.is_finite() || !f.is_finite()) {
        return Err(DiagnosticsError::NonFinite { n });
    }
    Ok(DriftEstimate { n, estimate: full.estimate(seed, "drift-batch-mean"), half: first.estimate(seed, "drift-batch-mean") })
}
