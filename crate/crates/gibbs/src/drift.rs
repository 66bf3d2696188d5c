use hypdrift_groups::GroupAction;
use hypdrift_stats::{Estimate, Moments};
use hypdrift_walk::{sample_path, WalkMeasure};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{GibbsError, Result};
use crate::potential::{fake_displacement, Potential};

/// Thresholds for the empirical tail of the cocycle defect.
pub const KINGMAN_THRESHOLDS: [f64; 4] = [1.0, 2.0, 4.0, 8.0];

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TailPoint {
    pub t: f64,
    pub probability: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FakeDrift {
    /// `d_F(o, ω_n o)/n`.
    pub estimate: Estimate,
    /// The same at `n/2`.
    pub half: Estimate,
    /// `(d_F(o, ω_n o) − d_F(o, ω_{n/2} o))/(n/2)` per path. Endpoint terms of
    /// order one cancel, which matters when `F` peaks on the orbit.
    pub increment: Estimate,
    /// Empirical `P(|β^F − d_F| > t)` with `β^F(o, ω_n o)` approximated through
    /// the position at step `kingman_horizon`.
    pub kingman: Vec<TailPoint>,
    pub kingman_horizon: usize,
    pub max_defect: f64,
}

/// Batch estimate of `ℓ_{F,μ} = lim d_F(o, ω_n o)/n`.
pub fn fake_drift<A: GroupAction>(f: &Potential, measure: &WalkMeasure<A>, n: usize, batch: usize, seed: u64) -> Result<FakeDrift> {
    if n < 100 {
        return Err(GibbsError::ShortWalk(n));
    }
    let action = measure.action();
    // A short extension keeps plane geodesics within the range where
    // quadrature nodes are still accurate.
    let horizon = n + n / 4;
    let rows: Vec<[f64; 4]> = (0..batch as u64)
        .into_par_iter()
        .map(|i| {
            let path = sample_path(measure, horizon, seed, i);
            let w = path.positions_at(measure, &[n / 2, n, horizon]);
            let (half, mid, far) = (&w[0], &w[1], &w[2]);
            let d_mid = fake_displacement(f, action, mid)?;
            let d_half = fake_displacement(f, action, half)?;
            // ω_n⁻¹ω_m from the increments; inverting ω_n and multiplying
            // back cancels catastrophically for long walks.
            let mut step = action.identity();
            for &k in &path.increments[n..horizon] {
                action.mul_assign(&mut step, &measure.atoms()[k as usize].elem);
            }
            let beta = fake_displacement(f, action, far)? - fake_displacement(f, action, &step)?;
            let k = (n - n / 2) as f64;
            Ok([d_mid / n as f64, d_half / (n / 2) as f64, (d_mid - d_half) / k, (beta - d_mid).abs()])
        })
        .collect::<Result<_>>()?;
    let mut m = [Moments::default(); 3];
    for r in &rows {
        for (acc, &x) in m.iter_mut().zip(r) {
            acc.push(x);
        }
    }
    let kingman = KINGMAN_THRESHOLDS
        .iter()
        .map(|&t| TailPoint { t, probability: rows.iter().filter(|r| r[3] > t).count() as f64 / batch.max(1) as f64 })
        .collect();
    Ok(FakeDrift {
        estimate: m[0].estimate(seed, "fake-drift-batch-mean"),
        half: m[1].estimate(seed, "fake-drift-batch-mean"),
        increment: m[2].estimate(seed, "fake-drift-increment"),
        kingman,
        kingman_horizon: horizon,
        max_defect: rows.iter().map(|r| r[3]).fold(0.0, f64::max),
    })
}
