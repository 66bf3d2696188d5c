use hypdrift_groups::GroupAction;
use hypdrift_stats::{Estimate, Moments};
use hypdrift_walk::{
    convolution_sequence, sample_path, ExactGreen, GreenMethod, GreenOracle, GreenTable, WalkError, WalkMeasure,
};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{DiagnosticsError, Result};

/// How to estimate the Avez entropy `h_μ = lim H(μ^{*n})/n`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "method", rename_all = "kebab-case")]
pub enum EntropyMethod {
    /// Exact `μ^{*n}` up to `n` (or until the support passes `cap`).
    ExactConvolution { n: usize, cap: usize },
    /// Batch mean of `d_G(e, ω_n)/n`.
    GreenDrift { n: usize, batch: usize, green: GreenMethod },
}

/// One least-squares model `I_n ≈ h + b/n (+ c/n²)` for the entropy increments.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Extrapolation {
    pub window: usize,
    pub degree: usize,
    pub limit: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConvolutionEntropy {
    /// Last step reached before the support cap.
    pub reached: usize,
    /// `H(μ^{*n})/n` for `n = 1..=reached`.
    pub per_step: Vec<f64>,
    /// `H(μ^{*n}) − H(μ^{*(n−1)})` for `n = 1..=reached`; these decrease to `h`.
    pub increments: Vec<f64>,
    pub fits: Vec<Extrapolation>,
    /// Extrapolated limit; the error is the spread across `fits`.
    pub estimate: Estimate,
    /// The last increment, an upper bound for `h`.
    pub upper_bound: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GreenDriftEntropy {
    pub n: usize,
    pub estimate: Estimate,
    /// The same ratio at `n/2`; a large gap signals an unsettled walk.
    pub half: Estimate,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "method", rename_all = "kebab-case")]
pub enum EntropyReport {
    ExactConvolution(ConvolutionEntropy),
    GreenDrift(GreenDriftEntropy),
}

impl EntropyReport {
    pub fn estimate(&self) -> &Estimate {
        match self {
            EntropyReport::ExactConvolution(c) => &c.estimate,
            EntropyReport::GreenDrift(g) => &g.estimate,
        }
    }
}

/// `seed` drives the sampled paths of the green-drift method.
pub fn entropy<A: GroupAction>(measure: &WalkMeasure<A>, method: &EntropyMethod, seed: u64) -> Result<EntropyReport> {
    match method {
        EntropyMethod::ExactConvolution { n, cap } => convolution_entropy(measure, *n, *cap).map(EntropyReport::ExactConvolution),
        EntropyMethod::GreenDrift { n, batch, green } => {
            let report = match green {
                GreenMethod::ExactRecursive => green_drift_entropy(measure, &ExactGreen::new(measure)?, *n, *batch, seed)?,
                GreenMethod::TruncatedConvolution(params) => {
                    let table = GreenTable::build(measure, params.ball_steps, params)?;
                    green_drift_entropy(measure, &table, *n, *batch, seed)?
                }
                GreenMethod::MonteCarlo { .. } => {
                    return Err(WalkError::MethodMismatch {
                        method: "monte-carlo",
                        reason: "green-drift needs Green values at arbitrary walk positions".into(),
                    }
                    .into())
                }
            };
            Ok(EntropyReport::GreenDrift(report))
        }
    }
}

/// Exact entropies of the convolution powers with a `1/n` extrapolation of
/// the increments. Stops without error at the support cap, but needs at
/// least three steps.
pub fn convolution_entropy<A: GroupAction>(measure: &WalkMeasure<A>, n: usize, cap: usize) -> Result<ConvolutionEntropy> {
    let mut h = Vec::with_capacity(n + 1);
    let reached = convolution_sequence(measure, n, cap, |c| h.push(c.entropy()));
    if reached < 3 {
        return Err(WalkError::CapExceeded { cap }.into());
    }
    let per_step: Vec<f64> = (1..=reached).map(|k| h[k] / k as f64).collect();
    let increments: Vec<f64> = h.windows(2).map(|w| w[1] - w[0]).collect();
    let fits = extrapolate(&increments);
    let upper_bound = *increments.last().expect("at least three increments");
    let (value, spread) = match fits.last() {
        Some(best) => (best.limit, fits.iter().map(|f| (f.limit - best.limit).abs()).fold(0.0, f64::max)),
        None => {
            let k = increments.len();
            (upper_bound, (increments[k - 1] - increments[k - 2]).abs())
        }
    };
    Ok(ConvolutionEntropy {
        reached,
        per_step,
        increments,
        fits,
        estimate: Estimate::new(value, spread, reached as u64, 0, "exact-convolution-extrapolated"),
        upper_bound,
    })
}

/// Fits `I_n = h + Σ_j c_j n^{−j}` on trailing windows, ordered so that the
/// preferred model (largest window, degree 2) comes last.
fn extrapolate(increments: &[f64]) -> Vec<Extrapolation> {
    let len = increments.len();
    let mut fits = Vec::new();
    for (window, degree) in [(6, 1), (10, 1), (8, 2), (10, 2)] {
        if window + 1 > len {
            continue;
        }
        let range = len - window..len;
        let xs: Vec<f64> = range.clone().map(|i| 1.0 / (i + 1) as f64).collect();
        let ys = &increments[range];
        if let Some(c) = poly_fit(&xs, ys, degree) {
            fits.push(Extrapolation { window, degree, limit: c[0] });
        }
    }
    fits
}

/// Least-squares polynomial coefficients (constant first) by the normal equations.
fn poly_fit(xs: &[f64], ys: &[f64], degree: usize) -> Option<Vec<f64>> {
    let m = degree + 1;
    let mut a = vec![vec![0.0; m + 1]; m];
    for (&x, &y) in xs.iter().zip(ys) {
        let powers: Vec<f64> = (0..m).map(|j| x.powi(j as i32)).collect();
        for r in 0..m {
            for c in 0..m {
                a[r][c] += powers[r] * powers[c];
            }
            a[r][m] += powers[r] * y;
        }
    }
    for col in 0..m {
        let pivot = (col..m).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))?;
        if a[pivot][col].abs() < 1e-300 {
            return None;
        }
        a.swap(col, pivot);
        for r in 0..m {
            if r != col {
                let factor = a[r][col] / a[col][col];
                let pivot_row = a[col].clone();
                for (x, p) in a[r][col..=m].iter_mut().zip(&pivot_row[col..=m]) {
                    *x -= factor * p;
                }
            }
        }
    }
    Some((0..m).map(|r| a[r][m] / a[r][r]).collect())
}

/// `h ≈ E d_G(e, ω_n)/n` with Green values from `green`.
pub fn green_drift_entropy<A: GroupAction, G: GreenOracle<A> + Sync>(
    measure: &WalkMeasure<A>,
    green: &G,
    n: usize,
    batch: usize,
    seed: u64,
) -> Result<GreenDriftEntropy> {
    if n < 2 {
        return Err(DiagnosticsError::Invalid(format!("green-drift needs n ≥ 2, got {n}")));
    }
    let action = measure.action();
    let half = n / 2;
    let rows: Vec<(f64, f64)> = (0..batch as u64)
        .into_par_iter()
        .map(|i| {
            let w = sample_path(measure, n, seed, i).positions_at(measure, &[half, n]);
            Ok((green.green_metric(action, &w[0])? / half as f64, green.green_metric(action, &w[1])? / n as f64))
        })
        .collect::<Result<_, WalkError>>()?;
    let mut full = Moments::default();
    let mut first = Moments::default();
    for &(h, f) in &rows {
        first.push(h);
        full.push(f);
    }
    Ok(GreenDriftEntropy {
        n,
        estimate: full.estimate(seed, "green-drift"),
        half: first.estimate(seed, "green-drift"),
    })
}
