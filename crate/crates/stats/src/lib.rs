//! Small statistical toolkit shared by the estimators: [`Estimate`],
//! streaming moments and ordinary least squares.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Two-sided 95% normal quantile.
pub const Z95: f64 = 1.96;

#[derive(Debug, Error, PartialEq)]
pub enum FitError {
    #[error("need at least {needed} points for a fit, got {got}")]
    TooFewPoints { needed: usize, got: usize },
    #[error("abscissae are degenerate (zero spread)")]
    Degenerate,
    #[error("non-finite value at index {0}")]
    NonFinite(usize),
}

/// A point value with its standard error and provenance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Estimate {
    pub value: f64,
    pub stderr: f64,
    pub n_samples: u64,
    pub ci95: (f64, f64),
    pub seed: u64,
    pub method: String,
}

impl Estimate {
    pub fn new(value: f64, stderr: f64, n_samples: u64, seed: u64, method: impl Into<String>) -> Self {
        let stderr = stderr.max(0.0);
        Self {
            value,
            stderr,
            n_samples,
            ci95: (value - Z95 * stderr, value + Z95 * stderr),
            seed,
            method: method.into(),
        }
    }

    /// A value known exactly (closed form or exact enumeration).
    pub fn exact(value: f64, method: impl Into<String>) -> Self {
        Self::new(value, 0.0, 1, 0, method)
    }

    /// Estimate of `a * self`.
    pub fn scaled(&self, a: f64) -> Self {
        Self::new(a * self.value, a.abs() * self.stderr, self.n_samples, self.seed, self.method.clone())
    }

    /// Whether `target` lies within `k` standard errors (plus an absolute slack).
    pub fn agrees_with(&self, target: f64, k: f64, slack: f64) -> bool {
        (self.value - target).abs() <= k * self.stderr + slack
    }
}

/// Root of the summed variances; the combined error of independent estimates.
pub fn combined_stderr<'a>(parts: impl IntoIterator<Item = &'a f64>) -> f64 {
    parts.into_iter().map(|s| s * s).sum::<f64>().sqrt()
}

/// Count, sum and sum of squares. Merging is associative, so the result does
/// not depend on how samples were partitioned, provided the merge order is fixed.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct Moments {
    pub count: u64,
    pub sum: f64,
    pub sum_sq: f64,
}

impl Moments {
    pub fn push(&mut self, x: f64) {
        self.count += 1;
        self.sum += x;
        self.sum_sq += x * x;
    }

    pub fn merge(&mut self, other: &Moments) {
        self.count += other.count;
        self.sum += other.sum;
        self.sum_sq += other.sum_sq;
    }

    pub fn mean(&self) -> f64 {
        if self.count == 0 {
            f64::NAN
        } else {
            self.sum / self.count as f64
        }
    }

    /// Unbiased sample variance.
    pub fn variance(&self) -> f64 {
        if self.count < 2 {
            return 0.0;
        }
        let n = self.count as f64;
        let m = self.sum / n;
        ((self.sum_sq - n * m * m) / (n - 1.0)).max(0.0)
    }

    pub fn stderr(&self) -> f64 {
        if self.count == 0 {
            return f64::NAN;
        }
        (self.variance() / self.count as f64).sqrt()
    }

    pub fn estimate(&self, seed: u64, method: impl Into<String>) -> Estimate {
        Estimate::new(self.mean(), self.stderr(), self.count, seed, method)
    }
}

impl FromIterator<f64> for Moments {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut m = Moments::default();
        for x in iter {
            m.push(x);
        }
        m
    }
}

/// Result of a straight-line least-squares fit `y = intercept + slope * x`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LineFit {
    pub slope: f64,
    pub intercept: f64,
    pub slope_stderr: f64,
    pub points: usize,
}

pub fn ols(x: &[f64], y: &[f64]) -> Result<LineFit, FitError> {
    assert_eq!(x.len(), y.len(), "ols: length mismatch");
    let n = x.len();
    if n < 2 {
        return Err(FitError::TooFewPoints { needed: 2, got: n });
    }
    if let Some(i) = x.iter().chain(y).position(|v| !v.is_finite()) {
        return Err(FitError::NonFinite(i % n));
    }
    let nf = n as f64;
    let xm = x.iter().sum::<f64>() / nf;
    let ym = y.iter().sum::<f64>() / nf;
    let sxx: f64 = x.iter().map(|a| (a - xm) * (a - xm)).sum();
    if sxx <= 0.0 {
        return Err(FitError::Degenerate);
    }
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - xm) * (b - ym)).sum();
    let slope = sxy / sxx;
    let intercept = ym - slope * xm;
    let slope_stderr = if n > 2 {
        let rss: f64 = x
            .iter()
            .zip(y)
            .map(|(a, b)| {
                let r = b - intercept - slope * a;
                r * r
            })
            .sum();
        (rss / (nf - 2.0) / sxx).sqrt()
    } else {
        0.0
    };
    Ok(LineFit { slope, intercept, slope_stderr, points: n })
}

/// Least-squares growth rate with a curvature allowance.
///
/// The reported error adds, in quadrature, the residual standard error and
/// the difference between slopes fitted on the lower and upper halves of the
/// window. Smooth curvature (such as the `log(2·3^R − 1)` ball counts of a
/// free group) leaves tiny residuals but a systematic bias; the half-window
/// spread bounds that bias when the local slope converges monotonically.
pub fn growth_rate(x: &[f64], y: &[f64]) -> Result<LineFit, FitError> {
    if x.len() < 4 {
        return Err(FitError::TooFewPoints { needed: 4, got: x.len() });
    }
    let mut fit = ols(x, y)?;
    let mid = x.len() / 2;
    let lo = ols(&x[..=mid], &y[..=mid])?;
    let hi = ols(&x[mid..], &y[mid..])?;
    let curvature = (lo.slope - hi.slope).abs();
    fit.slope_stderr = fit.slope_stderr.hypot(curvature);
    Ok(fit)
}

pub fn median(values: &[f64]) -> f64 {
    quantile(values, 0.5)
}

/// Linear-interpolated sample quantile; NaN for empty input.
pub fn quantile(values: &[f64], q: f64) -> f64 {
    if values.is_empty() {
        return f64::NAN;
    }
    let mut v: Vec<f64> = values.to_vec();
    v.sort_by(f64::total_cmp);
    let pos = q.clamp(0.0, 1.0) * (v.len() - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    let w = pos - lo as f64;
    if w == 0.0 {
        // Also keeps infinite order statistics from turning into NaN.
        return v[lo];
    }
    v[lo] * (1.0 - w) + v[hi] * w
}

/// Crate version, embedded in reports.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
