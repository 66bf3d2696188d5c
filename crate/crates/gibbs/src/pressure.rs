use hypdrift_groups::{GroupAction, OrbitBall, MIN_FIT_COUNT};
use hypdrift_stats::{growth_rate, Estimate};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{GibbsError, Result};
use crate::potential::{fake_displacement, Potential};

const TIE: f64 = 1e-9;

/// `d_F(o, g·o)` for every ball entry, in ball order.
pub fn fake_displacements<A: GroupAction>(action: &A, ball: &OrbitBall<A>, f: &Potential) -> Result<Vec<f64>> {
    if f.is_constant() {
        return Ok(ball.entries().iter().map(|e| f.shift() * e.displacement).collect());
    }
    ball.entries().par_iter().map(|e| fake_displacement(f, action, &e.elem)).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ShellSum {
    pub n: usize,
    pub count: usize,
    /// `log Σ_{S_n} e^{d_F(o, g·o)}`.
    pub log_sum: f64,
    /// `Σ_{S_n} e^{d_F(o, g·o) − v̂_F·d(o, g·o)}` at the fitted slope.
    pub normalized: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PressureFit {
    pub estimate: Estimate,
    pub shells: Vec<ShellSum>,
}

/// Least-squares slope of `log Σ_{S_n} e^{d_F}` over the integer shells
/// `S_n = {n − 1 ≤ d(o, g·o) ≤ n}` in the window. Shells with fewer than
/// [`MIN_FIT_COUNT`] elements are left out of the fit, as in the critical
/// exponent.
pub fn pressure<A: GroupAction>(action: &A, ball: &OrbitBall<A>, f: &Potential, window: (f64, f64)) -> Result<PressureFit> {
    let (lo, hi) = window;
    if !ball.is_complete() || hi > ball.radius() + TIE || lo < 0.0 || lo >= hi {
        return Err(GibbsError::IncompleteBall);
    }
    let fake = fake_displacements(action, ball, f)?;
    let first = (lo - TIE).ceil().max(1.0) as usize;
    let last = (hi + TIE).floor() as usize;
    let mut raw = Vec::new();
    for n in first..=last {
        let (a, b) = ((n - 1) as f64 - TIE, n as f64 + TIE);
        let members: Vec<(f64, f64)> = ball
            .entries()
            .iter()
            .zip(&fake)
            .filter(|(e, _)| e.displacement >= a && e.displacement <= b)
            .map(|(e, &df)| (e.displacement, df))
            .collect();
        if members.is_empty() {
            return Err(GibbsError::EmptyShell(n));
        }
        raw.push((n, members));
    }
    let fitted: Vec<(f64, f64)> = raw
        .iter()
        .filter(|(_, m)| m.len() >= MIN_FIT_COUNT)
        .map(|(n, m)| (*n as f64, m.iter().map(|&(_, df)| df.exp()).sum::<f64>().ln()))
        .collect();
    let (xs, ys): (Vec<f64>, Vec<f64>) = fitted.into_iter().unzip();
    let fit = growth_rate(&xs, &ys)?;
    let v = fit.slope;
    let shells = raw
        .iter()
        .map(|(n, m)| ShellSum {
            n: *n,
            count: m.len(),
            log_sum: m.iter().map(|&(_, df)| df.exp()).sum::<f64>().ln(),
            normalized: m.iter().map(|&(d, df)| (df - v * d).exp()).sum(),
        })
        .collect();
    Ok(PressureFit { estimate: Estimate::new(v, fit.slope_stderr, ball.len() as u64, 0, "pressure-shell-ols"), shells })
}
