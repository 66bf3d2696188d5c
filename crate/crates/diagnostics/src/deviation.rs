use hypdrift_geometry::distance_to_segment;
use hypdrift_gibbs::{fake_displacement, Potential};
use hypdrift_groups::{GroupAction, OrbitBall};
use hypdrift_stats::{ols, Estimate, LineFit};
use hypdrift_walk::GreenOracle;
use serde::{Deserialize, Serialize};

use crate::error::{DiagnosticsError, Result};
use crate::harmonic::GATE_TOL;

/// Monte-Carlo Green errors above this share of the deviation scale are flagged.
pub const STDERR_FLAG_SHARE: f64 = 0.2;

/// One element with its Green distance `d_G(e, g)`.
#[derive(Clone, Debug)]
pub struct DeviationInput<E> {
    pub label: String,
    pub elem: E,
    pub green_distance: Estimate,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AnconaParams {
    /// Triples count when `g₂o` lies within this distance of `[o, g₃o]`.
    pub distance: f64,
    /// Allowed defect `A`; `None` uses twice the largest `|deviation|`.
    pub constant: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DeviationRow {
    pub label: String,
    pub displacement: f64,
    pub fake_distance: f64,
    pub green_distance: f64,
    pub green_stderr: f64,
    /// `d_G − v̂_F·d + d_F`.
    pub deviation: f64,
    pub flagged: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AnconaSummary {
    pub distance: f64,
    pub constant: f64,
    pub aligned: usize,
    pub violations: usize,
    /// Largest `d_G(e,g₂) + d_G(g₂,g₃) − d_G(e,g₃)` over aligned pairs.
    pub max_defect: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DeviationReport {
    pub potential: String,
    pub v_f: f64,
    pub rows: Vec<DeviationRow>,
    pub max_abs_deviation: f64,
    /// Least-squares slope of `|deviation|` against `d(o, go)`.
    pub slope: Option<LineFit>,
    /// Rows in the outer half of the displacement range with `|deviation|`
    /// above `2·(inner maximum) + 1`.
    pub witnesses: Vec<String>,
    pub flagged: usize,
    pub ancona: Option<AnconaSummary>,
}

/// `d_G(e, g)` for every entry of an orbit ball, labelled by word.
pub fn ball_inputs<A: GroupAction>(
    action: &A,
    ball: &OrbitBall<A>,
    green: &dyn GreenOracle<A>,
) -> Result<Vec<DeviationInput<A::Elem>>> {
    ball.entries()
        .iter()
        .enumerate()
        .map(|(i, e)| {
            Ok(DeviationInput {
                label: ball.word(action, i),
                elem: e.elem.clone(),
                green_distance: Estimate::exact(green.green_metric(action, &e.elem)?, "green-oracle"),
            })
        })
        .collect()
}

/// Deviations `d_G(e,g) − v̂_F·d(o,go) + d_F(o,go)` with growth summary.
pub fn deviation_report<A: GroupAction>(
    action: &A,
    f: &Potential,
    inputs: &[DeviationInput<A::Elem>],
    v_f: f64,
) -> Result<DeviationReport> {
    if inputs.is_empty() {
        return Err(DiagnosticsError::Invalid("deviation report needs at least one element".into()));
    }
    let mut rows = Vec::with_capacity(inputs.len());
    for input in inputs {
        let d = action.displacement(&input.elem);
        let d_f = fake_displacement(f, action, &input.elem)?;
        let dg = input.green_distance.value;
        let deviation = dg - v_f * d + d_f;
        rows.push(DeviationRow {
            label: input.label.clone(),
            displacement: d,
            fake_distance: d_f,
            green_distance: dg,
            green_stderr: input.green_distance.stderr,
            deviation,
            flagged: input.green_distance.stderr > STDERR_FLAG_SHARE * deviation.abs().max(1.0),
        });
    }
    let max_abs_deviation = rows.iter().map(|r| r.deviation.abs()).fold(0.0, f64::max);
    let xs: Vec<f64> = rows.iter().map(|r| r.displacement).collect();
    let ys: Vec<f64> = rows.iter().map(|r| r.deviation.abs()).collect();
    let slope = ols(&xs, &ys).ok();
    let (lo, hi) = xs.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &x| (lo.min(x), hi.max(x)));
    let mid = 0.5 * (lo + hi);
    let inner_max = rows.iter().filter(|r| r.displacement <= mid).map(|r| r.deviation.abs()).fold(0.0, f64::max);
    let witnesses = rows
        .iter()
        .filter(|r| r.displacement > mid && r.deviation.abs() > 2.0 * inner_max + 1.0)
        .map(|r| r.label.clone())
        .collect();
    let flagged = rows.iter().filter(|r| r.flagged).count();
    Ok(DeviationReport {
        potential: f.name().to_string(),
        v_f,
        rows,
        max_abs_deviation,
        slope,
        witnesses,
        flagged,
        ancona: None,
    })
}

/// Counts pairs `(g₂, g₃)` with `g₂o` within `D` of `[o, g₃o]` whose defect
/// `d_G(e,g₂) + d_G(g₂,g₃) − d_G(e,g₃)` exceeds `A`.
pub fn ancona_check<A: GroupAction>(
    action: &A,
    green: &dyn GreenOracle<A>,
    elems: &[A::Elem],
    distance: f64,
    constant: f64,
) -> Result<AnconaSummary> {
    let o = action.basepoint();
    let points: Vec<_> = elems.iter().map(|g| action.orbit_point(g)).collect();
    let to_e: Vec<f64> = elems.iter().map(|g| green.green_metric(action, g)).collect::<Result<_, _>>()?;
    let mut aligned = 0;
    let mut violations = 0;
    let mut max_defect = f64::NEG_INFINITY;
    for (j, p3) in points.iter().enumerate() {
        for (i, p2) in points.iter().enumerate() {
            if i == j || distance_to_segment(p2, &o, p3)? > distance + GATE_TOL {
                continue;
            }
            aligned += 1;
            let defect = to_e[i] + green.green_distance(action, &elems[i], &elems[j])? - to_e[j];
            max_defect = max_defect.max(defect);
            if defect > constant + GATE_TOL {
                violations += 1;
            }
        }
    }
    Ok(AnconaSummary { distance, constant, aligned, violations, max_defect: if aligned > 0 { max_defect } else { 0.0 } })
}

/// Deviation report over a whole orbit ball with Green values from `green`,
/// plus the Ancona count on the same elements when requested.
pub fn metric_deviation_report<A: GroupAction>(
    action: &A,
    f: &Potential,
    ball: &OrbitBall<A>,
    green: &dyn GreenOracle<A>,
    v_f: f64,
    ancona: Option<&AnconaParams>,
) -> Result<DeviationReport> {
    let inputs = ball_inputs(action, ball, green)?;
    let mut report = deviation_report(action, f, &inputs, v_f)?;
    if let Some(p) = ancona {
        let constant = p.constant.unwrap_or(2.0 * report.max_abs_deviation);
        let elems: Vec<A::Elem> = inputs.into_iter().map(|i| i.elem).collect();
        report.ancona = Some(ancona_check(action, green, &elems, p.distance, constant)?);
    }
    Ok(report)
}
