use std::collections::HashMap;
use std::io::Write;

use hypdrift_geometry::BoundaryPoint;
use hypdrift_groups::{GroupAction, GroupError};
use hypdrift_stats::Estimate;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Result, WalkError};
use crate::measure::WalkMeasure;
use crate::path::sample_path;

/// Closed-form Green function of the uniform nearest-neighbor walk on a free
/// action of rank `k`: `G(e, g) = G(e, e)·F^‖g‖` with `F = 1/(2k − 1)` the
/// root in `(0, 1)` of `(2k − 1)F² − 2kF + 1 = 0` and
/// `G(e, e) = (2k − 1)/(2k − 2)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ExactGreen {
    pub rank: usize,
    pub first_passage: f64,
    pub diagonal: f64,
}

impl ExactGreen {
    pub fn new<A: GroupAction>(measure: &WalkMeasure<A>) -> Result<Self> {
        let k = measure.nearest_neighbor_rank().ok_or_else(|| WalkError::MethodMismatch {
            method: "exact-recursive",
            reason: "needs the uniform nearest-neighbor measure on a free action".into(),
        })?;
        let q = (2 * k - 1) as f64;
        // Roots of qF² − 2kF + 1 are 1 and 1/q.
        let disc = ((2 * k) as f64).powi(2) - 4.0 * q;
        let first_passage = ((2 * k) as f64 - disc.sqrt()) / (2.0 * q);
        Ok(ExactGreen { rank: k, first_passage, diagonal: q / (q - 1.0) })
    }

    pub fn at_norm(&self, norm: usize) -> f64 {
        self.diagonal * self.first_passage.powi(norm as i32)
    }
}

/// Green values `G(e, ·)` from some method.
pub trait GreenOracle<A: GroupAction> {
    fn green(&self, action: &A, g: &A::Elem) -> Result<f64>;

    /// `d_G(e, g) = −log(G(e, g)/G(e, e))`.
    fn green_metric(&self, action: &A, g: &A::Elem) -> Result<f64> {
        let gee = self.green(action, &action.identity())?;
        Ok(-(self.green(action, g)? / gee).ln())
    }

    /// `d_G(x, y) = d_G(e, x⁻¹y)` by left invariance.
    fn green_distance(&self, action: &A, x: &A::Elem, y: &A::Elem) -> Result<f64> {
        self.green_metric(action, &action.mul(&action.inverse(x), y))
    }
}

impl<A: GroupAction> GreenOracle<A> for ExactGreen {
    fn green(&self, action: &A, g: &A::Elem) -> Result<f64> {
        let norm = action.exact_norm(g).ok_or_else(|| WalkError::MethodMismatch {
            method: "exact-recursive",
            reason: "action has no normal-form word norm".into(),
        })?;
        Ok(self.at_norm(norm))
    }

    fn green_metric(&self, action: &A, g: &A::Elem) -> Result<f64> {
        let norm = action.exact_norm(g).ok_or(WalkError::OutsideBall)?;
        Ok(norm as f64 * -self.first_passage.ln())
    }
}

/// Controls for the killed-ball truncated convolution.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TruncationParams {
    /// Radius of the ball in support steps; mass leaving it is discarded.
    pub ball_steps: usize,
    /// Minimum horizon; `None` means `40 + 10·‖g‖` for the deepest target.
    pub min_horizon: Option<usize>,
    /// Iteration continues until the horizon tail bound is below this
    /// fraction of every target value (or `max_horizon` is reached).
    pub rel_tol: f64,
    pub max_horizon: usize,
    pub cap: usize,
}

impl Default for TruncationParams {
    fn default() -> Self {
        TruncationParams { ball_steps: 13, min_horizon: None, rel_tol: 1e-8, max_horizon: 600, cap: 8_000_000 }
    }
}

/// `Ĝ_N(e, x) = Σ_{n≤N} P(ω_n = x, ω_1…ω_n stay in the ball)` for every `x`
/// in a ball of `ball_steps` support steps.
///
/// Values are nondecreasing in `N` and bounded by the true `G(e, x)`.
/// Two error terms are stored: the horizon tail `m_N · Ĝ(e, e)` (mass still
/// in the ball at time `N`, times the largest Green value) and a heuristic
/// ball-escape term (escaped mass times the largest `Ĝ` at the step distance
/// an escaped walker must recross).
#[derive(Clone, Debug)]
pub struct GreenTable<A: GroupAction> {
    elems: Vec<A::Elem>,
    depth: Vec<u16>,
    index: HashMap<A::Key, u32>,
    values: Vec<f64>,
    horizon: usize,
    remaining_mass: f64,
    escaped_mass: f64,
    max_by_depth: Vec<f64>,
    ball_steps: usize,
}

impl<A: GroupAction> GreenTable<A> {
    /// Builds the ball and iterates until every element within `target_steps`
    /// support steps meets the tail tolerance.
    pub fn build(measure: &WalkMeasure<A>, target_steps: usize, params: &TruncationParams) -> Result<Self> {
        let action = measure.action();
        let atoms = measure.atoms();
        let m = atoms.len();
        let id = action.identity();
        let mut index: HashMap<A::Key, u32> = HashMap::from([(action.key(&id), 0)]);
        let mut elems = vec![id];
        let mut depth = vec![0u16];
        let mut nbr: Vec<u32> = Vec::new();
        let mut head = 0;
        while head < elems.len() {
            let d = depth[head] as usize;
            for a in atoms {
                let mut slot = u32::MAX;
                if d < params.ball_steps {
                    let y = action.mul(&elems[head], &a.elem);
                    let key = action.key(&y);
                    slot = match index.get(&key) {
                        Some(&i) => i,
                        None => {
                            if elems.len() >= params.cap {
                                return Err(WalkError::CapExceeded { cap: params.cap });
                            }
                            let i = elems.len() as u32;
                            index.insert(key, i);
                            elems.push(y);
                            depth.push((d + 1) as u16);
                            i
                        }
                    };
                } else if let Some(&i) = index.get(&action.key(&action.mul(&elems[head], &a.elem))) {
                    slot = i;
                }
                nbr.push(slot);
            }
            head += 1;
        }

        let probs: Vec<f64> = atoms.iter().map(|a| a.prob).collect();
        let n_min = params.min_horizon.unwrap_or(40 + 10 * target_steps);
        let mut p = vec![0.0; elems.len()];
        p[0] = 1.0;
        let mut values = p.clone();
        let mut next = vec![0.0; elems.len()];
        let mut escaped = 0.0;
        let mut n = 0;
        loop {
            next.iter_mut().for_each(|v| *v = 0.0);
            for (i, &pi) in p.iter().enumerate() {
                if pi == 0.0 {
                    continue;
                }
                for j in 0..m {
                    let t = nbr[i * m + j];
                    if t == u32::MAX {
                        escaped += pi * probs[j];
                    } else {
                        next[t as usize] += pi * probs[j];
                    }
                }
            }
            std::mem::swap(&mut p, &mut next);
            n += 1;
            for (v, &pi) in values.iter_mut().zip(&p) {
                *v += pi;
            }
            if n >= n_min {
                let remaining: f64 = p.iter().sum();
                let tail = remaining * values[0];
                let floor = values.iter().zip(&depth).filter(|(_, &d)| d as usize <= target_steps).map(|(v, _)| *v).fold(f64::INFINITY, f64::min);
                if tail <= params.rel_tol * floor || n >= params.max_horizon {
                    break;
                }
            }
        }
        let remaining_mass = p.iter().sum();
        let mut max_by_depth = vec![0.0f64; params.ball_steps + 1];
        for (v, &d) in values.iter().zip(&depth) {
            let slot = &mut max_by_depth[d as usize];
            *slot = slot.max(*v);
        }
        Ok(GreenTable { elems, depth, index, values, horizon: n, remaining_mass, escaped_mass: escaped, max_by_depth, ball_steps: params.ball_steps })
    }

    pub fn horizon(&self) -> usize {
        self.horizon
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn elems(&self) -> &[A::Elem] {
        &self.elems
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Support-step distance from `e`.
    pub fn depth(&self, i: usize) -> usize {
        self.depth[i] as usize
    }

    pub fn lookup(&self, action: &A, g: &A::Elem) -> Option<usize> {
        self.index.get(&action.key(g)).map(|&i| i as usize)
    }

    /// Bound on `Σ_{n>N}` of the killed-walk terms.
    pub fn horizon_bound(&self) -> f64 {
        self.remaining_mass * self.values[0]
    }

    /// Heuristic bound on paths that leave the ball and return to entry `i`.
    pub fn escape_bound(&self, i: usize) -> f64 {
        let recross = (self.ball_steps + 1).saturating_sub(self.depth(i));
        let worst = self.max_by_depth[recross.min(self.ball_steps)..].iter().copied().fold(0.0, f64::max);
        self.escaped_mass * worst
    }

    pub fn escaped_mass(&self) -> f64 {
        self.escaped_mass
    }
}

impl<A: GroupAction> GreenOracle<A> for GreenTable<A> {
    fn green(&self, action: &A, g: &A::Elem) -> Result<f64> {
        self.lookup(action, g).map(|i| self.values[i]).ok_or(WalkError::OutsideBall)
    }
}

/// Monte-Carlo estimates of `G(e, g) = E[#{k ≤ N : ω_k = g}]` over `paths`
/// walks of length `horizon`. Visit counts are merged as exact integer sums,
/// so the result does not depend on scheduling.
pub fn monte_carlo_green<A: GroupAction>(
    measure: &WalkMeasure<A>,
    targets: &[A::Elem],
    paths: usize,
    horizon: usize,
    seed: u64,
) -> Vec<Estimate> {
    let action = measure.action();
    let mut index: HashMap<A::Key, usize> = HashMap::new();
    for (i, g) in targets.iter().enumerate() {
        index.entry(action.key(g)).or_insert(i);
    }
    let reach = targets.iter().map(|g| action.displacement(g)).fold(0.0, f64::max) + 1e-9;
    let t = targets.len();
    let (sum, sum_sq) = (0..paths as u64)
        .into_par_iter()
        .fold(
            || (vec![0u64; t], vec![0u64; t], Vec::<(usize, u64)>::new()),
            |(mut s, mut q, mut touched), i| {
                touched.clear();
                sample_path(measure, horizon, seed, i).walk(measure, |_, w| {
                    if action.displacement(w) <= reach {
                        if let Some(&j) = index.get(&action.key(w)) {
                            match touched.iter_mut().find(|(k, _)| *k == j) {
                                Some(entry) => entry.1 += 1,
                                None => touched.push((j, 1)),
                            }
                        }
                    }
                });
                for &(j, c) in &touched {
                    s[j] += c;
                    q[j] += c * c;
                }
                (s, q, touched)
            },
        )
        .map(|(s, q, _)| (s, q))
        .reduce(
            || (vec![0u64; t], vec![0u64; t]),
            |(mut s1, mut q1), (s2, q2)| {
                s1.iter_mut().zip(&s2).for_each(|(a, b)| *a += b);
                q1.iter_mut().zip(&q2).for_each(|(a, b)| *a += b);
                (s1, q1)
            },
        );
    let m = paths as f64;
    targets
        .iter()
        .map(|g| {
            let j = index[&action.key(g)];
            let mean = sum[j] as f64 / m;
            let var = ((sum_sq[j] as f64 - sum[j] as f64 * mean) / (m - 1.0)).max(0.0);
            Estimate::new(mean, (var / m).sqrt(), paths as u64, seed, "monte-carlo")
        })
        .collect()
}

/// Method selection for single Green values.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "method", rename_all = "kebab-case")]
pub enum GreenMethod {
    ExactRecursive,
    TruncatedConvolution(TruncationParams),
    MonteCarlo { paths: usize, horizon: usize, seed: u64 },
}

impl GreenMethod {
    pub fn tag(&self) -> &'static str {
        match self {
            GreenMethod::ExactRecursive => "exact-recursive",
            GreenMethod::TruncatedConvolution(_) => "truncated-convolution",
            GreenMethod::MonteCarlo { .. } => "monte-carlo",
        }
    }
}

/// A Green value with its truncation bookkeeping.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GreenValue {
    pub estimate: Estimate,
    pub horizon: usize,
    /// Horizon tail bound (truncated convolution), else zero.
    pub truncation_bound: f64,
    /// Ball-escape estimate (truncated convolution), else zero.
    pub escape_bound: f64,
}

fn support_steps<A: GroupAction>(measure: &WalkMeasure<A>, g: &A::Elem) -> usize {
    let step = measure.step_norm().max(1);
    let norm = measure.action().exact_norm(g).unwrap_or(0);
    norm.div_ceil(step)
}

/// `G(e, g)` by the chosen method.
pub fn green_function<A: GroupAction>(measure: &WalkMeasure<A>, g: &A::Elem, method: &GreenMethod) -> Result<GreenValue> {
    let action = measure.action();
    match method {
        GreenMethod::ExactRecursive => {
            let value = ExactGreen::new(measure)?.green(action, g)?;
            Ok(GreenValue { estimate: Estimate::exact(value, method.tag()), horizon: 0, truncation_bound: 0.0, escape_bound: 0.0 })
        }
        GreenMethod::TruncatedConvolution(params) => {
            let table = GreenTable::build(measure, support_steps(measure, g), params)?;
            let i = table.lookup(action, g).ok_or(WalkError::OutsideBall)?;
            let value = table.values()[i];
            let bound = table.horizon_bound();
            if bound > 0.1 * value {
                return Err(WalkError::HorizonTooSmall { bound, value });
            }
            Ok(GreenValue {
                estimate: Estimate::exact(value, method.tag()),
                horizon: table.horizon(),
                truncation_bound: bound,
                escape_bound: table.escape_bound(i),
            })
        }
        GreenMethod::MonteCarlo { paths, horizon, seed } => {
            let est = monte_carlo_green(measure, std::slice::from_ref(g), *paths, *horizon, *seed).remove(0);
            Ok(GreenValue { estimate: est, horizon: *horizon, truncation_bound: 0.0, escape_bound: 0.0 })
        }
    }
}

/// `d_G(e, g) = −log(G(e, g)/G(e, e))`, both values by the same method.
pub fn green_metric<A: GroupAction>(measure: &WalkMeasure<A>, g: &A::Elem, method: &GreenMethod) -> Result<f64> {
    let action = measure.action();
    match method {
        GreenMethod::ExactRecursive => ExactGreen::new(measure)?.green_metric(action, g),
        GreenMethod::TruncatedConvolution(params) => {
            let table = GreenTable::build(measure, support_steps(measure, g), params)?;
            table.green_metric(action, g)
        }
        GreenMethod::MonteCarlo { paths, horizon, seed } => {
            let est = monte_carlo_green(measure, &[action.identity(), g.clone()], *paths, *horizon, *seed);
            Ok(-(est[1].value / est[0].value).ln())
        }
    }
}

/// The sequence `d_G(g, g_n) − d_G(e, g_n)` along an approach to a boundary
/// point, with its Cauchy increments.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GreenBusemann {
    pub value: f64,
    pub differences: Vec<f64>,
    pub increments: Vec<f64>,
    /// False when the increments are not nonincreasing.
    pub cauchy: bool,
}

pub fn green_busemann<A: GroupAction, O: GreenOracle<A>>(
    measure: &WalkMeasure<A>,
    oracle: &O,
    g: &A::Elem,
    zeta: &BoundaryPoint,
    approach: &[A::Elem],
) -> Result<GreenBusemann> {
    let action = measure.action();
    if zeta.model() != action.model() {
        return Err(GroupError::Geometry(hypdrift_geometry::GeometryError::ModelMismatch).into());
    }
    let disp: Vec<f64> = approach.iter().map(|x| action.displacement(x)).collect();
    if approach.len() < 4 || disp.windows(2).any(|w| w[1] <= w[0]) {
        return Err(WalkError::BadApproach);
    }
    let differences = approach
        .iter()
        .map(|x| Ok(oracle.green_distance(action, g, x)? - oracle.green_metric(action, x)?))
        .collect::<Result<Vec<f64>>>()?;
    let increments: Vec<f64> = differences.windows(2).map(|w| (w[1] - w[0]).abs()).collect();
    let cauchy = increments.windows(2).all(|w| w[1] <= w[0] + 1e-12);
    Ok(GreenBusemann { value: *differences.last().expect("nonempty"), differences, increments, cauchy })
}

/// CSV with columns `element,displacement,green_value,stderr,method`.
pub fn write_green_csv<A: GroupAction, W: Write>(
    action: &A,
    rows: &[(A::Elem, String, Estimate)],
    out: W,
) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["element", "displacement", "green_value", "stderr", "method"])?;
    for (g, label, est) in rows {
        w.write_record([
            label.clone(),
            format!("{:.12}", action.displacement(g)),
            format!("{:.12e}", est.value),
            format!("{:.6e}", est.stderr),
            est.method.clone(),
        ])?;
    }
    w.flush()?;
    Ok(())
}
