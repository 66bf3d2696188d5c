//! `φ_n = κ(Sh_r(o, ω_n o))/ν(Sh_r(o, ω_n o))` along sampled paths.
//!
//! Both masses are taken at shadows of arbitrary depth by transporting them
//! back to the basepoint. For the Gibbs side, the atomic measure
//! `Σ_h m_h δ_{ho}` satisfies
//! `κ(g·A) = ∫_A exp(e·β_x(o, g⁻¹o)) dκ(x)` with `β_x(o, y) = d(o, x) − d(y, x)`
//! and `e = v̂_F − c` for `F = c`, so
//! `κ̂(Sh_r(o, go)) = Σ_{h ∈ Sh_r(g⁻¹o, o)} m_h·exp(e·β_{ho}(o, g⁻¹o))`.
//! The harmonic side is either the direct proxy fraction or the same
//! transport with the Martin kernel `exp(−(d_G(e, gξ) − d_G(e, ξ)))`.

use hypdrift_geometry::{dist, distance_to_segment, ModelPoint};
use hypdrift_gibbs::{GibbsAtoms, Potential};
use hypdrift_groups::GroupAction;
use hypdrift_stats::{median, Estimate, Moments};
use hypdrift_walk::{derive_seed, sample_path, GreenOracle, WalkMeasure};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{DiagnosticsError, Result};
use crate::harmonic::{BoundaryProxies, GATE_TOL};

/// Levels `c` at which `P(φ_n ≥ c)` is reported.
pub const PHI_LEVELS: [f64; 3] = [0.5, 0.1, 0.01];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RatioParams {
    /// Shadow radius `r`.
    pub radius: f64,
    pub grid: Vec<usize>,
    /// Target paths per grid point.
    pub batch: usize,
    pub proxies: usize,
    pub proxy_horizon: usize,
    /// Shadows with fewer proxy hits are low-confidence.
    pub min_hits: usize,
    pub seed: u64,
}

/// Source of the harmonic masses.
pub enum HarmonicSide<'a, A: GroupAction> {
    /// Fraction of proxies in `Sh_r(o, go)`.
    Direct,
    /// Martin-kernel transport with Green values from the oracle.
    Transported(&'a (dyn GreenOracle<A> + Sync)),
}

impl<A: GroupAction> Clone for HarmonicSide<'_, A> {
    fn clone(&self) -> Self {
        *self
    }
}

impl<A: GroupAction> Copy for HarmonicSide<'_, A> {}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LevelProbability {
    pub c: f64,
    pub probability: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RatioRow {
    pub n: usize,
    pub targets: usize,
    pub median_phi: f64,
    /// Mean over targets with finite `φ_n`.
    pub mean_phi: Estimate,
    pub above: Vec<LevelProbability>,
    pub median_psi: f64,
    pub mean_psi: Estimate,
    pub psi_over_n: Estimate,
    /// Running mean of `mean_phi` over the grid up to this row.
    pub cesaro_phi: f64,
    /// Running mean of `psi_over_n` over the grid up to this row.
    pub cesaro_psi_over_n: Estimate,
    /// Targets whose harmonic shadow had fewer than `min_hits` proxy hits.
    pub low_hits: usize,
    /// Targets beyond the proxy horizon rule (direct estimator only).
    pub horizon_violations: usize,
    /// Targets with `ν̂ = 0` (so `φ_n = ∞`).
    pub unbounded: usize,
    /// More than 10% of targets are low-hit or outside the horizon rule.
    pub low_confidence: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RatioTable {
    pub harmonic: String,
    /// Transport exponent `v̂_F − c`.
    pub exponent: f64,
    pub radius: f64,
    pub proxies: usize,
    pub proxy_horizon: usize,
    pub mean_proxy_displacement: f64,
    pub rows: Vec<RatioRow>,
}

struct AtomPoint {
    point: ModelPoint,
    displacement: f64,
    mass: f64,
}

struct TargetRatio {
    kappa: f64,
    nu: f64,
    hits: usize,
    covered: bool,
}

/// `φ_n` and `ψ_n = log φ_n` summaries over the grid.
pub fn shadow_ratio_stats<A: GroupAction>(
    measure: &WalkMeasure<A>,
    f: &Potential,
    atoms: &GibbsAtoms<A::Elem>,
    harmonic: HarmonicSide<'_, A>,
    params: &RatioParams,
) -> Result<RatioTable> {
    if !f.is_constant() {
        return Err(DiagnosticsError::NonconstantPotential(f.name().to_string()));
    }
    if params.grid.is_empty() || params.batch == 0 || params.proxies == 0 {
        return Err(DiagnosticsError::Invalid("shadow ratios need a nonempty grid, batch and proxy pool".into()));
    }
    let action = measure.action();
    let o = action.basepoint();
    let exponent = atoms.v_f - f.shift();
    let atom_points: Vec<AtomPoint> = atoms
        .atoms
        .iter()
        .map(|a| AtomPoint { point: action.orbit_point(&a.elem), displacement: a.displacement, mass: a.mass })
        .collect();
    let proxies = BoundaryProxies::sample(measure, params.proxy_horizon, params.proxies, derive_seed(params.seed, "proxies"));
    let proxy_green: Vec<f64> = match harmonic {
        HarmonicSide::Direct => Vec::new(),
        HarmonicSide::Transported(green) => {
            proxies.elems().iter().map(|x| green.green_metric(action, x)).collect::<Result<_, _>>()?
        }
    };
    let r = params.radius + GATE_TOL;
    let m = proxies.len() as f64;

    let mut rows: Vec<RatioRow> = Vec::with_capacity(params.grid.len());
    for &n in &params.grid {
        let seed = derive_seed(params.seed, &format!("targets-{n}"));
        let ratios: Vec<TargetRatio> = (0..params.batch as u64)
            .into_par_iter()
            .map(|i| {
                let g = sample_path(measure, n, seed, i).final_position(measure);
                let back = action.orbit_point(&action.inverse(&g));
                let mut kappa = 0.0;
                for a in &atom_points {
                    if distance_to_segment(&o, &back, &a.point)? <= r {
                        kappa += a.mass * (exponent * (a.displacement - dist(&back, &a.point)?)).exp();
                    }
                }
                let (nu, hits, covered) = match harmonic {
                    HarmonicSide::Direct => {
                        let forward = action.orbit_point(&g);
                        let mut hits = 0;
                        for p in proxies.points() {
                            if distance_to_segment(&forward, &o, p)? <= r {
                                hits += 1;
                            }
                        }
                        (hits as f64 / m, hits, proxies.covers(action.displacement(&g)))
                    }
                    HarmonicSide::Transported(green) => {
                        let mut sum = 0.0;
                        let mut hits = 0;
                        for ((x, p), dg) in proxies.elems().iter().zip(proxies.points()).zip(&proxy_green) {
                            if distance_to_segment(&o, &back, p)? <= r {
                                hits += 1;
                                sum += (dg - green.green_metric(action, &action.mul(&g, x))?).exp();
                            }
                        }
                        (sum / m, hits, proxies.covers(0.0))
                    }
                };
                Ok(TargetRatio { kappa, nu, hits, covered })
            })
            .collect::<Result<_>>()?;
        rows.push(summarize(n, &ratios, params.min_hits, &rows));
    }
    Ok(RatioTable {
        harmonic: match harmonic {
            HarmonicSide::Direct => "direct".into(),
            HarmonicSide::Transported(_) => "transported".into(),
        },
        exponent,
        radius: params.radius,
        proxies: proxies.len(),
        proxy_horizon: params.proxy_horizon,
        mean_proxy_displacement: proxies.mean_displacement(),
        rows,
    })
}

fn summarize(n: usize, ratios: &[TargetRatio], min_hits: usize, previous: &[RatioRow]) -> RatioRow {
    let phi: Vec<f64> = ratios.iter().map(|t| if t.nu > 0.0 { t.kappa / t.nu } else { f64::INFINITY }).collect();
    let psi: Vec<f64> = phi.iter().map(|p| p.ln()).collect();
    let finite = |v: &[f64]| v.iter().copied().filter(|x| x.is_finite()).collect::<Moments>();
    let mean_phi = finite(&phi).estimate(0, "phi-mean");
    let mean_psi = finite(&psi).estimate(0, "psi-mean");
    let psi_over_n = mean_psi.scaled(1.0 / n as f64);
    let targets = ratios.len();
    let above = PHI_LEVELS
        .iter()
        .map(|&c| LevelProbability { c, probability: phi.iter().filter(|&&p| p >= c).count() as f64 / targets as f64 })
        .collect();
    let low_hits = ratios.iter().filter(|t| t.hits < min_hits).count();
    let horizon_violations = ratios.iter().filter(|t| !t.covered).count();
    let k = previous.len() as f64 + 1.0;
    let cesaro_phi = (previous.iter().map(|r| r.mean_phi.value).sum::<f64>() + mean_phi.value) / k;
    let cesaro_value = (previous.iter().map(|r| r.psi_over_n.value).sum::<f64>() + psi_over_n.value) / k;
    let cesaro_se = (previous.iter().map(|r| r.psi_over_n.stderr.powi(2)).sum::<f64>() + psi_over_n.stderr.powi(2)).sqrt() / k;
    RatioRow {
        n,
        targets,
        median_phi: median(&phi),
        mean_phi,
        above,
        median_psi: median(&psi),
        mean_psi,
        psi_over_n,
        cesaro_phi,
        cesaro_psi_over_n: Estimate::new(cesaro_value, cesaro_se, targets as u64, 0, "psi-over-n-cesaro"),
        low_hits,
        horizon_violations,
        unbounded: phi.iter().filter(|p| p.is_infinite()).count(),
        low_confidence: 10 * (low_hits.max(horizon_violations)) > targets,
    }
}
