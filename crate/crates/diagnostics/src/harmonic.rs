use hypdrift_geometry::{dist, distance_to_segment, ModelPoint, Shadow};
use hypdrift_groups::GroupAction;
use hypdrift_stats::{Estimate, Moments};
use hypdrift_walk::{sample_path, WalkMeasure};
use rayon::prelude::*;

use crate::error::{DiagnosticsError, Result};

/// Slack in the gate rule, so tree distances compare exactly.
pub const GATE_TOL: f64 = 1e-9;

/// Endpoints `ω_N` of independent walks, standing in for samples of the
/// harmonic measure `ν`. The proxy for a walk is the segment `[o, ω_N o]`.
#[derive(Clone, Debug)]
pub struct BoundaryProxies<A: GroupAction> {
    horizon: usize,
    seed: u64,
    elems: Vec<A::Elem>,
    points: Vec<ModelPoint>,
    displacement: Moments,
}

impl<A: GroupAction> BoundaryProxies<A> {
    pub fn sample(measure: &WalkMeasure<A>, horizon: usize, count: usize, seed: u64) -> Self {
        let action = measure.action();
        let elems: Vec<A::Elem> =
            (0..count as u64).into_par_iter().map(|i| sample_path(measure, horizon, seed, i).final_position(measure)).collect();
        let points: Vec<ModelPoint> = elems.iter().map(|g| action.orbit_point(g)).collect();
        let displacement = elems.iter().map(|g| action.displacement(g)).collect();
        BoundaryProxies { horizon, seed, elems, points, displacement }
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

    pub fn points(&self) -> &[ModelPoint] {
        &self.points
    }

    pub fn mean_displacement(&self) -> f64 {
        self.displacement.mean()
    }

    /// `E d(o, ω_N o) ≥ 3·d + 20` for a shadow target at displacement `d`.
    pub fn covers(&self, target_displacement: f64) -> bool {
        self.mean_displacement() >= required_displacement(target_displacement)
    }

    pub fn check_horizon(&self, target_displacement: f64) -> Result<()> {
        if self.covers(target_displacement) {
            Ok(())
        } else {
            Err(DiagnosticsError::HorizonTooShort {
                mean: self.mean_displacement(),
                required: required_displacement(target_displacement),
            })
        }
    }

    /// Number of proxies whose segment from the shadow source passes within
    /// the shadow radius of its target.
    pub fn hits(&self, shadow: &Shadow) -> Result<usize> {
        let r = shadow.radius() + GATE_TOL;
        let mut count = 0;
        for p in &self.points {
            if distance_to_segment(shadow.target(), shadow.source(), p)? <= r {
                count += 1;
            }
        }
        Ok(count)
    }

    /// Fraction of proxies in the shadow with its binomial standard error.
    pub fn shadow_mass(&self, shadow: &Shadow) -> Result<Estimate> {
        let m = self.len() as f64;
        let p = self.hits(shadow)? as f64 / m;
        Ok(Estimate::new(p, (p * (1.0 - p) / m).sqrt(), self.len() as u64, self.seed, "harmonic-proxy-fraction"))
    }
}

fn required_displacement(target: f64) -> f64 {
    3.0 * target + 20.0
}

/// `ν̂(Sh)` from `batch` walks of length `horizon`. The horizon must satisfy
/// `E d(o, ω_N o) ≥ 3·d(o, target) + 20`.
pub fn harmonic_shadow_mass<A: GroupAction>(
    measure: &WalkMeasure<A>,
    shadow: &Shadow,
    horizon: usize,
    batch: usize,
    seed: u64,
) -> Result<Estimate> {
    let action = measure.action();
    let proxies = BoundaryProxies::sample(measure, horizon, batch, seed);
    proxies.check_horizon(dist(&action.basepoint(), shadow.target())?)?;
    proxies.shadow_mass(shadow)
}
