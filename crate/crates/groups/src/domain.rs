use std::collections::HashMap;

use hypdrift_geometry::plane::dist;
use hypdrift_geometry::{Matrix, ModelPoint, PlanePoint};

use crate::action::GroupAction;
use crate::ball::orbit_ball;
use crate::error::Result;

/// A plane action with a point-reduction map into a fundamental domain.
pub trait FundamentalDomain {
    /// The orbit representative `w` of `z` in the domain, with `M` such that `M·z = w`.
    fn reduce_with(&self, z: &PlanePoint) -> (PlanePoint, Matrix);

    fn reduce(&self, z: &PlanePoint) -> PlanePoint {
        self.reduce_with(z).0
    }
}

/// Distance from a point to the orbit `Γo`, via reduction into a fundamental
/// domain followed by a minimum over orbit points near the domain.
#[derive(Clone, Debug)]
pub struct OrbitLocator<A> {
    action: A,
    candidates: Vec<PlanePoint>,
    radius: f64,
}

impl<A> OrbitLocator<A>
where
    A: GroupAction + FundamentalDomain + Clone,
{
    /// Candidates are the distinct orbit points within `radius` of `o`.
    /// Distances above roughly `radius − diam(domain ∩ B(o, radius))` are
    /// lower bounds only, which is harmless for potentials decaying in that range.
    pub fn new(action: &A, radius: f64) -> Result<Self> {
        let ball = orbit_ball(action, radius, 5_000_000)?;
        let mut seen: HashMap<(i64, i64), PlanePoint> = HashMap::new();
        for e in ball.entries() {
            if let ModelPoint::Plane(p) = action.orbit_point(&e.elem) {
                let k = ((p.re() * 1e7).round() as i64, (p.im() * 1e7).round() as i64);
                seen.entry(k).or_insert(p);
            }
        }
        let mut candidates: Vec<_> = seen.into_iter().collect();
        candidates.sort_by_key(|(k, _)| *k);
        Ok(OrbitLocator { action: action.clone(), candidates: candidates.into_iter().map(|(_, p)| p).collect(), radius })
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn candidates(&self) -> &[PlanePoint] {
        &self.candidates
    }

    pub fn distance(&self, z: &PlanePoint) -> f64 {
        self.nearest(&self.action.reduce(z))
    }

    /// Distances for a sequence of nearby points, such as quadrature nodes
    /// along a geodesic. Each reduction starts from the previous one.
    pub fn distances_along(&self, points: &[PlanePoint]) -> Vec<f64> {
        let mut m = Matrix::identity();
        points
            .iter()
            .map(|z| {
                let (w, step) = self.action.reduce_with(&m.apply(z));
                m = step * m;
                self.nearest(&w)
            })
            .collect()
    }

    fn nearest(&self, w: &PlanePoint) -> f64 {
        self.candidates.iter().map(|p| dist(w, p)).fold(f64::INFINITY, f64::min)
    }
}
