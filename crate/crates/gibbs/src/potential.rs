use std::fmt;
use std::sync::Arc;

use hypdrift_geometry::plane::Geodesic;
use hypdrift_geometry::{dist, ModelPoint, PlanePoint};
use hypdrift_groups::{FundamentalDomain, GroupAction, OrbitLocator};
use serde::Serialize;

use crate::error::{GibbsError, Result};

/// Distance from a plane point to a fixed orbit `Γo`.
pub trait OrbitDistance: Send + Sync {
    fn distance(&self, z: &PlanePoint) -> f64;
    fn describe(&self) -> String;

    /// Distances for consecutive nearby points; implementations may reuse work.
    fn distances_along(&self, points: &[PlanePoint]) -> Vec<f64> {
        points.iter().map(|z| self.distance(z)).collect()
    }
}

impl<A> OrbitDistance for OrbitLocator<A>
where
    A: GroupAction + FundamentalDomain + Clone,
{
    fn distance(&self, z: &PlanePoint) -> f64 {
        OrbitLocator::distance(self, z)
    }

    fn describe(&self) -> String {
        format!("{} candidates within {}", self.candidates().len(), self.radius())
    }

    fn distances_along(&self, points: &[PlanePoint]) -> Vec<f64> {
        OrbitLocator::distances_along(self, points)
    }
}

/// Declared Hölder-control constants.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct HcConstants {
    pub c1: f64,
    pub c2: f64,
}

/// Declared subexponential growth: `|F(v) − F(w)| ≤ b·a^{d(πv, πw)}`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Growth {
    pub a: f64,
    pub b: f64,
}

#[derive(Clone)]
enum Bump {
    None,
    Plane { amplitude: f64, orbit: Arc<dyn OrbitDistance> },
}

/// A Γ-invariant potential on the unit tangent bundle: an optional bump
/// `A·exp(−d(z, Γo)²)` plus a constant shift.
///
/// The built-ins do not depend on the direction argument, so `F̌ = F`
/// pointwise; the direction is still threaded through evaluation.
#[derive(Clone)]
pub struct Potential {
    name: String,
    bump: Bump,
    shift: f64,
    constants: HcConstants,
    growth: Growth,
    step: f64,
    reflected: bool,
}

impl fmt::Debug for Potential {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Potential")
            .field("name", &self.name)
            .field("shift", &self.shift)
            .field("constants", &self.constants)
            .field("step", &self.step)
            .finish_non_exhaustive()
    }
}

/// Default quadrature step for the composite midpoint rule.
pub const DEFAULT_STEP: f64 = 0.004;

impl Potential {
    pub fn zero() -> Self {
        Potential {
            name: "zero".into(),
            bump: Bump::None,
            shift: 0.0,
            constants: HcConstants { c1: 1.0, c2: 0.5 },
            growth: Growth { a: 2.0, b: 0.0 },
            step: DEFAULT_STEP,
            reflected: false,
        }
    }

    pub fn constant(c: f64) -> Self {
        Potential { name: format!("constant({c})"), shift: c, constants: HcConstants { c1: c.abs().max(1.0), c2: 0.5 }, ..Self::zero() }
    }

    /// `F(z) = A·exp(−d(z, Γo)²)` with declared `c₁ = 4`, `c₂ = 1/2`.
    pub fn plane_bump(amplitude: f64, orbit: Arc<dyn OrbitDistance>) -> Self {
        Potential {
            name: format!("plane-bump({amplitude})"),
            bump: Bump::Plane { amplitude, orbit },
            shift: 0.0,
            constants: HcConstants { c1: 4.0, c2: 0.5 },
            growth: Growth { a: 2.0, b: 2.0 * amplitude.abs() },
            step: DEFAULT_STEP,
            reflected: false,
        }
    }

    pub fn with_constants(mut self, c1: f64, c2: f64) -> Result<Self> {
        if !(c1 > 0.0 && c2 > 0.0 && c2 < 1.0) {
            return Err(GibbsError::BadConstants { c1, c2 });
        }
        self.constants = HcConstants { c1, c2 };
        Ok(self)
    }

    pub fn with_step(mut self, h: f64) -> Result<Self> {
        if !(h > 0.0 && h.is_finite()) {
            return Err(GibbsError::BadStep(h));
        }
        self.step = h;
        Ok(self)
    }

    /// `F + c`.
    pub fn shifted(&self, c: f64) -> Self {
        let mut p = self.clone();
        p.shift += c;
        p.name = format!("{}{:+}", self.name, c);
        p.constants.c1 = p.constants.c1.max(p.shift.abs());
        p
    }

    /// `F̌ = F∘ι`.
    pub fn reflected(&self) -> Self {
        let mut p = self.clone();
        p.reflected = !p.reflected;
        p.name = if p.reflected { format!("reflected({})", self.name) } else { self.name.strip_prefix("reflected(").and_then(|n| n.strip_suffix(')')).unwrap_or(&self.name).to_string() };
        p
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn shift(&self) -> f64 {
        self.shift
    }

    pub fn constants(&self) -> HcConstants {
        self.constants
    }

    pub fn growth(&self) -> Growth {
        self.growth
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    /// Whether `F` is a constant (so `d_F = c·d` exactly, on either model).
    pub fn is_constant(&self) -> bool {
        matches!(self.bump, Bump::None)
    }

    pub fn is_reflected(&self) -> bool {
        self.reflected
    }

    /// `F` at base point `z` in direction `angle` (radians from the positive
    /// real axis in the upper half-plane chart). The built-ins ignore the
    /// direction, so reflection leaves values unchanged and quadrature
    /// evaluates the bump at node positions only.
    pub fn value(&self, z: &PlanePoint, _angle: f64) -> f64 {
        self.shift + self.bump_at(z)
    }

    fn bump_at(&self, z: &PlanePoint) -> f64 {
        match &self.bump {
            Bump::None => 0.0,
            Bump::Plane { amplitude, orbit } => {
                let d = orbit.distance(z);
                amplitude * (-d * d).exp()
            }
        }
    }

    /// Upper bound for `|F|` on the unit tangent vectors over `B(z, r)`.
    pub fn max_abs_on_ball(&self, z: &PlanePoint, r: f64) -> f64 {
        let bump = match &self.bump {
            Bump::None => 0.0,
            Bump::Plane { amplitude, orbit } => {
                let gap = (orbit.distance(z) - r).max(0.0);
                amplitude.abs() * (-gap * gap).exp()
            }
        };
        self.shift.abs() + bump
    }

    /// `∫ F` along `[x, y]`; constants exactly, bumps by the composite
    /// midpoint rule at the potential's step.
    pub fn integrate(&self, x: &PlanePoint, y: &PlanePoint) -> f64 {
        self.integrate_with_step(x, y, self.step)
    }

    /// Nodes in the first half of the segment are placed from `x`, the rest
    /// from `y`, so no node is computed more than `d/2` from the point it is
    /// measured from. Plane coordinates lose about `e^t` ulps at distance `t`.
    pub fn integrate_with_step(&self, x: &PlanePoint, y: &PlanePoint, h: f64) -> f64 {
        let d = hypdrift_geometry::plane::dist(x, y);
        self.shift * d + self.bump_integral((x, y), (y, x), d, h)
    }

    /// Bump part of `∫ F` over a segment of length `d`, given as the ray
    /// `near.0 → near.1` for the first half and `far.0 → far.1` (pointing
    /// back along the segment) for the second.
    fn bump_integral(&self, near: (&PlanePoint, &PlanePoint), far: (&PlanePoint, &PlanePoint), d: f64, h: f64) -> f64 {
        if !matches!(self.bump, Bump::Plane { .. }) || d == 0.0 {
            return 0.0;
        }
        let n = (d / h).ceil().max(1.0) as usize;
        let dt = d / n as f64;
        let mid = n.div_ceil(2);
        let first = self.nodes_sum(near, (0..mid).map(|k| (k as f64 + 0.5) * dt));
        let second = self.nodes_sum(far, (mid..n).rev().map(|k| d - (k as f64 + 0.5) * dt));
        (first + second) * dt
    }

    /// `Σ (F − shift)` at the given distances along `from → toward`.
    fn nodes_sum(&self, (from, toward): (&PlanePoint, &PlanePoint), offsets: impl Iterator<Item = f64>) -> f64 {
        let Bump::Plane { amplitude, orbit } = &self.bump else {
            return 0.0;
        };
        let g = Geodesic::segment(from, toward);
        let len = g.length().unwrap_or(0.0);
        let points: Vec<PlanePoint> = offsets.map(|t| g.point_at(t.min(len)).expect("node on segment")).collect();
        orbit.distances_along(&points).into_iter().map(|r| amplitude * (-r * r).exp()).sum()
    }
}

/// `d_F(o, g·o)` for a group element, using `d_F(o, g·o) = d_F(g⁻¹·o, o)` for
/// the far half of the geodesic.
pub fn fake_displacement<A: GroupAction>(f: &Potential, action: &A, g: &A::Elem) -> Result<f64> {
    let d = action.displacement(g);
    if f.is_constant() {
        return Ok(f.shift() * d);
    }
    match (action.basepoint(), action.orbit_point(g), action.orbit_point(&action.inverse(g))) {
        (ModelPoint::Plane(o), ModelPoint::Plane(p), ModelPoint::Plane(q)) => {
            Ok(f.shift() * d + f.bump_integral((&o, &p), (&o, &q), d, f.step()))
        }
        _ => Err(GibbsError::PlaneOnly(f.name().to_string())),
    }
}

/// `d_F(x, y) = ∫_x^y F dt` along the geodesic.
pub fn fake_distance(f: &Potential, x: &ModelPoint, y: &ModelPoint) -> Result<f64> {
    match (x, y) {
        (ModelPoint::Plane(p), ModelPoint::Plane(q)) => Ok(f.integrate(p, q)),
        (ModelPoint::Tree(_), ModelPoint::Tree(_)) => {
            if !f.is_constant() {
                return Err(GibbsError::PlaneOnly(f.name().to_string()));
            }
            Ok(f.shift() * dist(x, y)?)
        }
        _ => Err(hypdrift_geometry::GeometryError::ModelMismatch.into()),
    }
}
