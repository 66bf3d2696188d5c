use hypdrift_geometry::{busemann, BoundaryPoint, Geodesic, ModelPoint};
use hypdrift_stats::Estimate;
use serde::Serialize;

use crate::error::{GibbsError, Result};
use crate::potential::Potential;

/// Default horizon for the defining limit.
pub const DEFAULT_HORIZON: f64 = 30.0;

/// `β^F_ζ(x, y)` truncated at a finite horizon.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CocycleEstimate {
    pub estimate: Estimate,
    pub horizon: f64,
    /// Values at horizons `T/4`, `T/2`, `T`.
    pub values: [f64; 3],
    /// `|v(T) − v(T/2)|` plus the change under halving the quadrature step.
    pub error_proxy: f64,
    /// False when the increment between horizons grows.
    pub convergent: bool,
}

/// `d_F(x, z_T) − d_F(y, z_T)` with `z_T` at distance `T` along the ray from
/// `x` towards `ζ`. Constant potentials reduce to `c·β_ζ` exactly.
pub fn gibbs_cocycle(f: &Potential, zeta: &BoundaryPoint, x: &ModelPoint, y: &ModelPoint, horizon: f64) -> Result<CocycleEstimate> {
    if horizon.is_nan() || horizon < 5.0 {
        return Err(GibbsError::ShortHorizon(horizon));
    }
    if f.is_constant() {
        let v = f.shift() * busemann(zeta, x, y)?;
        return Ok(CocycleEstimate {
            estimate: Estimate::exact(v, "gibbs-cocycle-constant"),
            horizon,
            values: [v; 3],
            error_proxy: 0.0,
            convergent: true,
        });
    }
    let (ModelPoint::Plane(px), ModelPoint::Plane(py), BoundaryPoint::Plane(xi)) = (x, y, zeta) else {
        if x.model() != y.model() || x.model() != zeta.model() {
            return Err(hypdrift_geometry::GeometryError::ModelMismatch.into());
        }
        return Err(GibbsError::PlaneOnly(f.name().to_string()));
    };
    let ray = Geodesic::ray(px, xi);
    let at = |t: f64, h: f64| -> Result<f64> {
        let z = ray.point_at(t)?;
        Ok(f.integrate_with_step(px, &z, h) - f.integrate_with_step(py, &z, h))
    };
    let h = f.step();
    let values = [at(horizon / 4.0, h)?, at(horizon / 2.0, h)?, at(horizon, h)?];
    let refined = at(horizon, h / 2.0)?;
    let near = (values[2] - values[1]).abs();
    let far = (values[1] - values[0]).abs();
    let error_proxy = near + (refined - values[2]).abs();
    Ok(CocycleEstimate {
        estimate: Estimate::new(values[2], error_proxy, 1, 0, "gibbs-cocycle-horizon"),
        horizon,
        values,
        error_proxy,
        convergent: near <= far + 1e-12,
    })
}
