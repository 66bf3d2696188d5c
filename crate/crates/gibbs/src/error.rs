use hypdrift_geometry::GeometryError;
use hypdrift_groups::GroupError;
use hypdrift_stats::FitError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum GibbsError {
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Fit(#[from] FitError),
    #[error("potential {0} is defined on the plane model only")]
    PlaneOnly(String),
    #[error("HC constants need c₁ > 0 and c₂ ∈ (0, 1), got c₁ = {c1}, c₂ = {c2}")]
    BadConstants { c1: f64, c2: f64 },
    #[error("quadrature step must be positive, got {0}")]
    BadStep(f64),
    #[error("horizon must be at least 5, got {0}")]
    ShortHorizon(f64),
    #[error("shell {0} of the fit window is empty")]
    EmptyShell(usize),
    #[error("ball is incomplete or smaller than the fit window")]
    IncompleteBall,
    #[error("parameter s = {s} must be at least v̂_F + 0.02 = {min}")]
    ParameterTooSmall { s: f64, min: f64 },
    #[error("estimated tail fraction {fraction:.3} of Q(s) exceeds the allowed {allowed:.3}; raise s or the ball radius")]
    TailTooHeavy { fraction: f64, allowed: f64 },
    #[error("n must be at least 100 for drift estimates, got {0}")]
    ShortWalk(usize),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = GibbsError> = std::result::Result<T, E>;
