//! Closed-form kernels for the two model spaces: the upper half-plane and
//! the Cayley tree of a free group.
//!
//! Plane kernels are generic over [`Scalar`] (`f32` or `f64`); the aliases
//! below fix `f64`, which the rest of the workspace uses.

pub mod error;
pub mod model;
pub mod plane;
pub mod scalar;
pub mod tree;

pub use error::{GeometryError, Result};
pub use model::{
    apply, apply_boundary, apply_locus, busemann, dist, distance_to_ray, distance_to_segment, geodesic_point,
    gromov_product, horoball_contains, in_shadow, Locus, Model,
};
pub use scalar::Scalar;
pub use tree::{Letter, TreeEnd, Word};

pub type PlanePoint = plane::HPoint<f64>;
pub type PlaneEnd = plane::HBoundary<f64>;
pub type Matrix = plane::Mobius<f64>;
pub type Geodesic = plane::Geodesic<f64>;
pub type ModelPoint = model::ModelPoint<f64>;
pub type BoundaryPoint = model::BoundaryPoint<f64>;
pub type Isometry = model::Isometry<f64>;
pub type Shadow = model::Shadow<f64>;

pub type PlanePoint32 = plane::HPoint<f32>;
pub type Matrix32 = plane::Mobius<f32>;

/// Crate version, embedded in reports.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
