//! Potentials on the unit tangent bundle and the quantities built from them:
//! F-ake distances, Gibbs cocycles, pressure, Patterson–Gibbs atoms and the
//! F-ake drift of a random walk.
//!
//! Nonconstant potentials live on the upper half-plane; on the tree only
//! `F = 0` and constants are admitted.

pub mod atoms;
pub mod cocycle;
pub mod drift;
pub mod error;
pub mod hc;
pub mod potential;
pub mod pressure;

pub use atoms::{gibbs_shadow_mass, patterson_atoms, write_atoms_csv, AtomSummary, GibbsAtom, GibbsAtoms, MIN_GAP};
pub use cocycle::{gibbs_cocycle, CocycleEstimate, DEFAULT_HORIZON};
pub use drift::{fake_drift, FakeDrift, TailPoint, KINGMAN_THRESHOLDS};
pub use error::{GibbsError, Result};
pub use hc::{hc_validate, HcReport};
pub use potential::{fake_displacement, fake_distance, Growth, HcConstants, OrbitDistance, Potential, DEFAULT_STEP};
pub use pressure::{fake_displacements, pressure, PressureFit, ShellSum};

/// Crate version, embedded in reports.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
