//! Group actions on the model spaces: the free group on its tree, a Schottky
//! group and `PSL(2, ℤ)` on the plane. Orbit balls, word norms, growth
//! exponents and parabolic distortion.

pub mod action;
pub mod ball;
pub mod domain;
pub mod error;
pub mod free;
pub mod modular;
pub mod norm;
pub mod schottky;

pub use action::{displacement_at_i, ActionFlags, Generator, GroupAction};
pub use ball::{critical_exponent, orbit_ball, MIN_FIT_COUNT, BallCertificate, BallEntry, OrbitBall};
pub use domain::{FundamentalDomain, OrbitLocator};
pub use error::{GroupError, Result};
pub use free::FreeGroup;
pub use modular::ModularGroup;
pub use norm::{parabolic_distortion_report, word_norm, word_norms, DistortionReport, DistortionRow, WordNorm};
pub use schottky::{Disk, SchottkyElem, SchottkyGroup};

/// Crate version, embedded in reports.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
