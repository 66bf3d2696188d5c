use hypdrift_geometry::plane::dist;
use hypdrift_geometry::{Matrix, PlanePoint};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::potential::{HcConstants, Potential};

/// Largest observed ratios of potential differences to the declared bounds.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HcReport {
    pub samples: usize,
    pub seed: u64,
    pub step: f64,
    /// `|d_F(x′, y′) − d_F(x, y)|` over the clause-(a) bound, `d(x, x′), d(y, y′) ≤ 1`.
    pub max_ratio_endpoints: f64,
    /// `|d_F(x, z) − d_F(y, z)|` over `(c₁ + max_{B(x, d(x,y))}|F|)(d(x, y) + 1)`.
    pub max_ratio_corollary: f64,
    /// `|F(v) − F(w)|` over `b·a^{d}`.
    pub max_ratio_growth: f64,
    pub pass: bool,
}

const MAX_SPREAD: f64 = 5.0;

/// The point at distance `d` from `z` in direction `theta`.
fn offset(z: &PlanePoint, d: f64, theta: f64) -> PlanePoint {
    let back = Matrix::to_i(z).inverse();
    let turn = Matrix::rotation_about_i(theta / 2.0);
    let w = PlanePoint::new(0.0, d.exp()).expect("positive height");
    back.apply(&turn.apply(&w))
}

fn ratio(num: f64, den: f64) -> f64 {
    if num <= 1e-13 {
        0.0
    } else {
        num / den
    }
}

/// Samples configurations at bounded displacement and compares potential
/// differences with the declared Hölder-control and growth bounds.
pub fn hc_validate(f: &Potential, samples: usize, seed: u64, step: Option<f64>) -> HcReport {
    let h = step.unwrap_or(f.step());
    let HcConstants { c1, c2 } = f.constants();
    let growth = f.growth();
    let ratios: Vec<[f64; 3]> = (0..samples as u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(hypdrift_walk::sub_seed(seed, i));
            let tau = std::f64::consts::TAU;
            let x = PlanePoint::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.5f64..2.5).exp()).expect("valid point");
            let y = offset(&x, rng.gen_range(0.0..MAX_SPREAD), rng.gen_range(0.0..tau));
            let dx = rng.gen::<f64>().powi(3);
            let dy = rng.gen::<f64>().powi(3);
            let x2 = offset(&x, dx, rng.gen_range(0.0..tau));
            let y2 = offset(&y, dy, rng.gen_range(0.0..tau));
            let (dxx, dyy) = (dist(&x, &x2), dist(&y, &y2));
            let lhs = (f.integrate_with_step(&x2, &y2, h) - f.integrate_with_step(&x, &y, h)).abs();
            let rhs = (c1 + f.max_abs_on_ball(&x, dxx)) * dxx.powf(c2) + (c1 + f.max_abs_on_ball(&y, dyy)) * dyy.powf(c2);
            let endpoints = ratio(lhs, rhs);

            let z = offset(&x, rng.gen_range(0.0..MAX_SPREAD), rng.gen_range(0.0..tau));
            let dxy = dist(&x, &y);
            let lhs = (f.integrate_with_step(&x, &z, h) - f.integrate_with_step(&y, &z, h)).abs();
            let rhs = (c1 + f.max_abs_on_ball(&x, dxy)) * (dxy + 1.0);
            let corollary = ratio(lhs, rhs);

            let (a1, a2) = (rng.gen_range(0.0..tau), rng.gen_range(0.0..tau));
            let lhs = (f.value(&x, a1) - f.value(&z, a2)).abs();
            let growth_ratio = ratio(lhs, growth.b * growth.a.powf(dist(&x, &z)));
            [endpoints, corollary, growth_ratio]
        })
        .collect();
    let max = |k: usize| ratios.iter().map(|r| r[k]).fold(0.0, f64::max);
    let (a, b, g) = (max(0), max(1), max(2));
    HcReport { samples, seed, step: h, max_ratio_endpoints: a, max_ratio_corollary: b, max_ratio_growth: g, pass: a <= 1.0 && b <= 1.0 && g <= 1.0 }
}

