//! Named configurations run by `suite` and accepted by `run` in place of a path.

use serde_json::{json, Value};

use crate::config::ExperimentConfig;
use crate::error::{CliError, Result};

pub const BUILTIN_NAMES: [&str; 6] = [
    "f2-uniform-equality",
    "f2-uniform-shifted",
    "f3-uniform-equality",
    "modular-strict",
    "schottky-tails",
    "f2-biased-decay",
];

fn exact_green() -> Value {
    json!({ "method": "exact-recursive" })
}

fn truncated(ball_steps: usize) -> Value {
    json!({ "method": "truncated-convolution", "ball_steps": ball_steps, "rel_tol": 1e-8, "max_horizon": 600, "cap": 8_000_000 })
}

fn f2_uniform(name: &str, description: &str, potential: Value) -> Value {
    json!({
        "schema": 1,
        "name": name,
        "description": description,
        "action": { "kind": "free", "rank": 2 },
        "measure": { "kind": "uniform" },
        "potential": potential,
        "seed": 20_240_101,
        "ball": { "radius": 12.0, "window": [2.0, 12.0], "cap": 4_000_000 },
        "inequality": {
            "entropy": { "method": "green-drift", "n": 10_000, "batch": 1000, "green": exact_green() },
            "entropy_check": { "method": "exact-convolution", "n": 13, "cap": 4_000_000 },
            "drift_n": 10_000,
            "drift_batch": 1000,
            "fake_n": 10_000,
            "fake_batch": 1000,
            "bucket": { "n": 8, "eps": 0.5, "cap": 4_000_000 }
        },
        "deviation": { "radius": 6.0, "green": exact_green(), "ancona": { "distance": 0.0 } },
        "tails": { "n": 200, "grid": [1.0, 2.0, 3.0, 4.0, 5.0, 6.0], "batch": 10_000 },
        "ratios": {
            "atoms_radius": 8.0,
            "gap": 0.2,
            "harmonic": "transported",
            "radius": 0.0,
            "grid": [20, 40, 80],
            "batch": 300,
            "proxies": 2000,
            "proxy_horizon": 200,
            "min_hits": 30
        },
        "expect": {
            "verdict": "equality-consistent",
            "max_deviation": 1e-6,
            "max_tail_slope": -0.5,
            "min_phi_above_half": 0.9
        }
    })
}

fn value(name: &str) -> Option<Value> {
    Some(match name {
        "f2-uniform-equality" => f2_uniform(
            name,
            "Simple random walk on F_2 with F = 0: equality, zero deviation, exponential tails, bounded phi.",
            json!({ "kind": "zero" }),
        ),
        "f2-uniform-shifted" => f2_uniform(
            name,
            "The F_2 equality case with F = 1; every verdict matches the unshifted run.",
            json!({ "kind": "constant", "c": 1.0 }),
        ),
        "f3-uniform-equality" => json!({
            "schema": 1,
            "name": name,
            "description": "Simple random walk on F_3 with F = 0.",
            "action": { "kind": "free", "rank": 3 },
            "measure": { "kind": "uniform" },
            "potential": { "kind": "zero" },
            "seed": 20_240_102,
            "ball": { "radius": 8.0, "window": [2.0, 8.0], "cap": 4_000_000 },
            "inequality": {
                "entropy": { "method": "green-drift", "n": 10_000, "batch": 500, "green": exact_green() },
                "drift_n": 10_000,
                "drift_batch": 500,
                "fake_n": 1000,
                "fake_batch": 100
            },
            "deviation": { "radius": 5.0, "green": exact_green() },
            "expect": { "verdict": "equality-consistent", "max_deviation": 1e-6 }
        }),
        "modular-strict" => json!({
            "schema": 1,
            "name": name,
            "description": "Nearest-neighbour walk on PSL(2,Z) generated by S and T: strict inequality, phi drifting to zero.",
            "action": { "kind": "modular" },
            "measure": { "kind": "uniform" },
            "potential": { "kind": "zero" },
            "seed": 20_240_103,
            "ball": { "radius": 12.0, "window": [4.0, 12.0], "cap": 5_000_000 },
            "inequality": {
                "entropy": { "method": "exact-convolution", "n": 40, "cap": 8_000_000 },
                "drift_n": 5000,
                "drift_batch": 500,
                "fake_n": 200,
                "fake_batch": 100
            },
            "ratios": {
                "atoms_radius": 8.0,
                "gap": 0.2,
                "harmonic": "direct",
                "radius": 2.0,
                "grid": [20, 40, 80],
                "batch": 300,
                "proxies": 20_000,
                "proxy_horizon": 740,
                "min_hits": 30
            },
            "expect": { "verdict": "strictly-less", "median_phi_decreasing": true }
        }),
        "schottky-tails" => json!({
            "schema": 1,
            "name": name,
            "description": "Uniform walk on a Schottky group (lambda = 3, theta = pi/4): side-length deviation tails.",
            "action": { "kind": "schottky", "lambda": 3.0, "theta": std::f64::consts::FRAC_PI_4 },
            "measure": { "kind": "uniform" },
            "potential": { "kind": "zero" },
            "seed": 20_240_104,
            "ball": { "radius": 18.0, "window": [9.0, 18.0], "cap": 5_000_000 },
            "inequality": {
                "entropy": { "method": "green-drift", "n": 500, "batch": 400, "green": exact_green() },
                "drift_n": 500,
                "drift_batch": 400,
                "fake_n": 200,
                "fake_batch": 50
            },
            "tails": { "k": 200, "n": 400, "grid": [1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0], "batch": 10_000 },
            "expect": { "max_tail_slope": -0.3 }
        }),
        "f2-biased-decay" => json!({
            "schema": 1,
            "name": name,
            "description": "Non-symmetric nearest-neighbour walk on F_2: linear Green decay in the word norm.",
            "action": { "kind": "free", "rank": 2 },
            "measure": { "kind": "weights", "weights": [["a", 0.4], ["A", 0.2], ["b", 0.2], ["B", 0.2]] },
            "potential": { "kind": "zero" },
            "seed": 20_240_105,
            "ball": { "radius": 12.0, "window": [2.0, 12.0], "cap": 4_000_000 },
            "inequality": {
                "entropy": { "method": "exact-convolution", "n": 13, "cap": 4_000_000 },
                "drift_n": 10_000,
                "drift_batch": 1000,
                "fake_n": 1000,
                "fake_batch": 100
            },
            "green_decay": { "max_norm": 6, "band": [0.3, 3.5], "green": truncated(11) },
            "expect": { "green_decay_passes": true }
        }),
        _ => return None,
    })
}

/// The named configuration, parsed and validated.
pub fn builtin(name: &str) -> Result<ExperimentConfig> {
    let v = value(name).ok_or_else(|| CliError::Unknown { kind: "config", name: name.into() })?;
    ExperimentConfig::parse(&v.to_string())
}

pub fn builtins() -> Vec<ExperimentConfig> {
    BUILTIN_NAMES.iter().map(|n| builtin(n).expect("builtin configs are valid")).collect()
}
