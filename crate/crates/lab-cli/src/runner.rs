use std::sync::Arc;

use hypdrift_diagnostics::{
    deviation_report, deviation_tail, elements_by_norm, green_decay_check, inequality_report, ancona_check,
    shadow_ratio_stats, DeviationInput, HarmonicSide, InequalityParams, RatioParams, Verdict,
};
use hypdrift_gibbs::{patterson_atoms, pressure, Potential};
use hypdrift_groups::{orbit_ball, FreeGroup, FundamentalDomain, GroupAction, ModularGroup, OrbitLocator, SchottkyGroup};
use hypdrift_stats::Estimate;
use hypdrift_walk::{derive_seed, make_measure, monte_carlo_green, uniform, ExactGreen, GreenMethod, GreenOracle, GreenTable, WalkMeasure};

use crate::config::{ActionSpec, ExperimentConfig, HarmonicChoice, MeasureSpec, PotentialSpec};
use crate::error::{CliError, Result};
use crate::report::{evaluate_checks, PressureSection, Report, Results, Status};

/// Runs every section present in the config.
pub fn run_experiment(config: &ExperimentConfig) -> Result<Report> {
    let results = match &config.action {
        ActionSpec::Free { rank } => {
            let action = FreeGroup::new(*rank)?;
            let f = tree_potential(&config.potential)?;
            run_on(action, f, config)?
        }
        ActionSpec::Schottky { lambda, theta } => {
            let action = SchottkyGroup::new(*lambda, *theta)?;
            let f = plane_potential(&action, &config.potential)?;
            run_on(action, f, config)?
        }
        ActionSpec::Modular => {
            let action = ModularGroup::new();
            let f = plane_potential(&action, &config.potential)?;
            run_on(action, f, config)?
        }
    };
    let checks = evaluate_checks(&config.expect, &results);
    let status = match &results.inequality {
        Some(r) if r.verdict == Verdict::Inconclusive || !r.failures.is_empty() => Status::Inconclusive,
        _ => Status::Ok,
    };
    Ok(Report::new(config, status, results, checks))
}

fn tree_potential(spec: &PotentialSpec) -> Result<Potential> {
    match spec {
        PotentialSpec::Zero => Ok(Potential::zero()),
        PotentialSpec::Constant { c } => Ok(Potential::constant(*c)),
        PotentialSpec::Bump { .. } => {
            Err(CliError::Invalid { field: "potential".into(), message: "bump potentials need a plane action".into() })
        }
    }
}

fn plane_potential<A: GroupAction + FundamentalDomain + Clone + 'static>(action: &A, spec: &PotentialSpec) -> Result<Potential> {
    match spec {
        PotentialSpec::Bump { amplitude } => Ok(Potential::plane_bump(*amplitude, Arc::new(OrbitLocator::new(action, 3.0)?))),
        other => tree_potential(other),
    }
}

fn build_measure<A: GroupAction + Clone>(action: &A, spec: &MeasureSpec) -> Result<WalkMeasure<A>> {
    Ok(match spec {
        MeasureSpec::Uniform => uniform(action)?,
        MeasureSpec::Weights { weights } => make_measure(action, weights)?,
    })
}

/// `d_G(e, g)` for each element, with a standard error for Monte-Carlo values.
fn green_distances<A: GroupAction>(
    measure: &WalkMeasure<A>,
    elems: &[A::Elem],
    method: &GreenMethod,
    target_steps: usize,
) -> Result<Vec<Estimate>> {
    let action = measure.action();
    let exact = |oracle: &dyn GreenOracle<A>, tag: &str| -> Result<Vec<Estimate>> {
        elems.iter().map(|g| Ok(Estimate::exact(oracle.green_metric(action, g)?, tag))).collect()
    };
    match method {
        GreenMethod::ExactRecursive => exact(&ExactGreen::new(measure)?, method.tag()),
        GreenMethod::TruncatedConvolution(params) => exact(&GreenTable::build(measure, target_steps, params)?, method.tag()),
        GreenMethod::MonteCarlo { paths, horizon, seed } => {
            let mut targets = vec![action.identity()];
            targets.extend(elems.iter().cloned());
            let est = monte_carlo_green(measure, &targets, *paths, *horizon, *seed);
            let ee = &est[0];
            Ok(est[1..]
                .iter()
                .map(|g| {
                    let value = -(g.value / ee.value).ln();
                    let se = ((g.stderr / g.value).powi(2) + (ee.stderr / ee.value).powi(2)).sqrt();
                    Estimate::new(value, se, g.n_samples, *seed, method.tag())
                })
                .collect())
        }
    }
}

fn oracle_for<A: GroupAction + 'static>(
    measure: &WalkMeasure<A>,
    method: &GreenMethod,
    steps: usize,
) -> Result<Box<dyn GreenOracle<A> + Sync>> {
    match method {
        GreenMethod::ExactRecursive => Ok(Box::new(ExactGreen::new(measure)?)),
        GreenMethod::TruncatedConvolution(params) => Ok(Box::new(GreenTable::build(measure, steps, params)?)),
        GreenMethod::MonteCarlo { .. } => Err(CliError::Invalid {
            field: "green".into(),
            message: "this section needs Green values at arbitrary elements; use exact-recursive or truncated-convolution".into(),
        }),
    }
}

fn run_on<A: GroupAction + Clone + 'static>(action: A, f: Potential, config: &ExperimentConfig) -> Result<Results> {
    let measure = build_measure(&action, &config.measure)?;
    let ball = orbit_ball(&action, config.ball.radius, config.ball.cap)?;
    let fit = pressure(&action, &ball, &f, config.ball.window)?;
    let v_f = fit.estimate.value;
    let mut results = Results {
        potential: f.name().to_string(),
        measure: measure.weights(),
        symmetric_measure: measure.is_symmetric(),
        pressure: PressureSection { ball_size: ball.len(), window: config.ball.window, fit },
        inequality: None,
        deviation: None,
        tails: None,
        atoms: None,
        ratios: None,
        green_decay: None,
    };

    if let Some(c) = &config.inequality {
        let params = InequalityParams {
            entropy: c.entropy.clone(),
            entropy_check: c.entropy_check.clone(),
            drift_n: c.drift_n,
            drift_batch: c.drift_batch,
            window: config.ball.window,
            fake_n: c.fake_n,
            fake_batch: c.fake_batch,
            bucket: c.bucket.clone(),
            policy: c.policy,
            seed: derive_seed(config.seed, "inequality"),
        };
        let mut report = inequality_report(&measure, &f, &ball, &params);
        report.fingerprint = config.fingerprint();
        results.inequality = Some(report);
    }

    if let Some(c) = &config.deviation {
        let rows = orbit_ball(&action, c.radius, config.ball.cap)?;
        let elems: Vec<A::Elem> = rows.entries().iter().map(|e| e.elem.clone()).collect();
        let step = measure.step_norm().max(1);
        let steps = elems.iter().filter_map(|g| action.exact_norm(g)).max().unwrap_or(0).div_ceil(step);
        let green = green_distances(&measure, &elems, &c.green, steps)?;
        let inputs: Vec<DeviationInput<A::Elem>> = elems
            .iter()
            .zip(green)
            .enumerate()
            .map(|(i, (g, d))| DeviationInput { label: rows.word(&action, i), elem: g.clone(), green_distance: d })
            .collect();
        let mut report = deviation_report(&action, &f, &inputs, v_f)?;
        if let Some(p) = &c.ancona {
            let oracle = oracle_for(&measure, &c.green, steps)?;
            let constant = p.constant.unwrap_or(2.0 * report.max_abs_deviation);
            report.ancona = Some(ancona_check(&action, oracle.as_ref(), &elems, p.distance, constant)?);
        }
        results.deviation = Some(report);
    }

    if let Some(c) = &config.tails {
        let k = c.k.unwrap_or(c.n / 2);
        results.tails = Some(deviation_tail(&measure, k, c.n, &c.grid, c.batch, derive_seed(config.seed, "tails"))?);
    }

    if let Some(c) = &config.ratios {
        let atom_ball = orbit_ball(&action, c.atoms_radius, config.ball.cap)?;
        let atoms = patterson_atoms(&action, &atom_ball, &f, v_f + c.gap, v_f, 1.0)?;
        let params = RatioParams {
            radius: c.radius,
            grid: c.grid.clone(),
            batch: c.batch,
            proxies: c.proxies,
            proxy_horizon: c.proxy_horizon,
            min_hits: c.min_hits,
            seed: derive_seed(config.seed, "ratios"),
        };
        let table = match c.harmonic {
            HarmonicChoice::Direct => shadow_ratio_stats(&measure, &f, &atoms, HarmonicSide::Direct, &params)?,
            HarmonicChoice::Transported => {
                let green = ExactGreen::new(&measure)?;
                shadow_ratio_stats(&measure, &f, &atoms, HarmonicSide::Transported(&green), &params)?
            }
        };
        results.atoms = Some(atoms.summary());
        results.ratios = Some(table);
    }

    if let Some(c) = &config.green_decay {
        let elems = elements_by_norm(&action, c.max_norm, config.ball.cap)?;
        let oracle = oracle_for(&measure, &c.green, c.max_norm)?;
        results.green_decay = Some(green_decay_check(&measure, oracle.as_ref(), &elems, c.band)?);
    }
    Ok(results)
}
