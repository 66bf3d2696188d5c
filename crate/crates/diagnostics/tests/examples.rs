use std::sync::OnceLock;

use hypdrift_diagnostics::*;
use hypdrift_geometry::{ModelPoint, Shadow};
use hypdrift_gibbs::{patterson_atoms, pressure, Potential};
use hypdrift_groups::*;
use hypdrift_stats::combined_stderr;
use hypdrift_walk::{make_measure, uniform, ExactGreen, GreenMethod, GreenTable, TruncationParams, WalkError, WalkMeasure};

fn f2() -> FreeGroup {
    FreeGroup::new(2).unwrap()
}

fn f2_uniform() -> WalkMeasure<FreeGroup> {
    uniform(&f2()).unwrap()
}

fn f2_ball() -> &'static OrbitBall<FreeGroup> {
    static BALL: OnceLock<OrbitBall<FreeGroup>> = OnceLock::new();
    BALL.get_or_init(|| orbit_ball(&f2(), 12.0, 5_000_000).unwrap())
}

fn modular_ball() -> &'static OrbitBall<ModularGroup> {
    static BALL: OnceLock<OrbitBall<ModularGroup>> = OnceLock::new();
    BALL.get_or_init(|| orbit_ball(&ModularGroup::new(), 12.0, 5_000_000).unwrap())
}

fn tree(w: &str) -> ModelPoint {
    ModelPoint::tree(w).unwrap()
}

fn f2_params(seed: u64) -> InequalityParams {
    InequalityParams {
        entropy: EntropyMethod::GreenDrift { n: 2000, batch: 400, green: GreenMethod::ExactRecursive },
        entropy_check: Some(EntropyMethod::ExactConvolution { n: 12, cap: 2_000_000 }),
        drift_n: 2000,
        drift_batch: 400,
        window: (2.0, 12.0),
        fake_n: 2000,
        fake_batch: 400,
        bucket: Some(BucketParams { n: 8, eps: 0.5, cap: 2_000_000 }),
        policy: VerdictPolicy::default(),
        seed,
    }
}

#[test]
fn free_group_drift() {
    let d2 = drift(&f2_uniform(), 10_000, 1000, 11).unwrap();
    assert!((d2.estimate.value - 0.5).abs() < 0.01, "{:?}", d2.estimate);
    assert!((d2.half.value - 0.5).abs() < 0.01);
    let d3 = drift(&uniform(&FreeGroup::new(3).unwrap()).unwrap(), 10_000, 1000, 12).unwrap();
    assert!((d3.estimate.value - 2.0 / 3.0).abs() < 0.01, "{:?}", d3.estimate);
    assert!(matches!(drift(&f2_uniform(), 99, 10, 1), Err(DiagnosticsError::ShortWalk(99))));
}

#[test]
fn point_mass_is_not_a_walk() {
    assert!(matches!(make_measure(&f2(), &[("a", 1.0)]), Err(WalkError::Degenerate)));
}

/// `H(μ^{*n})` for the uniform walk on F_2: the reduced length is a birth–death
/// chain and words of a given length are equally likely.
fn reduced_length_entropies(n: usize) -> Vec<f64> {
    let mut p = vec![1.0];
    let mut out = vec![0.0];
    for _ in 0..n {
        let mut q = vec![0.0; p.len() + 1];
        for (k, &v) in p.iter().enumerate() {
            if k == 0 {
                q[1] += v;
            } else {
                q[k + 1] += 0.75 * v;
                q[k - 1] += 0.25 * v;
            }
        }
        p = q;
        let words = |k: usize| if k == 0 { 1.0 } else { 4.0 * 3f64.powi(k as i32 - 1) };
        out.push(p.iter().enumerate().filter(|(_, &v)| v > 0.0).map(|(k, &v)| -v * (v / words(k)).ln()).sum());
    }
    out
}

#[test]
fn free_group_entropy() {
    let mu = f2_uniform();
    let method = EntropyMethod::GreenDrift { n: 4000, batch: 500, green: GreenMethod::ExactRecursive };
    let h = entropy(&mu, &method, 3).unwrap();
    assert!((h.estimate().value - 0.549).abs() < 0.01, "{:?}", h.estimate());

    let conv = convolution_entropy(&mu, 12, 4_000_000).unwrap();
    assert!((conv.per_step[0] - 4f64.ln()).abs() < 1e-12);
    let oracle = reduced_length_entropies(12);
    for (n, inc) in conv.increments.iter().enumerate() {
        assert!((inc - (oracle[n + 1] - oracle[n])).abs() < 1e-9, "step {}", n + 1);
    }
    assert!((conv.increments[5] - 0.700268).abs() < 1e-6);
    assert!((0.549..=0.62).contains(&conv.increments[11]));
    assert!(conv.increments.windows(2).all(|w| w[1] <= w[0] + 1e-12));
    assert!(conv.upper_bound >= 3f64.ln() / 2.0);

    let mc = EntropyMethod::GreenDrift { n: 100, batch: 10, green: GreenMethod::MonteCarlo { paths: 10, horizon: 10, seed: 1 } };
    assert!(matches!(entropy(&mu, &mc, 1), Err(DiagnosticsError::Walk(WalkError::MethodMismatch { .. }))));
}

#[test]
fn green_drift_and_convolution_agree() {
    let mu = f2_uniform();
    let g = entropy(&mu, &EntropyMethod::GreenDrift { n: 2000, batch: 500, green: GreenMethod::ExactRecursive }, 5).unwrap();
    let c = entropy(&mu, &EntropyMethod::ExactConvolution { n: 13, cap: 4_000_000 }, 5).unwrap();
    let (g, c) = (g.estimate(), c.estimate());
    let se = combined_stderr(&[g.stderr, c.stderr]);
    assert!((g.value - c.value).abs() <= 3.0 * se, "{g:?} vs {c:?}");
}

#[test]
fn harmonic_cone_masses() {
    let mu = f2_uniform();
    let o = tree("");
    let proxies = BoundaryProxies::sample(&mu, 100, 20_000, 21);
    assert!(proxies.mean_displacement() >= 50.0 - 1.0);
    let mut total = 0.0;
    for g in ["a", "A", "b", "B"] {
        let m = proxies.shadow_mass(&Shadow::new(o.clone(), tree(g), 0.0).unwrap()).unwrap();
        assert!((m.value - 0.25).abs() < 0.01, "{g}: {m:?}");
        total += m.value;
    }
    assert!((total - 1.0).abs() < 1e-9);

    let ab = harmonic_shadow_mass(&mu, &Shadow::new(o.clone(), tree("ab"), 0.0).unwrap(), 100, 20_000, 22).unwrap();
    let scaled = ab.value * (2.0 * 3f64.ln()).exp();
    assert!((0.1..=10.0).contains(&scaled), "{scaled}");

    let far = Shadow::new(o, tree("abababab"), 0.0).unwrap();
    assert!(matches!(harmonic_shadow_mass(&mu, &far, 40, 100, 1), Err(DiagnosticsError::HorizonTooShort { .. })));
}

#[test]
fn equality_case_keeps_ratios_stable() {
    let mu = f2_uniform();
    let v = 3f64.ln();
    let ball = orbit_ball(&f2(), 8.0, 1_000_000).unwrap();
    let atoms = patterson_atoms(&f2(), &ball, &Potential::zero(), v + 0.2, v, 1.0).unwrap();
    let green = ExactGreen::new(&mu).unwrap();
    let params = RatioParams { radius: 0.0, grid: vec![20, 40, 80], batch: 300, proxies: 2000, proxy_horizon: 200, min_hits: 30, seed: 4 };
    let table = shadow_ratio_stats(&mu, &Potential::zero(), &atoms, HarmonicSide::Transported(&green), &params).unwrap();
    assert_eq!(table.rows.len(), 3);
    for row in &table.rows {
        assert!(row.above[0].probability >= 0.9, "{row:?}");
        assert!(!row.low_confidence);
    }

    // ψ_n/n against ĥ − ℓ̂·v̂ from independent runs.
    let h = entropy(&mu, &EntropyMethod::GreenDrift { n: 2000, batch: 400, green: GreenMethod::ExactRecursive }, 8).unwrap();
    let ell = drift(&mu, 2000, 400, 9).unwrap().estimate;
    let last = table.rows.last().unwrap();
    let target = h.estimate().value - ell.value * v;
    let se = combined_stderr(&[last.cesaro_psi_over_n.stderr, h.estimate().stderr, v * ell.stderr]);
    assert!((last.cesaro_psi_over_n.value - target).abs() <= 3.0 * se, "{:?} vs {target} ± {se}", last.cesaro_psi_over_n);
}

#[test]
fn parabolic_walk_ratios_decay() {
    let m = ModularGroup::new();
    let mu = uniform(&m).unwrap();
    let ball = orbit_ball(&m, 8.0, 1_000_000).unwrap();
    let atoms = patterson_atoms(&m, &ball, &Potential::zero(), 1.2, 1.0, 1.0).unwrap();
    let params = RatioParams { radius: 2.0, grid: vec![20, 40, 80], batch: 300, proxies: 20_000, proxy_horizon: 740, min_hits: 30, seed: 2 };
    let table = shadow_ratio_stats(&mu, &Potential::zero(), &atoms, HarmonicSide::Direct, &params).unwrap();
    let medians: Vec<f64> = table.rows.iter().map(|r| r.median_phi).collect();
    assert!(medians.windows(2).all(|w| w[1] < w[0]), "{medians:?}");

    let locator = std::sync::Arc::new(OrbitLocator::new(&m, 3.0).unwrap());
    let bump = Potential::plane_bump(1.0, locator);
    assert!(matches!(
        shadow_ratio_stats(&mu, &bump, &atoms, HarmonicSide::Direct, &params),
        Err(DiagnosticsError::NonconstantPotential(_))
    ));
}

#[test]
fn free_group_equality_verdict() {
    let mu = f2_uniform();
    let report = inequality_report(&mu, &Potential::zero(), f2_ball(), &f2_params(31));
    assert!(report.failures.is_empty(), "{:?}", report.failures);
    assert_eq!(report.verdict, Verdict::EqualityConsistent, "{report:?}");
    assert!(report.gap.unwrap().abs() <= 2.0 * report.gap_stderr.unwrap());
    assert_eq!(report.guivarch_holds, Some(true));
    assert!(report.h_agreement_sigmas.unwrap() <= 3.0);
    // Bucket entropies stay bounded while H(μ^{*n}) grows linearly.
    assert!(report.buckets.iter().all(|b| b.entropy <= 3.0), "{:?}", report.buckets);

    let shifted = inequality_report(&mu, &Potential::constant(1.0), f2_ball(), &f2_params(31));
    assert_eq!(shifted.verdict, Verdict::EqualityConsistent);
    assert!((shifted.v_f.as_ref().unwrap().value - 3f64.ln() - 1.0).abs() < 0.01);
    let (ell, ell_f) = (shifted.ell.as_ref().unwrap(), shifted.ell_f.as_ref().unwrap());
    assert!((ell.value - ell_f.value).abs() <= 3.0 * combined_stderr(&[ell.stderr, ell_f.stderr]));
}

#[test]
fn modular_strict_verdict() {
    let mu = uniform(&ModularGroup::new()).unwrap();
    let params = InequalityParams {
        entropy: EntropyMethod::ExactConvolution { n: 40, cap: 8_000_000 },
        entropy_check: None,
        drift_n: 5000,
        drift_batch: 500,
        window: (4.0, 12.0),
        fake_n: 200,
        fake_batch: 100,
        bucket: None,
        policy: VerdictPolicy::default(),
        seed: 41,
    };
    let report = inequality_report(&mu, &Potential::zero(), modular_ball(), &params);
    assert_eq!(report.verdict, Verdict::StrictlyLess, "{report:?}");
    assert!(report.gap.unwrap() > 3.0 * report.gap_stderr.unwrap());
    let v = report.v_f.unwrap().value;
    assert!((0.9..=1.1).contains(&v), "{v}");
}

#[test]
fn failing_component_is_named() {
    let mut params = f2_params(1);
    params.drift_n = 50;
    let report = inequality_report(&f2_uniform(), &Potential::zero(), f2_ball(), &params);
    assert_eq!(report.verdict, Verdict::Inconclusive);
    assert_eq!(report.failures.len(), 1);
    assert_eq!(report.failures[0].component, "drift");
    assert!(report.gap.is_none());
}

#[test]
fn tree_deviation_vanishes() {
    let g = f2();
    let mu = f2_uniform();
    let green = ExactGreen::new(&mu).unwrap();
    let v = pressure(&g, f2_ball(), &Potential::zero(), (2.0, 12.0)).unwrap().estimate.value;
    let ball = orbit_ball(&g, 4.0, 100_000).unwrap();
    let ancona = AnconaParams { distance: 0.0, constant: None };
    let report = metric_deviation_report(&g, &Potential::zero(), &ball, &green, v, Some(&ancona)).unwrap();
    assert_eq!(report.rows.len(), ball.len());
    assert!(report.max_abs_deviation <= 1e-9, "{}", report.max_abs_deviation);
    assert!(report.witnesses.is_empty());
    let a = report.ancona.unwrap();
    assert!(a.aligned > ball.len());
    assert_eq!(a.violations, 0);
    assert!(a.max_defect.abs() < 1e-9);
}

#[test]
fn parabolic_deviation_grows() {
    let m = ModularGroup::new();
    let mu = uniform(&m).unwrap();
    // A lower bound c·‖g‖ for d_G from the decay ratios on a word ball.
    let table = GreenTable::build(&mu, 5, &TruncationParams { ball_steps: 9, ..Default::default() }).unwrap();
    let elems = elements_by_norm(&m, 5, 100_000).unwrap();
    let decay = green_decay_check(&mu, &table, &elems, (0.05, 20.0)).unwrap();
    assert!(decay.passes, "{:?}", (decay.min_ratio, decay.max_ratio));
    let c = decay.min_ratio;
    let v = pressure(&m, modular_ball(), &Potential::zero(), (4.0, 12.0)).unwrap().estimate.value;
    let powers: Vec<_> = (8..=60).map(ModularGroup::t_power).collect();
    let (norms, _) = word_norms(&m, &powers, 5_000_000).unwrap();
    assert!(norms.iter().zip(8..).all(|(&k, n)| k == n));
    let inputs: Vec<DeviationInput<_>> = powers
        .into_iter()
        .zip(&norms)
        .map(|(t, &k)| DeviationInput {
            label: format!("T^{k}"),
            elem: t,
            green_distance: hypdrift_stats::Estimate::exact(c * k as f64, "decay-bound"),
        })
        .collect();
    let report = deviation_report(&m, &Potential::zero(), &inputs, v).unwrap();
    let devs: Vec<f64> = report.rows.iter().map(|r| r.deviation).collect();
    assert!(devs.windows(2).all(|w| w[1] > w[0]), "{devs:?}");
    assert!(report.slope.unwrap().slope > 0.0);
    assert!(!report.witnesses.is_empty());
    // Closed-form displacement of Tⁿ.
    assert!((report.rows[2].displacement - (1.0 + 100.0 / 2.0_f64).acosh()).abs() < 1e-9);
}

#[test]
fn free_group_tails() {
    let tail = deviation_tail(&f2_uniform(), 100, 200, &[1.0, 2.0, 3.0, 4.0, 5.0, 6.0], 10_000, 17).unwrap();
    assert!(!tail.degenerate);
    assert!(tail.fit.as_ref().unwrap().slope <= -0.5, "{:?}", tail.fit);
    let zero = deviation_tail(&f2_uniform(), 100, 200, &[0.0, 1.0, 2.0], 500, 1).unwrap();
    assert!(zero.points[0].probability <= 1.0);
    assert!(zero.points.windows(2).all(|w| w[1].probability <= w[0].probability));
    assert!(matches!(deviation_tail(&f2_uniform(), 201, 200, &[1.0], 10, 1), Err(DiagnosticsError::BadSplit { .. })));
    let flat = deviation_tail(&f2_uniform(), 0, 200, &[1.0, 2.0], 100, 1).unwrap();
    assert!(flat.degenerate);
}

#[test]
fn green_decay_ratios() {
    let g = f2();
    let mu = f2_uniform();
    let elems = elements_by_norm(&g, 6, 100_000).unwrap();
    assert_eq!(elems.len(), 1456);
    assert!(elems.iter().all(|(_, n)| *n > 0));
    let exact = green_decay_check(&mu, &ExactGreen::new(&mu).unwrap(), &elems, (1.0, 1.2)).unwrap();
    assert!(exact.rows.iter().all(|r| (r.ratio - 3f64.ln()).abs() < 1e-12));
    assert!(exact.passes && exact.symmetric_measure);

    let biased = make_measure(&g, &[("a", 0.4), ("A", 0.2), ("b", 0.2), ("B", 0.2)]).unwrap();
    let table = GreenTable::build(&biased, 6, &TruncationParams { ball_steps: 11, ..Default::default() }).unwrap();
    let check = green_decay_check(&biased, &table, &elems, (0.3, 3.5)).unwrap();
    assert!(!check.symmetric_measure);
    assert!(check.passes, "{:?}", (check.min_ratio, check.max_ratio));

    let identity_only = [(g.identity(), 0)];
    assert!(green_decay_check(&mu, &ExactGreen::new(&mu).unwrap(), &identity_only, (0.3, 3.5)).is_err());
}

#[test]
fn reflected_measure_has_same_drift_and_entropy() {
    let g = f2();
    let mu = make_measure(&g, &[("a", 0.4), ("A", 0.2), ("b", 0.2), ("B", 0.2)]).unwrap();
    let nu = mu.reflect();
    let (d1, d2) = (drift(&mu, 2000, 500, 1).unwrap().estimate, drift(&nu, 2000, 500, 2).unwrap().estimate);
    assert!((d1.value - d2.value).abs() <= 3.0 * combined_stderr(&[d1.stderr, d2.stderr]));
    let h1 = convolution_entropy(&mu, 12, 2_000_000).unwrap();
    let h2 = convolution_entropy(&nu, 12, 2_000_000).unwrap();
    // The entropy of μ^{*n} and its reflection coincide step by step.
    for (a, b) in h1.increments.iter().zip(&h2.increments) {
        assert!((a - b).abs() < 1e-9);
    }
}

#[test]
fn plot_csv_layout() {
    let mut out = Vec::new();
    write_xy_csv(&[XyPoint::new(1.0, 0.5, 0.01), XyPoint::new(2.0, 0.25, 0.0)], &mut out).unwrap();
    assert_eq!(String::from_utf8(out).unwrap(), "x,y,stderr\n1.0,0.5,0.01\n2.0,0.25,0.0\n");
}
