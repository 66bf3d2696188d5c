use hypdrift_diagnostics::*;
use hypdrift_geometry::{dist, distance_to_segment, ModelPoint};
use hypdrift_gibbs::Potential;
use hypdrift_groups::*;
use hypdrift_walk::{uniform, ExactGreen};
use proptest::prelude::*;

fn plane(re: f64, im: f64) -> ModelPoint {
    ModelPoint::plane(re, im).unwrap()
}

/// Freely reduced words over `a, A, b, B`.
fn word() -> impl Strategy<Value = String> {
    proptest::collection::vec(prop_oneof![Just('a'), Just('A'), Just('b'), Just('B')], 0..16).prop_map(|letters| {
        let mut out: Vec<char> = Vec::new();
        for c in letters {
            if out.last().is_some_and(|&l| l != c && l.eq_ignore_ascii_case(&c)) {
                out.pop();
            } else {
                out.push(c);
            }
        }
        out.into_iter().collect()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn verdicts_respect_thresholds(gap in -1.0f64..1.0, se in 0.0f64..0.5) {
        let policy = VerdictPolicy::default();
        match policy.classify(gap, se) {
            Verdict::StrictlyLess => prop_assert!(gap > 3.0 * se),
            Verdict::EqualityConsistent => prop_assert!(gap.abs() <= 2.0 * se),
            Verdict::Inconclusive => prop_assert!(gap.abs() > 2.0 * se && gap <= 3.0 * se),
        }
    }

    #[test]
    fn side_lengths_match_plane_geometry(
        x in -3.0f64..3.0, y in -2.0f64..2.0,
        u in -3.0f64..3.0, v in -2.0f64..2.0,
        s in -3.0f64..3.0, t in -2.0f64..2.0,
    ) {
        let (o, k, n) = (plane(x, y.exp()), plane(u, v.exp()), plane(s, t.exp()));
        let a = dist(&o, &n).unwrap();
        let b = dist(&o, &k).unwrap();
        let c = dist(&k, &n).unwrap();
        let direct = distance_to_segment(&k, &o, &n).unwrap();
        prop_assert!((plane_vertex_to_side(a, b, c) - direct).abs() < 1e-6 * (1.0 + direct), "{} vs {}", plane_vertex_to_side(a, b, c), direct);
    }

    #[test]
    fn side_lengths_match_tree_geometry(k in word(), n in word()) {
        let (o, kp, np) = (ModelPoint::tree("").unwrap(), ModelPoint::tree(&k).unwrap(), ModelPoint::tree(&n).unwrap());
        let a = dist(&o, &np).unwrap();
        let b = dist(&o, &kp).unwrap();
        let c = dist(&kp, &np).unwrap();
        prop_assert_eq!(tree_vertex_to_side(a, b, c), distance_to_segment(&kp, &o, &np).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn tails_are_probabilities_and_nonincreasing(seed in any::<u64>(), n in 10usize..80) {
        let mu = uniform(&FreeGroup::new(2).unwrap()).unwrap();
        let grid: Vec<f64> = (0..8).map(f64::from).collect();
        let tail = deviation_tail(&mu, n / 2, n, &grid, 200, seed).unwrap();
        prop_assert!(tail.points.iter().all(|p| (0.0..=1.0).contains(&p.probability)));
        prop_assert!(tail.points.windows(2).all(|w| w[1].probability <= w[0].probability));
    }

    #[test]
    fn reports_are_reproducible(seed in any::<u64>()) {
        let mu = uniform(&FreeGroup::new(2).unwrap()).unwrap();
        prop_assert_eq!(drift(&mu, 100, 20, seed).unwrap(), drift(&mu, 100, 20, seed).unwrap());
        let grid = [1.0, 2.0];
        prop_assert_eq!(deviation_tail(&mu, 50, 100, &grid, 50, seed).unwrap(), deviation_tail(&mu, 50, 100, &grid, 50, seed).unwrap());
    }

    #[test]
    fn bucket_entropy_is_below_log_bucket_count(eps in 0.1f64..2.0, n in 1usize..8) {
        let mu = uniform(&FreeGroup::new(2).unwrap()).unwrap();
        let rows = bucket_entropies(&mu, &BucketParams { n, eps, cap: 1_000_000 });
        prop_assert_eq!(rows.len(), n);
        for r in rows {
            prop_assert!(r.entropy >= -1e-12 && r.entropy <= (r.buckets as f64).ln() + 1e-12);
        }
    }

    #[test]
    fn deviation_rows_cover_the_ball(radius in 1.0f64..5.0) {
        let g = FreeGroup::new(2).unwrap();
        let mu = uniform(&g).unwrap();
        let ball = orbit_ball(&g, radius, 100_000).unwrap();
        let green = ExactGreen::new(&mu).unwrap();
        let report = metric_deviation_report(&g, &Potential::zero(), &ball, &green, 3f64.ln(), None).unwrap();
        prop_assert_eq!(report.rows.len(), ball.len());
        prop_assert!(report.max_abs_deviation < 1e-9);
    }

    #[test]
    fn constant_shift_leaves_deviation_unchanged(c in -2.0f64..2.0) {
        let g = FreeGroup::new(2).unwrap();
        let mu = uniform(&g).unwrap();
        let ball = orbit_ball(&g, 3.0, 100_000).unwrap();
        let green = ExactGreen::new(&mu).unwrap();
        let base = metric_deviation_report(&g, &Potential::zero(), &ball, &green, 3f64.ln(), None).unwrap();
        let shifted = metric_deviation_report(&g, &Potential::constant(c), &ball, &green, 3f64.ln() + c, None).unwrap();
        for (a, b) in base.rows.iter().zip(&shifted.rows) {
            prop_assert!((a.deviation - b.deviation).abs() < 1e-9);
        }
    }
}
