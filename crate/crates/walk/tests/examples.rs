use hypdrift_geometry::{BoundaryPoint, TreeEnd, Word};
use hypdrift_groups::{FreeGroup, GroupAction, ModularGroup};
use hypdrift_walk::*;

fn f2() -> FreeGroup {
    FreeGroup::new(2).unwrap()
}

fn w(s: &str) -> Word {
    Word::parse(s).unwrap()
}

#[test]
fn measures() {
    let g = f2();
    let mu = uniform(&g).unwrap();
    assert!(mu.is_symmetric());
    let m = mu.moments();
    assert_eq!((m.c2, m.c4, m.c8), (2.0, 4.0, 8.0));

    let biased = make_measure(&g, &[("a", 2.0), ("A", 1.0), ("b", 1.0), ("B", 1.0)]).unwrap();
    let probs: Vec<f64> = biased.atoms().iter().map(|a| a.prob).collect();
    assert_eq!(probs, vec![0.4, 0.2, 0.2, 0.2]);
    assert!(!biased.is_symmetric());

    assert!(matches!(make_measure(&g, &[("a", 1.0), ("b", 1.0)]), Err(WalkError::NotGenerating { missing }) if missing == "A"));
    assert!(matches!(make_measure(&g, &[("a", 1.0)]), Err(WalkError::Degenerate)));
    assert!(matches!(make_measure(&g, &[("a", 1.0), ("A", 0.0)]), Err(WalkError::BadWeight { .. })));

    let m = ModularGroup::new();
    let mu = uniform(&m).unwrap();
    assert_eq!(mu.atoms().len(), 3);
    assert_eq!(mu.atoms()[0].prob, 0.5);
    assert!(mu.is_symmetric());
}

#[test]
fn reflection() {
    let g = f2();
    let mu = uniform(&g).unwrap();
    let sorted = |m: &WalkMeasure<FreeGroup>| {
        let mut v = m.weights();
        v.sort_by(|x, y| x.0.cmp(&y.0));
        v
    };
    assert_eq!(sorted(&reflect(&mu)), sorted(&mu));
    let biased = make_measure(&g, &[("a", 0.4), ("A", 0.2), ("b", 0.2), ("B", 0.2)]).unwrap();
    let r = reflect(&biased);
    let expected = vec![("A".to_string(), 0.4), ("a".into(), 0.2), ("B".into(), 0.2), ("b".into(), 0.2)];
    assert_eq!(r.weights(), expected);
    assert_eq!(r.moments(), biased.moments());
    assert_eq!(reflect(&r).weights(), biased.weights());

    let m = ModularGroup::new();
    let mu = make_measure(&m, &[("T", 3.0), ("t", 1.0), ("S", 1.0), ("TS", 1.0)]).unwrap();
    let r = reflect(&mu);
    assert_eq!(r.atoms()[3].label, "st");
    assert_eq!(m.key(&r.atoms()[3].elem), m.key(&m.inverse(&mu.atoms()[3].elem)));
}

#[test]
fn sampling() {
    let mu = uniform(&f2()).unwrap();
    let a = sample_paths(&mu, 50, 8, 42);
    let b = sample_paths(&mu, 50, 8, 42);
    assert_eq!(a, b);
    assert_ne!(a[0].increments, a[1].increments);

    let draws = sample_paths(&mu, 1000, 100, 7);
    let hits = draws.iter().flat_map(|p| &p.increments).filter(|&&i| mu.atoms()[i as usize].label == "a").count();
    let freq = hits as f64 / 1e5;
    assert!((freq - 0.25).abs() <= 0.005, "{freq}");
}

#[test]
fn jsonl_export() {
    let mu = uniform(&f2()).unwrap();
    let paths = sample_paths(&mu, 3, 2, 1);
    let mut buf = Vec::new();
    write_paths_jsonl(&mu, &paths, &mut buf).unwrap();
    let text = String::from_utf8(buf).unwrap();
    let lines: Vec<serde_json::Value> = text.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), 2);
    assert_eq!(lines[0]["seed"], paths[0].seed);
    assert_eq!(lines[0]["increments"].as_array().unwrap().len(), 3);
}

#[test]
fn convolution_examples() {
    let g = f2();
    let mu = uniform(&g).unwrap();
    let c2 = convolution_power(&mu, 2, 1000).unwrap();
    assert!((c2.prob(&w("e")) - 0.25).abs() < 1e-15);
    assert!((c2.prob(&w("ab")) - 1.0 / 16.0).abs() < 1e-15);
    let c1 = convolution_power(&mu, 1, 1000).unwrap();
    assert!((c1.entropy() - 4f64.ln()).abs() < 1e-12);
    assert!(matches!(convolution_power(&mu, 6, 100), Err(WalkError::CapExceeded { cap: 100 })));
}

#[test]
fn exact_green_values() {
    let g = f2();
    let mu = uniform(&g).unwrap();
    let ex = ExactGreen::new(&mu).unwrap();
    assert!((ex.first_passage - 1.0 / 3.0).abs() < 1e-15);
    assert!((ex.diagonal - 1.5).abs() < 1e-15);
    let v = green_function(&mu, &w("ab"), &GreenMethod::ExactRecursive).unwrap();
    assert!((v.estimate.value - 1.0 / 6.0).abs() < 1e-15);
    assert!(green_function(&mu, &w("e"), &GreenMethod::ExactRecursive).unwrap().estimate.value >= 1.0);

    // Independent check: killed-ball convolution to a fixed horizon of 40.
    let params = TruncationParams { ball_steps: 10, min_horizon: Some(40), max_horizon: 40, ..Default::default() };
    let table = GreenTable::build(&mu, 2, &params).unwrap();
    assert_eq!(table.horizon(), 40);
    for s in ["e", "a", "ab", "abA"] {
        let exact = ex.at_norm(w(s).len());
        let approx = table.green(&g, &w(s)).unwrap();
        assert!(approx <= exact && exact - approx < 5e-4, "{s}: {approx} vs {exact}");
    }

    let biased = make_measure(&g, &[("a", 2.0), ("A", 1.0), ("b", 1.0), ("B", 1.0)]).unwrap();
    assert!(matches!(green_function(&biased, &w("a"), &GreenMethod::ExactRecursive), Err(WalkError::MethodMismatch { .. })));
}

#[test]
fn truncated_green_meets_the_closed_form() {
    let g = f2();
    let mu = uniform(&g).unwrap();
    let params = TruncationParams { ball_steps: 11, ..Default::default() };
    for s in ["e", "a", "Ba", "abab"] {
        let v = green_function(&mu, &w(s), &GreenMethod::TruncatedConvolution(params)).unwrap();
        let exact = 1.5 * 3f64.powi(-(w(s).len() as i32));
        assert!((v.estimate.value - exact).abs() < 1e-5, "{s}: {v:?}");
        assert!(v.truncation_bound <= 1e-8 * exact);
        assert!(v.horizon >= 40 + 10 * w(s).len());
    }
    let short = TruncationParams { ball_steps: 8, min_horizon: Some(5), max_horizon: 5, ..Default::default() };
    assert!(matches!(
        green_function(&mu, &w("aa"), &GreenMethod::TruncatedConvolution(short)),
        Err(WalkError::HorizonTooSmall { .. })
    ));
}

#[test]
fn monte_carlo_green_of_a_generator() {
    let mu = uniform(&f2()).unwrap();
    let v = green_function(&mu, &w("a"), &GreenMethod::MonteCarlo { paths: 20_000, horizon: 200, seed: 3 }).unwrap();
    assert!((v.estimate.value - 0.5).abs() <= 3.0 * v.estimate.stderr, "{v:?}");
    assert!(v.estimate.stderr > 0.0);
}

#[test]
fn green_metric_values() {
    let mu = uniform(&f2()).unwrap();
    let l3 = 3f64.ln();
    assert_eq!(green_metric(&mu, &w("e"), &GreenMethod::ExactRecursive).unwrap(), 0.0);
    assert!((green_metric(&mu, &w("ab"), &GreenMethod::ExactRecursive).unwrap() - 2.0 * l3).abs() < 1e-12);
    assert!((green_metric(&mu, &w("abAAB"), &GreenMethod::ExactRecursive).unwrap() - 5.0 * l3).abs() < 1e-12);
}

#[test]
fn green_busemann_values() {
    let g = f2();
    let mu = uniform(&g).unwrap();
    let ex = ExactGreen::new(&mu).unwrap();
    let zeta = BoundaryPoint::Tree(TreeEnd::parse("", "a", 64).unwrap());
    let approach: Vec<Word> = (1..=8).map(|n| w(&"a".repeat(n))).collect();
    let l3 = 3f64.ln();
    let at = |s: &str| green_busemann(&mu, &ex, &w(s), &zeta, &approach).unwrap();
    assert!((at("a").value + l3).abs() < 1e-12);
    assert!((at("b").value - l3).abs() < 1e-12);
    assert_eq!(at("e").value, 0.0);
    assert!(at("b").cauchy);
    assert!(matches!(green_busemann(&mu, &ex, &w("a"), &zeta, &approach[..3]), Err(WalkError::BadApproach)));
}

#[test]
fn green_csv() {
    let g = f2();
    let mu = uniform(&g).unwrap();
    let rows: Vec<(Word, String, Estimate)> = ["e", "a"]
        .iter()
        .map(|s| (w(s), s.to_string(), green_function(&mu, &w(s), &GreenMethod::ExactRecursive).unwrap().estimate))
        .collect();
    let mut buf = Vec::new();
    write_green_csv(&g, &rows, &mut buf).unwrap();
    let text = String::from_utf8(buf).unwrap();
    assert!(text.starts_with("element,displacement,green_value,stderr,method\n"));
    assert!(text.contains("a,1.000000000000,5.000000000000e-1,0.000000e0,exact-recursive"), "{text}");
}
