use std::collections::HashSet;
use std::sync::OnceLock;

use hypdrift_geometry::plane::{self, HBoundary};
use hypdrift_geometry::{apply, dist, ModelPoint, PlanePoint};
use hypdrift_groups::*;
use proptest::prelude::*;

fn f2_ball() -> &'static OrbitBall<FreeGroup> {
    static BALL: OnceLock<OrbitBall<FreeGroup>> = OnceLock::new();
    BALL.get_or_init(|| orbit_ball(&FreeGroup::new(2).unwrap(), 12.0, 2_000_000).unwrap())
}

fn plane_point() -> impl Strategy<Value = PlanePoint> {
    (-3.0..3.0f64, -2.5..2.5f64).prop_map(|(re, l)| PlanePoint::new(re, l.exp()).unwrap())
}

#[test]
fn free_shell_counts_are_exact() {
    for (k, r) in [(2usize, 12usize), (3, 8)] {
        let g = FreeGroup::new(k).unwrap();
        let shells = orbit_ball(&g, r as f64, 3_000_000).unwrap().shell_counts();
        assert_eq!(shells[0], 1);
        for (n, &c) in shells.iter().enumerate().skip(1) {
            assert_eq!(c, 2 * k * (2 * k - 1).pow(n as u32 - 1), "k={k} n={n}");
        }
    }
}

#[test]
fn plane_balls_are_deduplicated() {
    let s = SchottkyGroup::default();
    let b = orbit_ball(&s, 10.0, 100_000).unwrap();
    let pts: Vec<ModelPoint> = b.entries().iter().map(|e| s.orbit_point(&e.elem)).collect();
    let mut min = f64::INFINITY;
    for i in 0..pts.len() {
        for j in 0..i {
            min = min.min(dist(&pts[i], &pts[j]).unwrap());
        }
    }
    assert!(min > 1e-6, "{min}");

    let m = ModularGroup::new();
    let b = orbit_ball(&m, 7.0, 1_000_000).unwrap();
    let keys: HashSet<[i64; 4]> = b.entries().iter().map(|e| m.key(&e.elem)).collect();
    assert_eq!(keys.len(), b.len());
    for e in b.entries().iter().take(2000) {
        let other = b.entries().iter().filter(|f| f.elem.projective_distance(&e.elem) < 1e-7).count();
        assert_eq!(other, 1);
    }
}

#[test]
fn generators_are_symmetric() {
    fn check<A: GroupAction>(a: &A) {
        for g in a.generators() {
            let inv = &a.generators()[g.inverse];
            assert_eq!(a.key(&a.mul(&g.elem, &inv.elem)), a.key(&a.identity()), "{}", a.name());
        }
    }
    check(&FreeGroup::new(3).unwrap());
    check(&SchottkyGroup::default());
    check(&ModularGroup::new());
}

#[test]
fn balls_are_within_radius() {
    let s = SchottkyGroup::default();
    let b = orbit_ball(&s, 9.0, 100_000).unwrap();
    assert!(b.entries().iter().all(|e| e.displacement <= 9.0 + 1e-9));
    let m = ModularGroup::new();
    let b = orbit_ball(&m, 9.0, 1_000_000).unwrap();
    assert!(b.entries().iter().all(|e| e.displacement <= 9.0 + 1e-9));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn free_exponent_for_windows_reaching_ten(lo in 0usize..=7, hi in 10usize..=12) {
        let v = critical_exponent(f2_ball(), (lo as f64, hi as f64)).unwrap();
        prop_assert!((v.value - 3f64.ln()).abs() <= 0.01, "{v:?}");
    }

    #[test]
    fn balls_are_monotone(r1 in 0.0..5.0f64, dr in 0.0..2.0f64) {
        let r2 = r1 + dr;
        let m = ModularGroup::new();
        let (a, b) = (orbit_ball(&m, r1, 100_000).unwrap(), orbit_ball(&m, r2, 100_000).unwrap());
        prop_assert!(a.entries().iter().all(|e| b.contains(&m.key(&e.elem))));
        let s = SchottkyGroup::default();
        let (a, b) = (orbit_ball(&s, r1, 100_000).unwrap(), orbit_ball(&s, r2, 100_000).unwrap());
        prop_assert!(a.entries().iter().all(|e| b.contains(&s.key(&e.elem))));
        let f = FreeGroup::new(2).unwrap();
        let (a, b) = (orbit_ball(&f, r1, 100_000).unwrap(), orbit_ball(&f, r2, 100_000).unwrap());
        prop_assert!(a.entries().iter().all(|e| b.contains(&f.key(&e.elem))));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn busemann_is_invariant_under_the_parabolic(x in plane_point(), y in plane_point(), n in -50i64..50) {
        let t = ModularGroup::t_power(n);
        let ty = t.apply(&y);
        let before = plane::busemann(&HBoundary::Infinity, &x, &y);
        let after = plane::busemann(&HBoundary::Infinity, &x, &ty);
        prop_assert!((before - after).abs() <= 1e-8);
    }

    #[test]
    fn generators_act_isometrically(x in plane_point(), y in plane_point(), which in 0usize..4) {
        let (px, py) = (ModelPoint::Plane(x), ModelPoint::Plane(y));
        let d = dist(&px, &py).unwrap();
        let s = SchottkyGroup::default();
        let m = ModularGroup::new();
        for iso in [s.isometry(&s.generators()[which].elem), m.isometry(&m.generators()[which].elem)] {
            let e = dist(&apply(&iso, &px).unwrap(), &apply(&iso, &py).unwrap()).unwrap();
            prop_assert!((d - e).abs() <= 1e-8 * (1.0 + d));
        }
    }

    #[test]
    fn reduction_is_orbit_invariant(z in plane_point(), word in "[aAbB]{0,6}", mword in "[STt]{0,8}") {
        let s = SchottkyGroup::default();
        let g = s.parse(&word).unwrap();
        let (r1, r2) = (s.reduce(&z), s.reduce(&g.matrix.apply(&z)));
        prop_assert!(s.disks().iter().all(|d| !d.contains(&r1)));
        prop_assert!(plane::dist(&r1, &r2) < 1e-6);

        let m = ModularGroup::new();
        let g = m.parse(&mword).unwrap();
        let (r1, r2) = (m.reduce(&z), m.reduce(&g.apply(&z)));
        prop_assert!(r1.re().abs() <= 0.5 + 1e-12 && r1.re().hypot(r1.im()) >= 1.0 - 1e-12);
        // Boundary identifications: |Re| = 1/2 and |z| = 1 are paired sides.
        let d = plane::dist(&r1, &r2);
        let paired = [PlanePoint::new(r2.re() + 1.0, r2.im()).unwrap(), PlanePoint::new(r2.re() - 1.0, r2.im()).unwrap(), PlanePoint::new(-r2.re(), r2.im()).unwrap()];
        prop_assert!(d < 1e-6 || paired.iter().any(|p| plane::dist(&r1, p) < 1e-6), "{r1:?} {r2:?}");
    }
}
