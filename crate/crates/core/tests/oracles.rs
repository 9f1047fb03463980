//! Capacities of ellipsoids and of a few named curves against values that do
//! not go through the optimiser.

use std::f64::consts::SQRT_2;

use toric_ech::capacity::{capacities_range, capacity, ellipsoid_oracle};
use toric_ech::geometry::{Curve, Mode, ShapeClass};
use toric_ech::spectral::weyl_residual;
use toric_ech::value::{rat, rat_int};
use toric_ech::{Error, Value};

#[test]
fn ellipsoids_match_the_sorted_sums() {
    for (a, b) in [(rat_int(1), rat_int(3)), (rat(3, 2), rat_int(1)), (rat(1, 3), rat(2, 5))] {
        let t = Curve::triangle(a.clone(), b.clone()).unwrap();
        let oracle = ellipsoid_oracle(&a, &b, 40);
        for (mode, results) in [Mode::Convex, Mode::Concave].map(|m| (m, capacities_range(&t, 40, m).unwrap())) {
            for r in results {
                assert_eq!(r.value, Value::Exact(oracle[r.k as usize - 1].clone()), "{mode} k={}", r.k);
            }
        }
    }
}

#[test]
fn circle_values() {
    let c = Curve::quarter_circle(1.0);
    assert_eq!(capacity(&c, 1, Mode::Convex).unwrap().value.to_f64(), 0.0);
    assert!((capacity(&c, 2, Mode::Convex).unwrap().value.to_f64() - 1.0).abs() < 1e-12);
    assert!((capacity(&c, 3, Mode::Convex).unwrap().value.to_f64() - SQRT_2).abs() < 1e-9);
    let r = weyl_residual(&c, 100, Mode::Convex).unwrap();
    assert!(r.abs() <= 5.0 / 10.0, "{r}");
}

#[test]
fn mode_must_match_curve() {
    let c = Curve::quarter_circle(1.0);
    assert!(matches!(capacity(&c, 3, Mode::Concave), Err(Error::ModeMismatch { .. })));
    assert!(matches!(capacity(&c, 0, Mode::Convex), Err(Error::InvalidK)));
}

/// Polydisk P(a, b): `min { a·m + b·n : (m+1)(n+1) ≥ k }`.
#[test]
fn polydisks_match_the_rectangle_counts() {
    for (a, b) in [(1, 1), (1, 2), (2, 3)] {
        let corner = Curve::polygonal_from_ints(&[(a, 0), (a, b), (0, b)], ShapeClass::Convex).unwrap();
        for r in capacities_range(&corner, 40, Mode::Convex).unwrap() {
            let k = r.k as i64;
            let want = (0..k).flat_map(|m| (0..k).map(move |n| (m, n))).filter(|(m, n)| (m + 1) * (n + 1) >= k);
            let want = want.map(|(m, n)| a * m + b * n).min().unwrap();
            assert_eq!(r.value, Value::from_int(want), "P({a},{b}) k = {k}");
        }
    }
}
