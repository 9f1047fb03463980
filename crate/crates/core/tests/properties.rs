use num_integer::Integer;
use num_rational::BigRational;
use proptest::prelude::*;

use toric_ech::capacity::brute_force::brute_force_capacity;
use toric_ech::capacity::{capacities_range, capacity};
use toric_ech::geometry::{
    cross_action, hausdorff, rational_normal_points, Curve, Mode, RadialFn, ShapeClass, SubArc, MIN_SAMPLES,
};
use toric_ech::isoperimetric::{random_convex_curve, GeneratorParams};
use toric_ech::lattice_paths::{path_action, IntegralPath, PathEdge};
use toric_ech::spectral::{distribution_mass, reconstruct_capacity, spectral_distribution};
use toric_ech::value::{rat, rat_int};
use toric_ech::Value;

fn primitive_steps() -> Vec<(i64, i64)> {
    let mut v: Vec<(i64, i64)> =
        (0..5).flat_map(|a| (0..5).map(move |b| (a, b))).filter(|&(a, b)| (a, b) != (0, 0) && a.gcd(&b) == 1).collect();
    // Flattest first: increasing b/a.
    v.sort_by(|p, q| (p.1 * q.0).cmp(&(q.1 * p.0)));
    v
}

/// Random path assembled from a subset of primitive steps with multiplicities.
fn arb_path(mode: Mode) -> impl Strategy<Value = IntegralPath> {
    let steps = primitive_steps();
    let n = steps.len();
    proptest::collection::vec((any::<bool>(), 1i64..4), n).prop_map(move |choice| {
        let mut edges: Vec<PathEdge> = steps
            .iter()
            .zip(&choice)
            .filter(|(_, (keep, _))| *keep)
            .map(|(&(a, b), &(_, m))| PathEdge::new((a, -b), m))
            .collect();
        if mode == Mode::Concave {
            edges.reverse();
        }
        if edges.is_empty() {
            IntegralPath::empty(mode)
        } else {
            IntegralPath::from_edges(&edges, mode).expect("sorted steps form a path")
        }
    })
}

fn arb_triangle() -> impl Strategy<Value = Curve> {
    (1i64..5, 1i64..4, 1i64..5, 1i64..4)
        .prop_map(|(p, q, r, s)| Curve::triangle(rat(p, q), rat(r, s)).expect("positive intercepts"))
}

fn arb_scale() -> impl Strategy<Value = BigRational> {
    (1i64..9, 1i64..9).prop_map(|(p, q)| rat(p, q))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn lattice_counts_agree(path in arb_path(Mode::Convex), cpath in arb_path(Mode::Concave)) {
        for p in [&path, &cpath] {
            prop_assert_eq!(p.count_l(), p.count_l_pick());
            prop_assert_eq!(p.count_l_prime(), p.count_l() - p.primitive_steps() - 1);
        }
    }

    #[test]
    fn path_action_is_homogeneous(path in arb_path(Mode::Convex), t in arb_triangle(), c in arb_scale()) {
        let a = path_action(&t, &path, Mode::Convex).unwrap();
        let b = path_action(&t.scaled(&c), &path, Mode::Convex).unwrap();
        prop_assert_eq!(b, a.scale(&c));
    }

    #[test]
    fn cross_action_is_bilinear_in_scale(t in arb_triangle(), seed in 0u64..500, c in arb_scale()) {
        let g = random_convex_curve(seed, 4, GeneratorParams::default()).unwrap().curve;
        let a = cross_action(&t, &g, Mode::Convex).unwrap();
        prop_assert_eq!(cross_action(&t.scaled(&c), &g, Mode::Convex).unwrap(), a.scale(&c));
        prop_assert_eq!(cross_action(&t, &g.scaled(&c), Mode::Convex).unwrap(), a.scale(&c));
    }

    #[test]
    fn hausdorff_is_symmetric(p in arb_path(Mode::Convex), q in arb_path(Mode::Concave)) {
        let (a, b) = (p.scale(0.5).unwrap(), q.scale(0.5).unwrap());
        prop_assert!((hausdorff(&a, &b) - hausdorff(&b, &a)).abs() < 1e-12);
        prop_assert_eq!(hausdorff(&a, &a), 0.0);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn capacities_scale_exactly(t in arb_triangle(), c in arb_scale(), k in 1u32..20) {
        let base = capacity(&t, k, Mode::Convex).unwrap().value;
        let scaled = capacity(&t.scaled(&c), k, Mode::Convex).unwrap().value;
        prop_assert_eq!(scaled, base.scale(&c));
    }

    #[test]
    fn optimiser_matches_enumeration_on_triangles(t in arb_triangle(), k in 1u32..8) {
        for mode in [Mode::Convex, Mode::Concave] {
            let dp = capacity(&t, k, mode).unwrap();
            let bf = brute_force_capacity(&t, k, mode, 9).unwrap();
            prop_assert_eq!(&dp.value, &bf.value, "{} k={}", mode, k);
        }
    }

    #[test]
    fn capacities_start_at_zero_and_increase(seed in 0u64..1000, n in 2usize..6) {
        let g = random_convex_curve(seed, n, GeneratorParams::default()).unwrap().curve;
        let cs = capacities_range(&g, 25, Mode::Convex).unwrap();
        prop_assert_eq!(&cs[0].value, &Value::zero());
        for w in cs.windows(2) {
            prop_assert!(w[0].value.partial_cmp_value(&w[1].value) != Some(std::cmp::Ordering::Greater));
        }
        for r in &cs {
            for p in &r.optimal_paths {
                prop_assert_eq!(reconstruct_capacity(&g, p, Mode::Convex).unwrap(), r.value.clone());
            }
        }
    }

    #[test]
    fn distribution_is_additive_away_from_atoms(theta in 0.05f64..1.5, k in 5u32..60) {
        let e = Curve::parametric(
            RadialFn::Ellipse { a: 1.0, b: 1.7 },
            (0.0, std::f64::consts::FRAC_PI_2),
            ShapeClass::StrictlyConvex,
            MIN_SAMPLES,
        ).unwrap();
        let d = spectral_distribution(&e, k, Mode::Convex).unwrap();
        prop_assume!(d.atoms.iter().all(|a| (a.point.angle() - theta).abs() > 1e-6));
        let left = distribution_mass(&d, SubArc::angles(0.0, theta)).unwrap().to_f64();
        let right = distribution_mass(&d, SubArc::angles(theta, std::f64::consts::FRAC_PI_2)).unwrap().to_f64();
        let total = distribution_mass(&d, SubArc::Full).unwrap().to_f64();
        let c = capacity(&e, k, Mode::Convex).unwrap().value.to_f64();
        prop_assert!((left + right - total).abs() < 1e-9);
        prop_assert!((total - c).abs() < 1e-9 * (1.0 + c));
    }

    #[test]
    fn normal_points_grow_with_level(a in 0.5f64..2.0, b in 0.5f64..2.0, l in 1u32..6) {
        let e = Curve::parametric(
            RadialFn::Ellipse { a, b },
            (0.0, std::f64::consts::FRAC_PI_2),
            ShapeClass::StrictlyConvex,
            MIN_SAMPLES,
        ).unwrap();
        let small = rational_normal_points(&e, l).unwrap();
        let large = rational_normal_points(&e, l + 1).unwrap();
        for p in &small {
            prop_assert!(large.iter().any(|q| q.normal == p.normal));
        }
    }
}

#[test]
fn triangle_staircase() {
    let t = Curve::triangle(rat_int(1), rat_int(1)).unwrap();
    let got: Vec<Value> = capacities_range(&t, 7, Mode::Convex).unwrap().into_iter().map(|r| r.value).collect();
    let want: Vec<Value> = [0, 1, 1, 2, 2, 2, 3].into_iter().map(Value::from_int).collect();
    assert_eq!(got, want);
}
