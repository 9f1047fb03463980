//! Acceptance suite: one line per criterion, nonzero exit if any fails.

use std::cmp::Ordering;
use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};
use std::fs;
use std::path::PathBuf;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use toric_ech::capacity::brute_force::{brute_force_capacity, sufficient_box};
use toric_ech::capacity::{capacities_range, capacity, capacity_with, ellipsoid_oracle, CapacityResult, SearchOptions};
use toric_ech::geometry::{hausdorff, read_curve_file, Curve, CurveKind, Mode, SubArc};
use toric_ech::isoperimetric::{
    check_inequality, nested_convex_pair, normalized_concave_pair, random_concave_curve, random_convex_curve,
    reflection_sum, run_trials, GeneratorParams,
};
use toric_ech::spectral::{equidistribution_report, reconstruct_capacity, weyl_residual_of};
use toric_ech::value::{rat, rat_int};
use toric_ech::Value;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn engine<T>(r: toric_ech::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn data_curve(name: &str) -> Curve {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data/curves").join(name);
    read_curve_file(&path).expect("readable").expect("valid curve")
}

/// First `n` terms of the sorted multiset `{a·i + b·j : i, j ≥ 0}`.
fn staircase(a: i64, b: i64, n: usize) -> Vec<i64> {
    let mut terms = Vec::new();
    let bound = a.max(b) * n as i64;
    for i in 0..=bound / a {
        for j in 0..=(bound - a * i) / b {
            terms.push(a * i + b * j);
        }
    }
    terms.sort_unstable();
    terms.truncate(n);
    terms
}

fn c1_ellipsoids() -> Outcome {
    let start = Instant::now();
    for (a, b) in [(1, 1), (1, 2), (2, 3), (1, 5)] {
        let t = engine(Curve::triangle(rat_int(a), rat_int(b)))?;
        let reference = staircase(a, b, 60);
        let oracle = ellipsoid_oracle(&rat_int(a), &rat_int(b), 60);
        for (i, r) in engine(capacities_range(&t, 60, Mode::Convex))?.iter().enumerate() {
            let want = Value::Exact(rat_int(reference[i]));
            ensure(Value::Exact(oracle[i].clone()) == want, || format!("library oracle E({a},{b}) k = {}", r.k))?;
            ensure(r.value == want, || format!("E({a},{b}) k = {}: {} vs {want}", r.k, r.value))?;
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(60), || format!("took {elapsed:.1?}"))?;
    Ok(format!("240 values exact in {elapsed:.1?}"))
}

fn c2_brute_force() -> Outcome {
    let start = Instant::now();
    let p = GeneratorParams::default();
    let mut curves = Vec::new();
    for i in 0..20u64 {
        curves.push((engine(random_convex_curve(1000 + i, 3 + i as usize % 4, p))?.curve, Mode::Convex));
    }
    for i in 0..10u64 {
        curves.push((engine(random_concave_curve(2000 + i, 3 + i as usize % 3, p))?.curve, Mode::Concave));
    }
    for (n, (c, mode)) in curves.iter().enumerate() {
        for k in 1..=12 {
            let dp = engine(capacity(c, k, *mode))?;
            let bf = engine(brute_force_capacity(c, k, *mode, engine(sufficient_box(c, k, *mode))?))?;
            ensure(dp.value == bf.value, || format!("curve {n} ({mode}) k = {k}: {} vs {}", dp.value, bf.value))?;
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(300), || format!("took {elapsed:.1?}"))?;
    Ok(format!("20 convex + 10 concave curves, k <= 12, in {elapsed:.1?}"))
}

fn c3_convex_concave() -> Outcome {
    let t = engine(Curve::triangle(rat_int(1), rat_int(1)))?;
    let convex = engine(capacities_range(&t, 40, Mode::Convex))?;
    let concave = engine(capacities_range(&t, 40, Mode::Concave))?;
    for (a, b) in convex.iter().zip(&concave) {
        ensure(a.value == b.value, || format!("k = {}: {} vs {}", a.k, a.value, b.value))?;
    }
    Ok("k <= 40 equal".into())
}

fn c4_weyl() -> Outcome {
    let mut report = Vec::new();
    let t = engine(Curve::triangle(rat_int(1), rat_int(1)))?;
    let circle = Curve::quarter_circle(1.0);
    for (name, curve, ks, c) in
        [("T(1,1)", &t, vec![50, 100, 200, 300], 3.0), ("circle", &circle, vec![50, 100, 200], 5.0)]
    {
        let area = engine(curve.area())?;
        for k in ks {
            let r = engine(capacity(curve, k, Mode::Convex))?;
            let res = weyl_residual_of(&r.value, k, &area);
            let bound = c / (k as f64).sqrt();
            ensure(res.abs() <= bound, || format!("{name} k = {k}: |{res:.4}| > {bound:.4}"))?;
            report.push(format!("{name}@{k} {res:+.4}"));
        }
    }
    Ok(report.join(", "))
}

fn c5_equidistribution() -> Outcome {
    let circle = Curve::quarter_circle(1.0);
    let arcs = [SubArc::angles(0.0, FRAC_PI_4), SubArc::angles(FRAC_PI_4, FRAC_PI_2)];
    let rep = engine(equidistribution_report(&circle, Mode::Convex, &[20, 200], &arcs, &SearchOptions::default()))?;
    let err = |k: u32, arc: usize| rep.rows.iter().find(|r| r.k == k && r.arc_id == arc).map_or(f64::NAN, |r| r.err);
    let mut failures = Vec::new();
    let mut report = Vec::new();
    for (arc, name) in ["[0,pi/4]", "[pi/4,pi/2]"].iter().enumerate() {
        let (e20, e200) = (err(20, arc), err(200, arc));
        report.push(format!("{name}: err20 {e20:.4} err200 {e200:.4}"));
        if e200.is_nan() || e200 > 0.2 {
            failures.push(format!("(a) {name}: {e200:.4} > 0.2"));
        }
        if !matches!(e200.partial_cmp(&e20), Some(Ordering::Less)) {
            failures.push(format!("(b) {name}: {e200:.4} not < {e20:.4}"));
        }
    }
    if failures.is_empty() {
        Ok(report.join("; "))
    } else {
        Err(format!("{}; {}", failures.join("; "), report.join("; ")))
    }
}

/// Spread of `d_H` over the enumerated optima, reported alongside the
/// canonical (lexicographically first) one.
fn hausdorff_spread(curve: &Curve, r: &CapacityResult) -> Result<(f64, f64), String> {
    let area = engine(curve.area())?.to_f64();
    let s = (area / r.k as f64).sqrt();
    let segments = curve.segments();
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for p in &r.optimal_paths {
        let d = hausdorff(&engine(p.scale(s))?, &segments);
        lo = lo.min(d);
        hi = hi.max(d);
    }
    Ok((lo, hi))
}

fn c6_hausdorff() -> Outcome {
    let circle = Curve::quarter_circle(1.0);
    let e12 = engine(Curve::triangle(rat_int(1), rat_int(2)))?;
    let opts = SearchOptions::default();
    let mut failures = Vec::new();
    let mut report = Vec::new();
    for (name, curve) in [("circle", &circle), ("E(1,2)", &e12)] {
        let rep = engine(equidistribution_report(curve, Mode::Convex, &[20, 200], &[], &opts))?;
        let d = |k: u32| rep.rows.iter().find(|r| r.k == k).map_or(f64::NAN, |r| r.hausdorff);
        let (d20, d200) = (d(20), d(200));
        let r200 = engine(capacity_with(curve, 200, Mode::Convex, &opts))?;
        let (lo, hi) = hausdorff_spread(curve, &r200)?;
        report.push(format!(
            "{name}: d20 {d20:.4} d200 {d200:.4} ({} optima at 200, d_H in [{lo:.4}, {hi:.4}])",
            r200.num_optima
        ));
        if !matches!(d200.partial_cmp(&d20), Some(Ordering::Less)) {
            failures.push(format!("{name}: {d200:.4} not < {d20:.4}"));
        }
    }
    if failures.is_empty() {
        Ok(report.join("; "))
    } else {
        Err(format!("{}; {}", failures.join("; "), report.join("; ")))
    }
}

/// `c_1 = 0`, nondecreasing values, and every optimum reproducing its value.
fn axioms(name: &str, curve: &Curve, results: &[CapacityResult], mode: Mode) -> Result<(), String> {
    ensure(results[0].value.to_f64() == 0.0, || format!("{name}: c_1 = {}", results[0].value))?;
    for w in results.windows(2) {
        let ok = w[0].value.partial_cmp_value(&w[1].value).is_some_and(|o| o != Ordering::Greater);
        ensure(ok, || format!("{name}: c_{} > c_{}", w[0].k, w[1].k))?;
    }
    for r in results {
        for p in &r.optimal_paths {
            let v = engine(reconstruct_capacity(curve, p, mode))?;
            let ok = if curve.kind() == CurveKind::Polygonal {
                v.is_exact() && v == r.value
            } else {
                v.approx_eq(&r.value, 1e-9 * (1.0 + v.to_f64().abs()))
            };
            ensure(ok, || format!("{name} k = {}: reconstruction {v} vs {}", r.k, r.value))?;
        }
    }
    Ok(())
}

fn c7_axioms() -> Outcome {
    let p = GeneratorParams::default();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for i in 0..50u64 {
        let (c, mode) = if i % 2 == 0 {
            (engine(random_convex_curve(3000 + i, 3 + i as usize % 4, p))?.curve, Mode::Convex)
        } else {
            (engine(random_concave_curve(3000 + i, 3 + i as usize % 3, p))?.curve, Mode::Concave)
        };
        let s = rat(rng.gen_range(1..=20), rng.gen_range(1..=20));
        let base = engine(capacities_range(&c, 15, mode))?;
        let scaled = engine(capacities_range(&c.scaled(&s), 15, mode))?;
        for (a, b) in base.iter().zip(&scaled) {
            ensure(b.value == a.value.scale(&s), || {
                format!("scaling {i} by {s} k = {}: {} vs {}", a.k, b.value, a.value)
            })?;
        }
        axioms(&format!("random {i}"), &c, &base, mode)?;
        axioms(&format!("random {i} scaled"), &c.scaled(&s), &scaled, mode)?;
    }
    for i in 0..50u64 {
        let (inner, outer) = engine(nested_convex_pair(4000 + i, p))?;
        let a = engine(capacities_range(&inner, 15, Mode::Convex))?;
        let b = engine(capacities_range(&outer, 15, Mode::Convex))?;
        for (x, y) in a.iter().zip(&b) {
            let ok = x.value.partial_cmp_value(&y.value).is_some_and(|o| o != Ordering::Greater);
            ensure(ok, || format!("nested pair {i} k = {}: {} > {}", x.k, x.value, y.value))?;
        }
        axioms(&format!("inner {i}"), &inner, &a, Mode::Convex)?;
    }
    let mut named = vec![
        ("T(1,1) convex", engine(Curve::triangle(rat_int(1), rat_int(1)))?, Mode::Convex),
        ("T(1,1) concave", engine(Curve::triangle(rat_int(1), rat_int(1)))?, Mode::Concave),
    ];
    for file in [
        "ball.json",
        "ellipsoid-1-2.json",
        "quarter-circle.json",
        "ellipse-1-1.7.json",
        "polydisk-corner.json",
        "concave-polygon.json",
        "concave-astroid.json",
    ] {
        let c = data_curve(file);
        let mode = if c.shape_class().is_concave() { Mode::Concave } else { Mode::Convex };
        named.push((file, c, mode));
    }
    for (name, c, mode) in &named {
        axioms(name, c, &engine(capacities_range(c, 40, *mode))?, *mode)?;
    }
    Ok(format!("50 scalings, 50 nested pairs, {} fixed curves", named.len()))
}

fn c8_isoperimetric() -> Outcome {
    let p = GeneratorParams::default();
    for (mode, n) in [(Mode::Convex, 200), (Mode::Concave, 100)] {
        for t in engine(run_trials(mode, 0, n, 6, p))? {
            let ok = t.verdict.exact_sign.is_some_and(|s| s != Ordering::Less);
            ensure(ok, || format!("{mode} seed {}: slack {} ({:?})", t.seed, t.verdict.slack, t.verdict.exact_sign))?;
        }
    }
    for i in 0..20u64 {
        let s = rat(2 + i as i64, 3);
        let c = engine(random_convex_curve(5000 + i, 3 + i as usize % 4, p))?.curve;
        let v = engine(check_inequality(&c, &c.scaled(&s), Mode::Convex))?;
        ensure(v.exact_sign == Some(Ordering::Equal) && v.equality, || format!("convex scaling {i}: {v:?}"))?;
        let c = engine(random_concave_curve(5000 + i, 3 + i as usize % 3, p))?.curve;
        let v = engine(check_inequality(&c, &c.scaled(&s), Mode::Concave))?;
        ensure(v.exact_sign == Some(Ordering::Equal) && v.equality, || format!("concave scaling {i}: {v:?}"))?;
    }
    let mut worst: f64 = 0.0;
    for i in 0..50u64 {
        let (a, b) = engine(normalized_concave_pair(6000 + i, 6, p))?;
        let dev = (engine(reflection_sum(&a, &b))?.to_f64() - 2.0).abs();
        worst = worst.max(dev);
        ensure(dev <= 1e-9, || format!("reflection pair {i}: |sum - 2| = {dev:e}"))?;
    }
    Ok(format!("300 trials nonnegative, 40 scaling equalities, reflection max deviation {worst:e}"))
}

fn c9_determinism() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_toric-ech");
    let curve = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data/curves/quarter-circle.json");
    let dirs = [tempfile::tempdir().map_err(|e| e.to_string())?, tempfile::tempdir().map_err(|e| e.to_string())?];
    for d in &dirs {
        let status = Command::new(bin)
            .arg("capacities")
            .arg("--curve")
            .arg(&curve)
            .args(["--k", "1..80", "--out"])
            .arg(d.path())
            .output()
            .map_err(|e| e.to_string())?;
        ensure(status.status.success(), || format!("run failed: {}", String::from_utf8_lossy(&status.stderr)))?;
    }
    for name in ["capacities.csv", "optima.csv"] {
        let a = fs::read(dirs[0].path().join(name)).map_err(|e| e.to_string())?;
        let b = fs::read(dirs[1].path().join(name)).map_err(|e| e.to_string())?;
        ensure(!a.is_empty() && a == b, || format!("{name} differs between runs"))?;
    }
    Ok("capacities.csv and optima.csv byte-identical".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("ellipsoid exactness", c1_ellipsoids),
        ("brute-force equivalence", c2_brute_force),
        ("convex/concave agreement", c3_convex_concave),
        ("Weyl law", c4_weyl),
        ("equidistribution trend", c5_equidistribution),
        ("Hausdorff convergence", c6_hausdorff),
        ("axiom suites", c7_axioms),
        ("isoperimetric suites", c8_isoperimetric),
        ("determinism", c9_determinism),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("PASS {} {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {} {name}: {detail}", i + 1);
            }
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
