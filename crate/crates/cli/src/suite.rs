//! `check`: oracle equivalence, axiom and isoperimetric suites.

use std::path::Path;

use anyhow::Context;
use toric_ech::capacity::brute_force::{brute_force_capacity, sufficient_box};
use toric_ech::capacity::{capacities_range, capacity, ellipsoid_oracle, CapacityResult};
use toric_ech::geometry::{Curve, Mode};
use toric_ech::isoperimetric::{
    check_inequality, nested_convex_pair, normalized_concave_pair, random_concave_curve, random_convex_curve,
    reflection_sum, run_trials, GeneratorParams,
};
use toric_ech::spectral::reconstruct_capacity;
use toric_ech::value::{parse_rational, rat, rat_int};
use toric_ech::Value;

use crate::failure::Failure;
use crate::parse::{load_curve, resolve_mode};
use crate::Common;

type Outcome = Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn engine<T>(r: toric_ech::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

/// `c_1 = 0`, nondecreasing values, and every optimal path reproducing its
/// value from support points.
fn axioms(curve: &Curve, results: &[CapacityResult], mode: Mode) -> Outcome {
    ensure(results.first().is_some_and(|r| r.value.to_f64() == 0.0), || "c_1 is not zero".into())?;
    for w in results.windows(2) {
        ensure(w[0].value.to_f64() <= w[1].value.to_f64() + 1e-12, || format!("c_{} > c_{}", w[0].k, w[1].k))?;
    }
    for r in results {
        for p in &r.optimal_paths {
            let v = engine(reconstruct_capacity(curve, p, mode))?;
            let ok = if v.is_exact() && r.value.is_exact() {
                v == r.value
            } else {
                v.approx_eq(&r.value, 1e-9 * (1.0 + v.to_f64()))
            };
            ensure(ok, || format!("k = {}: reconstruction {v} differs from {}", r.k, r.value))?;
        }
    }
    Ok(())
}

fn ellipsoids() -> Outcome {
    for (a, b) in [(1, 1), (1, 2), (2, 3)] {
        let t = engine(Curve::triangle(rat_int(a), rat_int(b)))?;
        let oracle = ellipsoid_oracle(&rat_int(a), &rat_int(b), 30);
        for r in engine(capacities_range(&t, 30, Mode::Convex))? {
            let want = Value::Exact(oracle[r.k as usize - 1].clone());
            ensure(r.value == want, || format!("E({a},{b}) k = {}: {} vs {want}", r.k, r.value))?;
        }
    }
    Ok(())
}

fn convex_concave_agree() -> Outcome {
    let t = engine(Curve::triangle(rat_int(1), rat_int(1)))?;
    let convex = engine(capacities_range(&t, 20, Mode::Convex))?;
    let concave = engine(capacities_range(&t, 20, Mode::Concave))?;
    for (a, b) in convex.iter().zip(&concave) {
        ensure(a.value == b.value, || format!("k = {}: {} vs {}", a.k, a.value, b.value))?;
    }
    Ok(())
}

fn brute_force(seed: u64) -> Outcome {
    let p = GeneratorParams::default();
    let mut curves = Vec::new();
    for i in 0..4 {
        curves.push((engine(random_convex_curve(seed + i, 3 + (i as usize % 2), p))?.curve, Mode::Convex));
    }
    for i in 0..2 {
        curves.push((engine(random_concave_curve(seed + 100 + i, 3, p))?.curve, Mode::Concave));
    }
    for (c, mode) in &curves {
        for k in 1..=8 {
            let dp = engine(capacity(c, k, *mode))?;
            let bf = engine(brute_force_capacity(c, k, *mode, engine(sufficient_box(c, k, *mode))?))?;
            ensure(dp.value == bf.value, || format!("{mode} k = {k}: {} vs {}", dp.value, bf.value))?;
        }
    }
    Ok(())
}

fn conformality(seed: u64) -> Outcome {
    for i in 0..5 {
        let c = engine(random_convex_curve(seed + i, 4, GeneratorParams::default()))?.curve;
        let s = rat(2 + i as i64, 3);
        let base = engine(capacities_range(&c, 10, Mode::Convex))?;
        let scaled = engine(capacities_range(&c.scaled(&s), 10, Mode::Convex))?;
        for (a, b) in base.iter().zip(&scaled) {
            ensure(b.value == a.value.scale(&s), || format!("k = {}: {} vs {}·{}", a.k, b.value, s, a.value))?;
        }
        axioms(&c, &base, Mode::Convex)?;
    }
    Ok(())
}

fn monotonicity(seed: u64) -> Outcome {
    for i in 0..5 {
        let (inner, outer) = engine(nested_convex_pair(seed + i, GeneratorParams::default()))?;
        let a = engine(capacities_range(&inner, 10, Mode::Convex))?;
        let b = engine(capacities_range(&outer, 10, Mode::Convex))?;
        for (x, y) in a.iter().zip(&b) {
            ensure(x.value.to_f64() <= y.value.to_f64(), || format!("k = {}: {} > {}", x.k, x.value, y.value))?;
        }
    }
    Ok(())
}

fn isoperimetric(seed: u64) -> Outcome {
    let p = GeneratorParams::default();
    for (mode, n) in [(Mode::Convex, 20), (Mode::Concave, 10)] {
        for t in engine(run_trials(mode, seed, n, 6, p))? {
            ensure(t.verdict.pass, || format!("{mode} seed {}: slack {}", t.seed, t.verdict.slack))?;
        }
    }
    for i in 0..5 {
        let c = engine(random_convex_curve(seed + i, 5, p))?.curve;
        let v = engine(check_inequality(&c, &c.scaled(&rat(5, 3)), Mode::Convex))?;
        ensure(v.equality, || format!("scaled pair {i} not flagged as equality"))?;
        let (a, b) = engine(normalized_concave_pair(seed + i, 5, p))?;
        let s = engine(reflection_sum(&a, &b))?;
        ensure(s == Value::from_int(2), || format!("reflection sum {s}"))?;
    }
    Ok(())
}

fn parse_expected(path: &Path) -> Result<Vec<(u32, String)>, Failure> {
    let mut r =
        csv::Reader::from_path(path).with_context(|| format!("reading {}", path.display())).map_err(Failure::io)?;
    let mut out = Vec::new();
    for rec in r.records() {
        let rec = rec?;
        let k = rec.get(0).and_then(|s| s.trim().parse().ok());
        match (k, rec.get(1)) {
            (Some(k), Some(v)) => out.push((k, v.trim().to_string())),
            _ => return Err(Failure::config(anyhow::anyhow!("{}: rows must be k,value", path.display()))),
        }
    }
    Ok(out)
}

fn matches_expected(got: &Value, want: &str) -> bool {
    let exact_text = !want.contains(['.', 'e', 'E']);
    match (got, parse_rational(want)) {
        (Value::Exact(g), Ok(w)) if exact_text => *g == w,
        _ => want.parse::<f64>().is_ok_and(|w| (got.to_f64() - w).abs() <= 1e-9 * (1.0 + w.abs())),
    }
}

pub fn check(common: &Common, expect: Option<&Path>) -> Result<(), Failure> {
    let seed = common.seed;
    let mut checks: Vec<(String, Outcome)> = Vec::new();
    if let Some(path) = common.curve.as_deref() {
        let curve = load_curve(Some(path))?;
        let mode = resolve_mode(&curve, common.mode.as_deref())?;
        let expected = expect.map(parse_expected).transpose()?;
        let k_max = expected.as_ref().and_then(|e| e.iter().map(|(k, _)| *k).max()).unwrap_or(20).max(1);
        let results = capacities_range(&curve, k_max, mode)?;
        checks.push(("axioms".into(), axioms(&curve, &results, mode)));
        if let Some(expected) = expected {
            let outcome = expected.iter().try_for_each(|(k, want)| {
                let got = results.get(*k as usize - 1).map(|r| &r.value).ok_or(format!("k = {k} out of range"))?;
                ensure(matches_expected(got, want), || format!("k = {k}: computed {got}, expected {want}"))
            });
            checks.push(("expected capacities".into(), outcome));
        }
    } else {
        checks.push(("ellipsoid oracle".into(), ellipsoids()));
        checks.push(("convex/concave agreement".into(), convex_concave_agree()));
        checks.push(("brute-force equivalence".into(), brute_force(seed)));
        checks.push(("conformality and axioms".into(), conformality(seed)));
        checks.push(("monotonicity".into(), monotonicity(seed)));
        checks.push(("isoperimetric".into(), isoperimetric(seed)));
    }
    let mut failed = 0;
    for (name, outcome) in &checks {
        match outcome {
            Ok(()) => println!("ok   {name}"),
            Err(e) => {
                failed += 1;
                println!("FAIL {name}: {e}");
            }
        }
    }
    if failed > 0 {
        return Err(Failure::Check(format!("{failed} of {} checks failed", checks.len())));
    }
    Ok(())
}
