use std::fs;
use std::path::Path;

use anyhow::{anyhow, Context};
use toric_ech::capacity::{capacities_range_with, CapacityResult, SearchOptions};
use toric_ech::geometry::{
    nice_check, rational_normal_points, Curve, CurvePoint, Mode, NiceVerdict, NiceWitness, SubArc,
};
use toric_ech::isoperimetric::{check_inequality, fingerprint, run_trials, GeneratorParams, InequalityVerdict};
use toric_ech::spectral::{equidistribution_report, weyl_table};
use toric_ech::value::format_sig;

use crate::failure::Failure;
use crate::parse::{ks_or, load_curve, parse_arcs, resolve_mode};
use crate::{svg, Common};

pub fn float(x: f64) -> String {
    format_sig(x, 12)
}

fn create_out(dir: &Path) -> Result<(), Failure> {
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display())).map_err(Failure::io)
}

fn writer(dir: &Path, name: &str) -> Result<csv::Writer<fs::File>, Failure> {
    let path = dir.join(name);
    csv::Writer::from_path(&path).with_context(|| format!("writing {}", path.display())).map_err(Failure::io)
}

fn write_text(dir: &Path, name: &str, text: &str) -> Result<(), Failure> {
    let path = dir.join(name);
    fs::write(&path, text).with_context(|| format!("writing {}", path.display())).map_err(Failure::io)
}

/// Capacities for the requested indices, computed in one sweep up to the
/// largest.
pub fn compute_capacities(
    curve: &Curve,
    mode: Mode,
    ks: &[u32],
    max_paths: usize,
) -> Result<Vec<CapacityResult>, Failure> {
    let k_max = *ks.last().expect("nonempty");
    let opts = SearchOptions { max_paths: max_paths.max(1), ..SearchOptions::default() };
    let all = capacities_range_with(curve, k_max, mode, &opts)?;
    Ok(all.into_iter().filter(|r| ks.binary_search(&r.k).is_ok()).collect())
}

pub fn capacities(common: &Common, max_paths: usize) -> Result<(), Failure> {
    let curve = load_curve(common.curve.as_deref())?;
    let mode = resolve_mode(&curve, common.mode.as_deref())?;
    let ks = ks_or(common, "1..10")?;
    let results = compute_capacities(&curve, mode, &ks, max_paths)?;
    create_out(&common.out)?;
    let mut w = writer(&common.out, "capacities.csv")?;
    w.write_record(["k", "mode", "value", "value_f64", "num_optima", "nodes_explored"])?;
    let mut paths = writer(&common.out, "optima.csv")?;
    paths.write_record(["k", "index", "path"])?;
    for r in &results {
        w.write_record([
            r.k.to_string(),
            mode.to_string(),
            r.value.to_string(),
            float(r.value.to_f64()),
            r.num_optima.to_string(),
            r.nodes_explored.to_string(),
        ])?;
        for (i, p) in r.optimal_paths.iter().take(max_paths).enumerate() {
            paths.write_record([r.k.to_string(), i.to_string(), p.to_string()])?;
        }
        println!("c_{} = {}", r.k, r.value);
    }
    w.flush()?;
    paths.flush()?;
    Ok(())
}

pub fn equidist(common: &Common) -> Result<(), Failure> {
    let curve = load_curve(common.curve.as_deref())?;
    let mode = resolve_mode(&curve, common.mode.as_deref())?;
    let ks = ks_or(common, "20,50,100,200")?;
    let arcs = match common.arcs.as_deref() {
        Some(a) => parse_arcs(a).map_err(Failure::config)?,
        None => vec![SubArc::Full],
    };
    let opts = SearchOptions::default();
    let report = equidistribution_report(&curve, mode, &ks, &arcs, &opts)?;
    for w in &report.warnings {
        eprintln!("warning: {w}");
    }
    create_out(&common.out)?;
    let mut w = writer(&common.out, "equidist.csv")?;
    w.write_record([
        "k",
        "arc_id",
        "arc_start",
        "arc_end",
        "mass",
        "target",
        "err",
        "hausdorff",
        "restricted_hausdorff",
        "num_optima",
    ])?;
    for r in &report.rows {
        w.write_record([
            r.k.to_string(),
            r.arc_id.to_string(),
            float(r.arc.0),
            float(r.arc.1),
            r.mass.as_ref().map_or_else(|| "NaN".to_string(), |m| m.to_string()),
            float(r.target),
            float(r.err),
            float(r.hausdorff),
            float(r.restricted_hausdorff),
            r.num_optima.to_string(),
        ])?;
    }
    w.flush()?;

    let mut series: Vec<(String, Vec<(f64, f64)>)> = Vec::new();
    for (arc_id, arc) in arcs.iter().enumerate() {
        let pts = report.rows.iter().filter(|r| r.arc_id == arc_id).map(|r| (r.k as f64, r.err)).collect();
        let (a, b) = arc.bounds(&curve);
        series.push((format!("err on [{a:.4}, {b:.4}]"), pts));
    }
    let haus = report.rows.iter().filter(|r| r.arc_id == 0).map(|r| (r.k as f64, r.hausdorff)).collect();
    series.push(("Hausdorff distance".into(), haus));
    write_text(&common.out, "equidist_err.svg", &svg::log_plot(&series, "k", "error", "equidistribution error"))?;

    let area = curve.area()?.to_f64();
    let results = compute_capacities(&curve, mode, &ks, 1)?;
    let mut layers = Vec::new();
    for r in &results {
        let p = r.optimal_paths.first().ok_or_else(|| Failure::Engine(anyhow!("no optimal path for k = {}", r.k)))?;
        layers.push((format!("k = {}", r.k), p.scale((area / r.k as f64).sqrt())?));
    }
    write_text(&common.out, "equidist_paths.svg", &svg::overlay(&curve.segments(), &layers, "rescaled optimal paths"))?;
    Ok(())
}

pub fn weyl(common: &Common) -> Result<(), Failure> {
    let curve = load_curve(common.curve.as_deref())?;
    let mode = resolve_mode(&curve, common.mode.as_deref())?;
    let ks = ks_or(common, "1..50")?;
    let rows = weyl_table(&curve, mode, &ks, &SearchOptions::default())?;
    create_out(&common.out)?;
    let mut w = writer(&common.out, "weyl.csv")?;
    w.write_record(["k", "value", "value_f64", "residual", "scaled_residual"])?;
    for r in &rows {
        w.write_record([
            r.k.to_string(),
            r.value.to_string(),
            float(r.value.to_f64()),
            float(r.residual),
            float(r.residual * (r.k as f64).sqrt()),
        ])?;
    }
    w.flush()?;
    let series = vec![("|residual|".to_string(), rows.iter().map(|r| (r.k as f64, r.residual.abs())).collect())];
    write_text(&common.out, "weyl.svg", &svg::log_plot(&series, "k", "|c_k/sqrt(k) - sqrt(4 area)|", "Weyl residual"))?;
    Ok(())
}

fn sign_label(v: &InequalityVerdict) -> &'static str {
    match v.exact_sign {
        Some(std::cmp::Ordering::Less) => "negative",
        Some(std::cmp::Ordering::Equal) => "zero",
        Some(std::cmp::Ordering::Greater) => "positive",
        None => "",
    }
}

pub fn isoper(common: &Common, trials: usize, vertices: usize, target: Option<&Path>) -> Result<(), Failure> {
    let mode: Mode = common.mode.as_deref().unwrap_or("convex").parse()?;
    create_out(&common.out)?;
    let mut w = writer(&common.out, "isoper.csv")?;
    w.write_record([
        "seed",
        "mode",
        "slack",
        "exact_sign",
        "pass",
        "equality_flag",
        "base_fingerprint",
        "target_fingerprint",
    ])?;
    let mut failures = 0usize;
    let mut record = |w: &mut csv::Writer<fs::File>, seed: String, v: &InequalityVerdict, b: &str, t: &str| {
        failures += usize::from(!v.pass);
        w.write_record([
            seed,
            v.mode.to_string(),
            float(v.slack),
            sign_label(v).to_string(),
            v.pass.to_string(),
            v.equality.to_string(),
            b.to_string(),
            t.to_string(),
        ])
    };
    if let Some(target) = target {
        let base = load_curve(common.curve.as_deref())?;
        let target = load_curve(Some(target))?;
        let v = check_inequality(&base, &target, mode)?;
        record(&mut w, String::new(), &v, &fingerprint(&base), &fingerprint(&target))?;
        println!("slack {} pass {} equality {}", float(v.slack), v.pass, v.equality);
    } else {
        let results = run_trials(mode, common.seed, trials, vertices, GeneratorParams::default())?;
        for t in &results {
            record(&mut w, t.seed.to_string(), &t.verdict, &t.base_fingerprint, &t.target_fingerprint)?;
        }
        println!("{} {mode} trials, {failures} failing", results.len());
    }
    w.flush()?;
    if failures > 0 {
        return Err(Failure::Check(format!("{failures} isoperimetric checks failed")));
    }
    Ok(())
}

fn point_coords(p: &CurvePoint) -> [String; 2] {
    match p {
        CurvePoint::Exact(q) => [q.x.to_string(), q.y.to_string()],
        CurvePoint::Approx([x, y]) => [float(*x), float(*y)],
    }
}

pub fn nice(common: &Common, level: u32) -> Result<(), Failure> {
    let curve = load_curve(common.curve.as_deref())?;
    let points = rational_normal_points(&curve, level)?;
    let verdict = nice_check(&curve, level, common.precision)?;
    create_out(&common.out)?;
    let mut w = writer(&common.out, "normal_points.csv")?;
    w.write_record(["index", "kind", "normal_x", "normal_y", "x", "y", "weight"])?;
    for (i, p) in points.iter().enumerate() {
        let [x, y] = point_coords(p.point());
        let kind = if p.is_face() { "face" } else { "point" };
        w.write_record([
            i.to_string(),
            kind.into(),
            p.normal.0.to_string(),
            p.normal.1.to_string(),
            x,
            y,
            p.weight.to_string(),
        ])?;
    }
    w.flush()?;
    match verdict {
        NiceVerdict::NotNice(NiceWitness::Relation { points, coefficients }) => {
            let terms: Vec<String> = points
                .iter()
                .zip(&coefficients)
                .map(|(p, c)| format!("{c}·w({},{})", p.normal.0, p.normal.1))
                .collect();
            println!("not nice: {} = 0", terms.join(" + "));
        }
        NiceVerdict::NotNice(NiceWitness::Face(p)) => {
            println!("not nice: normal ({},{}) is supported along a face", p.normal.0, p.normal.1);
        }
        NiceVerdict::PlausiblyNice { exhaustive } => {
            let how = if exhaustive { "exhaustive search" } else { "search incomplete" };
            println!("plausibly nice up to level {level}: no relation found ({how})");
        }
    }
    Ok(())
}
