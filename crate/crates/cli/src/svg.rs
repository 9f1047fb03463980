//! Minimal standalone SVG figures. Coordinates are written with three
//! decimals so that reruns produce identical files.

use std::fmt::Write;

use toric_ech::geometry::SegmentSet;

const SIZE: f64 = 480.0;
const MARGIN: f64 = 40.0;
const COLORS: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"];

fn header(out: &mut String, title: &str) {
    let full = SIZE + 2.0 * MARGIN;
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{full}" height="{full}" viewBox="0 0 {full} {full}" font-family="sans-serif" font-size="12">"#
    )
    .unwrap();
    writeln!(out, r#"<title>{}</title>"#, escape(title)).unwrap();
    writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#).unwrap();
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

fn polyline(out: &mut String, pts: &[(f64, f64)], color: &str, width: f64, opacity: f64) {
    let coords: Vec<String> = pts.iter().map(|(x, y)| format!("{x:.3},{y:.3}")).collect();
    writeln!(
        out,
        r#"<polyline points="{}" fill="none" stroke="{color}" stroke-width="{width}" stroke-opacity="{opacity}"/>"#,
        coords.join(" ")
    )
    .unwrap();
}

/// The curve (black) with each labelled segment set overlaid in colour.
pub fn overlay(curve: &SegmentSet, layers: &[(String, SegmentSet)], title: &str) -> String {
    let mut extent: f64 = 0.0;
    for s in std::iter::once(curve).chain(layers.iter().map(|(_, s)| s)) {
        for [p, q] in s.segments() {
            extent = extent.max(p[0]).max(p[1]).max(q[0]).max(q[1]);
        }
    }
    let scale = SIZE / extent.max(1e-12) / 1.05;
    let map = |p: [f64; 2]| (MARGIN + p[0] * scale, MARGIN + SIZE - p[1] * scale);
    let mut out = String::new();
    header(&mut out, title);
    let origin = map([0.0, 0.0]);
    polyline(&mut out, &[map([0.0, extent * 1.05]), origin, map([extent * 1.05, 0.0])], "#888", 1.0, 1.0);
    let draw = |out: &mut String, s: &SegmentSet, color: &str, width: f64| {
        for [p, q] in s.segments() {
            polyline(out, &[map(*p), map(*q)], color, width, 0.9);
        }
    };
    for (i, (label, s)) in layers.iter().enumerate() {
        let color = COLORS[i % COLORS.len()];
        draw(&mut out, s, color, 1.5);
        writeln!(
            out,
            r#"<text x="{:.3}" y="{:.3}" fill="{color}">{}</text>"#,
            SIZE,
            MARGIN + 16.0 * i as f64,
            escape(label)
        )
        .unwrap();
    }
    draw(&mut out, curve, "black", 2.0);
    out.push_str("</svg>\n");
    out
}

/// Log-log plot of positive values; nonpositive or non-finite points are skipped.
pub fn log_plot(series: &[(String, Vec<(f64, f64)>)], xlabel: &str, ylabel: &str, title: &str) -> String {
    let pts = || series.iter().flat_map(|(_, s)| s.iter()).filter(|(x, y)| *x > 0.0 && *y > 0.0 && y.is_finite());
    let (mut x0, mut x1, mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for &(x, y) in pts() {
        x0 = x0.min(x.log10());
        x1 = x1.max(x.log10());
        y0 = y0.min(y.log10());
        y1 = y1.max(y.log10());
    }
    if !x0.is_finite() {
        (x0, x1, y0, y1) = (0.0, 1.0, 0.0, 1.0);
    }
    let (dx, dy) = ((x1 - x0).max(1e-9), (y1 - y0).max(1e-9));
    let map = |x: f64, y: f64| (MARGIN + (x.log10() - x0) / dx * SIZE, MARGIN + SIZE - (y.log10() - y0) / dy * SIZE);
    let mut out = String::new();
    header(&mut out, title);
    polyline(&mut out, &[(MARGIN, MARGIN), (MARGIN, MARGIN + SIZE), (MARGIN + SIZE, MARGIN + SIZE)], "#888", 1.0, 1.0);
    writeln!(
        out,
        r#"<text x="{:.3}" y="{:.3}">{} (log10 {x0:.3} .. {x1:.3})</text>"#,
        MARGIN,
        MARGIN + SIZE + 28.0,
        escape(xlabel)
    )
    .unwrap();
    writeln!(out, r#"<text x="4" y="{:.3}">{} (log10 {y0:.3} .. {y1:.3})</text>"#, MARGIN - 12.0, escape(ylabel))
        .unwrap();
    for (i, (label, s)) in series.iter().enumerate() {
        let color = COLORS[i % COLORS.len()];
        let mapped: Vec<(f64, f64)> =
            s.iter().filter(|(x, y)| *x > 0.0 && *y > 0.0 && y.is_finite()).map(|&(x, y)| map(x, y)).collect();
        polyline(&mut out, &mapped, color, 1.5, 1.0);
        for (x, y) in &mapped {
            writeln!(out, r#"<circle cx="{x:.3}" cy="{y:.3}" r="2.5" fill="{color}"/>"#).unwrap();
        }
        writeln!(
            out,
            r#"<text x="{:.3}" y="{:.3}" fill="{color}">{}</text>"#,
            MARGIN + 10.0,
            MARGIN + 16.0 * (i as f64 + 1.0),
            escape(label)
        )
        .unwrap();
    }
    out.push_str("</svg>\n");
    out
}
