use std::f64::consts::PI;
use std::path::Path;

use anyhow::{anyhow, bail, Context};
use toric_ech::geometry::{read_curve_file, Curve, Mode, SubArc};

use crate::failure::Failure;
use crate::Common;

/// `A..B` (inclusive), `a,b,c`, or `n`. Sorted and deduplicated.
pub fn parse_k(spec: &str) -> anyhow::Result<Vec<u32>> {
    let spec = spec.trim();
    let mut ks: Vec<u32> = if let Some((a, b)) = spec.split_once("..") {
        let a: u32 = a.trim().parse().with_context(|| format!("bad range start in {spec:?}"))?;
        let b = b.trim().trim_start_matches('=');
        let b: u32 = b.parse().with_context(|| format!("bad range end in {spec:?}"))?;
        (a..=b).collect()
    } else {
        spec.split(',')
            .map(|s| s.trim().parse().with_context(|| format!("bad index {s:?}")))
            .collect::<Result<_, _>>()?
    };
    ks.sort_unstable();
    ks.dedup();
    if ks.is_empty() {
        bail!("index range {spec:?} is empty");
    }
    if ks[0] == 0 {
        bail!("indices start at 1");
    }
    Ok(ks)
}

fn parse_number(s: &str) -> anyhow::Result<f64> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        return Ok(parse_number(n)? / parse_number(d)?);
    }
    s.parse::<f64>().map_err(|_| anyhow!("bad number {s:?}"))
}

/// Radians as a decimal, or a rational multiple of `pi` such as `pi/4`,
/// `3pi/8`, `3*pi/8` or `0.5*pi`.
pub fn parse_angle(s: &str) -> anyhow::Result<f64> {
    let s = s.trim();
    match s.find("pi") {
        None => parse_number(s),
        Some(i) => {
            let coef = s[..i].trim().trim_end_matches('*').trim();
            let coef = if coef.is_empty() { 1.0 } else { parse_number(coef)? };
            let rest = s[i + 2..].trim();
            let div = match rest.strip_prefix('/') {
                Some(d) => parse_number(d)?,
                None if rest.is_empty() => 1.0,
                None => bail!("bad angle {s:?}"),
            };
            Ok(coef * PI / div)
        }
    }
}

pub fn parse_arcs(spec: &str) -> anyhow::Result<Vec<SubArc>> {
    spec.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|a| {
            let (lo, hi) = a.split_once(':').ok_or_else(|| anyhow!("arc {a:?} is not start:end"))?;
            Ok(SubArc::angles(parse_angle(lo)?, parse_angle(hi)?))
        })
        .collect()
}

pub fn load_curve(path: Option<&Path>) -> Result<Curve, Failure> {
    let path = path.ok_or_else(|| Failure::config(anyhow!("--curve is required")))?;
    let parsed = read_curve_file(path).with_context(|| format!("reading {}", path.display())).map_err(Failure::io)?;
    parsed.map_err(|e| Failure::config(anyhow::Error::new(e).context(format!("in {}", path.display()))))
}

/// The requested mode, or the one implied by the curve's shape class.
pub fn resolve_mode(curve: &Curve, requested: Option<&str>) -> Result<Mode, Failure> {
    let mode = match requested {
        Some(m) => m.parse::<Mode>()?,
        None if curve.shape_class().is_concave() => Mode::Concave,
        None => Mode::Convex,
    };
    if !curve.admits(mode) {
        return Err(toric_ech::Error::ModeMismatch { mode: mode.to_string() }.into());
    }
    Ok(mode)
}

pub fn ks_or(common: &Common, default: &str) -> Result<Vec<u32>, Failure> {
    parse_k(common.k.as_deref().unwrap_or(default)).map_err(Failure::config)
}
