//! Randomised and deterministic checks of the isoperimetric inequalities
//! for the cross-action `A_{γ0}(γ)`, its reflection identity for concave
//! curves, and its continuity in the Hausdorff topology.

use std::cmp::Ordering;
use std::f64::consts::FRAC_PI_2;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::geometry::curve::det;
use crate::geometry::{cross_action, hausdorff_distance, Curve, Mode, RatPoint, ShapeClass};
use crate::value::{rat, rat_int, Value};

/// Tolerance on the floating slack.
pub const SLACK_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeneratorParams {
    /// Radii are drawn from `1 ± radial_noise`.
    pub radial_noise: f64,
    /// Vertex coordinates are rounded to this denominator.
    pub denominator: i64,
    pub max_attempts: u32,
}

impl Default for GeneratorParams {
    fn default() -> Self {
        GeneratorParams { radial_noise: 0.3, denominator: 32, max_attempts: 20_000 }
    }
}

#[derive(Clone, Debug)]
pub struct CurveSample {
    pub seed: u64,
    pub n_vertices: usize,
    pub params: GeneratorParams,
    pub curve: Curve,
}

fn round_to(v: f64, den: i64) -> BigRational {
    BigRational::new(BigInt::from((v * den as f64).round() as i64), BigInt::from(den))
}

/// Points at increasing angles `0 = θ_0 < … < θ_{n-1} = π/2` with noisy radii.
fn noisy_points(rng: &mut ChaCha8Rng, n: usize, p: &GeneratorParams) -> Vec<RatPoint> {
    let mut angles: Vec<f64> = (0..n.saturating_sub(2)).map(|_| rng.gen_range(0.0..FRAC_PI_2)).collect();
    angles.sort_by(f64::total_cmp);
    angles.insert(0, 0.0);
    angles.push(FRAC_PI_2);
    let zero = BigRational::zero();
    let last = angles.len() - 1;
    angles
        .iter()
        .enumerate()
        .map(|(i, &t)| {
            let r = 1.0 + p.radial_noise * rng.gen_range(-1.0..=1.0);
            match i {
                0 => RatPoint::new(round_to(r, p.denominator), zero.clone()),
                i if i == last => RatPoint::new(zero.clone(), round_to(r, p.denominator)),
                _ => RatPoint::new(round_to(r * t.cos(), p.denominator), round_to(r * t.sin(), p.denominator)),
            }
        })
        .collect()
}

/// Boundary chain of the convex hull of `points ∪ {0}`, points sorted by
/// angle; collinear points are dropped.
fn convex_chain(points: &[RatPoint]) -> Vec<RatPoint> {
    let mut chain: Vec<RatPoint> = Vec::with_capacity(points.len());
    for p in points {
        while chain.len() >= 2 {
            let n = chain.len();
            let turn = det(&chain[n - 1].sub(&chain[n - 2]), &p.sub(&chain[n - 1]));
            if turn.is_positive() {
                break;
            }
            chain.pop();
        }
        chain.push(p.clone());
    }
    chain
}

fn strictly_increasing_angles(points: &[RatPoint]) -> bool {
    points.windows(2).all(|w| det(&w[0], &w[1]).is_positive())
}

/// Every edge moves strictly left and strictly up.
fn monotone(points: &[RatPoint]) -> bool {
    points.windows(2).all(|w| w[1].x < w[0].x && w[1].y > w[0].y)
}

fn sample_chain(
    seed: u64,
    n: usize,
    p: &GeneratorParams,
    accept: impl Fn(&[RatPoint]) -> bool,
) -> Result<Vec<RatPoint>> {
    if n < 2 || p.denominator < 1 || !(0.0..1.0).contains(&p.radial_noise) {
        return Err(Error::GenerationFailed { attempts: 0 });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..p.max_attempts {
        let pts = noisy_points(&mut rng, n, p);
        if !strictly_increasing_angles(&pts) {
            continue;
        }
        let chain = convex_chain(&pts);
        if chain.len() == n && accept(&chain) {
            return Ok(chain);
        }
    }
    Err(Error::GenerationFailed { attempts: p.max_attempts })
}

/// Convex polygon with exactly `n_vertices` rational vertices: noisy radii
/// at sorted random angles, kept when all of them are in convex position.
pub fn random_convex_curve(seed: u64, n_vertices: usize, params: GeneratorParams) -> Result<CurveSample> {
    let chain = sample_chain(seed, n_vertices, &params, |c| Curve::polygonal(c.to_vec(), ShapeClass::Convex).is_ok())?;
    Ok(CurveSample { seed, n_vertices, params, curve: Curve::polygonal(chain, ShapeClass::Convex)? })
}

/// Concave polygon obtained by reflecting a monotone convex sample through
/// the centre of the unit square, then stretching the axes by factors in
/// `[1/2, 1]`.
pub fn random_concave_curve(seed: u64, n_vertices: usize, params: GeneratorParams) -> Result<CurveSample> {
    let chain = sample_chain(seed, n_vertices, &params, monotone)?;
    let (w, h) = (chain[0].x.clone(), chain[chain.len() - 1].y.clone());
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_c0c4e);
    let d = params.denominator.max(2);
    let mut stretch = || rat(rng.gen_range(d / 2..=d), d);
    let (sx, sy) = (stretch(), stretch());
    let one = BigRational::one();
    let vertices =
        chain.iter().rev().map(|p| RatPoint::new((&one - &p.x / &w) * &sx, (&one - &p.y / &h) * &sy)).collect();
    Ok(CurveSample { seed, n_vertices, params, curve: Curve::polygonal(vertices, ShapeClass::Concave)? })
}

/// The convex curve `γ̄` bounding the unit square minus the reflection of
/// the region under a concave polygon `γ ⊂ [0,1]²` through `(1/2, 1/2)`.
pub fn reflect_concave(curve: &Curve) -> Result<Curve> {
    let vs = curve.vertices().ok_or(Error::ModeMismatch { mode: "concave".into() })?;
    if !curve.is_complete() {
        return Err(Error::IncompleteCurve);
    }
    if !curve.admits(Mode::Concave) {
        return Err(Error::ModeMismatch { mode: Mode::Concave.to_string() });
    }
    let one = BigRational::one();
    if vs.iter().any(|p| p.x > one || p.y > one) {
        return Err(Error::InvalidVertex { index: 0, reason: "curve must lie in the unit square".into() });
    }
    let flip = |p: &RatPoint| RatPoint::new(&one - &p.x, &one - &p.y);
    let mut out = vec![RatPoint::from_ints(1, 0)];
    for p in vs.iter().rev() {
        let q = flip(p);
        if out.last() != Some(&q) {
            out.push(q);
        }
    }
    let top = RatPoint::from_ints(0, 1);
    if out.last() != Some(&top) {
        out.push(top);
    }
    Curve::polygonal(out, ShapeClass::Convex)
}

fn require_complete(c: &Curve) -> Result<()> {
    if c.is_complete() {
        Ok(())
    } else {
        Err(Error::IncompleteCurve)
    }
}

/// `A_base(target)/√A(target)`.
pub fn isoperimetric_ratio(base: &Curve, target: &Curve, mode: Mode) -> Result<f64> {
    require_complete(target)?;
    let a = cross_action(base, target, mode)?;
    Ok(a.to_f64() / target.area()?.to_f64().sqrt())
}

#[derive(Clone, Debug, PartialEq)]
pub struct InequalityVerdict {
    pub mode: Mode,
    pub base_ratio: f64,
    pub target_ratio: f64,
    /// Convex: `ratio(target) − ratio(base)`; concave: the negative.
    pub slack: f64,
    /// Sign of the slack decided in exact arithmetic (polygonal pairs).
    pub exact_sign: Option<Ordering>,
    pub pass: bool,
    pub equality: bool,
}

/// Checks `ratio(target) ≥ ratio(base)` (convex) or `≤` (concave).
pub fn check_inequality(base: &Curve, target: &Curve, mode: Mode) -> Result<InequalityVerdict> {
    require_complete(base)?;
    require_complete(target)?;
    let a_bt = cross_action(base, target, mode)?;
    let a_bb = cross_action(base, base, mode)?;
    let (area_t, area_b) = (target.area()?, base.area()?);
    let target_ratio = a_bt.to_f64() / area_t.to_f64().sqrt();
    let base_ratio = a_bb.to_f64() / area_b.to_f64().sqrt();
    let sign = match mode {
        Mode::Convex => 1.0,
        Mode::Concave => -1.0,
    };
    let slack = sign * (target_ratio - base_ratio);
    // Both sides are positive, so comparing squares decides the sign.
    let exact_sign = match (a_bt.as_exact(), a_bb.as_exact(), area_t.as_exact(), area_b.as_exact()) {
        (Some(at), Some(ab), Some(t), Some(b)) => {
            let lhs = at * at * b;
            let rhs = ab * ab * t;
            Some(match mode {
                Mode::Convex => lhs.cmp(&rhs),
                Mode::Concave => rhs.cmp(&lhs),
            })
        }
        _ => None,
    };
    let proportional = target.proportionality_to(base).is_some();
    let (pass, equality) = match exact_sign {
        Some(s) => (s != Ordering::Less, s == Ordering::Equal && proportional),
        None => (slack >= -SLACK_TOL, slack.abs() <= SLACK_TOL && proportional),
    };
    Ok(InequalityVerdict { mode, base_ratio, target_ratio, slack, exact_sign, pass, equality })
}

/// Polygon through the rational points `((1-t²)/(1+t²), 2t/(1+t²))`,
/// `t = i/n`, of the unit quarter-circle.
pub fn circle_inscription(n: usize) -> Curve {
    let n = n.max(1) as i64;
    let vertices = (0..=n)
        .map(|i| {
            let t = rat(i, n);
            let d = BigRational::one() + &t * &t;
            RatPoint::new((BigRational::one() - &t * &t) / &d, (&t + &t) / d)
        })
        .collect();
    Curve::polygonal(vertices, ShapeClass::Convex).expect("inscribed polygon is convex")
}

#[derive(Clone, Debug, PartialEq)]
pub struct ProbeRow {
    pub index: usize,
    /// Hausdorff distance from the target to the limit curve.
    pub distance: f64,
    pub value: Value,
    /// `|A_base(γ_j) − A_base(γ_∞)|`, exact when both actions are.
    pub error: Value,
}

pub fn continuity_probe(base: &Curve, targets: &[Curve], limit: &Curve, mode: Mode) -> Result<Vec<ProbeRow>> {
    let lim = cross_action(base, limit, mode)?;
    targets
        .par_iter()
        .enumerate()
        .map(|(index, t)| {
            let value = cross_action(base, t, mode)?;
            let error = (value.clone() - lim.clone()).abs();
            Ok(ProbeRow { index, distance: hausdorff_distance(t, limit), value, error })
        })
        .collect()
}

/// Point where the ray through `dir` meets a polygonal curve, as a multiple
/// of `dir`.
fn ray_hit(vs: &[RatPoint], dir: &RatPoint) -> Option<BigRational> {
    vs.windows(2).find_map(|w| {
        let (p, q) = (&w[0], &w[1]);
        if det(p, dir).is_negative() || det(dir, q).is_negative() {
            return None;
        }
        let e = q.sub(p);
        let den = det(&e, dir);
        (!den.is_zero()).then(|| det(&e, p) / den)
    })
}

/// Largest `c` with `c·inner` inside the region bounded by `outer`; exact
/// for polygonal curves, where the radial ratio is extremal at vertices.
pub fn inner_scale(inner: &Curve, outer: &Curve) -> Result<BigRational> {
    let (a, b) = match (inner.vertices(), outer.vertices()) {
        (Some(a), Some(b)) => (a, b),
        _ => return Err(Error::InvalidPath("nested scaling needs polygonal curves".into())),
    };
    let mut best: Option<BigRational> = None;
    let mut offer = |c: BigRational| {
        if best.as_ref().is_none_or(|b| c < *b) {
            best = Some(c);
        }
    };
    for v in a {
        offer(ray_hit(b, v).ok_or(Error::IncompleteCurve)?);
    }
    for u in b {
        let t = ray_hit(a, u).ok_or(Error::IncompleteCurve)?;
        offer(BigRational::one() / t);
    }
    best.ok_or(Error::EmptyInput)
}

/// Random convex pair `(c·γ1, γ2)` with the first region inside the second.
pub fn nested_convex_pair(seed: u64, params: GeneratorParams) -> Result<(Curve, Curve)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (n1, n2) = (rng.gen_range(2..=6), rng.gen_range(2..=6));
    let inner = random_convex_curve(seed.wrapping_mul(2), n1, params)?.curve;
    let outer = random_convex_curve(seed.wrapping_mul(2) + 1, n2, params)?.curve;
    let c = inner_scale(&inner, &outer)?;
    Ok((inner.scaled(&c), outer))
}

/// First 16 hex digits of the SHA-256 of the curve's JSON form.
pub fn fingerprint(curve: &Curve) -> String {
    let digest = Sha256::digest(curve.to_json().as_bytes());
    digest.iter().take(8).map(|b| format!("{b:02x}")).collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct TrialResult {
    pub seed: u64,
    pub mode: Mode,
    pub verdict: InequalityVerdict,
    pub base_fingerprint: String,
    pub target_fingerprint: String,
}

/// Random pair for trial `seed`: vertex counts in `2..=max_vertices`.
pub fn random_pair(seed: u64, mode: Mode, max_vertices: usize, params: GeneratorParams) -> Result<(Curve, Curve)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let max_vertices = max_vertices.max(2);
    let (n1, n2) = (rng.gen_range(2..=max_vertices), rng.gen_range(2..=max_vertices));
    let gen = match mode {
        Mode::Convex => random_convex_curve,
        Mode::Concave => random_concave_curve,
    };
    Ok((gen(seed.wrapping_mul(2), n1, params)?.curve, gen(seed.wrapping_mul(2) + 1, n2, params)?.curve))
}

/// Runs `count` independent trials with seeds `first_seed, first_seed+1, …`.
pub fn run_trials(
    mode: Mode,
    first_seed: u64,
    count: usize,
    max_vertices: usize,
    params: GeneratorParams,
) -> Result<Vec<TrialResult>> {
    (0..count as u64)
        .into_par_iter()
        .map(|i| {
            let seed = first_seed + i;
            let (base, target) = random_pair(seed, mode, max_vertices, params)?;
            Ok(TrialResult {
                seed,
                mode,
                verdict: check_inequality(&base, &target, mode)?,
                base_fingerprint: fingerprint(&base),
                target_fingerprint: fingerprint(&target),
            })
        })
        .collect()
}

/// `A_{γ̄0}(γ̄) + A_{γ0}(γ)` for concave polygons in the unit square.
pub fn reflection_sum(base: &Curve, target: &Curve) -> Result<Value> {
    let direct = cross_action(base, target, Mode::Concave)?;
    let reflected = cross_action(&reflect_concave(base)?, &reflect_concave(target)?, Mode::Convex)?;
    Ok(direct + reflected)
}

/// Concave pair scaled by a common factor into the unit square.
pub fn normalized_concave_pair(seed: u64, max_vertices: usize, params: GeneratorParams) -> Result<(Curve, Curve)> {
    let (a, b) = random_pair(seed, Mode::Concave, max_vertices, params)?;
    let extent = |c: &Curve| {
        let v = c.vertices().expect("polygonal");
        v[0].x.clone().max(v[v.len() - 1].y.clone())
    };
    let m = extent(&a).max(extent(&b));
    let c = rat_int(1) / m;
    Ok((a.scaled(&c), b.scaled(&c)))
}
