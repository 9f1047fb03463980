use std::f64::consts::FRAC_PI_2;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::hausdorff::SegmentSet;
use super::quad;
use super::radial::RadialFn;
use crate::error::{Error, Result};
use crate::value::{rat_int, rat_to_f64, Value};

/// Minimum number of grid intervals for parametric curves.
pub const MIN_SAMPLES: usize = 4096;

const QUAD_TOL: f64 = 1e-13;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RatPoint {
    pub x: BigRational,
    pub y: BigRational,
}

impl RatPoint {
    pub fn new(x: BigRational, y: BigRational) -> Self {
        RatPoint { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        RatPoint::new(rat_int(x), rat_int(y))
    }

    pub fn to_f64(&self) -> [f64; 2] {
        [rat_to_f64(&self.x), rat_to_f64(&self.y)]
    }

    pub fn dot_int(&self, n: (i64, i64)) -> BigRational {
        &self.x * BigInt::from(n.0) + &self.y * BigInt::from(n.1)
    }

    pub fn dot(&self, n: &(BigRational, BigRational)) -> BigRational {
        &self.x * &n.0 + &self.y * &n.1
    }

    pub fn scaled(&self, c: &BigRational) -> RatPoint {
        RatPoint::new(&self.x * c, &self.y * c)
    }

    pub fn sub(&self, o: &RatPoint) -> RatPoint {
        RatPoint::new(&self.x - &o.x, &self.y - &o.y)
    }
}

pub(crate) fn det(a: &RatPoint, b: &RatPoint) -> BigRational {
    &a.x * &b.y - &a.y * &b.x
}

impl fmt::Display for RatPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// A point of a curve, exact for polygonal curves.
#[derive(Clone, Debug, PartialEq)]
pub enum CurvePoint {
    Exact(RatPoint),
    Approx([f64; 2]),
}

impl CurvePoint {
    pub fn to_f64(&self) -> [f64; 2] {
        match self {
            CurvePoint::Exact(p) => p.to_f64(),
            CurvePoint::Approx(p) => *p,
        }
    }

    pub fn angle(&self) -> f64 {
        let [x, y] = self.to_f64();
        y.atan2(x)
    }

    pub fn dot_int(&self, n: (i64, i64)) -> Value {
        match self {
            CurvePoint::Exact(p) => Value::Exact(p.dot_int(n)),
            CurvePoint::Approx([x, y]) => Value::Approx(x * n.0 as f64 + y * n.1 as f64),
        }
    }

    pub fn scaled(&self, c: &BigRational) -> CurvePoint {
        match self {
            CurvePoint::Exact(p) => CurvePoint::Exact(p.scaled(c)),
            CurvePoint::Approx([x, y]) => {
                let c = rat_to_f64(c);
                CurvePoint::Approx([x * c, y * c])
            }
        }
    }
}

impl fmt::Display for CurvePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurvePoint::Exact(p) => p.fmt(f),
            CurvePoint::Approx([x, y]) => write!(f, "({x:.12}, {y:.12})"),
        }
    }
}

/// Argmax (or argmin) set of a linear functional on a curve.
#[derive(Clone, Debug, PartialEq)]
pub enum SupportSite {
    Point(CurvePoint),
    /// A whole edge `[from, to]` attains the extremum.
    Face(CurvePoint, CurvePoint),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ShapeClass {
    Convex,
    StrictlyConvex,
    Concave,
    StrictlyConcave,
    General,
}

impl ShapeClass {
    pub fn is_convex(self) -> bool {
        matches!(self, ShapeClass::Convex | ShapeClass::StrictlyConvex)
    }

    pub fn is_concave(self) -> bool {
        matches!(self, ShapeClass::Concave | ShapeClass::StrictlyConcave)
    }

    pub fn is_strict(self) -> bool {
        matches!(self, ShapeClass::StrictlyConvex | ShapeClass::StrictlyConcave)
    }
}

impl fmt::Display for ShapeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ShapeClass::Convex => "convex",
            ShapeClass::StrictlyConvex => "strictly_convex",
            ShapeClass::Concave => "concave",
            ShapeClass::StrictlyConcave => "strictly_concave",
            ShapeClass::General => "general",
        })
    }
}

/// Which optimisation problem (and which support function) applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Convex,
    Concave,
}

impl Mode {
    pub fn maximizes_support(self) -> bool {
        self == Mode::Convex
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Convex => "convex",
            Mode::Concave => "concave",
        })
    }
}

impl FromStr for Mode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "convex" => Ok(Mode::Convex),
            "concave" => Ok(Mode::Concave),
            other => Err(Error::Parse(format!("unknown mode {other:?}"))),
        }
    }
}

/// Closed angular sub-arc of a curve.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SubArc {
    Full,
    Angles { start: f64, end: f64 },
}

impl SubArc {
    pub fn angles(start: f64, end: f64) -> Self {
        SubArc::Angles { start, end }
    }

    pub fn bounds(&self, curve: &Curve) -> (f64, f64) {
        match *self {
            SubArc::Full => curve.angle_range(),
            SubArc::Angles { start, end } => (start, end),
        }
    }

    pub fn contains_angle(&self, theta: f64) -> bool {
        match *self {
            SubArc::Full => true,
            SubArc::Angles { start, end } => theta >= start - 1e-12 && theta <= end + 1e-12,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CurveKind {
    Polygonal,
    Parametric,
}

#[derive(Debug)]
struct ParamData {
    radial: RadialFn,
    scale: f64,
    theta0: f64,
    theta1: f64,
    thetas: Vec<f64>,
    points: Vec<[f64; 2]>,
}

impl ParamData {
    fn rho(&self, t: f64) -> f64 {
        self.scale * self.radial.eval(t)
    }

    fn point(&self, t: f64) -> [f64; 2] {
        let r = self.rho(t);
        if t <= 0.0 {
            [r, 0.0]
        } else if t >= FRAC_PI_2 {
            [0.0, r]
        } else {
            [r * t.cos(), r * t.sin()]
        }
    }

    fn tangent(&self, t: f64) -> [f64; 2] {
        let r = self.rho(t);
        let dr = self.scale * self.radial.deriv(t);
        let (c, s) = (t.cos(), t.sin());
        [dr * c - r * s, dr * s + r * c]
    }

    /// Extremum of `n·γ(θ)`: grid scan then golden-section polish.
    fn support(&self, n: [f64; 2], maximize: bool) -> (f64, f64) {
        let sign = if maximize { 1.0 } else { -1.0 };
        let g = |p: &[f64; 2]| sign * (n[0] * p[0] + n[1] * p[1]);
        let (mut best_i, mut best) = (0usize, f64::NEG_INFINITY);
        for (i, p) in self.points.iter().enumerate() {
            let v = g(p);
            if v > best {
                best = v;
                best_i = i;
            }
        }
        let lo = self.thetas[best_i.saturating_sub(1)];
        let hi = self.thetas[(best_i + 1).min(self.thetas.len() - 1)];
        // The derivative n·γ' changes sign at an interior extremum; bisecting
        // it locates the argmax to full precision, where golden-section
        // search on the flat peak only reaches about √ε.
        let slope = |t: f64| {
            let d = self.tangent(t);
            sign * (n[0] * d[0] + n[1] * d[1])
        };
        let (mut t, mut v) = quad::golden_max(|t| g(&self.point(t)), lo, hi);
        if slope(lo) > 0.0 && slope(hi) < 0.0 {
            let (mut a, mut b) = (lo, hi);
            for _ in 0..100 {
                let m = 0.5 * (a + b);
                if m <= a || m >= b {
                    break;
                }
                if slope(m) > 0.0 {
                    a = m;
                } else {
                    b = m;
                }
            }
            let tb = 0.5 * (a + b);
            let vb = g(&self.point(tb));
            if vb >= v - 1e-15 * (1.0 + v.abs()) {
                (t, v) = (tb, vb.max(v));
            }
        }
        if v > best {
            (sign * v, t)
        } else {
            (sign * best, self.thetas[best_i])
        }
    }
}

/// A star-shaped curve in the closed positive quadrant.
#[derive(Clone, Debug)]
pub struct Curve {
    shape_class: ShapeClass,
    repr: Repr,
}

#[derive(Clone, Debug)]
enum Repr {
    Polygonal(Arc<[RatPoint]>),
    Parametric(Arc<ParamData>),
}

impl Curve {
    /// Validated polygonal curve; vertices listed by increasing polar angle.
    pub fn polygonal(vertices: Vec<RatPoint>, shape_class: ShapeClass) -> Result<Curve> {
        if vertices.len() < 2 {
            return Err(Error::EmptyInput);
        }
        for (index, v) in vertices.iter().enumerate() {
            if v.x.is_negative() || v.y.is_negative() {
                return Err(Error::InvalidVertex { index, reason: "outside the positive quadrant".into() });
            }
            if v.x.is_zero() && v.y.is_zero() {
                return Err(Error::InvalidVertex { index, reason: "vertex at the origin".into() });
            }
        }
        for (i, w) in vertices.windows(2).enumerate() {
            if !det(&w[0], &w[1]).is_positive() {
                return Err(Error::NonMonotoneAngles { index: i + 1 });
            }
        }
        let turns = TurnSummary::of_polygon(&vertices);
        if !turns.satisfies(shape_class) {
            return Err(Error::ShapeClassViolation { declared: shape_class.to_string() });
        }
        Ok(Curve { shape_class, repr: Repr::Polygonal(vertices.into()) })
    }

    pub fn polygonal_from_ints(vertices: &[(i64, i64)], shape_class: ShapeClass) -> Result<Curve> {
        Curve::polygonal(vertices.iter().map(|&(x, y)| RatPoint::from_ints(x, y)).collect(), shape_class)
    }

    /// Triangle curve from `(a, 0)` to `(0, b)`: the moment image of the
    /// ellipsoid `E(a, b)`.
    pub fn triangle(a: BigRational, b: BigRational) -> Result<Curve> {
        Curve::polygonal(
            vec![RatPoint::new(a, BigRational::zero()), RatPoint::new(BigRational::zero(), b)],
            ShapeClass::Convex,
        )
    }

    /// Parametric curve on `[θ0, θ1]` with a grid of at least
    /// [`MIN_SAMPLES`] intervals.
    pub fn parametric(radial: RadialFn, range: (f64, f64), shape_class: ShapeClass, samples: usize) -> Result<Curve> {
        radial.validate().map_err(Error::Parse)?;
        let (theta0, theta1) = range;
        if !(0.0..FRAC_PI_2).contains(&theta0) || theta1 <= theta0 || theta1 > FRAC_PI_2 {
            return Err(Error::ArcOutOfRange { start: theta0, end: theta1 });
        }
        let n = samples.max(MIN_SAMPLES);
        let mut data = ParamData { radial, scale: 1.0, theta0, theta1, thetas: Vec::new(), points: Vec::new() };
        data.thetas =
            (0..=n).map(|i| if i == n { theta1 } else { theta0 + (theta1 - theta0) * i as f64 / n as f64 }).collect();
        for (index, &t) in data.thetas.iter().enumerate() {
            let r = data.rho(t);
            if !(r.is_finite() && r > 0.0) {
                return Err(Error::InvalidVertex { index, reason: format!("rho({t}) = {r}") });
            }
        }
        data.points = data.thetas.iter().map(|&t| data.point(t)).collect();
        if !TurnSummary::of_samples(&data.points).satisfies(shape_class) {
            return Err(Error::ShapeClassViolation { declared: shape_class.to_string() });
        }
        Ok(Curve { shape_class, repr: Repr::Parametric(Arc::new(data)) })
    }

    /// Complete quarter-circle of radius `r`.
    pub fn quarter_circle(r: f64) -> Curve {
        Curve::parametric(RadialFn::Circle { radius: r }, (0.0, FRAC_PI_2), ShapeClass::StrictlyConvex, MIN_SAMPLES)
            .expect("circle is a valid curve")
    }

    pub fn kind(&self) -> CurveKind {
        match self.repr {
            Repr::Polygonal(_) => CurveKind::Polygonal,
            Repr::Parametric(_) => CurveKind::Parametric,
        }
    }

    pub fn shape_class(&self) -> ShapeClass {
        self.shape_class
    }

    pub fn vertices(&self) -> Option<&[RatPoint]> {
        match &self.repr {
            Repr::Polygonal(v) => Some(v),
            Repr::Parametric(_) => None,
        }
    }

    pub fn radial(&self) -> Option<(&RadialFn, f64)> {
        match &self.repr {
            Repr::Polygonal(_) => None,
            Repr::Parametric(p) => Some((&p.radial, p.scale)),
        }
    }

    pub fn angle_range(&self) -> (f64, f64) {
        match &self.repr {
            Repr::Polygonal(v) => {
                let a = v[0].to_f64();
                let b = v[v.len() - 1].to_f64();
                (a[1].atan2(a[0]), b[1].atan2(b[0]))
            }
            Repr::Parametric(p) => (p.theta0, p.theta1),
        }
    }

    pub fn is_complete(&self) -> bool {
        match &self.repr {
            Repr::Polygonal(v) => v[0].y.is_zero() && v[v.len() - 1].x.is_zero(),
            Repr::Parametric(p) => p.theta0 == 0.0 && p.theta1 == FRAC_PI_2,
        }
    }

    /// Whether the curve is (weakly) convex or concave in the sense required
    /// by `mode`. Polygons are tested exactly, so a segment admits both modes.
    pub fn admits(&self, mode: Mode) -> bool {
        match &self.repr {
            Repr::Polygonal(v) => {
                let t = TurnSummary::of_polygon(v);
                match mode {
                    Mode::Convex => t.all_nonneg,
                    Mode::Concave => t.all_nonpos,
                }
            }
            Repr::Parametric(_) => match mode {
                Mode::Convex => self.shape_class.is_convex(),
                Mode::Concave => self.shape_class.is_concave(),
            },
        }
    }

    /// Start point `γ(θ0)`; equals `(ρ(0), 0)` for complete curves.
    pub fn first_point(&self) -> CurvePoint {
        match &self.repr {
            Repr::Polygonal(v) => CurvePoint::Exact(v[0].clone()),
            Repr::Parametric(p) => CurvePoint::Approx(p.point(p.theta0)),
        }
    }

    /// End point `γ(θ1)`; equals `(0, ρ(π/2))` for complete curves.
    pub fn last_point(&self) -> CurvePoint {
        match &self.repr {
            Repr::Polygonal(v) => CurvePoint::Exact(v[v.len() - 1].clone()),
            Repr::Parametric(p) => CurvePoint::Approx(p.point(p.theta1)),
        }
    }

    /// `ρ(0)`, the x-intercept of a complete curve.
    pub fn x_intercept(&self) -> Value {
        match self.first_point() {
            CurvePoint::Exact(p) => Value::Exact(p.x),
            CurvePoint::Approx(p) => Value::Approx(p[0]),
        }
    }

    /// `ρ(π/2)`, the y-intercept of a complete curve.
    pub fn y_intercept(&self) -> Value {
        match self.last_point() {
            CurvePoint::Exact(p) => Value::Exact(p.y),
            CurvePoint::Approx(p) => Value::Approx(p[1]),
        }
    }

    /// Point at polar angle `theta` (parametric curves only).
    pub fn point_at(&self, theta: f64) -> Option<[f64; 2]> {
        match &self.repr {
            Repr::Parametric(p) => Some(p.point(theta)),
            Repr::Polygonal(_) => None,
        }
    }

    /// `dγ/dθ` (parametric curves only).
    pub fn tangent_at(&self, theta: f64) -> Option<[f64; 2]> {
        match &self.repr {
            Repr::Parametric(p) => Some(p.tangent(theta)),
            Repr::Polygonal(_) => None,
        }
    }

    /// `c·γ`; exact for polygonal curves.
    pub fn scaled(&self, c: &BigRational) -> Curve {
        assert!(c.is_positive(), "scale factor must be positive");
        match &self.repr {
            Repr::Polygonal(v) => {
                Curve { shape_class: self.shape_class, repr: Repr::Polygonal(v.iter().map(|p| p.scaled(c)).collect()) }
            }
            Repr::Parametric(_) => self.scaled_f64(rat_to_f64(c)),
        }
    }

    /// `c·γ` in floating point; polygonal curves are converted to a rational
    /// approximation of `c` first.
    pub fn scaled_f64(&self, c: f64) -> Curve {
        assert!(c > 0.0, "scale factor must be positive");
        match &self.repr {
            Repr::Polygonal(_) => {
                let r = BigRational::from_float(c).expect("finite scale");
                self.scaled(&r)
            }
            Repr::Parametric(p) => {
                let data = ParamData {
                    radial: p.radial.clone(),
                    scale: p.scale * c,
                    theta0: p.theta0,
                    theta1: p.theta1,
                    thetas: p.thetas.clone(),
                    points: p.points.iter().map(|q| [q[0] * c, q[1] * c]).collect(),
                };
                Curve { shape_class: self.shape_class, repr: Repr::Parametric(Arc::new(data)) }
            }
        }
    }

    /// If `self = c·other` for a rational `c > 0`, returns `c` (polygons only).
    pub fn proportionality_to(&self, other: &Curve) -> Option<BigRational> {
        let (a, b) = (self.vertices()?, other.vertices()?);
        if a.len() != b.len() {
            return None;
        }
        let c = if b[0].x.is_zero() { &a[0].y / &b[0].y } else { &a[0].x / &b[0].x };
        a.iter().zip(b).all(|(p, q)| p.x == &q.x * &c && p.y == &q.y * &c).then_some(c)
    }

    /// `max_{q∈γ} q·n` (convex mode) or `min_{q∈γ} q·n` (concave mode).
    pub fn support(&self, n: (i64, i64), mode: Mode) -> Result<Value> {
        if n == (0, 0) {
            return Err(Error::ZeroVector);
        }
        Ok(self.support_rat(&(rat_int(n.0), rat_int(n.1)), mode.maximizes_support()))
    }

    /// Support value for a rational direction.
    pub fn support_rat(&self, n: &(BigRational, BigRational), maximize: bool) -> Value {
        match &self.repr {
            Repr::Polygonal(v) => {
                let it = v.iter().map(|p| p.dot(n));
                let best = if maximize { it.max() } else { it.min() };
                Value::Exact(best.expect("nonempty"))
            }
            Repr::Parametric(p) => Value::Approx(p.support([rat_to_f64(&n.0), rat_to_f64(&n.1)], maximize).0),
        }
    }

    /// Support value for a real direction, always in binary64.
    pub fn support_f64(&self, n: [f64; 2], maximize: bool) -> f64 {
        match &self.repr {
            Repr::Polygonal(v) => {
                let it = v.iter().map(|p| {
                    let q = p.to_f64();
                    q[0] * n[0] + q[1] * n[1]
                });
                if maximize {
                    it.fold(f64::NEG_INFINITY, f64::max)
                } else {
                    it.fold(f64::INFINITY, f64::min)
                }
            }
            Repr::Parametric(p) => p.support(n, maximize).0,
        }
    }

    /// Where the support value in direction `n` is attained.
    pub fn support_site(&self, n: (i64, i64), mode: Mode) -> Result<SupportSite> {
        if n == (0, 0) {
            return Err(Error::ZeroVector);
        }
        let maximize = mode.maximizes_support();
        match &self.repr {
            Repr::Polygonal(v) => {
                let vals: Vec<BigRational> = v.iter().map(|p| p.dot_int(n)).collect();
                let best = if maximize { vals.iter().max() } else { vals.iter().min() }.expect("nonempty");
                let hits: Vec<usize> = (0..v.len()).filter(|&i| &vals[i] == best).collect();
                let (first, last) = (hits[0], hits[hits.len() - 1]);
                Ok(if first == last {
                    SupportSite::Point(CurvePoint::Exact(v[first].clone()))
                } else {
                    SupportSite::Face(CurvePoint::Exact(v[first].clone()), CurvePoint::Exact(v[last].clone()))
                })
            }
            Repr::Parametric(p) => {
                let nf = [n.0 as f64, n.1 as f64];
                let (best, t) = p.support(nf, maximize);
                let tol = 1e-12 * (1.0 + best.abs());
                let at = |t: f64| {
                    let q = p.point(t);
                    nf[0] * q[0] + nf[1] * q[1]
                };
                let point = if (at(p.theta0) - best).abs() <= tol {
                    p.point(p.theta0)
                } else if (at(p.theta1) - best).abs() <= tol {
                    p.point(p.theta1)
                } else {
                    p.point(t)
                };
                Ok(SupportSite::Point(CurvePoint::Approx(point)))
            }
        }
    }

    /// Area of the region between the curve and the axes.
    pub fn area(&self) -> Result<Value> {
        if !self.is_complete() {
            return Err(Error::IncompleteCurve);
        }
        Ok(match &self.repr {
            Repr::Polygonal(v) => {
                let twice: BigRational = v.windows(2).map(|w| det(&w[0], &w[1])).sum();
                Value::Exact(twice / rat_int(2))
            }
            Repr::Parametric(p) => {
                Value::Approx(0.5 * quad::integrate(|t| p.rho(t).powi(2), p.theta0, p.theta1, QUAD_TOL))
            }
        })
    }

    /// `∫_{γ'} h_γ(ν(p)) dμ_γ(p)` over a sub-arc `γ'`, with `h_γ` the curve's
    /// own support function (max for convex, min for concave curves).
    pub fn arc_action(&self, arc: SubArc) -> Result<Value> {
        if !(self.admits(Mode::Convex) || self.admits(Mode::Concave)) {
            return Err(Error::ModeMismatch { mode: "convex or concave".into() });
        }
        let (lo, hi) = self.angle_range();
        let (a, b) = arc.bounds(self);
        if a > b || a < lo - 1e-12 || b > hi + 1e-12 {
            return Err(Error::ArcOutOfRange { start: a, end: b });
        }
        Ok(match &self.repr {
            Repr::Polygonal(v) => {
                // On a straight edge p·ν is constant, so each fully contained
                // edge contributes det(v_i, v_{i+1}) and partial edges are
                // prorated by length.
                let mut exact = BigRational::zero();
                let mut approx = 0.0;
                let mut partial = false;
                for w in v.windows(2) {
                    let (p, q) = (w[0].to_f64(), w[1].to_f64());
                    let (tp, tq) = (p[1].atan2(p[0]), q[1].atan2(q[0]));
                    if matches!(arc, SubArc::Full) || (tp >= a && tq <= b) {
                        exact += det(&w[0], &w[1]);
                        continue;
                    }
                    let (s, e) = (tp.max(a), tq.min(b));
                    if e <= s {
                        continue;
                    }
                    partial = true;
                    let d = [q[0] - p[0], q[1] - p[1]];
                    let frac = |phi: f64| {
                        let u = [phi.cos(), phi.sin()];
                        -(u[0] * p[1] - u[1] * p[0]) / (u[0] * d[1] - u[1] * d[0])
                    };
                    let fraction = (frac(e) - frac(s)).clamp(0.0, 1.0);
                    approx += fraction * rat_to_f64(&det(&w[0], &w[1]));
                }
                if partial {
                    Value::Approx(rat_to_f64(&exact) + approx)
                } else {
                    Value::Exact(exact)
                }
            }
            Repr::Parametric(p) => Value::Approx(quad::integrate(|t| p.rho(t).powi(2), a, b, QUAD_TOL)),
        })
    }

    /// Vertex or sample polyline as segments.
    pub fn segments(&self) -> SegmentSet {
        match &self.repr {
            Repr::Polygonal(v) => SegmentSet::from_polyline(&v.iter().map(RatPoint::to_f64).collect::<Vec<_>>()),
            Repr::Parametric(p) => SegmentSet::from_polyline(&p.points),
        }
    }

    /// Polyline of the part of the curve inside the closed sub-arc.
    pub fn segments_in(&self, arc: SubArc) -> SegmentSet {
        let (a, b) = arc.bounds(self);
        match &self.repr {
            Repr::Parametric(p) => {
                let (a, b) = (a.max(p.theta0), b.min(p.theta1));
                if a > b {
                    return SegmentSet::default();
                }
                let mut pts = vec![p.point(a)];
                pts.extend(p.thetas.iter().zip(&p.points).filter(|(t, _)| **t > a && **t < b).map(|(_, q)| *q));
                pts.push(p.point(b));
                SegmentSet::from_polyline(&pts)
            }
            Repr::Polygonal(v) => {
                let pts: Vec<[f64; 2]> = v.iter().map(RatPoint::to_f64).collect();
                let mut out = Vec::new();
                for w in pts.windows(2) {
                    let (p, q) = (w[0], w[1]);
                    let (tp, tq) = (p[1].atan2(p[0]), q[1].atan2(q[0]));
                    let (s, e) = (tp.max(a), tq.min(b));
                    if e < s {
                        continue;
                    }
                    let hit = |phi: f64| -> [f64; 2] {
                        let u = [phi.cos(), phi.sin()];
                        let d = [q[0] - p[0], q[1] - p[1]];
                        let t = -(u[0] * p[1] - u[1] * p[0]) / (u[0] * d[1] - u[1] * d[0]);
                        [p[0] + t * d[0], p[1] + t * d[1]]
                    };
                    let from = if s <= tp { p } else { hit(s) };
                    let to = if e >= tq { q } else { hit(e) };
                    out.push([from, to]);
                }
                SegmentSet::new(out)
            }
        }
    }
}

/// Signs of `det(d_s, d_t)` over all ordered pairs of chain directions.
/// Nonnegative everywhere implies every vertex triple has a nonnegative
/// convexity determinant (and symmetrically for concave chains).
struct TurnSummary {
    all_nonneg: bool,
    all_pos: bool,
    all_nonpos: bool,
    all_neg: bool,
}

impl TurnSummary {
    fn of_polygon(v: &[RatPoint]) -> Self {
        let dirs: Vec<RatPoint> = v.windows(2).map(|w| w[1].sub(&w[0])).collect();
        let mut t = TurnSummary { all_nonneg: true, all_pos: true, all_nonpos: true, all_neg: true };
        for s in 0..dirs.len() {
            for u in s + 1..dirs.len() {
                let d = det(&dirs[s], &dirs[u]);
                t.record(if d.is_positive() {
                    1
                } else if d.is_negative() {
                    -1
                } else {
                    0
                });
            }
        }
        t
    }

    fn of_samples(pts: &[[f64; 2]]) -> Self {
        let mut t = TurnSummary { all_nonneg: true, all_pos: true, all_nonpos: true, all_neg: true };
        for w in pts.windows(3) {
            let d1 = [w[1][0] - w[0][0], w[1][1] - w[0][1]];
            let d2 = [w[2][0] - w[1][0], w[2][1] - w[1][1]];
            let d = d1[0] * d2[1] - d1[1] * d2[0];
            let tol = 1e-10 * d1[0].hypot(d1[1]) * d2[0].hypot(d2[1]);
            t.record(if d > tol {
                1
            } else if d < -tol {
                -1
            } else {
                0
            });
        }
        t
    }

    fn record(&mut self, sign: i8) {
        self.all_nonneg &= sign >= 0;
        self.all_pos &= sign > 0;
        self.all_nonpos &= sign <= 0;
        self.all_neg &= sign < 0;
    }

    fn satisfies(&self, class: ShapeClass) -> bool {
        match class {
            ShapeClass::Convex => self.all_nonneg,
            ShapeClass::StrictlyConvex => self.all_pos,
            ShapeClass::Concave => self.all_nonpos,
            ShapeClass::StrictlyConcave => self.all_neg,
            ShapeClass::General => true,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::value::rat;
    use std::f64::consts::{FRAC_PI_4, FRAC_PI_8, PI, SQRT_2};

    fn t11() -> Curve {
        Curve::triangle(rat_int(1), rat_int(1)).unwrap()
    }

    #[test]
    fn construction_examples() {
        assert!(Curve::polygonal_from_ints(&[(1, 0), (0, 1)], ShapeClass::Convex).is_ok());
        assert!(Curve::polygonal_from_ints(&[(1, 0), (0, 2)], ShapeClass::Convex).is_ok());
        // The polydisk corner turns left: convex, not concave.
        let corner = [(1, 0), (1, 1), (0, 1)];
        assert!(Curve::polygonal_from_ints(&corner, ShapeClass::Convex).is_ok());
        assert!(matches!(
            Curve::polygonal_from_ints(&corner, ShapeClass::Concave),
            Err(Error::ShapeClassViolation { .. })
        ));
        assert!(matches!(
            Curve::polygonal_from_ints(&[(1, 0), (2, 0)], ShapeClass::Convex),
            Err(Error::NonMonotoneAngles { index: 1 })
        ));
        assert_eq!(Curve::polygonal_from_ints(&[(1, 0)], ShapeClass::Convex).unwrap_err(), Error::EmptyInput);
    }

    #[test]
    fn support_examples() {
        let t = t11();
        assert_eq!(t.support((1, 1), Mode::Convex).unwrap(), Value::from_int(1));
        assert_eq!(t.support((2, 1), Mode::Convex).unwrap(), Value::from_int(2));
        assert_eq!(t.support((1, 1), Mode::Concave).unwrap(), Value::from_int(1));
        assert_eq!(t.support((1, 0), Mode::Concave).unwrap(), Value::from_int(0));
        assert_eq!(t.support((0, 0), Mode::Convex), Err(Error::ZeroVector));
        let c = Curve::quarter_circle(1.0);
        assert!((c.support((3, 4), Mode::Convex).unwrap().to_f64() - 5.0).abs() < 1e-12);
    }

    #[test]
    fn area_and_arc_action() {
        assert_eq!(t11().area().unwrap(), Value::Exact(rat(1, 2)));
        let e12 = Curve::triangle(rat_int(1), rat_int(2)).unwrap();
        assert_eq!(e12.area().unwrap(), Value::from_int(1));
        let c = Curve::quarter_circle(1.0);
        assert!((c.area().unwrap().to_f64() - PI / 4.0).abs() < 1e-9);
        assert_eq!(t11().arc_action(SubArc::Full).unwrap(), Value::from_int(1));
        assert!((c.arc_action(SubArc::Full).unwrap().to_f64() - PI / 2.0).abs() < 1e-9);
        assert!((c.arc_action(SubArc::angles(0.0, FRAC_PI_8)).unwrap().to_f64() - FRAC_PI_8).abs() < 1e-9);
        assert!(matches!(c.arc_action(SubArc::angles(0.0, 2.0)), Err(Error::ArcOutOfRange { .. })));
    }

    #[test]
    fn partial_edge_is_prorated() {
        // Half of the hypotenuse by angle [0, π/4] is half of its length.
        let v = t11().arc_action(SubArc::angles(0.0, FRAC_PI_4)).unwrap();
        assert!((v.to_f64() - 0.5).abs() < 1e-12);
        assert!(!v.is_exact());
    }

    #[test]
    fn incomplete_curve_has_no_area() {
        let partial = Curve::polygonal(
            vec![RatPoint::new(rat(1, 1), rat(1, 2)), RatPoint::new(rat(1, 2), rat(1, 1))],
            ShapeClass::Convex,
        )
        .unwrap();
        assert!(!partial.is_complete());
        assert_eq!(partial.area(), Err(Error::IncompleteCurve));
    }

    #[test]
    fn support_sites() {
        let c = Curve::quarter_circle(1.0);
        let site = c.support_site((3, 4), Mode::Convex).unwrap();
        let SupportSite::Point(p) = site else { panic!("expected point") };
        let p = p.to_f64();
        assert!((p[0] - 0.6).abs() < 1e-9 && (p[1] - 0.8).abs() < 1e-9);
        let SupportSite::Point(e) = c.support_site((1, 0), Mode::Convex).unwrap() else { panic!() };
        assert_eq!(e.to_f64(), [1.0, 0.0]);
        assert!(matches!(t11().support_site((1, 1), Mode::Convex).unwrap(), SupportSite::Face(..)));
        let _ = SQRT_2;
    }

    #[test]
    fn segment_admits_both_modes() {
        assert!(t11().admits(Mode::Convex) && t11().admits(Mode::Concave));
        assert!(Curve::quarter_circle(1.0).admits(Mode::Convex));
        assert!(!Curve::quarter_circle(1.0).admits(Mode::Concave));
    }

    #[test]
    fn proportionality() {
        let t = t11();
        let s = t.scaled(&rat(3, 2));
        assert_eq!(s.proportionality_to(&t), Some(rat(3, 2)));
        let e = Curve::triangle(rat_int(1), rat_int(2)).unwrap();
        assert_eq!(e.proportionality_to(&t), None);
    }
}
