//! Convex and concave integral lattice paths.
//!
//! A path runs from a point `(0, Y)` on the y-axis to a point `(X, 0)` on the
//! x-axis with `x` nondecreasing and `y` nonincreasing. Convex paths turn
//! clockwise (slopes get steeper), concave paths counter-clockwise. The
//! outward normal of a step `(dx, dy)` is `(-dy, dx)`, which points away from
//! the origin for every admissible step.

use std::cmp::Ordering;
use std::fmt;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::geometry::{Curve, Mode, SegmentSet};
use crate::value::Value;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntegralPath {
    vertices: Vec<(i64, i64)>,
    mode: Mode,
}

/// A maximal run of equal primitive steps.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PathEdge {
    /// Primitive step `(dx, dy)` with `dx ≥ 0 ≥ dy`.
    pub primitive: (i64, i64),
    pub multiplicity: i64,
    pub integer_normal: (i64, i64),
}

impl PathEdge {
    pub fn new(primitive: (i64, i64), multiplicity: i64) -> Self {
        PathEdge { primitive, multiplicity, integer_normal: (-primitive.1, primitive.0) }
    }

    /// Total displacement `multiplicity · primitive`.
    pub fn vector(&self) -> (i64, i64) {
        (self.primitive.0 * self.multiplicity, self.primitive.1 * self.multiplicity)
    }
}

impl IntegralPath {
    /// Validates and canonicalises a path: collinear consecutive vertices are
    /// dropped, so every stored vertex except the ends is a corner.
    pub fn new(vertices: Vec<(i64, i64)>, mode: Mode) -> Result<IntegralPath> {
        let bad = |m: String| Err(Error::InvalidPath(m));
        let Some(&first) = vertices.first() else {
            return bad("no vertices".into());
        };
        if vertices.len() == 1 {
            if first != (0, 0) {
                return bad(format!("single-vertex path must sit at the origin, got {first:?}"));
            }
            return Ok(IntegralPath { vertices, mode });
        }
        let last = vertices[vertices.len() - 1];
        if first.0 != 0 || last.1 != 0 {
            return bad(format!("path must run from the y-axis to the x-axis, got {first:?} .. {last:?}"));
        }
        let mut steps: Vec<(i64, i64)> = Vec::with_capacity(vertices.len());
        for w in vertices.windows(2) {
            let d = (w[1].0 - w[0].0, w[1].1 - w[0].1);
            if d.0 < 0 || d.1 > 0 || d == (0, 0) {
                return bad(format!("step {:?} -> {:?} is not monotone", w[0], w[1]));
            }
            steps.push(d);
        }
        let mut canonical = vec![first];
        for i in 0..steps.len() {
            let v = vertices[i + 1];
            if let Some(&next) = steps.get(i + 1) {
                let cross = steps[i].0 * next.1 - steps[i].1 * next.0;
                if cross == 0 {
                    continue;
                }
                let ok = match mode {
                    Mode::Convex => cross < 0,
                    Mode::Concave => cross > 0,
                };
                if !ok {
                    return bad(format!("path turns the wrong way at {v:?} for a {mode} path"));
                }
            }
            canonical.push(v);
        }
        Ok(IntegralPath { vertices: canonical, mode })
    }

    /// The path at the origin with no edges.
    pub fn empty(mode: Mode) -> IntegralPath {
        IntegralPath { vertices: vec![(0, 0)], mode }
    }

    /// Builds the path whose edges are `edges` in head-to-tail order, starting
    /// on the y-axis.
    pub fn from_edges(edges: &[PathEdge], mode: Mode) -> Result<IntegralPath> {
        let height: i64 = edges.iter().map(|e| -e.vector().1).sum();
        let mut p = (0, height);
        let mut vertices = vec![p];
        for e in edges {
            let v = e.vector();
            p = (p.0 + v.0, p.1 + v.1);
            vertices.push(p);
        }
        IntegralPath::new(vertices, mode)
    }

    pub fn vertices(&self) -> &[(i64, i64)] {
        &self.vertices
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.len() == 1
    }

    /// `(X, Y)`: the axis intercepts.
    pub fn extent(&self) -> (i64, i64) {
        (self.vertices[self.vertices.len() - 1].0, self.vertices[0].1)
    }

    pub fn edges(&self) -> Vec<PathEdge> {
        self.vertices
            .windows(2)
            .map(|w| {
                let d = (w[1].0 - w[0].0, w[1].1 - w[0].1);
                let g = d.0.gcd(&d.1);
                PathEdge::new((d.0 / g, d.1 / g), g)
            })
            .collect()
    }

    /// Number of primitive steps, i.e. lattice points on the path minus one.
    pub fn primitive_steps(&self) -> i64 {
        self.edges().iter().map(|e| e.multiplicity).sum()
    }

    /// Lattice points in the closed region bounded by the path and the axes,
    /// counted column by column.
    pub fn count_l(&self) -> i64 {
        let (x_max, _) = self.extent();
        let mut top = vec![i64::MIN; x_max as usize + 1];
        top[0] = self.vertices[0].1;
        for w in self.vertices.windows(2) {
            let ((x0, y0), (x1, y1)) = (w[0], w[1]);
            if x0 == x1 {
                top[x0 as usize] = top[x0 as usize].max(y0);
                continue;
            }
            for x in x0..=x1 {
                let y = Integer::div_floor(&(y0 * (x1 - x0) + (y1 - y0) * (x - x0)), &(x1 - x0));
                top[x as usize] = top[x as usize].max(y);
            }
        }
        top.iter().map(|t| t + 1).sum()
    }

    /// The same count through the generalised Pick formula
    /// `L = Area + (X + Y + S)/2 + 1`, with `S` the number of primitive steps.
    /// Holds also for paths running along the axes.
    pub fn count_l_pick(&self) -> i64 {
        let (x, y) = self.extent();
        let twice_area: i64 = self.vertices.windows(2).map(|w| (w[1].0 - w[0].0) * (w[0].1 + w[1].1)).sum();
        (twice_area + x + y + self.primitive_steps() + 2) / 2
    }

    /// Lattice points in the closed region that are not on the path.
    pub fn count_l_prime(&self) -> i64 {
        self.count_l() - self.primitive_steps() - 1
    }

    /// Vertices multiplied by `s`.
    pub fn scale(&self, s: f64) -> Result<SegmentSet> {
        if !(s > 0.0 && s.is_finite()) {
            return Err(Error::NonpositiveScale(s));
        }
        let pts: Vec<[f64; 2]> = self.vertices.iter().map(|&(x, y)| [x as f64 * s, y as f64 * s]).collect();
        Ok(SegmentSet::from_polyline(&pts))
    }
}

impl PartialOrd for IntegralPath {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic on the vertex list.
impl Ord for IntegralPath {
    fn cmp(&self, other: &Self) -> Ordering {
        self.vertices.cmp(&other.vertices).then(self.mode.cmp(&other.mode))
    }
}

impl fmt::Display for IntegralPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (x, y)) in self.vertices.iter().enumerate() {
            if i > 0 {
                f.write_str("->")?;
            }
            write!(f, "({x},{y})")?;
        }
        Ok(())
    }
}

/// `A_γ(Λ) = Σ_e m(e)·h_γ(n(e))`, with `h_γ` the max support function for
/// convex paths and the min support function for concave ones. A primitive
/// step `v` with normal `n` has `|v| = |n|`, so the arc integral of the
/// support value along it collapses to `h_γ(n)`.
pub fn path_action(curve: &Curve, path: &IntegralPath, mode: Mode) -> Result<Value> {
    if path.mode != mode || !curve.admits(mode) {
        return Err(Error::ModeMismatch { mode: mode.to_string() });
    }
    path.edges().iter().try_fold(Value::zero(), |acc, e| {
        Ok(acc + curve.support(e.integer_normal, mode)?.scale(&crate::value::rat_int(e.multiplicity)))
    })
}
