//! Atomic measures `𝔇_k` read off optimal paths, the Weyl law and
//! equidistribution diagnostics.
//!
//! Every edge `e` of an optimal path is sent to the point `p(e)` where its
//! normal supports the curve. A run of `M` primitive steps with normal
//! `(b, a)` carries weight `M·w(p)` at an interior tangency point, and weight
//! `M·b·ρ(0)` (resp. `M·a·ρ(π/2)`) when `p(e)` is the axis endpoint
//! `(ρ(0), 0)` (resp. `(0, ρ(π/2))`), whose own normal is `(1, 0)` (resp.
//! `(0, 1)`). Either way the weight equals the edge's share of the action.

use rayon::prelude::*;

use crate::capacity::{capacity_with, CapacityResult, SearchOptions};
use crate::error::{Error, Result};
use crate::geometry::{hausdorff, Curve, CurvePoint, Mode, SegmentSet, SubArc, SupportSite};
use crate::lattice_paths::{IntegralPath, PathEdge};
use crate::value::{rat_int, Value};

#[derive(Clone, Debug, PartialEq)]
pub struct Atom {
    pub point: CurvePoint,
    pub normal: (i64, i64),
    pub multiplicity: i64,
    /// `multiplicity · w(point)`.
    pub weight: Value,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpectralDistribution {
    pub k: u32,
    pub atoms: Vec<Atom>,
    pub source_path: IntegralPath,
    /// True iff the optimal path is unique.
    pub unique: bool,
    pub num_optima: u128,
}

impl SpectralDistribution {
    pub fn total(&self) -> Value {
        self.atoms.iter().map(|a| a.weight.clone()).sum()
    }
}

/// Argmax (convex) or argmin (concave) of `q·n` over the curve.
pub fn edge_point(curve: &Curve, normal: (i64, i64), mode: Mode) -> Result<SupportSite> {
    curve.support_site(normal, mode)
}

enum EndKind {
    XAxis,
    YAxis,
    Interior,
}

fn classify(curve: &Curve, p: &CurvePoint) -> EndKind {
    if *p == curve.first_point() {
        EndKind::XAxis
    } else if *p == curve.last_point() {
        EndKind::YAxis
    } else {
        EndKind::Interior
    }
}

/// `m(e)` for a whole run of primitive steps: its multiplicity at an
/// interior point, `|Δy|` at `(ρ(0), 0)` and `|Δx|` at `(0, ρ(π/2))`.
pub fn edge_multiplicity(curve: &Curve, edge: &PathEdge, mode: Mode) -> Result<i64> {
    match edge_point(curve, edge.integer_normal, mode)? {
        SupportSite::Face(..) => Err(Error::UnresolvedFace(edge.integer_normal.0, edge.integer_normal.1)),
        SupportSite::Point(p) => Ok(multiplicity_at(curve, &p, edge).0),
    }
}

fn multiplicity_at(curve: &Curve, p: &CurvePoint, edge: &PathEdge) -> (i64, (i64, i64)) {
    let v = edge.vector();
    match classify(curve, p) {
        EndKind::XAxis => (v.1.abs(), (1, 0)),
        EndKind::YAxis => (v.0.abs(), (0, 1)),
        EndKind::Interior => (edge.multiplicity, edge.integer_normal),
    }
}

/// Atom for one edge; faces are resolved to their first point when
/// `allow_faces` is set (the weight is constant along a face).
fn edge_atom(curve: &Curve, edge: &PathEdge, mode: Mode, allow_faces: bool) -> Result<Atom> {
    let n = edge.integer_normal;
    let point = match edge_point(curve, n, mode)? {
        SupportSite::Point(p) => p,
        SupportSite::Face(p, _) if allow_faces => p,
        SupportSite::Face(..) => return Err(Error::FaceAmbiguity(n.0, n.1)),
    };
    let (multiplicity, normal) = multiplicity_at(curve, &point, edge);
    let w = point.dot_int(normal);
    Ok(Atom { weight: w.scale(&rat_int(multiplicity)), point, normal, multiplicity })
}

/// Atoms of the measure carried by `path`, merged by (point, normal).
pub fn distribution_of_path(curve: &Curve, path: &IntegralPath, mode: Mode) -> Result<Vec<Atom>> {
    let mut atoms: Vec<Atom> = Vec::new();
    for e in path.edges() {
        let a = edge_atom(curve, &e, mode, false)?;
        match atoms.iter_mut().find(|b| b.point == a.point && b.normal == a.normal) {
            Some(b) => {
                b.multiplicity += a.multiplicity;
                b.weight = b.weight.clone() + a.weight;
            }
            None => atoms.push(a),
        }
    }
    Ok(atoms)
}

/// `Σ m(e)·w(p(e))` recomputed from support points, independently of the
/// support values used by the optimiser.
pub fn reconstruct_capacity(curve: &Curve, path: &IntegralPath, mode: Mode) -> Result<Value> {
    path.edges().iter().try_fold(Value::zero(), |acc, e| Ok(acc + edge_atom(curve, e, mode, true)?.weight))
}

pub fn distribution_from_result(curve: &Curve, result: &CapacityResult) -> Result<SpectralDistribution> {
    let path = result.optimal_paths.first().ok_or(Error::NoOptimum)?;
    Ok(SpectralDistribution {
        k: result.k,
        atoms: distribution_of_path(curve, path, result.mode)?,
        source_path: path.clone(),
        unique: result.num_optima == 1,
        num_optima: result.num_optima,
    })
}

/// `𝔇_k` from the lexicographically smallest optimal path.
pub fn spectral_distribution(curve: &Curve, k: u32, mode: Mode) -> Result<SpectralDistribution> {
    let r = capacity_with(curve, k, mode, &SearchOptions::default())?;
    distribution_from_result(curve, &r)
}

fn check_arc(arc: SubArc) -> Result<()> {
    if let SubArc::Angles { start, end } = arc {
        if start > end || start < -1e-12 || end > std::f64::consts::FRAC_PI_2 + 1e-12 {
            return Err(Error::ArcOutOfRange { start, end });
        }
    }
    Ok(())
}

/// Total weight of atoms in the closed sub-arc.
pub fn distribution_mass(d: &SpectralDistribution, arc: SubArc) -> Result<Value> {
    check_arc(arc)?;
    Ok(d.atoms.iter().filter(|a| arc.contains_angle(a.point.angle())).map(|a| a.weight.clone()).sum())
}

/// `c_k/√k − √(4·A(γ))`; the volume of the domain is `2A`.
pub fn weyl_residual(curve: &Curve, k: u32, mode: Mode) -> Result<f64> {
    let c = capacity_with(curve, k, mode, &SearchOptions::default())?;
    Ok(weyl_residual_of(&c.value, k, &curve.area()?))
}

pub fn weyl_residual_of(c_k: &Value, k: u32, area: &Value) -> f64 {
    c_k.to_f64() / (k as f64).sqrt() - (4.0 * area.to_f64()).sqrt()
}

#[derive(Clone, Debug, PartialEq)]
pub struct WeylRow {
    pub k: u32,
    pub value: Value,
    pub residual: f64,
}

pub fn weyl_table(curve: &Curve, mode: Mode, ks: &[u32], opts: &SearchOptions) -> Result<Vec<WeylRow>> {
    let area = curve.area()?;
    ks.par_iter()
        .map(|&k| {
            let c = capacity_with(curve, k, mode, opts)?;
            Ok(WeylRow { k, residual: weyl_residual_of(&c.value, k, &area), value: c.value })
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct EquidistRow {
    pub k: u32,
    pub arc_id: usize,
    pub arc: (f64, f64),
    /// `None` when some edge is supported along a face of the curve.
    pub mass: Option<Value>,
    /// `A_γ(γ')/√vol` with `vol = 2A(γ)`.
    pub target: f64,
    /// `|𝔇_k(γ')/√(2k) − target|`, NaN without a mass.
    pub err: f64,
    /// `d_H(√(A/k)·Λ_k, γ)`.
    pub hausdorff: f64,
    /// Same for the edges of `Λ_k` landing in `γ'` against `γ'`; NaN when
    /// no edge lands there.
    pub restricted_hausdorff: f64,
    pub num_optima: u128,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct ExperimentReport {
    pub rows: Vec<EquidistRow>,
    pub warnings: Vec<String>,
}

/// Restricted and full Hausdorff distances use paths rescaled by `√(A/k)`,
/// which gives the enclosed region the area of `γ`'s region.
pub fn equidistribution_report(
    curve: &Curve,
    mode: Mode,
    ks: &[u32],
    arcs: &[SubArc],
    opts: &SearchOptions,
) -> Result<ExperimentReport> {
    let mut warnings = Vec::new();
    if !curve.shape_class().is_strict() {
        warnings.push(format!(
            "curve is {} rather than strictly convex or concave; optimal paths and 𝔇_k may be non-unique",
            curve.shape_class()
        ));
    }
    let arcs: Vec<SubArc> = if arcs.is_empty() { vec![SubArc::Full] } else { arcs.to_vec() };
    for &a in &arcs {
        check_arc(a)?;
    }
    let area = curve.area()?.to_f64();
    let vol = 2.0 * area;
    let targets: Vec<f64> =
        arcs.iter().map(|&a| Ok(curve.arc_action(a)?.to_f64() / vol.sqrt())).collect::<Result<_>>()?;
    let curve_segments = curve.segments();
    let per_k: Vec<Vec<EquidistRow>> = ks
        .par_iter()
        .map(|&k| {
            let r = capacity_with(curve, k, mode, opts)?;
            let path = r.optimal_paths.first().ok_or(Error::NoOptimum)?;
            let d = match distribution_from_result(curve, &r) {
                Ok(d) => Some(d),
                Err(Error::FaceAmbiguity(..)) => None,
                Err(e) => return Err(e),
            };
            let s = (area / k as f64).sqrt();
            let full = hausdorff(&path.scale(s)?, &curve_segments);
            let edges = path.edges();
            let mut rows = Vec::new();
            for (arc_id, (&arc, &target)) in arcs.iter().zip(&targets).enumerate() {
                let mass = d.as_ref().map(|d| distribution_mass(d, arc)).transpose()?;
                let err = match &mass {
                    Some(m) => (m.to_f64() / (2.0 * k as f64).sqrt() - target).abs(),
                    None => f64::NAN,
                };
                let restricted = restricted_segments(curve, path, &edges, mode, arc, s)?;
                let restricted_hausdorff =
                    if restricted.is_empty() { f64::NAN } else { hausdorff(&restricted, &curve.segments_in(arc)) };
                let (lo, hi) = arc.bounds(curve);
                rows.push(EquidistRow {
                    k,
                    arc_id,
                    arc: (lo, hi),
                    mass,
                    target,
                    err,
                    hausdorff: full,
                    restricted_hausdorff,
                    num_optima: r.num_optima,
                });
            }
            Ok(rows)
        })
        .collect::<Result<_>>()?;
    let rows: Vec<EquidistRow> = per_k.into_iter().flatten().collect();
    if rows.iter().any(|r| r.mass.is_none()) {
        warnings.push("some optimal edges are supported along faces; masses are not defined there".into());
    }
    Ok(ExperimentReport { rows, warnings })
}

/// Edges of `path` whose support point lies in `arc`, scaled by `s`.
fn restricted_segments(
    curve: &Curve,
    path: &IntegralPath,
    edges: &[PathEdge],
    mode: Mode,
    arc: SubArc,
    s: f64,
) -> Result<SegmentSet> {
    let v = path.vertices();
    let mut segs = Vec::new();
    for (i, e) in edges.iter().enumerate() {
        let atom = edge_atom(curve, e, mode, true)?;
        if arc.contains_angle(atom.point.angle()) {
            let (p, q) = (v[i], v[i + 1]);
            segs.push([[p.0 as f64 * s, p.1 as f64 * s], [q.0 as f64 * s, q.1 as f64 * s]]);
        }
    }
    Ok(SegmentSet::new(segs))
}
