//! Boundary points with rational normal direction, their weights
//! `w(p) = p·n(p)`, and a bounded niceness test.

use num_integer::Integer;
use num_rational::BigRational;

use super::curve::{Curve, CurvePoint, Mode, SupportSite};
use super::integer_relation::{find_relation, RelationInput};
use crate::error::{Error, Result};
use crate::value::Value;

#[derive(Clone, Debug, PartialEq)]
pub struct RationalNormalPoint {
    /// A single point, or a whole polygon edge sharing the normal.
    pub site: SupportSite,
    pub normal: (i64, i64),
    pub weight: Value,
}

impl RationalNormalPoint {
    pub fn point(&self) -> &CurvePoint {
        match &self.site {
            SupportSite::Point(p) | SupportSite::Face(p, _) => p,
        }
    }

    pub fn is_face(&self) -> bool {
        matches!(self.site, SupportSite::Face(..))
    }
}

/// The mode whose support function locates tangency points on `curve`.
pub(crate) fn tangency_mode(curve: &Curve) -> Result<Mode> {
    if !curve.is_complete() {
        return Err(Error::NotCompleteOrNotStrict);
    }
    if curve.admits(Mode::Convex) {
        Ok(Mode::Convex)
    } else if curve.admits(Mode::Concave) {
        Ok(Mode::Concave)
    } else {
        Err(Error::NotCompleteOrNotStrict)
    }
}

/// Axis endpoints (first) plus every tangency point whose primitive normal lies in
/// `[0, l]²`. On polygons only edges carry a normal, so mixed normals show up
/// as faces; on smooth curves a support point at an axis endpoint is not a
/// tangency and is skipped.
pub fn rational_normal_points(curve: &Curve, l: u32) -> Result<Vec<RationalNormalPoint>> {
    let mode = tangency_mode(curve)?;
    let start = curve.first_point();
    let end = curve.last_point();
    let mut out = vec![
        RationalNormalPoint { weight: curve.x_intercept(), site: SupportSite::Point(start.clone()), normal: (1, 0) },
        RationalNormalPoint { weight: curve.y_intercept(), site: SupportSite::Point(end.clone()), normal: (0, 1) },
    ];
    let l = l as i64;
    for i in 1..=l {
        for j in 1..=l {
            if i.gcd(&j) != 1 {
                continue;
            }
            let site = curve.support_site((i, j), mode)?;
            let keep = match &site {
                SupportSite::Face(..) => true,
                SupportSite::Point(p) => {
                    curve.vertices().is_none() && p.to_f64() != start.to_f64() && p.to_f64() != end.to_f64()
                }
            };
            if keep {
                let weight = curve.support((i, j), mode)?;
                out.push(RationalNormalPoint { site, normal: (i, j), weight });
            }
        }
    }
    let key = |p: &RationalNormalPoint| p.point().angle();
    out[2..].sort_by(|a, b| key(a).total_cmp(&key(b)).then(a.normal.cmp(&b.normal)));
    Ok(out)
}

#[derive(Clone, Debug, PartialEq)]
pub enum NiceVerdict {
    /// An integer relation among the weights, or a face (whose points all
    /// share one weight).
    NotNice(NiceWitness),
    /// No relation within the bound; not a proof of niceness.
    PlausiblyNice { exhaustive: bool },
}

#[derive(Clone, Debug, PartialEq)]
pub enum NiceWitness {
    Relation { points: Vec<RationalNormalPoint>, coefficients: Vec<i64> },
    Face(RationalNormalPoint),
}

/// Searches for `Σ a_i w(p_i) = 0` with `|a_i| ≤ l` over the rational-normal
/// points of normal size `l`. Exact when every weight is rational, otherwise
/// at tolerance `10^-precision` relative to the largest weight.
pub fn nice_check(curve: &Curve, l: u32, precision: u32) -> Result<NiceVerdict> {
    let points = rational_normal_points(curve, l)?;
    let bound = l.max(1) as i64;
    let exact: Option<Vec<BigRational>> = points.iter().map(|p| p.weight.as_exact().cloned()).collect();
    let (relation, exhaustive) = match &exact {
        Some(w) => find_relation(&RelationInput::Exact(w), bound),
        None => {
            let values: Vec<f64> = points.iter().map(|p| p.weight.to_f64()).collect();
            let scale = values.iter().fold(1.0f64, |m, v| m.max(v.abs()));
            // Below ~1e-13 the weights themselves are not that accurate.
            let tol = 10f64.powi(-(precision.min(13) as i32)) * scale;
            find_relation(&RelationInput::Approx { values: &values, tol }, bound)
        }
    };
    if let Some(coefficients) = relation {
        let (pts, coeffs) =
            points.iter().zip(&coefficients).filter(|(_, c)| **c != 0).map(|(p, c)| (p.clone(), *c)).unzip();
        return Ok(NiceVerdict::NotNice(NiceWitness::Relation { points: pts, coefficients: coeffs }));
    }
    if let Some(face) = points.iter().find(|p| p.is_face()) {
        return Ok(NiceVerdict::NotNice(NiceWitness::Face(face.clone())));
    }
    Ok(NiceVerdict::PlausiblyNice { exhaustive })
}
