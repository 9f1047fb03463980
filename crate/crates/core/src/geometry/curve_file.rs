//! JSON curve specification files.
//!
//! ```json
//! {"kind": "polygonal", "shape_class": "convex", "vertices": [["1", "0"], ["0", "1/2"]]}
//! {"kind": "parametric", "shape_class": "strictly_convex",
//!  "radial": {"family": "ellipse", "a": 1.0, "b": 2.0}}
//! ```

use std::f64::consts::FRAC_PI_2;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::curve::{Curve, CurveKind, RatPoint, ShapeClass, MIN_SAMPLES};
use super::radial::RadialFn;
use crate::error::{Error, Result};
use crate::value::parse_rational;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum CurveFile {
    Polygonal {
        shape_class: ShapeClass,
        /// `[x, y]` pairs as exact `"p/q"`, integer or finite decimal strings.
        vertices: Vec<[String; 2]>,
    },
    Parametric {
        shape_class: ShapeClass,
        radial: RadialFn,
        /// Defaults to `[0, π/2]`.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        angle_range: Option<[f64; 2]>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        samples: Option<usize>,
        /// Multiplies `ρ`; defaults to 1.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        scale: Option<f64>,
    },
}

impl CurveFile {
    pub fn from_json(text: &str) -> Result<CurveFile> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("curve files serialize")
    }

    pub fn to_curve(&self) -> Result<Curve> {
        match self {
            CurveFile::Polygonal { shape_class, vertices } => {
                let vs = vertices
                    .iter()
                    .map(|[x, y]| Ok(RatPoint::new(parse_rational(x)?, parse_rational(y)?)))
                    .collect::<Result<Vec<_>>>()?;
                Curve::polygonal(vs, *shape_class)
            }
            CurveFile::Parametric { shape_class, radial, angle_range, samples, scale } => {
                let [t0, t1] = angle_range.unwrap_or([0.0, FRAC_PI_2]);
                let c = Curve::parametric(radial.clone(), (t0, t1), *shape_class, samples.unwrap_or(MIN_SAMPLES))?;
                match scale {
                    None => Ok(c),
                    Some(s) if *s > 0.0 && s.is_finite() => Ok(c.scaled_f64(*s)),
                    Some(s) => Err(Error::NonpositiveScale(*s)),
                }
            }
        }
    }

    pub fn from_curve(curve: &Curve) -> CurveFile {
        match curve.kind() {
            CurveKind::Polygonal => CurveFile::Polygonal {
                shape_class: curve.shape_class(),
                vertices: curve
                    .vertices()
                    .expect("polygonal")
                    .iter()
                    .map(|p| [p.x.to_string(), p.y.to_string()])
                    .collect(),
            },
            CurveKind::Parametric => {
                let (radial, scale) = curve.radial().expect("parametric");
                let (t0, t1) = curve.angle_range();
                CurveFile::Parametric {
                    shape_class: curve.shape_class(),
                    radial: radial.clone(),
                    angle_range: (t0 != 0.0 || t1 != FRAC_PI_2).then_some([t0, t1]),
                    samples: None,
                    scale: (scale != 1.0).then_some(scale),
                }
            }
        }
    }
}

impl Curve {
    pub fn from_json(text: &str) -> Result<Curve> {
        CurveFile::from_json(text)?.to_curve()
    }

    pub fn to_json(&self) -> String {
        CurveFile::from_curve(self).to_json()
    }
}

/// Reads a curve file; IO failures are reported as `std::io::Error`.
pub fn read_curve_file(path: &Path) -> std::io::Result<Result<Curve>> {
    let text = std::fs::read_to_string(path)?;
    Ok(Curve::from_json(&text))
}
