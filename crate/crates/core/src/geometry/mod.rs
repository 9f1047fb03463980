//! Star-shaped curves in the closed positive quadrant and the quantities
//! read off them: support values, areas, actions, rational normals.

pub mod curve;
pub mod curve_file;
pub mod hausdorff;
pub mod integer_relation;
pub mod normals;
pub mod quad;
pub mod radial;

pub use curve::{Curve, CurveKind, CurvePoint, Mode, RatPoint, ShapeClass, SubArc, SupportSite, MIN_SAMPLES};
pub use curve_file::{read_curve_file, CurveFile};
pub use hausdorff::{hausdorff, SegmentSet};
pub use normals::{nice_check, rational_normal_points, NiceVerdict, NiceWitness, RationalNormalPoint};
pub use radial::RadialFn;

use crate::error::{Error, Result};
use crate::value::Value;

/// `max_{q∈γ} q·n`.
pub fn support_max(curve: &Curve, n: (i64, i64)) -> Result<Value> {
    curve.support(n, Mode::Convex)
}

/// `min_{q∈γ} q·n`.
pub fn support_min(curve: &Curve, n: (i64, i64)) -> Result<Value> {
    curve.support(n, Mode::Concave)
}

/// `A_base(target) = ∫_target h_base(ν(p)) dμ(p)` with `h_base` the max
/// (convex mode) or min (concave mode) support function of `base`.
///
/// On a polygonal target each edge `d` contributes `h_base(N)` with
/// `N = (d_y, -d_x)`, since `|d|·h(N/|d|) = h(N)`. Smooth targets are
/// integrated in θ with `N = (γ'_y, -γ'_x)`.
pub fn cross_action(base: &Curve, target: &Curve, mode: Mode) -> Result<Value> {
    if !base.is_complete() {
        return Err(Error::IncompleteCurve);
    }
    if !base.admits(mode) || !target.admits(mode) {
        return Err(Error::ModeMismatch { mode: mode.to_string() });
    }
    let maximize = mode.maximizes_support();
    if let Some(vs) = target.vertices() {
        return Ok(vs
            .windows(2)
            .map(|w| {
                let d = w[1].sub(&w[0]);
                base.support_rat(&(d.y.clone(), -d.x.clone()), maximize)
            })
            .sum());
    }
    let (a, b) = target.angle_range();
    let v = quad::integrate(
        |t| {
            let tangent = target.tangent_at(t).expect("parametric target");
            base.support_f64([tangent[1], -tangent[0]], maximize)
        },
        a,
        b,
        1e-12,
    );
    Ok(Value::Approx(v))
}

/// Symmetric Hausdorff distance between two curves.
pub fn hausdorff_distance(a: &Curve, b: &Curve) -> f64 {
    hausdorff(&a.segments(), &b.segments())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::value::{rat, rat_int};
    use std::f64::consts::SQRT_2;

    fn t11() -> Curve {
        Curve::triangle(rat_int(1), rat_int(1)).unwrap()
    }

    #[test]
    fn cross_action_examples() {
        let t = t11();
        assert_eq!(cross_action(&t, &t, Mode::Convex).unwrap(), Value::from_int(1));
        let c = Curve::quarter_circle(1.0);
        assert!((cross_action(&t, &c, Mode::Convex).unwrap().to_f64() - SQRT_2).abs() < 1e-9);
        let s = t.scaled(&rat(5, 3));
        assert_eq!(cross_action(&t, &s, Mode::Convex).unwrap(), Value::Exact(rat(5, 3)));
        assert!((cross_action(&c, &c, Mode::Convex).unwrap().to_f64() - std::f64::consts::FRAC_PI_2).abs() < 1e-9);
    }

    #[test]
    fn cross_action_rejects_mode_mismatch() {
        let c = Curve::quarter_circle(1.0);
        assert!(matches!(cross_action(&t11(), &c, Mode::Concave), Err(Error::ModeMismatch { .. })));
    }

    #[test]
    fn hausdorff_examples() {
        let t = t11();
        assert_eq!(hausdorff_distance(&t, &t), 0.0);
        assert!((hausdorff_distance(&t, &t.scaled(&rat_int(2))) - 1.0).abs() < 1e-12);
        let c = Curve::quarter_circle(1.0);
        assert!((hausdorff_distance(&c, &t) - (1.0 - SQRT_2 / 2.0)).abs() < 1e-6);
    }

    #[test]
    fn support_bounds() {
        let t = t11();
        assert_eq!(support_max(&t, (2, 1)).unwrap(), Value::from_int(2));
        assert_eq!(support_min(&t, (1, 0)).unwrap(), Value::zero());
    }
}
