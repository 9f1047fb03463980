use serde::{Deserialize, Serialize};

/// Radial profile `θ ↦ ρ(θ)` of a parametric star-shaped curve.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum RadialFn {
    /// Quarter-circle of the given radius.
    Circle { radius: f64 },
    /// `x²/a² + y²/b² = 1`.
    Ellipse { a: f64, b: f64 },
    /// `(x/a)^p + (y/b)^p = 1`; convex for `p ≥ 1`, concave for `p ≤ 1`.
    Superellipse { a: f64, b: f64, exponent: f64 },
    /// Piecewise-linear interpolation of `(θ, ρ)` samples, θ strictly increasing.
    Samples { theta: Vec<f64>, rho: Vec<f64> },
}

impl RadialFn {
    pub fn eval(&self, theta: f64) -> f64 {
        let (c, s) = (theta.cos().max(0.0), theta.sin().max(0.0));
        match self {
            RadialFn::Circle { radius } => *radius,
            RadialFn::Ellipse { a, b } => a * b / ((b * c).powi(2) + (a * s).powi(2)).sqrt(),
            RadialFn::Superellipse { a, b, exponent } => {
                let g = (c / a).powf(*exponent) + (s / b).powf(*exponent);
                g.powf(-1.0 / exponent)
            }
            RadialFn::Samples { theta: ts, rho } => {
                let i = match ts.partition_point(|&t| t <= theta) {
                    0 => 0,
                    i if i >= ts.len() => ts.len() - 2,
                    i => i - 1,
                };
                let w = (theta - ts[i]) / (ts[i + 1] - ts[i]);
                rho[i] * (1.0 - w) + rho[i + 1] * w
            }
        }
    }

    /// dρ/dθ. Analytic for the closed-form families, central differences
    /// (one-sided at the ends) for samples.
    pub fn deriv(&self, theta: f64) -> f64 {
        match self {
            RadialFn::Circle { .. } => 0.0,
            RadialFn::Ellipse { a, b } => {
                let (c, s) = (theta.cos(), theta.sin());
                let q = (b * c).powi(2) + (a * s).powi(2);
                -a * b * (a * a - b * b) * s * c / q.powf(1.5)
            }
            RadialFn::Superellipse { .. } | RadialFn::Samples { .. } => {
                let h = 1e-6;
                let (lo, hi) = (theta - h, theta + h);
                let lo = lo.max(0.0);
                let hi = hi.min(std::f64::consts::FRAC_PI_2);
                (self.eval(hi) - self.eval(lo)) / (hi - lo)
            }
        }
    }

    pub fn validate(&self) -> Result<(), String> {
        let pos = |v: f64, name: &str| {
            if v.is_finite() && v > 0.0 {
                Ok(())
            } else {
                Err(format!("{name} must be positive and finite, got {v}"))
            }
        };
        match self {
            RadialFn::Circle { radius } => pos(*radius, "radius"),
            RadialFn::Ellipse { a, b } => pos(*a, "a").and(pos(*b, "b")),
            RadialFn::Superellipse { a, b, exponent } => pos(*a, "a").and(pos(*b, "b")).and(pos(*exponent, "exponent")),
            RadialFn::Samples { theta, rho } => {
                if theta.len() < 2 || theta.len() != rho.len() {
                    return Err("samples need at least two (theta, rho) pairs".into());
                }
                if theta.windows(2).any(|w| w[1] <= w[0]) {
                    return Err("sample angles must be strictly increasing".into());
                }
                rho.iter().try_for_each(|&r| pos(r, "rho"))
            }
        }
    }
}
