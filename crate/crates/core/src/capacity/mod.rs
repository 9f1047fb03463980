//! ECH capacities `c_k` of convex and concave toric domains.
//!
//! Convex mode computes `min { A_γ(Λ) : Λ convex, L(Λ) ≥ k }`, concave mode
//! `max { A_γ(Λ) : Λ concave, L'(Λ) ≤ k-1 }`. Both are solved exactly by the
//! dynamic programme in [`dp`]; [`brute_force`] and [`oracle`] provide
//! independent cross-checks.

pub mod brute_force;
mod dp;
pub mod oracle;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::geometry::{Curve, Mode};
use crate::lattice_paths::{IntegralPath, PathEdge};
use crate::stern_brocot::primitive_directions;
use crate::value::{common_denominator, Value};
use dp::{Cost, Problem, Tables};

pub use brute_force::brute_force_capacity;
pub use oracle::ellipsoid_oracle;

#[derive(Clone, Debug, PartialEq)]
pub struct CapacityResult {
    pub k: u32,
    pub mode: Mode,
    pub value: Value,
    /// Optimal paths, sorted lexicographically; at most
    /// [`SearchOptions::max_paths`] of them.
    pub optimal_paths: Vec<IntegralPath>,
    /// Exact number of optimal paths (saturating).
    pub num_optima: u128,
    pub nodes_explored: u64,
}

impl CapacityResult {
    /// True when `optimal_paths` lists every optimum.
    pub fn is_complete(&self) -> bool {
        self.optimal_paths.len() as u128 == self.num_optima
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    /// Largest number of DP table cells (8 bytes each) to allocate.
    pub max_cells: u64,
    /// Largest number of optimal paths to materialise per `k`.
    pub max_paths: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { max_cells: 40_000_000, max_paths: 1000 }
    }
}

pub fn capacity(curve: &Curve, k: u32, mode: Mode) -> Result<CapacityResult> {
    capacity_with(curve, k, mode, &SearchOptions::default())
}

pub fn capacity_with(curve: &Curve, k: u32, mode: Mode, opts: &SearchOptions) -> Result<CapacityResult> {
    if k == 0 {
        return Err(Error::InvalidK);
    }
    let mut all = capacities_range_with(curve, k, mode, opts)?;
    Ok(all.pop().expect("k_max ≥ 1"))
}

/// `c_1, …, c_{k_max}` from a single table.
pub fn capacities_range(curve: &Curve, k_max: u32, mode: Mode) -> Result<Vec<CapacityResult>> {
    capacities_range_with(curve, k_max, mode, &SearchOptions::default())
}

pub fn capacities_range_with(
    curve: &Curve,
    k_max: u32,
    mode: Mode,
    opts: &SearchOptions,
) -> Result<Vec<CapacityResult>> {
    if k_max == 0 {
        return Err(Error::InvalidK);
    }
    if !curve.is_complete() {
        return Err(Error::IncompleteCurve);
    }
    if !curve.admits(mode) {
        return Err(Error::ModeMismatch { mode: mode.to_string() });
    }
    match curve.vertices() {
        Some(_) => run(&ExactModel::new(curve, mode)?, curve, k_max, mode, opts),
        None => run(&FloatModel::new(curve, mode), curve, k_max, mode, opts),
    }
}

/// How support values of a curve enter the table.
trait Model: Sync {
    type T: Cost;
    fn cost(&self, a: i64, b: i64) -> Result<Self::T>;
    fn value(&self, v: Self::T) -> Value;
    /// `(max X, max Y)` over convex paths of action at most `upper`, from
    /// `A ≥ ρ(π/2)·X` and `A ≥ ρ(0)·Y`.
    fn certified_box(&self, upper: Self::T) -> (i64, i64);
}

struct ExactModel {
    den: BigInt,
    points: Vec<(i64, i64)>,
    maximize: bool,
}

impl ExactModel {
    fn new(curve: &Curve, mode: Mode) -> Result<Self> {
        let vs = curve.vertices().expect("polygonal");
        let den = common_denominator(vs.iter().flat_map(|p| [&p.x, &p.y]));
        let scale = |r: &BigRational| (r * &den).to_integer().to_i64().ok_or(Error::ArithmeticOverflow);
        let points = vs.iter().map(|p| Ok((scale(&p.x)?, scale(&p.y)?))).collect::<Result<_>>()?;
        Ok(ExactModel { den, points, maximize: mode.maximizes_support() })
    }
}

impl Model for ExactModel {
    type T = i64;

    fn cost(&self, a: i64, b: i64) -> Result<i64> {
        let vals = self.points.iter().map(|&(x, y)| x as i128 * b as i128 + y as i128 * a as i128);
        let v = if self.maximize { vals.max() } else { vals.min() }.expect("nonempty");
        i64::try_from(v).map_err(|_| Error::ArithmeticOverflow)
    }

    fn value(&self, v: i64) -> Value {
        Value::Exact(BigRational::new(BigInt::from(v), self.den.clone()))
    }

    fn certified_box(&self, upper: i64) -> (i64, i64) {
        let rho0 = self.points[0].0;
        let rho1 = self.points[self.points.len() - 1].1;
        (upper / rho1, upper / rho0)
    }
}

struct FloatModel<'a> {
    curve: &'a Curve,
    maximize: bool,
}

impl<'a> FloatModel<'a> {
    fn new(curve: &'a Curve, mode: Mode) -> Self {
        FloatModel { curve, maximize: mode.maximizes_support() }
    }
}

impl Model for FloatModel<'_> {
    type T = f64;

    fn cost(&self, a: i64, b: i64) -> Result<f64> {
        Ok(self.curve.support_f64([b as f64, a as f64], self.maximize))
    }

    fn value(&self, v: f64) -> Value {
        Value::Approx(v)
    }

    fn certified_box(&self, upper: f64) -> (i64, i64) {
        let u = upper * (1.0 + dp::TIE_TOL) + dp::TIE_TOL;
        let rho0 = self.curve.x_intercept().to_f64();
        let rho1 = self.curve.y_intercept().to_f64();
        ((u / rho1).floor() as i64, (u / rho0).floor() as i64)
    }
}

fn build<M: Model>(
    model: &M,
    mode: Mode,
    dirs: Vec<(i64, i64)>,
    max_x: i64,
    max_y: i64,
    dmax: i64,
    cap: Option<M::T>,
) -> Result<Problem<M::T>> {
    let costs = dirs.iter().map(|&(a, b)| model.cost(a, b)).collect::<Result<_>>()?;
    Ok(Problem { mode, dirs, costs, max_x, max_y, dmax, cap })
}

fn check_budget<M: Model>(p: &Problem<M::T>, model: &M, upper: Option<M::T>, opts: &SearchOptions) -> Result<()> {
    let needed = p.cells();
    if needed > opts.max_cells {
        return Err(Error::SearchBudgetExceeded {
            needed_cells: needed,
            budget: opts.max_cells,
            upper_bound: upper.map(|u| model.value(u).to_f64()),
        });
    }
    Ok(())
}

/// Cheapest single-edge path `(0, mb) → (ma, 0)` with `L ≥ k` over a few
/// directions; always includes the vertical path.
fn straight_upper_bound<M: Model>(model: &M, dmax: i64) -> Result<M::T> {
    let mut best: Option<M::T> = None;
    for (a, b) in [(0, 1), (1, 0), (1, 1), (1, 2), (2, 1)] {
        let mut m = 0i64;
        while m * m * a * b + m * (a + b + 1) < dmax {
            m += 1;
        }
        let v = M::T::ZERO.add_mul(m, model.cost(a, b)?).ok_or(Error::ArithmeticOverflow)?;
        if best.is_none_or(|b| v < b) {
            best = Some(v);
        }
    }
    Ok(best.expect("nonempty"))
}

fn solve_convex<M: Model>(model: &M, curve: &Curve, k_max: u32, opts: &SearchOptions) -> Result<Tables<M::T>> {
    let dmax = 2 * k_max as i64 - 2;
    let mut upper = straight_upper_bound(model, dmax)?;
    let certified = model.certified_box(upper);
    // Optimal paths approximate √(k/A)·γ, so start from a box a little
    // larger than that shape and grow it only if the certificate fails.
    let s = 1.2 * (k_max as f64 / curve.area()?.to_f64()).sqrt();
    let guess =
        ((s * curve.x_intercept().to_f64()).ceil() as i64 + 1, (s * curve.y_intercept().to_f64()).ceil() as i64 + 1);
    let mut bx = (guess.0.min(certified.0), guess.1.min(certified.1));
    loop {
        let dirs: Vec<(i64, i64)> = primitive_directions(bx.0, bx.1).into_iter().rev().collect();
        let problem = build(model, Mode::Convex, dirs, bx.0, bx.1, dmax, Some(upper))?;
        check_budget(&problem, model, Some(upper), opts)?;
        let tables = problem.solve();
        let Some(found) = tables.optimum(k_max as i64) else {
            let grown = ((bx.0 * 2).min(certified.0).max(1), (bx.1 * 2).min(certified.1).max(1));
            if grown == bx {
                return Err(Error::NoOptimum);
            }
            bx = grown;
            continue;
        };
        let need = model.certified_box(found);
        if need.0 <= bx.0 && need.1 <= bx.1 {
            return Ok(tables);
        }
        upper = found;
        bx = (need.0.max(bx.0), need.1.max(bx.1));
    }
}

fn solve_concave<M: Model>(model: &M, k_max: u32, opts: &SearchOptions) -> Result<Tables<M::T>> {
    let dmax = 2 * k_max as i64 - 2;
    let side = k_max as i64 - 1;
    // Axis steps add nothing to either the action or L', so only directions
    // with a, b ≥ 1 matter; a single step already adds ab + a + b - 1.
    let dirs: Vec<(i64, i64)> = primitive_directions(side, side)
        .into_iter()
        .filter(|&(a, b)| a >= 1 && b >= 1 && a * b + a + b - 1 <= dmax)
        .collect();
    let problem = build(model, Mode::Concave, dirs, side, side, dmax, None)?;
    check_budget(&problem, model, None, opts)?;
    Ok(problem.solve())
}

fn run<M: Model>(
    model: &M,
    curve: &Curve,
    k_max: u32,
    mode: Mode,
    opts: &SearchOptions,
) -> Result<Vec<CapacityResult>> {
    let tables = match mode {
        Mode::Convex => solve_convex(model, curve, k_max, opts)?,
        Mode::Concave => solve_concave(model, k_max, opts)?,
    };
    let dirs = tables.problem.dirs.clone();
    (1..=k_max)
        .map(|k| {
            let (best, count, chains) = tables.optima(k as i64, opts.max_paths).ok_or(Error::NoOptimum)?;
            let mut paths = chains
                .iter()
                .map(|chain| {
                    let edges: Vec<PathEdge> = chain
                        .iter()
                        .zip(&dirs)
                        .rev()
                        .filter(|(m, _)| **m > 0)
                        .map(|(&m, &(a, b))| PathEdge::new((a, -b), m))
                        .collect();
                    if edges.is_empty() {
                        Ok(IntegralPath::empty(mode))
                    } else {
                        IntegralPath::from_edges(&edges, mode)
                    }
                })
                .collect::<Result<Vec<_>>>()?;
            paths.sort();
            paths.dedup();
            Ok(CapacityResult {
                k,
                mode,
                value: model.value(best),
                optimal_paths: paths,
                num_optima: count,
                nodes_explored: tables.nodes,
            })
        })
        .collect()
}
