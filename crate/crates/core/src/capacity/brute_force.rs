//! Exhaustive enumeration of lattice paths inside a box, as an oracle for
//! the dynamic programme. Shares no counting or action code with it: lattice
//! points are counted column by column and actions come from
//! [`path_action`].

use std::collections::HashMap;

use num_integer::Integer;

use super::CapacityResult;
use crate::error::{Error, Result};
use crate::geometry::{Curve, Mode};
use crate::lattice_paths::{path_action, IntegralPath};
use crate::value::Value;

/// Optima under the literal constraint (`L = k` convex, `L' = k - 1`
/// concave) and under the relaxed one (`L ≥ k`, `L' ≤ k - 1`).
#[derive(Clone, Debug, PartialEq)]
pub struct BruteForceResult {
    pub literal: CapacityResult,
    pub relaxed: CapacityResult,
}

/// Literal-constraint optimum over all paths in `[0, box_bound]²`.
pub fn brute_force_capacity(curve: &Curve, k: u32, mode: Mode, box_bound: i64) -> Result<CapacityResult> {
    Ok(brute_force_both(curve, k, mode, box_bound)?.literal)
}

pub fn brute_force_both(curve: &Curve, k: u32, mode: Mode, box_bound: i64) -> Result<BruteForceResult> {
    if k == 0 {
        return Err(Error::InvalidK);
    }
    if !curve.is_complete() {
        return Err(Error::IncompleteCurve);
    }
    if !curve.admits(mode) {
        return Err(Error::ModeMismatch { mode: mode.to_string() });
    }
    let mut search = Search {
        curve,
        mode,
        k: k as i64,
        bound: box_bound,
        literal: Best::default(),
        relaxed: Best::default(),
        step_cost: HashMap::new(),
        nodes: 0,
    };
    search.seed()?;
    for y in 0..=box_bound {
        let mut vertices = vec![(0, y)];
        search.extend(&mut vertices, None, 0.0)?;
    }
    let bound = box_bound;
    let finish = |best: Best, nodes: u64| -> Result<CapacityResult> {
        let value = best.value.ok_or(Error::NoOptimum)?;
        let mut paths: Vec<IntegralPath> = best.paths.into_iter().map(|p| canonical(p, mode)).collect::<Result<_>>()?;
        paths.sort();
        paths.dedup();
        if paths.iter().any(|p| p.vertices().iter().any(|&(x, y)| x >= bound || y >= bound)) {
            return Err(Error::BoxTooSmall { box_bound: bound });
        }
        Ok(CapacityResult {
            k,
            mode,
            value,
            num_optima: paths.len() as u128,
            optimal_paths: paths,
            nodes_explored: nodes,
        })
    };
    let nodes = search.nodes;
    Ok(BruteForceResult { literal: finish(search.literal, nodes)?, relaxed: finish(search.relaxed, nodes)? })
}

/// A box certain to contain every optimum. Convex: optimal actions are at
/// most the best straight path `U`, and a path reaching `(X, 0)` or `(0, Y)`
/// has action at least `ρ(π/2)·X` and `ρ(0)·Y`. Concave: `L' ≥ max(X, Y)`.
pub fn sufficient_box(curve: &Curve, k: u32, mode: Mode) -> Result<i64> {
    if mode == Mode::Concave {
        return Ok(k as i64);
    }
    let mut upper = f64::INFINITY;
    for (a, b) in [(0, 1), (1, 0), (1, 1), (1, 2), (2, 1)] {
        let mut m = 1i64;
        loop {
            let path = IntegralPath::new(vec![(0, m * b), (m * a, 0)], mode)?;
            if path.count_l() >= k as i64 {
                upper = upper.min(path_action(curve, &path, mode)?.to_f64());
                break;
            }
            m += 1;
        }
    }
    let rho = curve.x_intercept().to_f64().min(curve.y_intercept().to_f64());
    Ok((upper * (1.0 + 1e-12) / rho).floor() as i64 + 1)
}

/// Concave optima are reported without their axis-lying edges, which add
/// neither action nor interior points.
fn canonical(path: IntegralPath, mode: Mode) -> Result<IntegralPath> {
    if mode == Mode::Convex || path.is_empty() {
        return Ok(path);
    }
    let mut v = path.vertices().to_vec();
    if v.len() >= 2 && v[0].0 == 0 && v[1].0 == 0 {
        v.remove(0);
    }
    let n = v.len();
    if n >= 2 && v[n - 1].1 == 0 && v[n - 2].1 == 0 {
        v.pop();
    }
    IntegralPath::new(v, mode)
}

#[derive(Default)]
struct Best {
    value: Option<Value>,
    approx: f64,
    paths: Vec<IntegralPath>,
}

impl Best {
    fn offer(&mut self, value: &Value, path: &IntegralPath, minimize: bool) {
        let better = match &self.value {
            None => true,
            Some(b) => {
                let tied = value.approx_eq(b, 1e-9 * (1.0 + b.to_f64().abs()));
                if tied {
                    self.paths.push(path.clone());
                    return;
                }
                let less = value.partial_cmp_value(b) == Some(std::cmp::Ordering::Less);
                less == minimize
            }
        };
        if better {
            self.value = Some(value.clone());
            self.approx = value.to_f64();
            self.paths = vec![path.clone()];
        }
    }
}

struct Search<'a> {
    curve: &'a Curve,
    mode: Mode,
    k: i64,
    bound: i64,
    literal: Best,
    relaxed: Best,
    step_cost: HashMap<(i64, i64), f64>,
    nodes: u64,
}

impl Search<'_> {
    fn minimize(&self) -> bool {
        self.mode == Mode::Convex
    }

    fn cost(&mut self, step: (i64, i64)) -> f64 {
        let g = step.0.gcd(&step.1);
        let n = (-step.1 / g, step.0 / g);
        let (curve, maximize) = (self.curve, self.minimize());
        let unit = *self.step_cost.entry(n).or_insert_with(|| curve.support_f64([n.0 as f64, n.1 as f64], maximize));
        unit * g as f64
    }

    /// Straight paths give an early incumbent for the convex pruning.
    fn seed(&mut self) -> Result<()> {
        if self.mode != Mode::Convex {
            return Ok(());
        }
        for x in 0..=self.bound {
            for y in 0..=self.bound {
                let v = if x == 0 && y == 0 { vec![(0, 0)] } else { vec![(0, y), (x, 0)] };
                self.record(&v)?;
            }
        }
        Ok(())
    }

    fn record(&mut self, vertices: &[(i64, i64)]) -> Result<()> {
        let Ok(path) = IntegralPath::new(vertices.to_vec(), self.mode) else { return Ok(()) };
        let (l, target) = match self.mode {
            Mode::Convex => (path.count_l(), self.k),
            Mode::Concave => (path.count_l_prime(), self.k - 1),
        };
        let (literal_ok, relaxed_ok) = match self.mode {
            Mode::Convex => (l == target, l >= target),
            Mode::Concave => (l == target, l <= target),
        };
        if !relaxed_ok {
            return Ok(());
        }
        let action = path_action(self.curve, &path, self.mode)?;
        let minimize = self.minimize();
        if literal_ok {
            self.literal.offer(&action, &path, minimize);
        }
        self.relaxed.offer(&action, &path, minimize);
        Ok(())
    }

    /// Columns strictly left of the current vertex are final; their points
    /// below the path are off the path, giving a lower bound for `L'`.
    fn concave_lower_bound(vertices: &[(i64, i64)]) -> i64 {
        let mut total = 0;
        for w in vertices.windows(2) {
            let ((x0, y0), (x1, y1)) = (w[0], w[1]);
            if x0 == x1 {
                continue;
            }
            for x in x0..x1 {
                // Lowest path point in column x is on this edge (steps go down).
                let num = y0 * (x1 - x0) + (y1 - y0) * (x - x0);
                total += Integer::div_ceil(&num, &(x1 - x0));
            }
        }
        total
    }

    fn extend(&mut self, vertices: &mut Vec<(i64, i64)>, prev: Option<(i64, i64)>, action: f64) -> Result<()> {
        self.nodes += 1;
        let (x, y) = *vertices.last().expect("nonempty");
        if self.minimize() {
            if let Some(v) = &self.literal.value {
                if action > self.literal.approx + 1e-9 * (1.0 + v.to_f64().abs()) {
                    return Ok(());
                }
            }
        } else if Self::concave_lower_bound(vertices) > self.k - 1 {
            return Ok(());
        }
        if y == 0 {
            self.record(vertices)?;
        }
        for ny in (0..=y).rev() {
            for nx in x..=self.bound {
                let step = (nx - x, ny - y);
                if step == (0, 0) {
                    continue;
                }
                if let Some(p) = prev {
                    let cross = p.0 * step.1 - p.1 * step.0;
                    let turns = match self.mode {
                        Mode::Convex => cross < 0,
                        Mode::Concave => cross > 0,
                    };
                    if !turns {
                        continue;
                    }
                }
                let c = self.cost(step);
                vertices.push((nx, ny));
                self.extend(vertices, Some(step), action + c)?;
                vertices.pop();
            }
        }
        Ok(())
    }
}
