//! Exact dynamic programme over convex / concave lattice paths.
//!
//! A path is a multiset of primitive steps `(a, -b)` with multiplicities,
//! arranged by slope. Directions are processed starting from the edge that
//! touches the x-axis ("tail first"): steepest first for convex paths,
//! flattest first for concave ones. With `y` the height already built below
//! the current edge, an edge of `m` steps adds
//!
//! ```text
//! Δ  = m²ab + 2·m·a·y + m(a + b + 1)   to 2L  - 2   (convex)
//! Δ' = m²ab + 2·m·a·y + m(a + b - 1)   to 2L'       (concave)
//! ```
//!
//! which is the generalised Pick count `L = Area + (X + Y + S)/2 + 1` split
//! edge by edge. The state is `(y, d)` with `d` the accumulated count, so the
//! table is exact: convex mode caps `d` at `2k-2` (the constraint `L ≥ k`),
//! concave mode drops states with `d > 2k-2` (the constraint `L' ≤ k-1`).

use std::collections::HashMap;

use rayon::prelude::*;

use crate::geometry::Mode;

/// Action values: exact scaled integers or binary64.
pub(crate) trait Cost: Copy + Send + Sync + PartialOrd + std::fmt::Debug {
    const ZERO: Self;
    /// `self + m·c`, `None` on overflow.
    fn add_mul(self, m: i64, c: Self) -> Option<Self>;
    fn tied(self, other: Self) -> bool;
    fn worst(minimize: bool) -> Self;
}

impl Cost for i64 {
    const ZERO: Self = 0;
    fn add_mul(self, m: i64, c: Self) -> Option<Self> {
        let v = self as i128 + m as i128 * c as i128;
        i64::try_from(v).ok().filter(|v| *v != i64::MAX)
    }
    fn tied(self, other: Self) -> bool {
        self == other
    }
    fn worst(minimize: bool) -> Self {
        if minimize {
            i64::MAX
        } else {
            -1
        }
    }
}

/// Relative tolerance under which floating actions count as tied.
pub(crate) const TIE_TOL: f64 = 1e-9;

impl Cost for f64 {
    const ZERO: Self = 0.0;
    fn add_mul(self, m: i64, c: Self) -> Option<Self> {
        Some(self + m as f64 * c)
    }
    fn tied(self, other: Self) -> bool {
        (self - other).abs() <= TIE_TOL * (1.0 + self.abs().max(other.abs()))
    }
    fn worst(minimize: bool) -> Self {
        if minimize {
            f64::INFINITY
        } else {
            -1.0
        }
    }
}

pub(crate) struct Problem<T> {
    pub mode: Mode,
    /// `(a, b)` in processing order.
    pub dirs: Vec<(i64, i64)>,
    /// Support value of the normal `(b, a)` for each direction.
    pub costs: Vec<T>,
    pub max_x: i64,
    pub max_y: i64,
    /// `2·k_max - 2`.
    pub dmax: i64,
    /// Convex mode: states whose action exceeds this are dropped.
    pub cap: Option<T>,
}

impl<T: Cost> Problem<T> {
    fn minimize(&self) -> bool {
        self.mode == Mode::Convex
    }

    fn width(&self) -> usize {
        self.dmax as usize + 1
    }

    pub fn cells(&self) -> u64 {
        (self.dirs.len() as u64 + 1) * (self.max_y as u64 + 1) * (self.dmax as u64 + 1)
    }

    fn delta(&self, a: i64, b: i64, m: i64, y: i64) -> i64 {
        let unit = match self.mode {
            Mode::Convex => a + b + 1,
            Mode::Concave => a + b - 1,
        };
        let v = (m as i128) * (m as i128) * (a as i128) * (b as i128)
            + 2 * (m as i128) * (a as i128) * (y as i128)
            + (m as i128) * (unit as i128);
        v.min(i64::MAX as i128 / 4) as i64
    }

    /// Largest multiplicity for direction `(a, b)` ending at height `y2`.
    fn max_mult(&self, a: i64, b: i64, y2: i64) -> i64 {
        let by_x = if a > 0 { self.max_x / a } else { i64::MAX };
        let by_y = if b > 0 { y2 / b } else { i64::MAX };
        by_x.min(by_y)
    }

    fn better(&self, new: T, old: T) -> bool {
        if self.minimize() {
            new < old
        } else {
            new > old
        }
    }

    fn within_cap(&self, v: T) -> bool {
        match self.cap {
            Some(c) => v <= c || v.tied(c),
            None => true,
        }
    }

    pub fn solve(self) -> Tables<T> {
        let w = self.width();
        let rows = self.max_y as usize + 1;
        let worst = T::worst(self.minimize());
        let mut first = vec![worst; rows * w];
        first[0] = T::ZERO;
        let mut layers = vec![first];
        let mut nodes = 0u64;
        for (j, &(a, b)) in self.dirs.iter().enumerate() {
            let c = self.costs[j];
            let prev = &layers[j];
            let mut next = vec![worst; rows * w];
            let counts: Vec<u64> = next
                .par_chunks_mut(w)
                .enumerate()
                .map(|(y2, row)| {
                    let y2 = y2 as i64;
                    let mut explored = 0u64;
                    for m in 0..=self.max_mult(a, b, y2) {
                        let y = y2 - m * b;
                        let inc = self.delta(a, b, m, y);
                        if self.mode == Mode::Concave && inc > self.dmax {
                            break;
                        }
                        let src = &prev[y as usize * w..(y as usize + 1) * w];
                        explored += w as u64;
                        for (d, &v) in src.iter().enumerate() {
                            if v == worst {
                                continue;
                            }
                            let d2 = d as i64 + inc;
                            let d2 = match self.mode {
                                Mode::Convex => d2.min(self.dmax),
                                Mode::Concave if d2 > self.dmax => break,
                                Mode::Concave => d2,
                            } as usize;
                            let Some(nv) = v.add_mul(m, c) else { continue };
                            if !self.within_cap(nv) {
                                continue;
                            }
                            if row[d2] == worst || self.better(nv, row[d2]) {
                                row[d2] = nv;
                            }
                        }
                    }
                    explored
                })
                .collect();
            nodes += counts.iter().sum::<u64>();
            layers.push(next);
        }
        Tables { problem: self, layers, nodes }
    }
}

pub(crate) struct Tables<T> {
    pub problem: Problem<T>,
    layers: Vec<Vec<T>>,
    pub nodes: u64,
}

/// Multiplicity of each direction, in processing order.
pub(crate) type Chain = Vec<i64>;

impl<T: Cost> Tables<T> {
    fn at(&self, layer: usize, y: i64, d: i64) -> T {
        self.layers[layer][y as usize * self.problem.width() + d as usize]
    }

    fn reachable(&self, v: T) -> bool {
        v != T::worst(self.problem.minimize())
    }

    /// Final cells whose constraint level admits index `k`.
    fn final_cells(&self, k: i64) -> impl Iterator<Item = (i64, i64)> + '_ {
        let need = 2 * k - 2;
        let p = &self.problem;
        let ds: Vec<i64> = match p.mode {
            Mode::Convex => (need.min(p.dmax)..=p.dmax).collect(),
            Mode::Concave => (0..=need.min(p.dmax)).collect(),
        };
        (0..=p.max_y).flat_map(move |y| ds.clone().into_iter().map(move |d| (y, d)))
    }

    /// Optimal value for index `k ≤ k_max`, if any path is feasible.
    pub fn optimum(&self, k: i64) -> Option<T> {
        let last = self.layers.len() - 1;
        let mut best: Option<T> = None;
        for (y, d) in self.final_cells(k) {
            let v = self.at(last, y, d);
            if self.reachable(v) && best.is_none_or(|b| self.problem.better(v, b)) {
                best = Some(v);
            }
        }
        best
    }

    /// Predecessors `(m, y, d)` in `layer - 1` of cell `(y2, d2)` in `layer`
    /// along which the cell's value is attained.
    fn predecessors(&self, layer: usize, y2: i64, d2: i64) -> Vec<(i64, i64, i64)> {
        let p = &self.problem;
        let (a, b) = p.dirs[layer - 1];
        let c = p.costs[layer - 1];
        let target = self.at(layer, y2, d2);
        let mut out = Vec::new();
        for m in 0..=p.max_mult(a, b, y2) {
            let y = y2 - m * b;
            let inc = p.delta(a, b, m, y);
            if inc > p.dmax && p.mode == Mode::Concave {
                break;
            }
            let sources: Vec<i64> = if p.mode == Mode::Convex && d2 == p.dmax {
                ((p.dmax - inc).max(0)..=p.dmax).collect()
            } else if d2 - inc >= 0 {
                vec![d2 - inc]
            } else {
                vec![]
            };
            for d in sources {
                let v = self.at(layer - 1, y, d);
                if !self.reachable(v) {
                    continue;
                }
                if v.add_mul(m, c).is_some_and(|nv| nv.tied(target)) {
                    out.push((m, y, d));
                }
            }
        }
        out
    }

    /// Exact number of optimal chains ending at `cell` (saturating).
    fn count_from(&self, layer: usize, y: i64, d: i64, memo: &mut HashMap<(usize, i64, i64), u128>) -> u128 {
        if layer == 0 {
            return u128::from(y == 0 && d == 0);
        }
        if let Some(&c) = memo.get(&(layer, y, d)) {
            return c;
        }
        let mut total = 0u128;
        for (_, py, pd) in self.predecessors(layer, y, d) {
            total = total.saturating_add(self.count_from(layer - 1, py, pd, memo));
        }
        memo.insert((layer, y, d), total);
        total
    }

    fn collect_from(&self, layer: usize, y: i64, d: i64, suffix: &mut Vec<i64>, out: &mut Vec<Chain>, limit: usize) {
        if out.len() >= limit {
            return;
        }
        if layer == 0 {
            let mut chain = suffix.clone();
            chain.reverse();
            out.push(chain);
            return;
        }
        for (m, py, pd) in self.predecessors(layer, y, d) {
            suffix.push(m);
            self.collect_from(layer - 1, py, pd, suffix, out, limit);
            suffix.pop();
            if out.len() >= limit {
                return;
            }
        }
    }

    /// Optimal value, exact optimum count, and up to `limit` optimal chains.
    pub fn optima(&self, k: i64, limit: usize) -> Option<(T, u128, Vec<Chain>)> {
        let best = self.optimum(k)?;
        let last = self.layers.len() - 1;
        let ends: Vec<(i64, i64)> = self
            .final_cells(k)
            .filter(|&(y, d)| {
                let v = self.at(last, y, d);
                self.reachable(v) && v.tied(best)
            })
            .collect();
        let mut memo = HashMap::new();
        let mut count = 0u128;
        let mut chains = Vec::new();
        for &(y, d) in &ends {
            count = count.saturating_add(self.count_from(last, y, d, &mut memo));
            self.collect_from(last, y, d, &mut Vec::new(), &mut chains, limit);
        }
        Some((best, count, chains))
    }
}
