//! Bounded integer-relation search: find `a ≠ 0` with `|a_i| ≤ bound` and
//! `Σ a_i w_i = 0`.
//!
//! Small instances are searched exhaustively (pairs, then meet-in-the-middle
//! over the two halves of the coefficient vector). Larger ones fall back to
//! LLL reduction of the usual relation lattice, which may miss relations.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::value::common_denominator;

/// Largest half-vector enumeration for the exhaustive search.
const MITM_LIMIT: u64 = 1 << 21;

pub enum RelationInput<'a> {
    Exact(&'a [BigRational]),
    /// Values with an absolute tolerance per unit of coefficient mass.
    Approx {
        values: &'a [f64],
        tol: f64,
    },
}

/// Outcome of a search: a relation, or none together with a flag telling
/// whether the search was exhaustive.
pub fn find_relation(input: &RelationInput<'_>, bound: i64) -> (Option<Vec<i64>>, bool) {
    let n = match input {
        RelationInput::Exact(w) => w.len(),
        RelationInput::Approx { values, .. } => values.len(),
    };
    if n == 0 || bound < 1 {
        return (None, true);
    }
    if let Some(a) = pair_relation(input, bound) {
        return (Some(a), true);
    }
    let half = n.div_ceil(2) as u32;
    let feasible = (2 * bound as u64 + 1).checked_pow(half).is_some_and(|c| c <= MITM_LIMIT);
    if feasible {
        let found = match input {
            RelationInput::Exact(w) => mitm_exact(&scale_to_integers(w), bound),
            RelationInput::Approx { values, tol } => mitm_approx(values, *tol, bound),
        };
        return (found, true);
    }
    (lll_relation(input, bound), false)
}

fn scale_to_integers(w: &[BigRational]) -> Vec<BigInt> {
    let d = common_denominator(w);
    w.iter().map(|r| (r * &d).to_integer()).collect()
}

/// Within tolerance, and far below the smallest value reached by chance
/// among the `binom(n, s) (2C)^s` combinations with the same support size
/// `s` and coefficient bound `C`; long relations near the tolerance are
/// artefacts of rounding.
fn approx_ok(values: &[f64], tol: f64, a: &[i64]) -> bool {
    let mass: i64 = a.iter().map(|c| c.abs()).sum();
    if mass == 0 {
        return false;
    }
    let s: f64 = a.iter().zip(values).map(|(c, v)| *c as f64 * v).sum();
    let support = a.iter().filter(|c| **c != 0).count() as i32;
    let cmax = a.iter().map(|c| c.abs()).max().unwrap_or(0) as f64;
    let vmax = values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let n = values.len() as i32;
    let choices: f64 = (0..support).map(|i| f64::from(n - i) / f64::from(i + 1)).product();
    let chance = mass as f64 * vmax / (choices * (2.0 * cmax).powi(support));
    s.abs() <= tol * mass as f64 && s.abs() <= CHANCE_MARGIN * chance
}

const CHANCE_MARGIN: f64 = 1e-3;

fn pair_relation(input: &RelationInput<'_>, bound: i64) -> Option<Vec<i64>> {
    let n = match input {
        RelationInput::Exact(w) => w.len(),
        RelationInput::Approx { values, .. } => values.len(),
    };
    let unit = |i: usize, c: i64| {
        let mut a = vec![0; n];
        a[i] = c;
        a
    };
    for i in 0..n {
        let zero = match input {
            RelationInput::Exact(w) => w[i].is_zero(),
            RelationInput::Approx { values, tol } => values[i].abs() <= *tol,
        };
        if zero {
            return Some(unit(i, 1));
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            match input {
                RelationInput::Exact(w) => {
                    // q·w_i = p·w_j with w_i / w_j = p / q in lowest terms.
                    let r = &w[i] / &w[j];
                    let (p, q) = (r.numer().clone(), r.denom().clone());
                    if p.abs() <= BigInt::from(bound) && q <= BigInt::from(bound) {
                        let mut a = unit(i, q.to_i64()?);
                        a[j] = -p.to_i64()?;
                        return Some(a);
                    }
                }
                RelationInput::Approx { values, tol } => {
                    for ci in 1..=bound {
                        for cj in -bound..=bound {
                            if cj == 0 || ci.gcd(&cj) != 1 {
                                continue;
                            }
                            let mut a = unit(i, ci);
                            a[j] = cj;
                            if approx_ok(values, *tol, &a) {
                                return Some(a);
                            }
                        }
                    }
                }
            }
        }
    }
    None
}

/// Decodes the `index`-th coefficient vector of length `len` with entries in
/// `[-bound, bound]`.
fn decode(mut index: u64, len: usize, bound: i64) -> Vec<i64> {
    let base = 2 * bound as u64 + 1;
    (0..len)
        .map(|_| {
            let d = (index % base) as i64;
            index /= base;
            d - bound
        })
        .collect()
}

fn half_count(len: usize, bound: i64) -> u64 {
    (2 * bound as u64 + 1).pow(len as u32)
}

fn mitm_exact(w: &[BigInt], bound: i64) -> Option<Vec<i64>> {
    let n = w.len();
    let h = n.div_ceil(2);
    let sum = |part: &[BigInt], a: &[i64]| -> BigInt { part.iter().zip(a).map(|(x, c)| x * c).sum() };
    // Up to two vectors per sum, so that a zero partner always has a
    // nonzero alternative when one exists.
    let mut left: HashMap<BigInt, Vec<u64>> = HashMap::new();
    for idx in 0..half_count(h, bound) {
        let s = sum(&w[..h], &decode(idx, h, bound));
        let slot = left.entry(s).or_default();
        if slot.len() < 2 {
            slot.push(idx);
        }
    }
    for idx in 0..half_count(n - h, bound) {
        let r = decode(idx, n - h, bound);
        let s = -sum(&w[h..], &r);
        if let Some(slot) = left.get(&s) {
            for &l in slot {
                let mut a = decode(l, h, bound);
                a.extend_from_slice(&r);
                if a.iter().any(|c| *c != 0) {
                    return Some(a);
                }
            }
        }
    }
    None
}

fn mitm_approx(w: &[f64], tol: f64, bound: i64) -> Option<Vec<i64>> {
    let n = w.len();
    let h = n.div_ceil(2);
    let sum = |part: &[f64], a: &[i64]| -> f64 { part.iter().zip(a).map(|(x, c)| x * *c as f64).sum() };
    let mut left: Vec<(f64, u64)> =
        (0..half_count(h, bound)).map(|idx| (sum(&w[..h], &decode(idx, h, bound)), idx)).collect();
    left.sort_by(|a, b| a.0.total_cmp(&b.0));
    let window = tol * (n as i64 * bound) as f64;
    for idx in 0..half_count(n - h, bound) {
        let r = decode(idx, n - h, bound);
        let target = -sum(&w[h..], &r);
        let start = left.partition_point(|e| e.0 < target - window);
        for &(_, l) in left[start..].iter().take_while(|e| e.0 <= target + window) {
            let mut a = decode(l, h, bound);
            a.extend_from_slice(&r);
            if approx_ok(w, tol, &a) {
                return Some(a);
            }
        }
    }
    None
}

fn lll_relation(input: &RelationInput<'_>, bound: i64) -> Option<Vec<i64>> {
    let (last, n): (Vec<BigInt>, usize) = match input {
        RelationInput::Exact(w) => {
            let ints = scale_to_integers(w);
            // Weight the relation coordinate so that any vector with a
            // nonzero last entry is longer than every candidate relation.
            let big = BigInt::from(bound) * BigInt::from(w.len() as i64) * BigInt::from(1u64 << 20);
            (ints.iter().map(|x| x * &big).collect(), w.len())
        }
        RelationInput::Approx { values, tol } => {
            let scale = 1.0 / tol;
            let v = values.iter().map(|x| BigInt::from((x * scale).round() as i128)).collect();
            (v, values.len())
        }
    };
    let basis: Vec<Vec<BigInt>> = (0..n)
        .map(|i| {
            let mut row: Vec<BigInt> = (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect();
            row.push(last[i].clone());
            row
        })
        .collect();
    let reduced = lll_reduce(basis);
    for row in reduced {
        let a: Option<Vec<i64>> = row[..n].iter().map(|x| x.to_i64()).collect();
        let Some(a) = a else { continue };
        if a.iter().all(|c| *c == 0) || a.iter().any(|c| c.abs() > bound) {
            continue;
        }
        let ok = match input {
            RelationInput::Exact(w) => {
                let s: BigRational = w.iter().zip(&a).map(|(x, c)| x * BigInt::from(*c)).sum();
                s.is_zero()
            }
            RelationInput::Approx { values, tol } => approx_ok(values, *tol, &a),
        };
        if ok {
            return Some(a);
        }
    }
    None
}

/// LLL reduction (δ = 3/4) of linearly independent integer rows, with exact
/// rational Gram–Schmidt data updated incrementally.
pub fn lll_reduce(mut b: Vec<Vec<BigInt>>) -> Vec<Vec<BigInt>> {
    let n = b.len();
    if n < 2 {
        return b;
    }
    let to_rat =
        |v: &Vec<BigInt>| -> Vec<BigRational> { v.iter().map(|x| BigRational::from_integer(x.clone())).collect() };
    let dot = |u: &[BigRational], v: &[BigRational]| -> BigRational { u.iter().zip(v).map(|(x, y)| x * y).sum() };
    let mut mu = vec![vec![BigRational::zero(); n]; n];
    let mut bstar: Vec<Vec<BigRational>> = Vec::with_capacity(n);
    let mut bb = vec![BigRational::zero(); n];
    for i in 0..n {
        let bi = to_rat(&b[i]);
        let mut v = bi.clone();
        for j in 0..i {
            mu[i][j] = dot(&bi, &bstar[j]) / &bb[j];
            for (vx, sx) in v.iter_mut().zip(&bstar[j]) {
                *vx -= &mu[i][j] * sx;
            }
        }
        bb[i] = dot(&v, &v);
        bstar.push(v);
    }
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let delta = BigRational::new(BigInt::from(3), BigInt::from(4));

    let size_reduce = |b: &mut Vec<Vec<BigInt>>, mu: &mut Vec<Vec<BigRational>>, k: usize, l: usize| {
        if mu[k][l].abs() > half {
            let q = mu[k][l].round().to_integer();
            let bl = b[l].clone();
            for (x, y) in b[k].iter_mut().zip(&bl) {
                *x -= &q * y;
            }
            let qr = BigRational::from_integer(q);
            mu[k][l] -= &qr;
            for j in 0..l {
                let t = &qr * &mu[l][j];
                mu[k][j] -= t;
            }
        }
    };

    let mut k = 1;
    while k < n {
        size_reduce(&mut b, &mut mu, k, k - 1);
        let lovasz = (&delta - &mu[k][k - 1] * &mu[k][k - 1]) * &bb[k - 1];
        if bb[k] < lovasz {
            b.swap(k, k - 1);
            for j in 0..k - 1 {
                let t = mu[k][j].clone();
                mu[k][j] = mu[k - 1][j].clone();
                mu[k - 1][j] = t;
            }
            let m = mu[k][k - 1].clone();
            let new_b = &bb[k] + &m * &m * &bb[k - 1];
            mu[k][k - 1] = &m * &bb[k - 1] / &new_b;
            bb[k] = &bb[k - 1] * &bb[k] / &new_b;
            bb[k - 1] = new_b;
            for i in k + 1..n {
                let t = mu[i][k].clone();
                mu[i][k] = &mu[i][k - 1] - &m * &t;
                mu[i][k - 1] = t + &mu[k][k - 1] * &mu[i][k];
            }
            k = (k - 1).max(1);
        } else {
            for l in (0..k - 1).rev() {
                size_reduce(&mut b, &mut mu, k, l);
            }
            k += 1;
        }
    }
    b
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::value::{rat, rat_int};

    #[test]
    fn equal_rationals_pair() {
        let w = [rat_int(1), rat_int(1)];
        let (a, exhaustive) = find_relation(&RelationInput::Exact(&w), 2);
        assert_eq!(a, Some(vec![1, -1]));
        assert!(exhaustive);
    }

    #[test]
    fn three_term_exact_relation() {
        // 1/2 + 1/3 - 5/6 = 0 needs all three terms; pairs have large ratios.
        let w = [rat(7, 2), rat(11, 3), rat(43, 6)];
        let (a, _) = find_relation(&RelationInput::Exact(&w), 1);
        let a = a.expect("relation");
        let s: BigRational = w.iter().zip(&a).map(|(x, c)| x * BigInt::from(*c)).sum();
        assert!(s.is_zero());
    }

    #[test]
    fn irrational_values_have_no_small_relation() {
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        let w = [1.0, phi, (1.0 + phi * phi).sqrt(), 2f64.sqrt()];
        let (a, exhaustive) = find_relation(&RelationInput::Approx { values: &w, tol: 1e-10 }, 2);
        assert_eq!(a, None);
        assert!(exhaustive);
    }

    #[test]
    fn golden_ratio_relation_is_found() {
        // φ² = φ + 1.
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        let w = [1.0, phi, phi * phi];
        let (a, _) = find_relation(&RelationInput::Approx { values: &w, tol: 1e-10 }, 1);
        let a = a.expect("relation");
        assert!(approx_ok(&w, 1e-10, &a));
    }

    #[test]
    fn lll_finds_relation_beyond_enumeration() {
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        let w = [1.0, phi, phi * phi, 3f64.sqrt(), 5f64.sqrt(), 7f64.sqrt(), 11f64.sqrt()];
        let a = lll_relation(&RelationInput::Approx { values: &w, tol: 1e-10 }, 3).expect("relation");
        assert!(approx_ok(&w, 1e-10, &a));
    }

    #[test]
    fn lll_reduces_classic_basis() {
        let rows = vec![
            vec![BigInt::from(1), BigInt::from(1), BigInt::from(1)],
            vec![BigInt::from(-1), BigInt::from(0), BigInt::from(2)],
            vec![BigInt::from(3), BigInt::from(5), BigInt::from(6)],
        ];
        let r = lll_reduce(rows);
        let norm2 = |v: &Vec<BigInt>| -> BigInt { v.iter().map(|x| x * x).sum() };
        assert!(norm2(&r[0]) <= BigInt::from(3));
    }
}
