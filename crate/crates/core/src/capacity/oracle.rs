//! Closed-form capacities of ellipsoids.

use num_bigint::BigInt;
use num_rational::BigRational;

/// The `k_max` smallest elements of the multiset `{a·m + b·n : m, n ≥ 0}`,
/// i.e. `c_1, …, c_{k_max}` of the ellipsoid `E(a, b)`.
pub fn ellipsoid_oracle(a: &BigRational, b: &BigRational, k_max: usize) -> Vec<BigRational> {
    // Elements with m ≥ k_max exceed the k_max values a·0, …, a·(k_max-1),
    // and likewise for n.
    let mut all: Vec<BigRational> =
        (0..k_max).flat_map(|m| (0..k_max).map(move |n| a * BigInt::from(m) + b * BigInt::from(n))).collect();
    all.sort();
    all.truncate(k_max);
    all
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::value::rat_int;

    fn ints(v: &[i64]) -> Vec<BigRational> {
        v.iter().map(|&x| rat_int(x)).collect()
    }

    #[test]
    fn examples() {
        assert_eq!(ellipsoid_oracle(&rat_int(1), &rat_int(1), 6), ints(&[0, 1, 1, 2, 2, 2]));
        assert_eq!(ellipsoid_oracle(&rat_int(1), &rat_int(2), 6), ints(&[0, 1, 2, 2, 3, 3]));
        assert_eq!(ellipsoid_oracle(&rat_int(1), &rat_int(5), 4), ints(&[0, 1, 2, 3]));
    }

    #[test]
    fn ball_staircase_at_231() {
        // 231 = 21·22/2 lattice points lie in m + n ≤ 20.
        let v = ellipsoid_oracle(&rat_int(1), &rat_int(1), 231);
        assert_eq!(v[230], rat_int(20));
    }
}
