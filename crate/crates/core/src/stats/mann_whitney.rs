//! One-sided (upper-tail) Mann-Whitney test.
//!
//! H0: values from `a` are not stochastically larger than values from `b`.
//! H1: they are larger.
//!
//! `U = #{(x, y) : x > y} + 0.5 * #{(x, y) : x = y}` over `a x b`, and the
//! p-value is `P(U >= u_observed)` under H0.
//!
//! Small samples (both sides at most [`EXACT_MAX_SAMPLE`]) use the exact
//! permutation distribution of `U` conditional on the pooled values, which
//! stays exact when ties are present. Larger samples use the normal
//! approximation with tie-corrected variance and a continuity correction.

use serde::{Deserialize, Serialize};
use statrs::function::erf::erfc;

use crate::{Error, Result};

/// Largest per-sample size handled by exact enumeration.
pub const EXACT_MAX_SAMPLE: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TestMethod {
    Exact,
    NormalApprox,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TestResult {
    pub u_statistic: f64,
    pub p_value: f64,
    pub method: TestMethod,
    /// `p_value <= alpha`.
    pub reject: bool,
}

/// Runs the upper-tail test of `a` over `b` at level `alpha`.
pub fn mann_whitney_upper(a: &[f64], b: &[f64], alpha: f64) -> Result<TestResult> {
    super::check_probability(alpha, "alpha")?;
    let groups = TieGroups::new(a, b)?;
    let twice_u = groups.twice_u();
    let (p_value, method) = if a.len() <= EXACT_MAX_SAMPLE && b.len() <= EXACT_MAX_SAMPLE {
        (groups.exact_upper_tail(twice_u), TestMethod::Exact)
    } else {
        (groups.normal_upper_tail(twice_u), TestMethod::NormalApprox)
    };
    let p_value = p_value.clamp(0.0, 1.0);
    Ok(TestResult { u_statistic: twice_u as f64 / 2.0, p_value, method, reject: p_value <= alpha })
}

/// The U statistic of `a` over `b`.
pub fn u_statistic(a: &[f64], b: &[f64]) -> Result<f64> {
    Ok(TieGroups::new(a, b)?.twice_u() as f64 / 2.0)
}

/// Pooled sample collapsed into runs of equal values, in ascending order.
struct TieGroups {
    n_a: usize,
    n_b: usize,
    /// `(count from a, count from b)` per distinct value.
    groups: Vec<(usize, usize)>,
}

impl TieGroups {
    fn new(a: &[f64], b: &[f64]) -> Result<Self> {
        if a.is_empty() || b.is_empty() {
            return Err(Error::EmptyInput("mann-whitney requires two non-empty samples"));
        }
        super::check_finite(a, "mann-whitney sample")?;
        super::check_finite(b, "mann-whitney sample")?;
        let mut sa = a.to_vec();
        let mut sb = b.to_vec();
        sa.sort_unstable_by(f64::total_cmp);
        sb.sort_unstable_by(f64::total_cmp);

        let mut groups = Vec::new();
        let (mut i, mut j) = (0, 0);
        while i < sa.len() || j < sb.len() {
            let v = match (sa.get(i), sb.get(j)) {
                (Some(&x), Some(&y)) => x.min(y),
                (Some(&x), None) => x,
                (None, Some(&y)) => y,
                (None, None) => unreachable!(),
            };
            let start_i = i;
            while i < sa.len() && sa[i] == v {
                i += 1;
            }
            let start_j = j;
            while j < sb.len() && sb[j] == v {
                j += 1;
            }
            groups.push((i - start_i, j - start_j));
        }
        Ok(Self { n_a: a.len(), n_b: b.len(), groups })
    }

    /// `2U`, an exact integer.
    fn twice_u(&self) -> u64 {
        let mut b_below = 0u64;
        let mut total = 0u64;
        for &(ga, gb) in &self.groups {
            total += ga as u64 * (2 * b_below + gb as u64);
            b_below += gb as u64;
        }
        total
    }

    /// `P(2U >= twice_u)` over all `C(n_a + n_b, n_a)` equally likely
    /// assignments of the pooled values to the two samples.
    ///
    /// Dynamic program over tie groups: state is the number of `a` labels
    /// placed so far, value is a histogram of partial `2U` counts.
    fn exact_upper_tail(&self, twice_u: u64) -> f64 {
        let n_a = self.n_a;
        let max_twice_u = 2 * self.n_a * self.n_b;
        // ways[k][s]: labelings of the groups seen so far with k a-labels and partial 2U = s.
        let mut ways = vec![vec![0u64; max_twice_u + 1]; n_a + 1];
        ways[0][0] = 1;
        let mut pooled_before = 0usize;
        for &(ga, gb) in &self.groups {
            let size = ga + gb;
            let mut next = vec![vec![0u64; max_twice_u + 1]; n_a + 1];
            for (used, row) in ways.iter().enumerate() {
                if row.iter().all(|&w| w == 0) {
                    continue;
                }
                let b_below = pooled_before - used;
                // At most n_b values may go to b.
                let min_take = (b_below + size).saturating_sub(self.n_b);
                for take in min_take..=size.min(n_a - used) {
                    let contribution = take * (2 * b_below + (size - take));
                    let multiplicity = binomial(size, take);
                    for (s, &w) in row.iter().enumerate() {
                        if w != 0 {
                            next[used + take][s + contribution] += w * multiplicity;
                        }
                    }
                }
            }
            ways = next;
            pooled_before += size;
        }
        let distribution = &ways[n_a];
        let total: u64 = distribution.iter().sum();
        let upper: u64 = distribution[twice_u as usize..].iter().sum();
        upper as f64 / total as f64
    }

    fn normal_upper_tail(&self, twice_u: u64) -> f64 {
        let n_a = self.n_a as f64;
        let n_b = self.n_b as f64;
        let n = n_a + n_b;
        let tie_term: f64 = self
            .groups
            .iter()
            .map(|&(ga, gb)| {
                let t = (ga + gb) as f64;
                t * t * t - t
            })
            .sum();
        let variance = n_a * n_b / 12.0 * ((n + 1.0) - tie_term / (n * (n - 1.0)));
        if variance <= 0.0 {
            // Every value tied: no evidence in either direction.
            return 1.0;
        }
        let u = twice_u as f64 / 2.0;
        let z = (u - n_a * n_b / 2.0 - 0.5) / variance.sqrt();
        0.5 * erfc(z / std::f64::consts::SQRT_2)
    }
}

fn binomial(n: usize, k: usize) -> u64 {
    let k = k.min(n - k);
    let mut acc = 1u64;
    for i in 0..k {
        acc = acc * (n - i) as u64 / (i + 1) as u64;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Direct pairwise count of 2U.
    fn twice_u_pairwise(a: &[f64], b: &[f64]) -> u64 {
        a.iter()
            .flat_map(|x| b.iter().map(move |y| if x > y { 2 } else if x == y { 1 } else { 0 }))
            .sum()
    }

    /// Enumerates every labeling of the pooled sample.
    fn p_brute_force(a: &[f64], b: &[f64]) -> f64 {
        let pooled: Vec<f64> = a.iter().chain(b).copied().collect();
        let n = pooled.len();
        let observed = twice_u_pairwise(a, b);
        let (mut hits, mut total) = (0u64, 0u64);
        for mask in 0u32..(1 << n) {
            if mask.count_ones() as usize != a.len() {
                continue;
            }
            let (xa, xb): (Vec<f64>, Vec<f64>) = {
                let mut xa = Vec::new();
                let mut xb = Vec::new();
                for (i, v) in pooled.iter().enumerate() {
                    if mask & (1 << i) != 0 {
                        xa.push(*v)
                    } else {
                        xb.push(*v)
                    }
                }
                (xa, xb)
            };
            total += 1;
            if twice_u_pairwise(&xa, &xb) >= observed {
                hits += 1;
            }
        }
        hits as f64 / total as f64
    }

    #[test]
    fn fully_separated_three_by_three() {
        let r = mann_whitney_upper(&[5.0, 6.0, 7.0], &[1.0, 2.0, 3.0], 0.05).unwrap();
        assert_eq!(r.u_statistic, 9.0);
        assert_eq!(r.p_value, 0.05);
        assert_eq!(r.method, TestMethod::Exact);
        assert!(r.reject, "boundary p == alpha rejects");
    }

    #[test]
    fn two_by_two_cannot_reject() {
        let r = mann_whitney_upper(&[10.0, 20.0], &[1.0, 2.0], 0.05).unwrap();
        assert_eq!(r.u_statistic, 4.0);
        assert!((r.p_value - 1.0 / 6.0).abs() < 1e-15);
        assert!(!r.reject);
    }

    #[test]
    fn identical_samples_do_not_reject() {
        let a = [3.0, 1.0, 4.0, 1.0, 5.0];
        let r = mann_whitney_upper(&a, &a, 0.05).unwrap();
        assert!(r.p_value >= 0.5);
        assert!(!r.reject);
        let big: Vec<f64> = (0..40).map(|i| (i % 7) as f64).collect();
        let r = mann_whitney_upper(&big, &big, 0.05).unwrap();
        assert_eq!(r.method, TestMethod::NormalApprox);
        assert!(r.p_value >= 0.5);
    }

    #[test]
    fn all_tied_large_samples() {
        let a = vec![1.0; 20];
        let r = mann_whitney_upper(&a, &a, 0.05).unwrap();
        assert_eq!(r.p_value, 1.0);
        assert_eq!(r.u_statistic, 200.0);
    }

    #[test]
    fn normal_approximation_close_to_exact_for_moderate_samples() {
        // 10 vs 10 is the largest exact case; compare against the approximation.
        let a: Vec<f64> = (0..10).map(|i| i as f64 + 2.5).collect();
        let b: Vec<f64> = (0..10).map(|i| i as f64).collect();
        let groups = TieGroups::new(&a, &b).unwrap();
        let tu = groups.twice_u();
        let exact = groups.exact_upper_tail(tu);
        let approx = groups.normal_upper_tail(tu);
        assert!((exact - approx).abs() < 0.01, "{exact} vs {approx}");
    }

    #[test]
    fn large_separated_samples_reject() {
        let a: Vec<f64> = (0..50).map(|i| 1000.0 + i as f64).collect();
        let b: Vec<f64> = (0..50).map(|i| i as f64).collect();
        let r = mann_whitney_upper(&a, &b, 0.05).unwrap();
        assert_eq!(r.method, TestMethod::NormalApprox);
        assert!(r.p_value < 1e-10);
        assert_eq!(r.u_statistic, 2500.0);
    }

    #[test]
    fn errors() {
        assert!(matches!(mann_whitney_upper(&[], &[1.0], 0.05), Err(Error::EmptyInput(_))));
        assert!(matches!(mann_whitney_upper(&[1.0], &[f64::INFINITY], 0.05), Err(Error::NonFinite(_))));
        assert!(matches!(mann_whitney_upper(&[1.0], &[2.0], 1.5), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(6, 3), 20);
        assert_eq!(binomial(20, 10), 184_756);
        assert_eq!(binomial(5, 0), 1);
    }

    fn small_sample() -> impl Strategy<Value = Vec<f64>> {
        prop::collection::vec((0u8..4).prop_map(f64::from), 1..7)
    }

    proptest! {
        #[test]
        fn exact_path_matches_enumeration(a in small_sample(), b in small_sample()) {
            let r = mann_whitney_upper(&a, &b, 0.05).unwrap();
            prop_assert_eq!(r.p_value, p_brute_force(&a, &b));
            prop_assert_eq!(r.u_statistic * 2.0, twice_u_pairwise(&a, &b) as f64);
        }

        #[test]
        fn u_complement(a in prop::collection::vec(0.0f64..5.0, 1..30), b in prop::collection::vec(0.0f64..5.0, 1..30)) {
            let total = u_statistic(&a, &b).unwrap() + u_statistic(&b, &a).unwrap();
            prop_assert_eq!(total, (a.len() * b.len()) as f64);
        }

        #[test]
        fn p_value_in_unit_interval(a in prop::collection::vec(-10.0f64..10.0, 1..25), b in prop::collection::vec(-10.0f64..10.0, 1..25)) {
            let r = mann_whitney_upper(&a, &b, 0.05).unwrap();
            prop_assert!((0.0..=1.0).contains(&r.p_value));
            prop_assert!(r.u_statistic >= 0.0 && r.u_statistic <= (a.len() * b.len()) as f64);
            prop_assert_eq!(r.reject, r.p_value <= 0.05);
        }
    }
}
