//! Percentile bootstrap intervals for a mean and a difference of means.

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::StreamSeed;
use crate::{Error, Result};

pub const MIN_BOOTSTRAP_ITERS: usize = 100;
pub const DEFAULT_BOOTSTRAP_ITERS: usize = 1000;
pub const DEFAULT_CONFIDENCE_LEVEL: f64 = 0.95;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub lower: f64,
    pub upper: f64,
    /// Confidence level, e.g. 0.95.
    pub level: f64,
}

impl Interval {
    pub fn contains(&self, value: f64) -> bool {
        self.lower <= value && value <= self.upper
    }

    /// True when zero lies strictly outside the interval.
    pub fn excludes_zero(&self) -> bool {
        self.lower > 0.0 || self.upper < 0.0
    }

    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }
}

/// Percentile interval for the mean of `sample`.
pub fn bootstrap_mean_ci(sample: &[f64], iters: usize, level: f64, seed: StreamSeed) -> Result<Interval> {
    super::check_probability(level, "confidence level")?;
    let mut replicates = bootstrap_mean_replicates(sample, iters, seed)?;
    Ok(percentile_interval(&mut replicates, level))
}

/// Percentile interval for `mean(a) - mean(b)`, resampling both samples
/// independently on every iteration.
///
/// The two samples draw from the `"a"` and `"b"` substreams of `seed`.
pub fn bootstrap_mean_diff_ci(a: &[f64], b: &[f64], iters: usize, level: f64, seed: StreamSeed) -> Result<Interval> {
    super::check_probability(level, "confidence level")?;
    let ra = bootstrap_mean_replicates(a, iters, seed.derive("a"))?;
    let rb = bootstrap_mean_replicates(b, iters, seed.derive("b"))?;
    let mut diffs: Vec<f64> = ra.iter().zip(&rb).map(|(x, y)| x - y).collect();
    Ok(percentile_interval(&mut diffs, level))
}

/// Means of `iters` resamples drawn with replacement from `sample`.
///
/// Two replicate vectors from independent streams can be subtracted
/// element-wise to get replicates of a mean difference.
pub fn bootstrap_mean_replicates(sample: &[f64], iters: usize, seed: StreamSeed) -> Result<Vec<f64>> {
    if sample.is_empty() {
        return Err(Error::EmptyInput("bootstrap requires a non-empty sample"));
    }
    if iters < MIN_BOOTSTRAP_ITERS {
        return Err(Error::InvalidParameter(format!(
            "bootstrap iterations must be at least {MIN_BOOTSTRAP_ITERS}, got {iters}"
        )));
    }
    super::check_finite(sample, "bootstrap sample")?;

    let first = sample[0];
    if sample.iter().all(|&x| x == first) {
        return Ok(vec![first; iters]);
    }

    let n = sample.len();
    let mut rng = seed.rng();
    let replicates = (0..iters)
        .map(|_| {
            let mut sum = 0.0;
            for _ in 0..n {
                sum += sample[rng.random_range(0..n)];
            }
            sum / n as f64
        })
        .collect();
    Ok(replicates)
}

/// Sorts `replicates` and reads the `(1 - level) / 2` and
/// `1 - (1 - level) / 2` quantiles with linear interpolation.
pub fn percentile_interval(replicates: &mut [f64], level: f64) -> Interval {
    replicates.sort_unstable_by(f64::total_cmp);
    let tail = (1.0 - level) / 2.0;
    let lower = quantile_sorted(replicates, tail);
    let upper = quantile_sorted(replicates, 1.0 - tail);
    Interval { lower, upper: upper.max(lower), level }
}

fn quantile_sorted(sorted: &[f64], q: f64) -> f64 {
    let h = (sorted.len() - 1) as f64 * q;
    let lo = h.floor() as usize;
    let hi = (lo + 1).min(sorted.len() - 1);
    let frac = h - lo as f64;
    if frac == 0.0 || sorted[lo] == sorted[hi] {
        sorted[lo]
    } else {
        sorted[lo] + frac * (sorted[hi] - sorted[lo])
    }
}
