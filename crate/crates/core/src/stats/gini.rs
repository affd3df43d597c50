use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Identifier of the estimator, echoed in run metadata.
pub const GINI_ESTIMATOR: &str =
    "mean-absolute-difference: sum_i sum_j |x_i - x_j| / (2 n^2 mean), no small-sample correction";

/// Gini coefficient of nonnegative incomes.
///
/// Uses the sorted-rank identity
/// `sum_i sum_j |x_i - x_j| = 2 * sum_i (2i - n - 1) x_(i)` (1-based ranks),
/// so the cost is one sort. The result lies in `[0, 1 - 1/n]`; an all-zero
/// sample has Gini 0.
pub fn gini(incomes: &[f64]) -> Result<f64> {
    validate(incomes)?;
    if let Some(&neg) = incomes.iter().find(|x| **x < 0.0) {
        return Err(Error::NegativeValue(neg));
    }
    let (numerator, total) = rank_weighted_sums(incomes);
    if total == 0.0 {
        return Ok(0.0);
    }
    let n = incomes.len() as f64;
    Ok((numerator / (n * total)).clamp(0.0, 1.0 - 1.0 / n))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GiniEstimate {
    pub value: f64,
    /// Set when the sample contained negative incomes; `value` is then not
    /// clamped and may exceed 1.
    pub out_of_bounds: bool,
}

/// Gini coefficient that tolerates negative incomes, for surveys ingested
/// with negative values explicitly allowed.
///
/// Fails when the sample total is not positive, since the mean then no
/// longer normalizes the dispersion.
pub fn gini_allow_negative(incomes: &[f64]) -> Result<GiniEstimate> {
    validate(incomes)?;
    let has_negative = incomes.iter().any(|x| *x < 0.0);
    if !has_negative {
        return gini(incomes).map(|value| GiniEstimate { value, out_of_bounds: false });
    }
    let (numerator, total) = rank_weighted_sums(incomes);
    if total <= 0.0 {
        return Err(Error::DegenerateSeries("income total is not positive"));
    }
    let n = incomes.len() as f64;
    Ok(GiniEstimate { value: numerator / (n * total), out_of_bounds: true })
}

fn validate(incomes: &[f64]) -> Result<()> {
    if incomes.is_empty() {
        return Err(Error::EmptyInput("gini requires at least one income"));
    }
    super::check_finite(incomes, "gini input")
}

/// Returns `(sum_i (2i - n - 1) x_(i), sum_i x_i)`.
fn rank_weighted_sums(incomes: &[f64]) -> (f64, f64) {
    let mut sorted = incomes.to_vec();
    sorted.sort_unstable_by(f64::total_cmp);
    let n = sorted.len() as f64;
    let mut numerator = 0.0;
    let mut total = 0.0;
    for (i, x) in sorted.iter().enumerate() {
        let weight = 2.0 * (i as f64 + 1.0) - n - 1.0;
        numerator += weight * x;
        total += x;
    }
    (numerator, total)
}
