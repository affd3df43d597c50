//! Statistical kernels used by the pipeline.
//!
//! Every function here is pure. The seeded ones take a [`StreamSeed`] so
//! callers can hand out independent random substreams without any shared
//! generator state.

mod bootstrap;
mod chi_square;
mod correlation;
mod gini;
mod mann_whitney;
mod rng;

pub use bootstrap::{
    bootstrap_mean_ci, bootstrap_mean_diff_ci, bootstrap_mean_replicates, percentile_interval, Interval,
    DEFAULT_BOOTSTRAP_ITERS, DEFAULT_CONFIDENCE_LEVEL, MIN_BOOTSTRAP_ITERS,
};
pub use chi_square::{chi_square_independence, ChiSquareResult, ContingencyTable, MIN_EXPECTED_COUNT};
pub use correlation::pearson_r;
pub use gini::{gini, gini_allow_negative, GiniEstimate, GINI_ESTIMATOR};
pub use mann_whitney::{mann_whitney_upper, u_statistic, TestMethod, TestResult, EXACT_MAX_SAMPLE};
pub use rng::{stream_key, StreamSeed};

pub(crate) fn mean(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}

pub(crate) fn check_finite(xs: &[f64], what: &'static str) -> crate::Result<()> {
    if xs.iter().all(|x| x.is_finite()) {
        Ok(())
    } else {
        Err(crate::Error::NonFinite(what))
    }
}

pub(crate) fn check_probability(value: f64, name: &str) -> crate::Result<()> {
    if value > 0.0 && value < 1.0 {
        Ok(())
    } else {
        Err(crate::Error::InvalidParameter(format!("{name} must lie in (0, 1), got {value}")))
    }
}
