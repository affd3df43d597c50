use serde::{Deserialize, Serialize};
use statrs::distribution::{ChiSquared, ContinuousCDF};

use crate::{Error, Result};

/// Expected counts below this raise [`ChiSquareResult::low_expected_count`].
pub const MIN_EXPECTED_COUNT: f64 = 5.0;

/// Labelled `r x c` table of nonnegative counts, `r, c >= 2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContingencyTable {
    rows: Vec<String>,
    cols: Vec<String>,
    counts: Vec<Vec<u64>>,
}

impl ContingencyTable {
    pub fn new(rows: Vec<String>, cols: Vec<String>, counts: Vec<Vec<u64>>) -> Result<Self> {
        if rows.len() < 2 || cols.len() < 2 {
            return Err(Error::InvalidTable(format!(
                "need at least 2 rows and 2 columns, got {}x{}",
                rows.len(),
                cols.len()
            )));
        }
        if counts.len() != rows.len() || counts.iter().any(|r| r.len() != cols.len()) {
            return Err(Error::InvalidTable("count matrix does not match the labels".into()));
        }
        Ok(Self { rows, cols, counts })
    }

    /// Unlabelled table; rows and columns are numbered from 0.
    pub fn from_counts(counts: Vec<Vec<u64>>) -> Result<Self> {
        let rows = (0..counts.len()).map(|i| i.to_string()).collect();
        let cols = (0..counts.first().map_or(0, Vec::len)).map(|j| j.to_string()).collect();
        Self::new(rows, cols, counts)
    }

    pub fn rows(&self) -> &[String] {
        &self.rows
    }

    pub fn cols(&self) -> &[String] {
        &self.cols
    }

    pub fn counts(&self) -> &[Vec<u64>] {
        &self.counts
    }

    pub fn row_sums(&self) -> Vec<u64> {
        self.counts.iter().map(|r| r.iter().sum()).collect()
    }

    pub fn col_sums(&self) -> Vec<u64> {
        (0..self.cols.len()).map(|j| self.counts.iter().map(|r| r[j]).sum()).collect()
    }

    pub fn total(&self) -> u64 {
        self.row_sums().iter().sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChiSquareResult {
    pub statistic: f64,
    pub dof: usize,
    pub p_value: f64,
    pub reject: bool,
    /// Some expected count is below [`MIN_EXPECTED_COUNT`]; the asymptotic
    /// p-value is then unreliable.
    pub low_expected_count: bool,
}

/// Pearson chi-square test of independence.
pub fn chi_square_independence(table: &ContingencyTable, alpha: f64) -> Result<ChiSquareResult> {
    super::check_probability(alpha, "alpha")?;
    let row_sums = table.row_sums();
    let col_sums = table.col_sums();
    if row_sums.contains(&0) || col_sums.contains(&0) {
        return Err(Error::DegenerateMargin);
    }
    let total = table.total() as f64;
    let mut statistic = 0.0;
    let mut low_expected_count = false;
    for (i, row) in table.counts.iter().enumerate() {
        for (j, &observed) in row.iter().enumerate() {
            let expected = row_sums[i] as f64 * col_sums[j] as f64 / total;
            low_expected_count |= expected < MIN_EXPECTED_COUNT;
            let d = observed as f64 - expected;
            statistic += d * d / expected;
        }
    }
    let dof = (table.rows.len() - 1) * (table.cols.len() - 1);
    let distribution = ChiSquared::new(dof as f64).expect("dof is at least 1");
    let p_value = distribution.sf(statistic).clamp(0.0, 1.0);
    Ok(ChiSquareResult { statistic, dof, p_value, reject: p_value <= alpha, low_expected_count })
}
