//! CSV series for charting: distributions of region Gini,
//! density and mean income, the pairwise scatters, and per-region
//! confidence intervals.

use std::collections::BTreeMap;
use std::path::Path;

use super::pipeline::{write_file, RunSummary};
use super::PipelineError;
use crate::dominance::{income_ordering, DominationNetwork};

/// Equal-width histogram over `[lower, lower + width * counts.len()]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Histogram {
    pub lower: f64,
    pub width: f64,
    pub counts: Vec<usize>,
}

impl Histogram {
    pub fn bin_bounds(&self, i: usize) -> (f64, f64) {
        (self.lower + self.width * i as f64, self.lower + self.width * (i + 1) as f64)
    }
}

/// Bins span `[min, max]`; the maximum falls in the last bin. When all
/// values are equal the range is widened to `value ± 0.5`, so exactly one
/// bin is occupied.
pub fn histogram(values: &[f64], bins: usize) -> Histogram {
    let bins = bins.max(1);
    let mut counts = vec![0; bins];
    if values.is_empty() {
        return Histogram { lower: 0.0, width: 1.0 / bins as f64, counts };
    }
    let min = values.iter().copied().fold(f64::INFINITY, f64::min);
    let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let (lower, upper) = if max > min { (min, max) } else { (min - 0.5, min + 0.5) };
    let width = (upper - lower) / bins as f64;
    for &v in values {
        let i = (((v - lower) / width).floor() as usize).min(bins - 1);
        counts[i] += 1;
    }
    Histogram { lower, width, counts }
}

fn csv_bytes(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> Vec<u8> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory csv");
    for row in rows {
        w.write_record(&row).expect("in-memory csv");
    }
    w.into_inner().expect("in-memory csv")
}

fn histogram_csv(values: &[f64], bins: usize) -> Vec<u8> {
    let h = histogram(values, bins);
    csv_bytes(
        &["bin_lower", "bin_upper", "count"],
        h.counts.iter().enumerate().map(|(i, c)| {
            let (lo, hi) = h.bin_bounds(i);
            vec![lo.to_string(), hi.to_string(), c.to_string()]
        }),
    )
}

pub(super) fn write_region_intervals(network: &DominationNetwork, dir: &Path, stem: &str) -> Result<(), PipelineError> {
    let occupations = csv_bytes(
        &["occupation", "count", "mean", "lower", "upper"],
        income_ordering(network).into_iter().map(|(occ, inc)| {
            vec![
                occ.code().to_string(),
                inc.count.to_string(),
                inc.mean.to_string(),
                inc.ci.lower.to_string(),
                inc.ci.upper.to_string(),
            ]
        }),
    );
    write_file(&dir.join(format!("ci_occupations_{stem}.csv")), &occupations)?;

    let mut pairs: Vec<_> = network.pair_cis.iter().collect();
    pairs.sort_by(|a, b| b.mean_diff.total_cmp(&a.mean_diff).then((a.first, a.second).cmp(&(b.first, b.second))));
    let pairs = csv_bytes(
        &["pair", "mean_diff", "lower", "upper", "edge"],
        pairs.into_iter().map(|p| {
            vec![
                format!("{}/{}", p.first, p.second),
                p.mean_diff.to_string(),
                p.mean_diff_ci.lower.to_string(),
                p.mean_diff_ci.upper.to_string(),
                network.has_edge(p.first, p.second).to_string(),
            ]
        }),
    );
    write_file(&dir.join(format!("ci_pairs_{stem}.csv")), &pairs)
}

/// Writes every plot series of a run into `dir`.
pub fn emit_plot_data(summary: &RunSummary, dir: &Path, stems: &BTreeMap<String, String>) -> Result<(), PipelineError> {
    let bins = summary.config.histogram_bins;
    let profiles = &summary.profiles;
    let gini: Vec<f64> = profiles.iter().map(|p| p.gini).collect();
    let density: Vec<f64> = profiles.iter().map(|p| p.density).collect();
    let income: Vec<f64> = profiles.iter().map(|p| p.mean_income).collect();
    write_file(&dir.join("hist_gini.csv"), &histogram_csv(&gini, bins))?;
    write_file(&dir.join("hist_density.csv"), &histogram_csv(&density, bins))?;
    write_file(&dir.join("hist_income.csv"), &histogram_csv(&income, bins))?;

    let scatter = |xs: &[f64], ys: &[f64]| {
        csv_bytes(
            &["region_id", "x", "y", "ag_class"],
            profiles.iter().enumerate().map(|(i, p)| {
                vec![p.region_id.clone(), xs[i].to_string(), ys[i].to_string(), p.ag_class.to_string()]
            }),
        )
    };
    write_file(&dir.join("scatter_density_gini.csv"), &scatter(&gini, &density))?;
    write_file(&dir.join("scatter_gini_income.csv"), &scatter(&income, &gini))?;
    write_file(&dir.join("scatter_density_income.csv"), &scatter(&income, &density))?;

    for region in &summary.regions {
        write_region_intervals(&region.network, dir, &stems[&region.region_id])?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn histogram_counts_every_value() {
        let values = [0.0, 0.1, 0.5, 0.99, 1.0];
        let h = histogram(&values, 20);
        assert_eq!(h.counts.iter().sum::<usize>(), 5);
        assert_eq!(h.counts[0], 1);
        assert_eq!(h.counts[19], 2);
        assert_eq!(h.bin_bounds(19).1, 1.0);
    }

    #[test]
    fn constant_values_fill_one_bin() {
        let h = histogram(&[0.3; 7], 20);
        assert_eq!(h.counts.iter().filter(|&&c| c > 0).count(), 1);
        assert_eq!(h.counts.iter().sum::<usize>(), 7);
        let occupied = h.counts.iter().position(|&c| c > 0).unwrap();
        let (lo, hi) = h.bin_bounds(occupied);
        assert!(lo <= 0.3 && 0.3 < hi);
    }

    #[test]
    fn empty_histogram() {
        let h = histogram(&[], 4);
        assert_eq!(h.counts, vec![0; 4]);
    }
}
