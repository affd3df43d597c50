//! Income domination networks.
//!
//! Within one region, occupation `p` dominates occupation `q` when the
//! upper-tail Mann-Whitney test of `p` over `q` rejects and the test of `q`
//! over `p` does not. The resulting directed graph is summarized by its
//! density: edges over the number of unordered occupation pairs.
//!
//! Alongside the decisions, every occupation gets a bootstrap CI of its mean
//! income and every pair a bootstrap CI of the mean difference. Bootstrap
//! replicates are drawn per occupation from a substream keyed by
//! `(region, occupation)`, and pair intervals subtract the two replicate
//! vectors, so adding an occupation to a region leaves the other intervals
//! untouched.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::ingest::{OccupationCategory, RegionSample};
use crate::stats::{self, Interval, StreamSeed, TestResult};
use crate::{Error, Result};

pub const DEFAULT_ALPHA: f64 = 0.05;
pub const DEFAULT_MIN_SAMPLES: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum DominanceDecision {
    PDominatesQ,
    QDominatesP,
    NoDominance,
    /// A sample was too small (or unusable) to test.
    Undetermined,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PairInference {
    pub decision: DominanceDecision,
    pub p_over_q: Option<TestResult>,
    pub q_over_p: Option<TestResult>,
    /// Both one-sided tests rejected (only possible at very large alpha);
    /// reported as [`DominanceDecision::NoDominance`].
    pub conflicting: bool,
}

impl PairInference {
    fn undetermined() -> Self {
        Self { decision: DominanceDecision::Undetermined, p_over_q: None, q_over_p: None, conflicting: false }
    }
}

/// Decides whether `sample_p` dominates `sample_q`, the reverse, or neither.
pub fn infer_dominance_pair(sample_p: &[f64], sample_q: &[f64], alpha: f64, min_samples: usize) -> PairInference {
    if sample_p.len() < min_samples.max(1) || sample_q.len() < min_samples.max(1) {
        return PairInference::undetermined();
    }
    let (Ok(forward), Ok(backward)) =
        (stats::mann_whitney_upper(sample_p, sample_q, alpha), stats::mann_whitney_upper(sample_q, sample_p, alpha))
    else {
        return PairInference::undetermined();
    };
    let (decision, conflicting) = match (forward.reject, backward.reject) {
        (true, false) => (DominanceDecision::PDominatesQ, false),
        (false, true) => (DominanceDecision::QDominatesP, false),
        (false, false) => (DominanceDecision::NoDominance, false),
        (true, true) => (DominanceDecision::NoDominance, true),
    };
    PairInference { decision, p_over_q: Some(forward), q_over_p: Some(backward), conflicting }
}

/// Which pair count normalizes the density.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DensityDenominator {
    /// `C(k, 2)` over the occupations eligible in the region.
    #[default]
    EligibleNodes,
    /// `C(14, 2) = 91` regardless of which occupations are present.
    FullTaxonomy,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NetworkParams {
    pub alpha: f64,
    pub min_samples: usize,
    pub bootstrap_iters: usize,
    pub confidence_level: f64,
    pub seed: u64,
    /// Divide alpha by the number of tested pairs.
    pub bonferroni: bool,
    pub density_denominator: DensityDenominator,
}

impl Default for NetworkParams {
    fn default() -> Self {
        Self {
            alpha: DEFAULT_ALPHA,
            min_samples: DEFAULT_MIN_SAMPLES,
            bootstrap_iters: stats::DEFAULT_BOOTSTRAP_ITERS,
            confidence_level: stats::DEFAULT_CONFIDENCE_LEVEL,
            seed: 0,
            bonferroni: false,
            density_denominator: DensityDenominator::EligibleNodes,
        }
    }
}

impl NetworkParams {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("alpha", self.alpha), ("confidence_level", self.confidence_level)] {
            if !(v > 0.0 && v < 1.0) {
                return Err(Error::InvalidParameter(format!("{name} must lie in (0, 1), got {v}")));
            }
        }
        if self.bootstrap_iters < stats::MIN_BOOTSTRAP_ITERS {
            return Err(Error::InvalidParameter(format!(
                "bootstrap_iters must be at least {}, got {}",
                stats::MIN_BOOTSTRAP_ITERS,
                self.bootstrap_iters
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OccupationIncome {
    pub count: usize,
    pub mean: f64,
    pub ci: Interval,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DominanceEdge {
    pub dominant: OccupationCategory,
    pub dominated: OccupationCategory,
    /// p-value of the rejecting one-sided test.
    pub p_value: f64,
    /// Bootstrap CI of `mean(dominant) - mean(dominated)`.
    pub mean_diff_ci: Interval,
}

/// Every tested pair, oriented so that `mean_diff = mean(first) - mean(second)`
/// is nonnegative (or along the edge when one exists).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairComparison {
    pub first: OccupationCategory,
    pub second: OccupationCategory,
    pub decision: DominanceDecision,
    pub mean_diff: f64,
    pub mean_diff_ci: Interval,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DominationNetwork {
    pub region_id: String,
    pub nodes: BTreeSet<OccupationCategory>,
    /// Sorted by `(dominant, dominated)`.
    pub edges: Vec<DominanceEdge>,
    pub density: f64,
    pub density_denominator: DensityDenominator,
    /// Alpha after any multiple-comparison adjustment.
    pub alpha_used: f64,
    pub occupation_cis: BTreeMap<OccupationCategory, OccupationIncome>,
    pub pair_cis: Vec<PairComparison>,
    pub warnings: Vec<String>,
}

impl DominationNetwork {
    pub fn has_edge(&self, dominant: OccupationCategory, dominated: OccupationCategory) -> bool {
        self.edges.iter().any(|e| e.dominant == dominant && e.dominated == dominated)
    }
}

fn occupation_stream(seed: u64, region_id: &str, occupation: OccupationCategory) -> StreamSeed {
    StreamSeed::new(seed, stats::stream_key(&[region_id.as_bytes(), occupation.code().as_bytes()]))
}

/// Builds the domination network of one region.
///
/// Occupations with fewer than `min_samples` records are left out of the
/// node set. Regions with fewer than two eligible occupations produce an
/// empty network with density 0 and a warning.
pub fn build_domination_network(region: &RegionSample, params: &NetworkParams) -> Result<DominationNetwork> {
    params.validate()?;
    if region.is_empty() {
        return Err(Error::EmptyInput("region has no records"));
    }
    let region_id = region.region_id();
    let mut warnings = Vec::new();

    let eligible: Vec<(OccupationCategory, &[f64])> = region
        .samples()
        .iter()
        .filter(|(_, v)| v.len() >= params.min_samples.max(1))
        .map(|(o, v)| (*o, v.as_slice()))
        .collect();
    let skipped = region.samples().len() - eligible.len();
    if skipped > 0 {
        warnings.push(format!(
            "{region_id}: {skipped} occupation(s) below min_samples={} excluded",
            params.min_samples
        ));
    }
    if eligible.len() < 2 {
        warnings.push(format!("{region_id}: fewer than 2 eligible occupations, density set to 0"));
    }

    let mut occupation_cis = BTreeMap::new();
    let mut replicates = BTreeMap::new();
    for &(occ, incomes) in &eligible {
        let reps =
            stats::bootstrap_mean_replicates(incomes, params.bootstrap_iters, occupation_stream(params.seed, region_id, occ))?;
        // Pairing needs the draw order, so the percentile sort runs on a copy.
        let ci = stats::percentile_interval(&mut reps.clone(), params.confidence_level);
        occupation_cis.insert(occ, OccupationIncome { count: incomes.len(), mean: stats::mean(incomes), ci });
        replicates.insert(occ, reps);
    }

    let pair_count = eligible.len() * eligible.len().saturating_sub(1) / 2;
    let alpha_used = if params.bonferroni && pair_count > 0 { params.alpha / pair_count as f64 } else { params.alpha };

    let mut edges = Vec::new();
    let mut pair_cis = Vec::with_capacity(pair_count);
    for (i, &(p, sample_p)) in eligible.iter().enumerate() {
        for &(q, sample_q) in &eligible[i + 1..] {
            let inference = infer_dominance_pair(sample_p, sample_q, alpha_used, params.min_samples);
            if inference.conflicting {
                warnings.push(format!("{region_id}: both directions significant for {p} vs {q}; treated as no dominance"));
            }
            let (first, second) = match inference.decision {
                DominanceDecision::PDominatesQ => (p, q),
                DominanceDecision::QDominatesP => (q, p),
                _ if occupation_cis[&q].mean > occupation_cis[&p].mean => (q, p),
                _ => (p, q),
            };
            let mut diffs: Vec<f64> =
                replicates[&first].iter().zip(&replicates[&second]).map(|(a, b): (&f64, &f64)| a - b).collect();
            let mean_diff_ci = stats::percentile_interval(&mut diffs, params.confidence_level);
            let mean_diff = occupation_cis[&first].mean - occupation_cis[&second].mean;

            let p_value = match inference.decision {
                DominanceDecision::PDominatesQ => inference.p_over_q.map(|r| r.p_value),
                DominanceDecision::QDominatesP => inference.q_over_p.map(|r| r.p_value),
                _ => None,
            };
            if let Some(p_value) = p_value {
                edges.push(DominanceEdge { dominant: first, dominated: second, p_value, mean_diff_ci });
            }
            pair_cis.push(PairComparison { first, second, decision: inference.decision, mean_diff, mean_diff_ci });
        }
    }
    edges.sort_by_key(|e| (e.dominant, e.dominated));

    let nodes: BTreeSet<_> = eligible.iter().map(|(o, _)| *o).collect();
    let density = density_of(edges.len(), nodes.len(), params.density_denominator);
    Ok(DominationNetwork {
        region_id: region_id.to_string(),
        nodes,
        edges,
        density,
        density_denominator: params.density_denominator,
        alpha_used,
        occupation_cis,
        pair_cis,
        warnings,
    })
}

fn density_of(edge_count: usize, node_count: usize, denominator: DensityDenominator) -> f64 {
    if node_count < 2 {
        return 0.0;
    }
    let k = match denominator {
        DensityDenominator::EligibleNodes => node_count,
        DensityDenominator::FullTaxonomy => OccupationCategory::ALL.len(),
    };
    edge_count as f64 / (k * (k - 1) / 2) as f64
}

/// `|edges| / C(k, 2)`, or 0 when the network has fewer than two nodes.
pub fn network_density(network: &DominationNetwork) -> f64 {
    density_of(network.edges.len(), network.nodes.len(), network.density_denominator)
}

/// Occupations by descending mean income; equal means fall back to code order.
pub fn income_ordering(network: &DominationNetwork) -> Vec<(OccupationCategory, OccupationIncome)> {
    let mut ordered: Vec<_> = network.occupation_cis.iter().map(|(o, s)| (*o, s.clone())).collect();
    ordered.sort_by(|a, b| b.1.mean.total_cmp(&a.1.mean).then(a.0.cmp(&b.0)));
    ordered
}
