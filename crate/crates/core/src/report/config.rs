use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::PipelineError;
use crate::aggregation::DEFAULT_SUPPORT_THRESHOLD;
use crate::classify::{AnalysisOptions, EffectSizeBounds, DEFAULT_AG_THRESHOLD};
use crate::dominance::{DensityDenominator, NetworkParams, DEFAULT_ALPHA, DEFAULT_MIN_SAMPLES};
use crate::stats::{DEFAULT_BOOTSTRAP_ITERS, DEFAULT_CONFIDENCE_LEVEL, MIN_BOOTSTRAP_ITERS};

pub const DEFAULT_HISTOGRAM_BINS: usize = 20;

/// Everything that determines a run's output. The JSON form uses the field
/// names as keys; missing keys take the defaults.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PipelineConfig {
    pub input_path: PathBuf,
    pub alias_path: Option<PathBuf>,
    pub output_dir: PathBuf,
    pub alpha: f64,
    pub bootstrap_iters: usize,
    pub confidence_level: f64,
    pub support_threshold: f64,
    pub ag_threshold: f64,
    pub min_samples: usize,
    pub seed: u64,
    pub exclusion_list: Vec<String>,
    pub allow_negative_income: bool,
    pub histogram_bins: usize,
    /// Bonferroni-adjust alpha over the occupation pairs of each region.
    pub bonferroni: bool,
    /// Regions whose network has no edges because fewer than two
    /// occupations were eligible still count toward support denominators.
    pub count_empty_transactions: bool,
    pub density_denominator: DensityDenominator,
    pub effect_sizes: EffectSizeBounds,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        Self {
            input_path: PathBuf::new(),
            alias_path: None,
            output_dir: PathBuf::from("out"),
            alpha: DEFAULT_ALPHA,
            bootstrap_iters: DEFAULT_BOOTSTRAP_ITERS,
            confidence_level: DEFAULT_CONFIDENCE_LEVEL,
            support_threshold: DEFAULT_SUPPORT_THRESHOLD,
            ag_threshold: DEFAULT_AG_THRESHOLD,
            min_samples: DEFAULT_MIN_SAMPLES,
            seed: 0,
            exclusion_list: Vec::new(),
            allow_negative_income: false,
            histogram_bins: DEFAULT_HISTOGRAM_BINS,
            bonferroni: false,
            count_empty_transactions: true,
            density_denominator: DensityDenominator::EligibleNodes,
            effect_sizes: EffectSizeBounds::default(),
        }
    }
}

impl PipelineConfig {
    pub fn new(input_path: impl Into<PathBuf>, output_dir: impl Into<PathBuf>) -> Self {
        Self { input_path: input_path.into(), output_dir: output_dir.into(), ..Self::default() }
    }

    pub fn from_json_str(text: &str) -> Result<Self, PipelineError> {
        serde_json::from_str(text).map_err(|e| PipelineError::Config(format!("config file: {e}")))
    }

    pub fn from_json_file(path: &Path) -> Result<Self, PipelineError> {
        let text = std::fs::read_to_string(path)
            .map_err(|source| PipelineError::InputUnreadable { path: path.to_path_buf(), source })?;
        Self::from_json_str(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    pub fn validate(&self) -> Result<(), PipelineError> {
        let open_unit = |name: &str, v: f64| {
            if v > 0.0 && v < 1.0 {
                Ok(())
            } else {
                Err(PipelineError::Config(format!("{name} must lie in (0, 1), got {v}")))
            }
        };
        open_unit("alpha", self.alpha)?;
        open_unit("confidence_level", self.confidence_level)?;
        open_unit("support_threshold", self.support_threshold)?;
        open_unit("ag_threshold", self.ag_threshold)?;
        if self.bootstrap_iters < MIN_BOOTSTRAP_ITERS {
            return Err(PipelineError::Config(format!(
                "bootstrap_iters must be at least {MIN_BOOTSTRAP_ITERS}, got {}",
                self.bootstrap_iters
            )));
        }
        if self.histogram_bins == 0 {
            return Err(PipelineError::Config("histogram_bins must be positive".into()));
        }
        if self.input_path.as_os_str().is_empty() {
            return Err(PipelineError::Config("input_path is required".into()));
        }
        if self.output_dir.as_os_str().is_empty() {
            return Err(PipelineError::Config("output_dir is required".into()));
        }
        if !(self.effect_sizes.medium > 0.0 && self.effect_sizes.medium <= self.effect_sizes.large) {
            return Err(PipelineError::Config("effect size bounds must satisfy 0 < medium <= large".into()));
        }
        Ok(())
    }

    pub fn network_params(&self) -> NetworkParams {
        NetworkParams {
            alpha: self.alpha,
            min_samples: self.min_samples,
            bootstrap_iters: self.bootstrap_iters,
            confidence_level: self.confidence_level,
            seed: self.seed,
            bonferroni: self.bonferroni,
            density_denominator: self.density_denominator,
        }
    }

    pub fn analysis_options(&self) -> AnalysisOptions {
        AnalysisOptions { alpha: self.alpha, effect_sizes: self.effect_sizes }
    }
}
