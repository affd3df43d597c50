//! End-to-end pipeline and report emission.
//!
//! Output tree written by [`run_pipeline`]:
//!
//! ```text
//! <output_dir>/
//!   summary.json          machine summary (profiles, networks, cohort analysis, config echo)
//!   profiles.csv          one row per region
//!   warnings.txt          every warning raised during the run
//!   networks/<region>.dot domination network per region with >= 2 eligible occupations
//!   support/<cohort>.dot  support network per non-empty cohort (All, AG, mixAG, nonAG)
//!   plotdata/*.csv        histogram, scatter and confidence-interval series
//! ```

mod config;
mod dot;
mod pipeline;
mod plotdata;

use std::path::PathBuf;

use thiserror::Error;

pub use config::{PipelineConfig, DEFAULT_HISTOGRAM_BINS};
pub use dot::{emit_network_dot, ToDot};
pub use pipeline::{
    aggregate_saved, region_file_stems, run_pipeline, run_pipeline_with, run_region, validate_input, RegionReport,
    RunOptions, RunSummary, Timings, SOFTWARE_VERSION,
};
pub use plotdata::{emit_plot_data, histogram, Histogram};

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error("cannot read {path}: {source}")]
    InputUnreadable { path: PathBuf, source: std::io::Error },

    #[error("malformed input {path}: {message}")]
    InputFormat { path: PathBuf, message: String },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("no usable records: {0}")]
    NoRecords(String),

    #[error("cannot write {path}: {source}")]
    Output { path: PathBuf, source: std::io::Error },

    #[error(transparent)]
    Analysis(#[from] crate::Error),
}

impl PipelineError {
    /// Process exit status for the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            PipelineError::InputUnreadable { .. } | PipelineError::InputFormat { .. } => 2,
            PipelineError::Config(_) => 3,
            PipelineError::NoRecords(_) => 4,
            PipelineError::Output { .. } | PipelineError::Analysis(_) => 1,
        }
    }
}
