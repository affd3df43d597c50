//! Income inequality analytics over household survey records.
//!
//! Two views of inequality are computed per region:
//!
//! - **general** inequality, the Gini coefficient of all household incomes;
//! - **occupational** inequality, the density of an income domination
//!   network whose edges `p -> q` mean that occupation `p` earns
//!   significantly more than occupation `q` (one-sided Mann-Whitney test)
//!   and not the other way round.
//!
//! Regional networks are then aggregated into cohort-level support networks
//! and regions are compared through correlations, median quadrants and
//! chi-square independence tests.
//!
//! The modules mirror the pipeline stages:
//!
//! | module          | stage                                                      |
//! |-----------------|------------------------------------------------------------|
//! | [`ingest`]      | CSV parsing, occupation taxonomy, grouping by region       |
//! | [`stats`]       | Gini, Mann-Whitney, bootstrap CIs, Pearson, chi-square     |
//! | [`dominance`]   | per-region domination networks and density                 |
//! | [`aggregation`] | support of domination pairs across regions                 |
//! | [`classify`]    | agricultural classes, quadrants, cohort statistics         |
//! | [`report`]      | the end-to-end pipeline and its JSON/DOT/CSV outputs       |
//! | [`synth`]       | synthetic survey generation for fixtures and demos         |
//!
//! See `examples/` in this crate for one runnable program per capability.

pub mod aggregation;
pub mod classify;
pub mod dominance;
mod error;
pub mod ingest;
pub mod report;
pub mod stats;
pub mod synth;

pub use aggregation::{Cohort, SupportNetwork, Transaction};
pub use classify::{AgClass, CohortAnalysis, Quadrant, RegionProfile};
pub use dominance::{DominanceDecision, DominationNetwork, NetworkParams};
pub use error::{Error, Result};
pub use ingest::{HouseholdRecord, OccupationCategory, RegionSample, ValidationReport};
pub use report::{run_pipeline, PipelineConfig, PipelineError, RunSummary};
pub use stats::{Interval, StreamSeed, TestResult};
