//! `occineq` command line.
//!
//! Exit codes: 0 success, 1 internal error, 2 unreadable or malformed
//! input, 3 invalid configuration, 4 no usable records.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use occineq::report::{aggregate_saved, run_pipeline_with, run_region, validate_input, RunOptions};
use occineq::{PipelineConfig, PipelineError};

#[derive(Parser, Debug)]
#[command(name = "occineq", version, about = "General and occupational income inequality over household surveys")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    options: ConfigArgs,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run the full pipeline and write the output tree.
    Analyze,
    /// Build the domination network of one region.
    Region { region_id: String },
    /// Rebuild cohort support networks from a saved summary.json.
    Aggregate {
        /// Defaults to <out-dir>/summary.json.
        #[arg(long)]
        summary: Option<PathBuf>,
    },
    /// Parse the input and report row validation only.
    Validate,
}

/// Flags override the values of `--config`, which override the defaults.
#[derive(Args, Debug, Default)]
struct ConfigArgs {
    /// JSON file with pipeline settings, keyed by field name.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true)]
    input: Option<PathBuf>,
    /// CSV mapping raw occupation labels to canonical codes.
    #[arg(long, global = true)]
    alias: Option<PathBuf>,
    #[arg(long, global = true)]
    out_dir: Option<PathBuf>,
    #[arg(long, global = true)]
    alpha: Option<f64>,
    #[arg(long, global = true)]
    bootstrap_iters: Option<usize>,
    #[arg(long, global = true)]
    confidence_level: Option<f64>,
    #[arg(long, global = true)]
    support_threshold: Option<f64>,
    #[arg(long, global = true)]
    ag_threshold: Option<f64>,
    #[arg(long, global = true)]
    min_samples: Option<usize>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Region ids to leave out; repeat or separate with commas.
    #[arg(long, global = true, value_delimiter = ',')]
    exclude: Vec<String>,
    #[arg(long, global = true)]
    allow_negative_income: bool,
    /// Worker threads for per-region analysis. Output does not depend on it.
    #[arg(long, global = true)]
    workers: Option<usize>,
}

impl ConfigArgs {
    fn resolve(&self) -> Result<PipelineConfig, PipelineError> {
        let mut config = match &self.config {
            Some(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| PipelineError::Config(format!("cannot read {}: {e}", path.display())))?;
                PipelineConfig::from_json_str(&text)?
            }
            None => PipelineConfig::default(),
        };
        macro_rules! set {
            ($($flag:ident => $field:ident),*) => {
                $(if let Some(v) = &self.$flag { config.$field = v.clone(); })*
            };
        }
        set!(input => input_path, out_dir => output_dir, alpha => alpha, bootstrap_iters => bootstrap_iters,
             confidence_level => confidence_level, support_threshold => support_threshold,
             ag_threshold => ag_threshold, min_samples => min_samples, seed => seed);
        if self.alias.is_some() {
            config.alias_path = self.alias.clone();
        }
        if !self.exclude.is_empty() {
            config.exclusion_list = self.exclude.clone();
        }
        if self.allow_negative_income {
            config.allow_negative_income = true;
        }
        Ok(config)
    }
}

fn run(cli: &Cli) -> Result<(), PipelineError> {
    let config = cli.options.resolve()?;
    let options = RunOptions { workers: cli.options.workers };
    match &cli.command {
        Command::Analyze => {
            let summary = run_pipeline_with(&config, &options)?;
            println!(
                "analyzed {} regions from {} households ({} rows rejected)",
                summary.regions.len(),
                summary.validation.accepted,
                summary.validation.rejected
            );
            println!("median gini {:.4}, median density {:.4}", summary.gini_median, summary.density_median);
            for net in &summary.support_networks {
                println!("support {:<6} {:>3} edges over {} regions", net.cohort.label(), net.edges.len(), net.transaction_count);
            }
            if !summary.warnings.is_empty() {
                println!("{} warning(s), see warnings.txt", summary.warnings.len());
            }
            println!("wrote {}", config.output_dir.display());
            let t = &summary.timings;
            eprintln!(
                "timings: ingest {:?}, regions {:?}, aggregation {:?}, output {:?}",
                t.ingest, t.regions, t.aggregation, t.output
            );
        }
        Command::Region { region_id } => {
            let report = run_region(&config, region_id)?;
            let net = &report.network;
            println!(
                "{}: {} occupations, {} edges, density {:.4}, gini {:.4}, {}",
                report.region_id,
                net.nodes.len(),
                net.edges.len(),
                net.density,
                report.gini,
                report.ag_class
            );
            for edge in &net.edges {
                println!("  {} -> {}  p={}", edge.dominant, edge.dominated, edge.p_value);
            }
        }
        Command::Aggregate { summary } => {
            let path = summary.clone().unwrap_or_else(|| config.output_dir.join("summary.json"));
            for net in aggregate_saved(&path, &config.output_dir, cli.options.support_threshold)? {
                println!("support {:<6} {:>3} edges over {} regions", net.cohort.label(), net.edges.len(), net.transaction_count);
            }
        }
        Command::Validate => {
            let report = validate_input(&config)?;
            println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
            if report.accepted == 0 {
                return Err(PipelineError::NoRecords("every row was rejected".into()));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
