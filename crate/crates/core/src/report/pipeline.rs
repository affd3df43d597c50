use std::collections::{BTreeMap, BTreeSet};
use std::fs::{self, File};
use std::io::{BufReader, BufWriter, Write};
use std::path::Path;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::dot::ToDot;
use super::{plotdata, PipelineConfig, PipelineError};
use crate::aggregation::{build_support_network, to_transaction, Cohort, SupportNetwork, Transaction};
use crate::classify::{agricultural_class, cohort_analysis, median_split, AgClass, CohortAnalysis, RegionDraft, RegionProfile};
use crate::dominance::{build_domination_network, DominationNetwork};
use crate::ingest::{group_by_region, parse_household_csv, AliasMap, IngestOptions, ParsedHouseholds, RegionSample};
use crate::stats::{self, GINI_ESTIMATOR};
use crate::ValidationReport;

pub const SOFTWARE_VERSION: &str = env!("CARGO_PKG_VERSION");
const MEDIAN_TIE_RULE: &str = "values equal to the median are Low";

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct RunOptions {
    /// Size of the region worker pool; `None` uses rayon's global pool.
    /// Output does not depend on this.
    pub workers: Option<usize>,
}

/// Wall-clock breakdown of a run. Not serialized, so output files stay
/// identical between runs.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Timings {
    pub ingest: Duration,
    pub regions: Duration,
    pub aggregation: Duration,
    pub output: Duration,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegionReport {
    pub region_id: String,
    pub head_count: usize,
    pub gini: f64,
    /// Set when negative incomes pushed the Gini outside `[0, 1)`.
    pub gini_out_of_bounds: bool,
    pub mean_income: f64,
    pub ag_class: AgClass,
    pub network: DominationNetwork,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunSummary {
    pub software_version: String,
    pub gini_estimator: String,
    pub median_tie_rule: String,
    pub config: PipelineConfig,
    pub validation: ValidationReport,
    /// Regions present in the input but dropped by the exclusion list.
    pub excluded_regions: Vec<String>,
    pub gini_median: f64,
    pub density_median: f64,
    pub profiles: Vec<RegionProfile>,
    pub regions: Vec<RegionReport>,
    pub cohort_analysis: CohortAnalysis,
    pub support_networks: Vec<SupportNetwork>,
    pub warnings: Vec<String>,
    #[serde(skip)]
    pub timings: Timings,
}

/// Runs ingest, per-region analysis, aggregation and classification, then
/// writes the output tree under `config.output_dir`.
pub fn run_pipeline(config: &PipelineConfig) -> Result<RunSummary, PipelineError> {
    run_pipeline_with(config, &RunOptions::default())
}

pub fn run_pipeline_with(config: &PipelineConfig, options: &RunOptions) -> Result<RunSummary, PipelineError> {
    config.validate()?;
    let started = Instant::now();
    let parsed = read_households(config)?;
    let mut warnings = Vec::new();
    let (regions, excluded_regions) = usable_regions(config, &parsed, &mut warnings)?;
    let ingest = started.elapsed();

    let started = Instant::now();
    let analyzed = in_pool(options.workers, || {
        regions.par_iter().map(|r| analyze_region(r, config)).collect::<Vec<_>>()
    })?;
    let mut reports = Vec::with_capacity(analyzed.len());
    for (region, outcome) in regions.iter().zip(analyzed) {
        match outcome? {
            Some(report) => {
                warnings.extend(report.network.warnings.iter().cloned());
                reports.push(report);
            }
            None => warnings.push(format!(
                "{}: total income is not positive, region left out of the analysis",
                region.region_id()
            )),
        }
        if region.samples().len() < 2 {
            warnings.push(format!("{}: fewer than two occupations present", region.region_id()));
        }
    }
    if reports.is_empty() {
        return Err(PipelineError::NoRecords("no region could be analyzed".into()));
    }
    let regions_time = started.elapsed();

    let started = Instant::now();
    let split = median_split(
        reports
            .iter()
            .map(|r| RegionDraft {
                region_id: r.region_id.clone(),
                gini: r.gini,
                density: r.network.density,
                mean_income: r.mean_income,
                ag_class: r.ag_class,
            })
            .collect(),
    );
    let analysis = cohort_analysis(&split.profiles, &config.analysis_options());
    warnings.extend(analysis.warnings.iter().cloned());
    let (support_networks, support_warnings) =
        support_networks(&reports, config.support_threshold, config.count_empty_transactions)?;
    warnings.extend(support_warnings);
    let aggregation = started.elapsed();

    let mut summary = RunSummary {
        software_version: SOFTWARE_VERSION.to_string(),
        gini_estimator: GINI_ESTIMATOR.to_string(),
        median_tie_rule: MEDIAN_TIE_RULE.to_string(),
        config: config.clone(),
        validation: parsed.report,
        excluded_regions,
        gini_median: split.gini_median,
        density_median: split.density_median,
        profiles: split.profiles,
        regions: reports,
        cohort_analysis: analysis,
        support_networks,
        warnings,
        timings: Timings { ingest, regions: regions_time, aggregation, output: Duration::ZERO },
    };

    let started = Instant::now();
    write_outputs(&summary, &config.output_dir)?;
    summary.timings.output = started.elapsed();
    Ok(summary)
}

/// Analyzes a single region and writes its network and interval series
/// under `config.output_dir`.
pub fn run_region(config: &PipelineConfig, region_id: &str) -> Result<RegionReport, PipelineError> {
    config.validate()?;
    let parsed = read_households(config)?;
    let records: Vec<_> = parsed.records.into_iter().filter(|r| r.region_id == region_id).collect();
    let region = group_by_region(&records)
        .pop()
        .ok_or_else(|| PipelineError::NoRecords(format!("region `{region_id}` has no accepted records")))?;
    let report = analyze_region(&region, config)?.ok_or_else(|| {
        PipelineError::NoRecords(format!("region `{region_id}` has no positive total income"))
    })?;

    let dir = &config.output_dir;
    let stem = region_file_stems([region_id]).remove(region_id).expect("stem for the requested region");
    create_dirs(dir)?;
    write_file(&dir.join("networks").join(format!("{stem}.dot")), report.network.to_dot().as_bytes())?;
    write_file(&dir.join("networks").join(format!("{stem}.json")), &to_json(&report))?;
    plotdata::write_region_intervals(&report.network, &dir.join("plotdata"), &stem)?;
    Ok(report)
}

/// Rebuilds cohort support networks from a saved `summary.json`, writing
/// `support/*.dot` and `aggregate.json` under `output_dir`.
pub fn aggregate_saved(
    summary_path: &Path,
    output_dir: &Path,
    threshold: Option<f64>,
) -> Result<Vec<SupportNetwork>, PipelineError> {
    let file = File::open(summary_path)
        .map_err(|source| PipelineError::InputUnreadable { path: summary_path.to_path_buf(), source })?;
    let summary: RunSummary = serde_json::from_reader(BufReader::new(file)).map_err(|e| PipelineError::InputFormat {
        path: summary_path.to_path_buf(),
        message: e.to_string(),
    })?;
    let threshold = threshold.unwrap_or(summary.config.support_threshold);
    if !(threshold > 0.0 && threshold < 1.0) {
        return Err(PipelineError::Config(format!("support_threshold must lie in (0, 1), got {threshold}")));
    }
    let (networks, _) = support_networks(&summary.regions, threshold, summary.config.count_empty_transactions)?;
    create_dirs(output_dir)?;
    for net in &networks {
        write_file(&output_dir.join("support").join(format!("{}.dot", net.cohort)), net.to_dot().as_bytes())?;
    }
    write_file(&output_dir.join("aggregate.json"), &to_json(&networks))?;
    Ok(networks)
}

/// Parses the input and reports row validation without writing anything.
pub fn validate_input(config: &PipelineConfig) -> Result<ValidationReport, PipelineError> {
    config.validate()?;
    Ok(read_households(config)?.report)
}

/// File-system-safe, collision-free file stems for region ids.
pub fn region_file_stems<'a>(region_ids: impl IntoIterator<Item = &'a str>) -> BTreeMap<String, String> {
    let ids: BTreeSet<&str> = region_ids.into_iter().collect();
    let mut used = BTreeSet::new();
    let mut out = BTreeMap::new();
    for id in ids {
        let base: String = id
            .chars()
            .map(|c| if c.is_ascii_alphanumeric() || matches!(c, '-' | '_' | '.') { c } else { '_' })
            .collect();
        let base = if base.trim_matches('.').is_empty() { format!("_{base}") } else { base };
        let mut stem = base.clone();
        let mut k = 2;
        while !used.insert(stem.clone()) {
            stem = format!("{base}_{k}");
            k += 1;
        }
        out.insert(id.to_string(), stem);
    }
    out
}

fn read_households(config: &PipelineConfig) -> Result<ParsedHouseholds, PipelineError> {
    let aliases = match &config.alias_path {
        Some(path) => {
            let file =
                File::open(path).map_err(|source| PipelineError::InputUnreadable { path: path.clone(), source })?;
            Some(AliasMap::from_csv(BufReader::new(file)).map_err(|e| PipelineError::InputFormat {
                path: path.clone(),
                message: e.to_string(),
            })?)
        }
        None => None,
    };
    let path = &config.input_path;
    let file = File::open(path).map_err(|source| PipelineError::InputUnreadable { path: path.clone(), source })?;
    let options = IngestOptions { allow_negative_income: config.allow_negative_income };
    parse_household_csv(BufReader::new(file), aliases.as_ref(), options)
        .map_err(|e| PipelineError::InputFormat { path: path.clone(), message: e.to_string() })
}

fn usable_regions(
    config: &PipelineConfig,
    parsed: &ParsedHouseholds,
    warnings: &mut Vec<String>,
) -> Result<(Vec<RegionSample>, Vec<String>), PipelineError> {
    if parsed.report.accepted == 0 {
        return Err(PipelineError::NoRecords(format!("all {} rows were rejected", parsed.report.total_rows)));
    }
    for (reason, count) in &parsed.report.rejection_reasons {
        warnings.push(format!("ingest: rejected {count} row(s): {reason}"));
    }
    let exclusions: BTreeSet<&str> = config.exclusion_list.iter().map(String::as_str).collect();
    let (excluded, kept): (Vec<_>, Vec<_>) =
        group_by_region(&parsed.records).into_iter().partition(|r| exclusions.contains(r.region_id()));
    let excluded: Vec<String> = excluded.iter().map(|r| r.region_id().to_string()).collect();
    for id in &exclusions {
        if !excluded.iter().any(|e| e == id) {
            warnings.push(format!("exclusion list names `{id}`, which is not in the input"));
        }
    }
    if kept.is_empty() {
        return Err(PipelineError::NoRecords("every region is excluded".into()));
    }
    Ok((kept, excluded))
}

/// `Ok(None)` when the region's Gini is undefined (nonpositive total).
fn analyze_region(region: &RegionSample, config: &PipelineConfig) -> Result<Option<RegionReport>, PipelineError> {
    let incomes = region.all_incomes();
    let (gini, gini_out_of_bounds) = if incomes.iter().any(|&x| x < 0.0) {
        match stats::gini_allow_negative(&incomes) {
            Ok(g) => (g.value, g.out_of_bounds),
            Err(_) => return Ok(None),
        }
    } else {
        (stats::gini(&incomes)?, false)
    };
    let mean_income = incomes.iter().sum::<f64>() / incomes.len() as f64;
    let network = build_domination_network(region, &config.network_params())?;
    Ok(Some(RegionReport {
        region_id: region.region_id().to_string(),
        head_count: region.head_count(),
        gini,
        gini_out_of_bounds,
        mean_income,
        ag_class: agricultural_class(region, config.ag_threshold),
        network,
    }))
}

fn support_networks(
    regions: &[RegionReport],
    threshold: f64,
    count_empty_transactions: bool,
) -> Result<(Vec<SupportNetwork>, Vec<String>), PipelineError> {
    let transactions: Vec<(AgClass, Transaction)> = regions
        .iter()
        .filter(|r| count_empty_transactions || r.network.nodes.len() >= 2)
        .map(|r| (r.ag_class, to_transaction(&r.network)))
        .collect();
    let mut networks = Vec::new();
    let mut warnings = Vec::new();
    for cohort in Cohort::ALL {
        let members: Vec<Transaction> =
            transactions.iter().filter(|(c, _)| cohort.contains(*c)).map(|(_, t)| t.clone()).collect();
        if members.is_empty() {
            warnings.push(format!("cohort {cohort} has no regions, support network skipped"));
            continue;
        }
        networks.push(build_support_network(&members, cohort, threshold)?);
    }
    Ok((networks, warnings))
}

fn in_pool<T: Send>(workers: Option<usize>, job: impl FnOnce() -> T + Send) -> Result<T, PipelineError> {
    match workers {
        None => Ok(job()),
        Some(0) => Err(PipelineError::Config("workers must be positive".into())),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| PipelineError::Config(format!("cannot start {n} workers: {e}")))?;
            Ok(pool.install(job))
        }
    }
}

fn to_json<T: Serialize + ?Sized>(value: &T) -> Vec<u8> {
    let mut bytes = serde_json::to_vec_pretty(value).expect("summary types serialize");
    bytes.push(b'\n');
    bytes
}

fn create_dirs(dir: &Path) -> Result<(), PipelineError> {
    for sub in ["networks", "support", "plotdata"] {
        let path = dir.join(sub);
        fs::create_dir_all(&path).map_err(|source| PipelineError::Output { path, source })?;
    }
    Ok(())
}

pub(super) fn write_file(path: &Path, bytes: &[u8]) -> Result<(), PipelineError> {
    let wrap = |source| PipelineError::Output { path: path.to_path_buf(), source };
    let mut w = BufWriter::new(File::create(path).map_err(wrap)?);
    w.write_all(bytes).map_err(wrap)?;
    w.flush().map_err(wrap)
}

fn profiles_csv(summary: &RunSummary) -> Vec<u8> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let write = |w: &mut csv::Writer<Vec<u8>>, row: &[String]| w.write_record(row).expect("in-memory csv");
    write(
        &mut w,
        &["region_id", "ag_class", "quadrant", "gini", "density", "mean_income", "head_count", "occupations", "edges"]
            .map(String::from),
    );
    for (profile, region) in summary.profiles.iter().zip(&summary.regions) {
        write(
            &mut w,
            &[
                profile.region_id.clone(),
                profile.ag_class.to_string(),
                profile.quadrant.to_string(),
                profile.gini.to_string(),
                profile.density.to_string(),
                profile.mean_income.to_string(),
                region.head_count.to_string(),
                region.network.nodes.len().to_string(),
                region.network.edges.len().to_string(),
            ],
        );
    }
    w.into_inner().expect("in-memory csv")
}

fn write_outputs(summary: &RunSummary, dir: &Path) -> Result<(), PipelineError> {
    create_dirs(dir)?;
    write_file(&dir.join("summary.json"), &to_json(summary))?;
    write_file(&dir.join("profiles.csv"), &profiles_csv(summary))?;
    let mut warnings = summary.warnings.join("\n");
    if !warnings.is_empty() {
        warnings.push('\n');
    }
    write_file(&dir.join("warnings.txt"), warnings.as_bytes())?;

    let stems = region_file_stems(summary.regions.iter().map(|r| r.region_id.as_str()));
    for region in &summary.regions {
        if region.network.nodes.len() >= 2 {
            let path = dir.join("networks").join(format!("{}.dot", stems[&region.region_id]));
            write_file(&path, region.network.to_dot().as_bytes())?;
        }
    }
    for net in &summary.support_networks {
        write_file(&dir.join("support").join(format!("{}.dot", net.cohort)), net.to_dot().as_bytes())?;
    }
    plotdata::emit_plot_data(summary, &dir.join("plotdata"), &stems)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stems_are_safe_and_unique() {
        let stems = region_file_stems(["Chiang Mai", "Chiang_Mai", "a/b", "..", "Songkhla"]);
        assert_eq!(stems["Songkhla"], "Songkhla");
        assert_eq!(stems["a/b"], "a_b");
        assert_eq!(stems[".."], "_..");
        let unique: BTreeSet<_> = stems.values().collect();
        assert_eq!(unique.len(), 5);
        assert!(stems.values().all(|s| !s.contains('/') && !s.contains(' ')));
    }
}
