//! Generates a synthetic national survey, runs the whole pipeline on it and
//! prints where the outputs went.
//!
//! ```text
//! cargo run --release --example full_pipeline -- [regions] [records] [out_dir]
//! ```

use std::env;
use std::fs::File;
use std::io::BufWriter;
use std::path::PathBuf;

use occineq::ingest::write_household_csv;
use occineq::report::{run_pipeline_with, RunOptions};
use occineq::synth::{generate, synthetic_country};
use occineq::PipelineConfig;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = env::args().skip(1);
    let regions: usize = args.next().map(|a| a.parse()).transpose()?.unwrap_or(20);
    let records: usize = args.next().map(|a| a.parse()).transpose()?.unwrap_or(40_000);
    let out_dir = args.next().map(PathBuf::from).unwrap_or_else(|| env::temp_dir().join("occineq-full-pipeline"));
    std::fs::create_dir_all(&out_dir)?;

    let input = out_dir.join("households.csv");
    let households = generate(&synthetic_country(regions, records, 7), 7);
    write_household_csv(BufWriter::new(File::create(&input)?), &households)?;

    let config = PipelineConfig::new(&input, out_dir.join("report"));
    let summary = run_pipeline_with(&config, &RunOptions::default())?;

    let t = &summary.timings;
    println!("{} households in {} regions", summary.validation.accepted, summary.regions.len());
    println!(
        "timings: ingest {:?}, regions {:?}, aggregation {:?}, output {:?}",
        t.ingest, t.regions, t.aggregation, t.output
    );
    println!("median gini {:.3}, median density {:.3}", summary.gini_median, summary.density_median);
    if let Some(r) = summary.cohort_analysis.r_density_gini {
        println!("r(density, gini) = {r:.3}");
    }
    for net in &summary.support_networks {
        println!("support network {:<6} {:>3} edges over {} regions", net.cohort.label(), net.edges.len(), net.transaction_count);
    }
    println!("outputs in {}", config.output_dir.display());
    Ok(())
}
