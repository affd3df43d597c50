//! Parses a messy survey extract with an alias table and prints the
//! validation report and per-region head counts.

use occineq::ingest::{group_by_region, parse_household_csv, AliasMap, IngestOptions};
use occineq::OccupationCategory;

const SURVEY: &str = "\
household_id,province,occupation,annual_income
h1,Songkhla,AG-Farmer,84000
h2,Songkhla,rubber tapper,91000.50
h3,Songkhla,EM-Officer,312000
h4,Songkhla,astronaut,1000000
h5,Nan,Student,12000
h6,,Merchant,150000
h7,Nan,Merchant,-5
h8,Nan,Merchant
";

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut aliases = AliasMap::new();
    aliases.insert("Rubber Tapper", OccupationCategory::AgFarmer);

    let parsed = parse_household_csv(SURVEY.as_bytes(), Some(&aliases), IngestOptions::default())?;
    println!("{}", serde_json::to_string_pretty(&parsed.report)?);

    for region in group_by_region(&parsed.records) {
        println!("{}: {} households", region.region_id(), region.head_count());
        for (occ, incomes) in region.samples() {
            println!("  {occ:<18} {incomes:?}");
        }
    }
    Ok(())
}
