//! Builds the domination network of one synthetic region and prints its
//! edges, density, income ordering and DOT rendering.

use occineq::dominance::{build_domination_network, income_ordering};
use occineq::ingest::group_by_region;
use occineq::report::emit_network_dot;
use occineq::synth::{IncomeModel, RegionSpec};
use occineq::{NetworkParams, OccupationCategory::*};

fn main() -> Result<(), occineq::Error> {
    let spec = RegionSpec::new("Hat Yai")
        .with(EmOfficer, 40, IncomeModel::Normal { mean: 420_000.0, sd: 60_000.0 })
        .with(Merchant, 40, IncomeModel::Normal { mean: 260_000.0, sd: 70_000.0 })
        .with(AgFarmer, 40, IncomeModel::Normal { mean: 110_000.0, sd: 30_000.0 })
        .with(AgFishery, 40, IncomeModel::Normal { mean: 115_000.0, sd: 35_000.0 })
        .with(Student, 3, IncomeModel::Constant(20_000.0));
    let region = group_by_region(&spec.records(1)).remove(0);

    let net = build_domination_network(&region, &NetworkParams::default())?;
    println!("{} eligible occupations, {} edges, density {:.3}", net.nodes.len(), net.edges.len(), net.density);
    for w in &net.warnings {
        println!("warning: {w}");
    }
    for (occ, income) in income_ordering(&net) {
        println!("  {occ:<14} mean {:>9.0}  CI [{:.0}, {:.0}]", income.mean, income.ci.lower, income.ci.upper);
    }
    print!("{}", emit_network_dot(&net));
    Ok(())
}
