//! Aggregates regional domination networks into cohort support networks
//! and shows how the threshold prunes edges.

use occineq::aggregation::{build_support_network, support, Cohort, Transaction};
use occineq::OccupationCategory::*;

fn main() -> Result<(), occineq::Error> {
    let transactions = vec![
        Transaction::new("North", [(EmOfficer, Student), (Merchant, Student), (EmOfficer, AgFarmer)])?,
        Transaction::new("South", [(EmOfficer, Student), (Merchant, Student)])?,
        Transaction::new("East", [(EmOfficer, Student), (EmOfficer, AgFarmer)])?,
        Transaction::new("West", [(EmOfficer, Student)])?,
    ];
    let s = support((Merchant, Student), &transactions)?;
    println!("support(Merchant -> Student) = {}/{} = {}", s.count, s.total, s.value());

    for threshold in [0.25, 0.5, 0.75] {
        let net = build_support_network(&transactions, Cohort::All, threshold)?;
        println!("threshold {threshold}: {} edge(s)", net.edges.len());
        for e in &net.edges {
            println!("  {} -> {}  support {}", e.dominant, e.dominated, e.support);
        }
    }
    Ok(())
}
