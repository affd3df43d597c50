//! Percentile bootstrap intervals for a mean and a difference of means,
//! reproducible from a seed.

use occineq::stats::{bootstrap_mean_ci, bootstrap_mean_diff_ci, StreamSeed};

fn main() -> Result<(), occineq::Error> {
    let merchants = [150.0, 162.0, 171.0, 149.0, 188.0, 210.0, 140.0, 175.0, 166.0, 158.0];
    let labourers = [90.0, 110.0, 95.0, 101.0, 87.0, 120.0, 99.0, 93.0];
    let seed = StreamSeed::new(42, 0);

    let ci = bootstrap_mean_ci(&merchants, 1000, 0.95, seed)?;
    println!("merchant mean 95% CI: [{:.2}, {:.2}]", ci.lower, ci.upper);
    assert_eq!(ci, bootstrap_mean_ci(&merchants, 1000, 0.95, seed)?);

    let diff = bootstrap_mean_diff_ci(&merchants, &labourers, 1000, 0.95, seed)?;
    println!("merchant - labourer 95% CI: [{:.2}, {:.2}], excludes zero: {}", diff.lower, diff.upper, diff.excludes_zero());

    let other = bootstrap_mean_ci(&merchants, 1000, 0.95, StreamSeed::new(43, 0))?;
    println!("another seed:         [{:.2}, {:.2}]", other.lower, other.upper);
    Ok(())
}
