//! One-sided Mann-Whitney tests: the exact path for small samples (ties
//! included) and the normal approximation for larger ones.

use occineq::stats::{mann_whitney_upper, u_statistic};

fn main() -> Result<(), occineq::Error> {
    let officers = [310.0, 295.0, 330.0, 305.0, 342.0];
    let farmers = [120.0, 95.0, 140.0, 101.0, 118.0];
    let r = mann_whitney_upper(&officers, &farmers, 0.05)?;
    println!("officers > farmers: U={} p={:.5} {:?} reject={}", r.u_statistic, r.p_value, r.method, r.reject);
    let r = mann_whitney_upper(&farmers, &officers, 0.05)?;
    println!("farmers > officers: U={} p={:.5} {:?} reject={}", r.u_statistic, r.p_value, r.method, r.reject);

    let a = [1.0, 2.0, 2.0, 3.0];
    let b = [1.0, 1.0, 2.0];
    println!("tied samples: U={} p={:.4}", u_statistic(&a, &b)?, mann_whitney_upper(&a, &b, 0.05)?.p_value);

    let big_a: Vec<f64> = (0..40).map(|i| 100.0 + i as f64).collect();
    let big_b: Vec<f64> = (0..40).map(|i| 90.0 + i as f64).collect();
    let r = mann_whitney_upper(&big_a, &big_b, 0.05)?;
    println!("n=40 each, shifted by 10: U={} p={:.5} {:?}", r.u_statistic, r.p_value, r.method);
    Ok(())
}
