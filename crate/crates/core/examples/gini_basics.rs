//! Gini coefficients of a few small income vectors, including the
//! negative-income variant.

use occineq::stats::{gini, gini_allow_negative};

fn main() -> Result<(), occineq::Error> {
    let cases: [(&str, &[f64]); 5] = [
        ("equal", &[100.0, 100.0, 100.0, 100.0]),
        ("one earner", &[0.0, 0.0, 0.0, 100.0]),
        ("ladder", &[1.0, 2.0, 3.0, 4.0, 5.0]),
        ("two classes", &[10.0, 10.0, 10.0, 90.0, 90.0]),
        ("all zero", &[0.0, 0.0, 0.0]),
    ];
    for (name, incomes) in cases {
        println!("{name:<12} G = {:.4}   (max for n={} is {:.4})", gini(incomes)?, incomes.len(), 1.0 - 1.0 / incomes.len() as f64);
    }

    // A household in debt can push the coefficient past 1.
    let with_debt = [-50.0, 10.0, 20.0, 30.0];
    let g = gini_allow_negative(&with_debt)?;
    println!("with debt    G = {:.4}   out of bounds: {}", g.value, g.out_of_bounds);
    assert!(gini(&with_debt).is_err());
    Ok(())
}
