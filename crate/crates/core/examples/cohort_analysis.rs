//! Median quadrants, correlations and chi-square tests over a handful of
//! hand-made region profiles.

use occineq::classify::{cohort_analysis, median_split, AnalysisOptions, RegionDraft};
use occineq::AgClass;

fn main() {
    let rows = [
        ("A", 0.31, 0.40, 95_000.0, AgClass::Ag),
        ("B", 0.35, 0.55, 101_000.0, AgClass::Ag),
        ("C", 0.29, 0.81, 143_000.0, AgClass::MixAg),
        ("D", 0.42, 0.62, 180_000.0, AgClass::NonAg),
        ("E", 0.38, 0.90, 210_000.0, AgClass::NonAg),
        ("F", 0.33, 0.47, 120_000.0, AgClass::MixAg),
    ];
    let drafts = rows
        .iter()
        .map(|&(id, gini, density, mean_income, ag_class)| RegionDraft {
            region_id: id.to_string(),
            gini,
            density,
            mean_income,
            ag_class,
        })
        .collect();
    let split = median_split(drafts);
    println!("medians: gini {:.3}, density {:.3}", split.gini_median, split.density_median);
    for p in &split.profiles {
        println!("  {} {:<6} {}", p.region_id, p.ag_class.label(), p.quadrant);
    }

    let analysis = cohort_analysis(&split.profiles, &AnalysisOptions::default());
    println!("r(density, gini) = {:?}", analysis.r_density_gini);
    println!("r(gini, income)  = {:?}", analysis.r_gini_income);
    println!("effect sizes: {:?}", analysis.effect_size_labels);
    if let Some(r) = &analysis.chi_square.class_by_gini_level.result {
        println!("class x gini level: chi2 {:.3}, p {:.3}, small expected counts: {}", r.statistic, r.p_value, r.low_expected_count);
    }
    for w in &analysis.warnings {
        println!("warning: {w}");
    }
}
