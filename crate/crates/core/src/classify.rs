//! Region classification and cohort statistics.
//!
//! Regions get an agricultural class from the occupation shares of their
//! household heads, and a quadrant from comparing their Gini coefficient
//! and network density with the medians over all regions (values equal to
//! the median count as Low). Cohort analysis then relates the three
//! regional scalars and tests whether quadrants depend on the agricultural
//! class.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::aggregation::Cohort;
use crate::ingest::RegionSample;
use crate::stats::{self, ChiSquareResult, ContingencyTable};

pub const DEFAULT_AG_THRESHOLD: f64 = 0.66;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum AgClass {
    #[serde(rename = "AG")]
    Ag,
    #[serde(rename = "mixAG")]
    MixAg,
    #[serde(rename = "nonAG")]
    NonAg,
}

impl AgClass {
    pub const ALL: [AgClass; 3] = [AgClass::Ag, AgClass::MixAg, AgClass::NonAg];

    pub fn label(self) -> &'static str {
        match self {
            AgClass::Ag => "AG",
            AgClass::MixAg => "mixAG",
            AgClass::NonAg => "nonAG",
        }
    }
}

impl fmt::Display for AgClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.label())
    }
}

/// AG when the agricultural share of household heads is strictly above
/// `threshold`, nonAG when the non-agricultural share is, mixAG otherwise.
pub fn agricultural_class(region: &RegionSample, threshold: f64) -> AgClass {
    let heads = region.head_count();
    if heads == 0 {
        return AgClass::MixAg;
    }
    let ag_heads: usize = region.samples().iter().filter(|(o, _)| o.is_agricultural()).map(|(_, v)| v.len()).sum();
    let ag_share = ag_heads as f64 / heads as f64;
    let non_ag_share = (heads - ag_heads) as f64 / heads as f64;
    if ag_share > threshold {
        AgClass::Ag
    } else if non_ag_share > threshold {
        AgClass::NonAg
    } else {
        AgClass::MixAg
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Level {
    Low,
    High,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Quadrant {
    #[serde(rename = "LGLN")]
    Lgln,
    #[serde(rename = "LGHN")]
    Lghn,
    #[serde(rename = "HGLN")]
    Hgln,
    #[serde(rename = "HGHN")]
    Hghn,
}

impl Quadrant {
    pub const ALL: [Quadrant; 4] = [Quadrant::Lgln, Quadrant::Lghn, Quadrant::Hgln, Quadrant::Hghn];

    pub fn from_levels(gini: Level, density: Level) -> Self {
        match (gini, density) {
            (Level::Low, Level::Low) => Quadrant::Lgln,
            (Level::Low, Level::High) => Quadrant::Lghn,
            (Level::High, Level::Low) => Quadrant::Hgln,
            (Level::High, Level::High) => Quadrant::Hghn,
        }
    }

    pub fn gini_level(self) -> Level {
        match self {
            Quadrant::Lgln | Quadrant::Lghn => Level::Low,
            Quadrant::Hgln | Quadrant::Hghn => Level::High,
        }
    }

    pub fn density_level(self) -> Level {
        match self {
            Quadrant::Lgln | Quadrant::Hgln => Level::Low,
            Quadrant::Lghn | Quadrant::Hghn => Level::High,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Quadrant::Lgln => "LGLN",
            Quadrant::Lghn => "LGHN",
            Quadrant::Hgln => "HGLN",
            Quadrant::Hghn => "HGHN",
        }
    }
}

impl fmt::Display for Quadrant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.label())
    }
}

/// Region scalars before the median split.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegionDraft {
    pub region_id: String,
    pub gini: f64,
    pub density: f64,
    pub mean_income: f64,
    pub ag_class: AgClass,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegionProfile {
    pub region_id: String,
    pub gini: f64,
    pub density: f64,
    pub mean_income: f64,
    pub ag_class: AgClass,
    pub quadrant: Quadrant,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MedianSplit {
    pub gini_median: f64,
    pub density_median: f64,
    pub profiles: Vec<RegionProfile>,
}

/// Median with the midpoint rule for even counts. `None` when empty.
pub fn median(values: &[f64]) -> Option<f64> {
    if values.is_empty() {
        return None;
    }
    let mut sorted = values.to_vec();
    sorted.sort_unstable_by(f64::total_cmp);
    let n = sorted.len();
    Some(if n % 2 == 1 { sorted[n / 2] } else { (sorted[n / 2 - 1] + sorted[n / 2]) / 2.0 })
}

fn level(value: f64, median: f64) -> Level {
    if value > median {
        Level::High
    } else {
        Level::Low
    }
}

/// Assigns quadrants against the medians of all given regions.
pub fn median_split(drafts: Vec<RegionDraft>) -> MedianSplit {
    let ginis: Vec<f64> = drafts.iter().map(|d| d.gini).collect();
    let densities: Vec<f64> = drafts.iter().map(|d| d.density).collect();
    let gini_median = median(&ginis).unwrap_or(0.0);
    let density_median = median(&densities).unwrap_or(0.0);
    let profiles = drafts
        .into_iter()
        .map(|d| RegionProfile {
            quadrant: Quadrant::from_levels(level(d.gini, gini_median), level(d.density, density_median)),
            region_id: d.region_id,
            gini: d.gini,
            density: d.density,
            mean_income: d.mean_income,
            ag_class: d.ag_class,
        })
        .collect();
    MedianSplit { gini_median, density_median, profiles }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EffectSize {
    Small,
    Medium,
    Large,
}

/// Lower bounds of the medium and large labels on `|r|`; anything below
/// `medium` is small.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EffectSizeBounds {
    pub medium: f64,
    pub large: f64,
}

impl Default for EffectSizeBounds {
    fn default() -> Self {
        Self { medium: 0.5, large: 0.8 }
    }
}

impl EffectSizeBounds {
    pub fn label(&self, r: f64) -> EffectSize {
        let magnitude = r.abs();
        if magnitude >= self.large {
            EffectSize::Large
        } else if magnitude >= self.medium {
            EffectSize::Medium
        } else {
            EffectSize::Small
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalysisOptions {
    pub alpha: f64,
    pub effect_sizes: EffectSizeBounds,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        Self { alpha: 0.05, effect_sizes: EffectSizeBounds::default() }
    }
}

/// A chi-square test together with the table it ran on. `result` is `None`
/// and `error` set when the table was degenerate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableTest {
    pub table: Option<ContingencyTable>,
    pub result: Option<ChiSquareResult>,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChiSquareSuite {
    /// AG class x quadrant (3 x 4).
    pub class_by_quadrant: TableTest,
    /// AG class x Gini level (3 x 2).
    pub class_by_gini_level: TableTest,
    /// AG class x density level (3 x 2).
    pub class_by_density_level: TableTest,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CohortAnalysis {
    pub region_count: usize,
    /// `None` when a series has zero variance.
    pub r_density_gini: Option<f64>,
    pub r_gini_income: Option<f64>,
    pub r_density_income: Option<f64>,
    pub effect_size_labels: BTreeMap<String, EffectSize>,
    pub quadrant_counts: BTreeMap<Cohort, BTreeMap<Quadrant, usize>>,
    /// Percentages within each non-empty cohort.
    pub quadrant_shares: BTreeMap<Cohort, BTreeMap<Quadrant, f64>>,
    pub chi_square: ChiSquareSuite,
    pub warnings: Vec<String>,
}

pub fn cohort_analysis(profiles: &[RegionProfile], options: &AnalysisOptions) -> CohortAnalysis {
    let mut warnings = Vec::new();
    let gini: Vec<f64> = profiles.iter().map(|p| p.gini).collect();
    let density: Vec<f64> = profiles.iter().map(|p| p.density).collect();
    let income: Vec<f64> = profiles.iter().map(|p| p.mean_income).collect();

    let mut effect_size_labels = BTreeMap::new();
    let mut correlate = |name: &str, xs: &[f64], ys: &[f64]| match stats::pearson_r(xs, ys) {
        Ok(r) => {
            effect_size_labels.insert(name.to_string(), options.effect_sizes.label(r));
            Some(r)
        }
        Err(e) => {
            warnings.push(format!("correlation {name} undefined: {e}"));
            None
        }
    };
    let r_density_gini = correlate("density_gini", &density, &gini);
    let r_gini_income = correlate("gini_income", &gini, &income);
    let r_density_income = correlate("density_income", &density, &income);

    let mut quadrant_counts: BTreeMap<Cohort, BTreeMap<Quadrant, usize>> = BTreeMap::new();
    for p in profiles {
        for cohort in [Cohort::All, Cohort::from(p.ag_class)] {
            let counts = quadrant_counts.entry(cohort).or_insert_with(|| Quadrant::ALL.iter().map(|q| (*q, 0)).collect());
            *counts.entry(p.quadrant).or_default() += 1;
        }
    }
    let quadrant_shares = quadrant_counts
        .iter()
        .map(|(cohort, counts)| {
            let total: usize = counts.values().sum();
            let shares = counts.iter().map(|(q, c)| (*q, 100.0 * *c as f64 / total as f64)).collect();
            (*cohort, shares)
        })
        .collect();

    let class_labels: Vec<String> = AgClass::ALL.iter().map(|c| c.label().to_string()).collect();
    let tally = |column_of: &dyn Fn(Quadrant) -> usize, width: usize| -> Vec<Vec<u64>> {
        let mut counts = vec![vec![0u64; width]; AgClass::ALL.len()];
        for p in profiles {
            let row = AgClass::ALL.iter().position(|c| *c == p.ag_class).expect("closed enum");
            counts[row][column_of(p.quadrant)] += 1;
        }
        counts
    };
    let level_labels = |axis: &str| vec![format!("L{axis}"), format!("H{axis}")];
    let level_index = |l: Level| if l == Level::Low { 0 } else { 1 };

    let mut run = |name: &str, cols: Vec<String>, counts: Vec<Vec<u64>>| -> TableTest {
        let table = match ContingencyTable::new(class_labels.clone(), cols, counts) {
            Ok(t) => t,
            Err(e) => return TableTest { table: None, result: None, error: Some(e.to_string()) },
        };
        match stats::chi_square_independence(&table, options.alpha) {
            Ok(result) => {
                if result.low_expected_count {
                    warnings.push(format!("chi-square {name}: expected counts below 5, p-value is approximate"));
                }
                TableTest { table: Some(table), result: Some(result), error: None }
            }
            Err(e) => {
                warnings.push(format!("chi-square {name} not computed: {e}"));
                TableTest { table: Some(table), result: None, error: Some(e.to_string()) }
            }
        }
    };
    let class_by_quadrant = run(
        "ag_class x quadrant",
        Quadrant::ALL.iter().map(|q| q.label().to_string()).collect(),
        tally(&|q| Quadrant::ALL.iter().position(|x| *x == q).expect("closed enum"), 4),
    );
    let class_by_gini_level =
        run("ag_class x gini level", level_labels("G"), tally(&|q| level_index(q.gini_level()), 2));
    let class_by_density_level =
        run("ag_class x density level", level_labels("N"), tally(&|q| level_index(q.density_level()), 2));

    CohortAnalysis {
        region_count: profiles.len(),
        r_density_gini,
        r_gini_income,
        r_density_income,
        effect_size_labels,
        quadrant_counts,
        quadrant_shares,
        chi_square: ChiSquareSuite { class_by_quadrant, class_by_gini_level, class_by_density_level },
        warnings,
    }
}
