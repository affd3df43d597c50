//! Fixtures shared by the integration and acceptance targets.
#![allow(dead_code)]

use std::collections::BTreeMap;
use std::fs::File;
use std::io::BufWriter;
use std::path::{Path, PathBuf};

use occineq::ingest::write_household_csv;
use occineq::synth::{generate, low_gini_high_density_region, synthetic_country};
use occineq::{HouseholdRecord, OccupationCategory};

/// Grid positions for the 14 occupations. Each occupation gets the ten
/// incomes `200_000 + 5_000 * (pos + j)`, j = 0..9. With ten values a side
/// the exact one-sided test rejects at 0.05 iff the grids are offset by at
/// least 3 steps (p = 0.0279 at offset 3).
pub const POSITIONS_82: [u32; 14] = [2, 12, 15, 18, 19, 25, 27, 30, 31, 32, 32, 37, 37, 42];
pub const POSITIONS_47: [u32; 14] = [2, 2, 2, 3, 4, 4, 4, 4, 6, 7, 8, 8, 9, 10];

pub fn grid_region(region_id: &str, positions: &[u32; 14]) -> Vec<HouseholdRecord> {
    let mut out = Vec::new();
    for (occ, &pos) in OccupationCategory::ALL.iter().zip(positions) {
        for j in 0..10 {
            out.push(HouseholdRecord {
                household_id: format!("{region_id}-{}", out.len()),
                region_id: region_id.to_string(),
                occupation: *occ,
                annual_income: 200_000.0 + 5_000.0 * f64::from(pos + j),
            });
        }
    }
    out
}

/// Number of occupation pairs whose grid offset is at least 3 steps.
pub fn separated_pairs(positions: &[u32; 14]) -> usize {
    let mut n = 0;
    for i in 0..14 {
        for j in i + 1..14 {
            if positions[i].abs_diff(positions[j]) >= 3 {
                n += 1;
            }
        }
    }
    n
}

pub const ARCHETYPE: &str = "Archetype";

/// 19 synthetic regions plus one region with tight per-occupation spreads
/// and small offsets between occupation means.
pub fn lghn_dataset(per_region: usize, seed: u64) -> Vec<HouseholdRecord> {
    let mut specs = synthetic_country(19, 19 * per_region, seed);
    specs.push(low_gini_high_density_region(ARCHETYPE, per_region / 14));
    generate(&specs, seed)
}

pub fn write_csv(path: &Path, records: &[HouseholdRecord]) -> PathBuf {
    write_household_csv(BufWriter::new(File::create(path).unwrap()), records).unwrap();
    path.to_path_buf()
}

/// Every file under `dir`, keyed by relative path.
pub fn tree_bytes(dir: &Path) -> BTreeMap<String, Vec<u8>> {
    fn walk(root: &Path, dir: &Path, out: &mut BTreeMap<String, Vec<u8>>) {
        for entry in std::fs::read_dir(dir).unwrap() {
            let path = entry.unwrap().path();
            if path.is_dir() {
                walk(root, &path, out);
            } else {
                let rel = path.strip_prefix(root).unwrap().to_string_lossy().into_owned();
                out.insert(rel, std::fs::read(&path).unwrap());
            }
        }
    }
    let mut out = BTreeMap::new();
    walk(dir, dir, &mut out);
    out
}

/// O(n^2) mean-absolute-difference Gini.
pub fn gini_oracle(x: &[f64]) -> f64 {
    let n = x.len() as f64;
    let mean = x.iter().sum::<f64>() / n;
    if mean == 0.0 {
        return 0.0;
    }
    let mut total = 0.0;
    for a in x {
        for b in x {
            total += (a - b).abs();
        }
    }
    total / (2.0 * n * n * mean)
}
