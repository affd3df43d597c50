//! Household survey ingestion.
//!
//! Input rows look like
//!
//! ```text
//! household_id,province,occupation,annual_income
//! h1,Songkhla,EM-Officer,350000
//! ```
//!
//! Rows that fail validation are counted per reason in a
//! [`ValidationReport`] rather than aborting the whole read. Only a missing
//! or wrong header is fatal.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::io::{Read, Write};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Exact header expected on household CSV input.
pub const HOUSEHOLD_HEADER: [&str; 4] = ["household_id", "province", "occupation", "annual_income"];

pub const REASON_UNKNOWN_OCCUPATION: &str = "unknown_occupation";
pub const REASON_BAD_INCOME: &str = "bad_income";
pub const REASON_MISSING_PROVINCE: &str = "missing_province";
pub const REASON_MALFORMED_ROW: &str = "malformed_row";

/// The fourteen occupation codes of the survey taxonomy.
///
/// Variants are declared in lexicographic order of their codes so the
/// derived `Ord` sorts by code.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum OccupationCategory {
    #[serde(rename = "AG-AnimalFarmer")]
    AgAnimalFarmer,
    #[serde(rename = "AG-Farmer")]
    AgFarmer,
    #[serde(rename = "AG-Fishery")]
    AgFishery,
    #[serde(rename = "AG-Orchardist")]
    AgOrchardist,
    #[serde(rename = "AG-Peasant")]
    AgPeasant,
    #[serde(rename = "Business-Owner")]
    BusinessOwner,
    #[serde(rename = "EM-ComEmployee")]
    EmComEmployee,
    #[serde(rename = "EM-ComOfficer")]
    EmComOfficer,
    #[serde(rename = "EM-Officer")]
    EmOfficer,
    Freelance,
    Merchant,
    Others,
    Student,
    Unemployment,
}

impl OccupationCategory {
    pub const ALL: [OccupationCategory; 14] = [
        Self::AgAnimalFarmer,
        Self::AgFarmer,
        Self::AgFishery,
        Self::AgOrchardist,
        Self::AgPeasant,
        Self::BusinessOwner,
        Self::EmComEmployee,
        Self::EmComOfficer,
        Self::EmOfficer,
        Self::Freelance,
        Self::Merchant,
        Self::Others,
        Self::Student,
        Self::Unemployment,
    ];

    pub fn code(self) -> &'static str {
        match self {
            Self::AgAnimalFarmer => "AG-AnimalFarmer",
            Self::AgFarmer => "AG-Farmer",
            Self::AgFishery => "AG-Fishery",
            Self::AgOrchardist => "AG-Orchardist",
            Self::AgPeasant => "AG-Peasant",
            Self::BusinessOwner => "Business-Owner",
            Self::EmComEmployee => "EM-ComEmployee",
            Self::EmComOfficer => "EM-ComOfficer",
            Self::EmOfficer => "EM-Officer",
            Self::Freelance => "Freelance",
            Self::Merchant => "Merchant",
            Self::Others => "Others",
            Self::Student => "Student",
            Self::Unemployment => "Unemployment",
        }
    }

    pub fn from_code(code: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|c| c.code() == code)
    }

    /// True for the five `AG-` codes.
    pub fn is_agricultural(self) -> bool {
        matches!(
            self,
            Self::AgAnimalFarmer | Self::AgFarmer | Self::AgFishery | Self::AgOrchardist | Self::AgPeasant
        )
    }
}

impl fmt::Display for OccupationCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.code())
    }
}

impl FromStr for OccupationCategory {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::from_code(s.trim()).ok_or_else(|| Error::UnknownOccupation(s.to_string()))
    }
}

/// User-supplied mapping from raw survey labels to taxonomy codes.
///
/// Lookups are whitespace-trimmed and case-insensitive.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct AliasMap {
    labels: HashMap<String, OccupationCategory>,
}

impl AliasMap {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, raw_label: &str, code: OccupationCategory) {
        self.labels.insert(normalize_key(raw_label), code);
    }

    pub fn get(&self, raw_label: &str) -> Option<OccupationCategory> {
        self.labels.get(&normalize_key(raw_label)).copied()
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Reads a two-column `raw_label,code` CSV. A header row whose first
    /// cell is `raw_label` is skipped.
    pub fn from_csv<R: Read>(reader: R) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new().has_headers(false).trim(csv::Trim::All).from_reader(reader);
        let mut map = AliasMap::new();
        for (line, row) in rdr.records().enumerate() {
            let row = row.map_err(|e| Error::Format(format!("alias file: {e}")))?;
            if row.len() != 2 {
                return Err(Error::Format(format!("alias file line {}: expected 2 columns", line + 1)));
            }
            if line == 0 && row[0].eq_ignore_ascii_case("raw_label") {
                continue;
            }
            let code = OccupationCategory::from_code(&row[1])
                .ok_or_else(|| Error::Format(format!("alias file line {}: unknown code {:?}", line + 1, &row[1])))?;
            map.insert(&row[0], code);
        }
        Ok(map)
    }
}

impl FromIterator<(String, OccupationCategory)> for AliasMap {
    fn from_iter<I: IntoIterator<Item = (String, OccupationCategory)>>(iter: I) -> Self {
        let mut map = AliasMap::new();
        for (label, code) in iter {
            map.insert(&label, code);
        }
        map
    }
}

fn normalize_key(label: &str) -> String {
    label.trim().to_lowercase()
}

/// Resolves a raw label: exact codes map to themselves, anything else goes
/// through the alias map.
pub fn normalize_occupation(raw_label: &str, aliases: &AliasMap) -> Result<OccupationCategory> {
    let trimmed = raw_label.trim();
    OccupationCategory::from_code(trimmed)
        .or_else(|| aliases.get(trimmed))
        .ok_or_else(|| Error::UnknownOccupation(raw_label.to_string()))
}

/// One survey row: the head of a household.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HouseholdRecord {
    pub household_id: String,
    pub region_id: String,
    pub occupation: OccupationCategory,
    /// THB per year.
    pub annual_income: f64,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub total_rows: usize,
    pub accepted: usize,
    pub rejected: usize,
    pub rejection_reasons: BTreeMap<String, usize>,
}

impl ValidationReport {
    fn reject(&mut self, reason: &str) {
        self.rejected += 1;
        *self.rejection_reasons.entry(reason.to_string()).or_default() += 1;
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct IngestOptions {
    /// Admit negative incomes (debt-adjusted surveys). Gini values computed
    /// over such data are flagged as out of the usual bounds.
    pub allow_negative_income: bool,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct ParsedHouseholds {
    pub records: Vec<HouseholdRecord>,
    pub report: ValidationReport,
}

/// Parses household rows from CSV text.
///
/// Fails only when the header is missing or differs from
/// [`HOUSEHOLD_HEADER`]; row problems are recorded in the report.
pub fn parse_household_csv<R: Read>(
    reader: R,
    aliases: Option<&AliasMap>,
    options: IngestOptions,
) -> Result<ParsedHouseholds> {
    let empty = AliasMap::new();
    let aliases = aliases.unwrap_or(&empty);
    let mut rdr = csv::ReaderBuilder::new().has_headers(true).flexible(true).from_reader(reader);

    let header = rdr.headers().map_err(|e| Error::Format(format!("unreadable header: {e}")))?;
    let header_fields: Vec<&str> = header.iter().map(|h| h.trim_start_matches('\u{feff}').trim()).collect();
    if header_fields != HOUSEHOLD_HEADER {
        return Err(Error::Format(format!(
            "expected header `{}`, found `{}`",
            HOUSEHOLD_HEADER.join(","),
            header_fields.join(",")
        )));
    }

    let mut out = ParsedHouseholds::default();
    let mut row = csv::StringRecord::new();
    loop {
        match rdr.read_record(&mut row) {
            Ok(false) => break,
            Ok(true) => {
                out.report.total_rows += 1;
                match parse_row(&row, aliases, options) {
                    Ok(record) => {
                        out.report.accepted += 1;
                        out.records.push(record);
                    }
                    Err(reason) => out.report.reject(reason),
                }
            }
            // Invalid UTF-8 and similar per-record failures.
            Err(e) if !matches!(e.kind(), csv::ErrorKind::Io(_)) => {
                out.report.total_rows += 1;
                out.report.reject(REASON_MALFORMED_ROW);
            }
            Err(e) => return Err(Error::Format(format!("read failure: {e}"))),
        }
    }
    Ok(out)
}

fn parse_row(
    row: &csv::StringRecord,
    aliases: &AliasMap,
    options: IngestOptions,
) -> std::result::Result<HouseholdRecord, &'static str> {
    if row.len() != HOUSEHOLD_HEADER.len() {
        return Err(REASON_MALFORMED_ROW);
    }
    let household_id = row[0].trim();
    if household_id.is_empty() {
        return Err(REASON_MALFORMED_ROW);
    }
    let region_id = row[1].trim();
    if region_id.is_empty() {
        return Err(REASON_MISSING_PROVINCE);
    }
    let occupation = normalize_occupation(&row[2], aliases).map_err(|_| REASON_UNKNOWN_OCCUPATION)?;
    let annual_income = parse_income(&row[3]).ok_or(REASON_BAD_INCOME)?;
    if annual_income < 0.0 && !options.allow_negative_income {
        return Err(REASON_BAD_INCOME);
    }
    Ok(HouseholdRecord {
        household_id: household_id.to_string(),
        region_id: region_id.to_string(),
        occupation,
        annual_income,
    })
}

/// Plain decimal: optional sign, digits, optional fractional part.
/// Exponents, `inf` and `nan` are rejected.
fn parse_income(raw: &str) -> Option<f64> {
    let s = raw.trim();
    let digits = s.strip_prefix(['-', '+']).unwrap_or(s);
    let (int, frac) = match digits.split_once('.') {
        Some((i, f)) => (i, Some(f)),
        None => (digits, None),
    };
    let all_digits = |t: &str| t.bytes().all(|b| b.is_ascii_digit());
    let well_formed = all_digits(int)
        && frac.is_none_or(|f| !f.is_empty() && all_digits(f))
        && !(int.is_empty() && frac.is_none());
    if !well_formed {
        return None;
    }
    let value: f64 = s.parse().ok()?;
    // "-0" parses to -0.0; normalize so it is not treated as negative.
    Some(if value == 0.0 { 0.0 } else { value })
}

/// Writes records in the same format [`parse_household_csv`] reads.
pub fn write_household_csv<W: Write>(writer: W, records: &[HouseholdRecord]) -> std::io::Result<()> {
    let mut wtr = csv::Writer::from_writer(writer);
    wtr.write_record(HOUSEHOLD_HEADER)?;
    for r in records {
        let income = r.annual_income.to_string();
        wtr.write_record([r.household_id.as_str(), r.region_id.as_str(), r.occupation.code(), income.as_str()])?;
    }
    wtr.flush()
}

/// All incomes of one region, split by occupation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegionSample {
    region_id: String,
    samples: BTreeMap<OccupationCategory, Vec<f64>>,
    head_count: usize,
}

impl RegionSample {
    /// Builds a region sample; empty occupation sequences are dropped.
    pub fn new(region_id: impl Into<String>, samples: BTreeMap<OccupationCategory, Vec<f64>>) -> Result<Self> {
        let region_id = region_id.into();
        if region_id.trim().is_empty() {
            return Err(Error::InvalidParameter("region_id must be non-empty".into()));
        }
        let samples: BTreeMap<_, _> = samples.into_iter().filter(|(_, v)| !v.is_empty()).collect();
        let head_count = samples.values().map(Vec::len).sum();
        Ok(Self { region_id, samples, head_count })
    }

    pub fn region_id(&self) -> &str {
        &self.region_id
    }

    pub fn samples(&self) -> &BTreeMap<OccupationCategory, Vec<f64>> {
        &self.samples
    }

    pub fn incomes(&self, occupation: OccupationCategory) -> Option<&[f64]> {
        self.samples.get(&occupation).map(Vec::as_slice)
    }

    pub fn head_count(&self) -> usize {
        self.head_count
    }

    pub fn is_empty(&self) -> bool {
        self.head_count == 0
    }

    /// Every income in the region, occupation by occupation.
    pub fn all_incomes(&self) -> Vec<f64> {
        self.samples.values().flatten().copied().collect()
    }
}

/// Partitions records by region, preserving input order within each
/// occupation sequence. Output is sorted by region id.
pub fn group_by_region(records: &[HouseholdRecord]) -> Vec<RegionSample> {
    let mut regions: BTreeMap<&str, BTreeMap<OccupationCategory, Vec<f64>>> = BTreeMap::new();
    for r in records {
        regions
            .entry(r.region_id.as_str())
            .or_default()
            .entry(r.occupation)
            .or_default()
            .push(r.annual_income);
    }
    regions
        .into_iter()
        .map(|(region_id, samples)| {
            let head_count = samples.values().map(Vec::len).sum();
            RegionSample { region_id: region_id.to_string(), samples, head_count }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn parse(text: &str) -> ParsedHouseholds {
        parse_household_csv(text.as_bytes(), None, IngestOptions::default()).unwrap()
    }

    #[test]
    fn taxonomy_is_closed_and_flags_agriculture() {
        assert_eq!(OccupationCategory::ALL.len(), 14);
        let ag: Vec<_> = OccupationCategory::ALL.iter().filter(|c| c.is_agricultural()).collect();
        assert_eq!(ag.len(), 5);
        for c in OccupationCategory::ALL {
            assert_eq!(c.is_agricultural(), c.code().starts_with("AG-"));
            assert_eq!(OccupationCategory::from_code(c.code()), Some(c));
        }
        let mut codes: Vec<_> = OccupationCategory::ALL.iter().map(|c| c.code()).collect();
        let sorted = {
            let mut s = codes.clone();
            s.sort();
            s
        };
        assert_eq!(codes, sorted, "declaration order must be code order");
        codes.dedup();
        assert_eq!(codes.len(), 14);
    }

    #[test]
    fn serde_uses_codes() {
        let json = serde_json::to_string(&OccupationCategory::EmOfficer).unwrap();
        assert_eq!(json, "\"EM-Officer\"");
        let back: OccupationCategory = serde_json::from_str("\"AG-Peasant\"").unwrap();
        assert_eq!(back, OccupationCategory::AgPeasant);
    }

    #[test]
    fn normalize_identity_alias_and_unknown() {
        let mut aliases = AliasMap::new();
        assert_eq!(normalize_occupation("EM-Officer", &aliases).unwrap(), OccupationCategory::EmOfficer);
        aliases.insert("rice farmer", OccupationCategory::AgFarmer);
        assert_eq!(normalize_occupation("rice farmer", &aliases).unwrap(), OccupationCategory::AgFarmer);
        assert_eq!(normalize_occupation("  Rice Farmer ", &aliases).unwrap(), OccupationCategory::AgFarmer);
        assert_eq!(
            normalize_occupation("astronaut", &AliasMap::new()),
            Err(Error::UnknownOccupation("astronaut".into()))
        );
    }

    #[test]
    fn single_row_maps_fields() {
        let out = parse("household_id,province,occupation,annual_income\nh1,Songkhla,EM-Officer,350000\n");
        assert_eq!(
            out.records,
            vec![HouseholdRecord {
                household_id: "h1".into(),
                region_id: "Songkhla".into(),
                occupation: OccupationCategory::EmOfficer,
                annual_income: 350000.0,
            }]
        );
    }

    #[test]
    fn unknown_occupation_rejected_with_reason() {
        let out = parse("household_id,province,occupation,annual_income\nh2,Songkhla,astronaut,100\n");
        assert!(out.records.is_empty());
        assert_eq!(out.report.rejection_reasons.get(REASON_UNKNOWN_OCCUPATION), Some(&1));
    }

    #[test]
    fn one_malformed_of_five() {
        let text = "household_id,province,occupation,annual_income\n\
                    h1,A,Student,0\n\
                    h2,A,Merchant,120000.50\n\
                    h3,B,AG-Farmer,abc\n\
                    h4,B,Freelance,90000\n\
                    h5,B,Others,1\n";
        let out = parse(text);
        assert_eq!(out.records.len(), 4);
        assert_eq!(out.report.total_rows, 5);
        assert_eq!(out.report.accepted, 4);
        assert_eq!(out.report.rejected, 1);
        assert_eq!(out.report.rejection_reasons.get(REASON_BAD_INCOME), Some(&1));
    }

    #[test]
    fn negative_income_needs_opt_in() {
        let text = "household_id,province,occupation,annual_income\nh1,A,Student,-5\n";
        assert_eq!(parse(text).report.rejection_reasons.get(REASON_BAD_INCOME), Some(&1));
        let allowed =
            parse_household_csv(text.as_bytes(), None, IngestOptions { allow_negative_income: true }).unwrap();
        assert_eq!(allowed.records[0].annual_income, -5.0);
    }

    #[test]
    fn income_format_is_plain_decimal() {
        for good in ["0", "12", "12.5", "0.25", ".5", "-0"] {
            assert!(parse_income(good).is_some(), "{good}");
        }
        for bad in ["", "abc", "1e5", "inf", "NaN", "1.", "1.2.3", "--1", "1,000"] {
            assert!(parse_income(bad).is_none(), "{bad}");
        }
        assert_eq!(parse_income("-0"), Some(0.0));
    }

    #[test]
    fn other_rejection_reasons() {
        let text = "household_id,province,occupation,annual_income\n\
                    h1,,Student,10\n\
                    h2,A,Student\n\
                    ,A,Student,10\n";
        let out = parse(text);
        assert_eq!(out.report.rejected, 3);
        assert_eq!(out.report.rejection_reasons.get(REASON_MISSING_PROVINCE), Some(&1));
        assert_eq!(out.report.rejection_reasons.get(REASON_MALFORMED_ROW), Some(&2));
    }

    #[test]
    fn invalid_utf8_row_is_counted_not_fatal() {
        let mut bytes = b"household_id,province,occupation,annual_income\nh1,A,Student,10\n".to_vec();
        bytes.extend_from_slice(b"h2,\xff\xfe,Student,10\nh3,A,Student,20\n");
        let out = parse_household_csv(bytes.as_slice(), None, IngestOptions::default()).unwrap();
        assert_eq!(out.report.total_rows, 3);
        assert_eq!(out.report.accepted, 2);
        assert_eq!(out.report.rejection_reasons.get(REASON_MALFORMED_ROW), Some(&1));
    }

    #[test]
    fn wrong_or_missing_header_is_fatal() {
        let err = parse_household_csv("id,province,occupation,income\n".as_bytes(), None, IngestOptions::default());
        assert!(matches!(err, Err(Error::Format(_))));
        let err = parse_household_csv("".as_bytes(), None, IngestOptions::default());
        assert!(matches!(err, Err(Error::Format(_))));
    }

    #[test]
    fn alias_file_parsing() {
        let text = "raw_label,code\nrice farmer,AG-Farmer\nteacher , EM-Officer\n";
        let map = AliasMap::from_csv(text.as_bytes()).unwrap();
        assert_eq!(map.len(), 2);
        assert_eq!(map.get("Teacher"), Some(OccupationCategory::EmOfficer));
        assert!(AliasMap::from_csv("x,NotACode\n".as_bytes()).is_err());

        let csv = "household_id,province,occupation,annual_income\nh1,A,teacher,100\n";
        let out = parse_household_csv(csv.as_bytes(), Some(&map), IngestOptions::default()).unwrap();
        assert_eq!(out.records[0].occupation, OccupationCategory::EmOfficer);
    }

    fn rec(region: &str, occ: OccupationCategory, income: f64) -> HouseholdRecord {
        HouseholdRecord { household_id: "h".into(), region_id: region.into(), occupation: occ, annual_income: income }
    }

    #[test]
    fn grouping_examples() {
        use OccupationCategory::*;
        let records = vec![
            rec("A", Student, 1.0),
            rec("B", Merchant, 2.0),
            rec("A", Student, 3.0),
            rec("A", Merchant, 4.0),
            rec("B", Merchant, 5.0),
        ];
        let groups = group_by_region(&records);
        assert_eq!(groups.len(), 2);
        assert_eq!(groups[0].region_id(), "A");
        assert_eq!(groups[0].head_count(), 3);
        assert_eq!(groups[1].head_count(), 2);
        assert_eq!(groups[0].incomes(Student), Some(&[1.0, 3.0][..]));

        let same = vec![rec("Z", Others, 1.0), rec("Z", Others, 2.0), rec("Z", Others, 3.0)];
        let g = group_by_region(&same);
        assert_eq!(g.len(), 1);
        assert_eq!(g[0].samples().len(), 1);
        assert_eq!(g[0].incomes(Others).unwrap().len(), 3);

        assert!(group_by_region(&[]).is_empty());
    }

    #[test]
    fn region_sample_drops_empty_sequences() {
        let mut m = BTreeMap::new();
        m.insert(OccupationCategory::Student, vec![]);
        m.insert(OccupationCategory::Merchant, vec![1.0, 2.0]);
        let r = RegionSample::new("A", m).unwrap();
        assert_eq!(r.samples().len(), 1);
        assert_eq!(r.head_count(), 2);
        assert!(RegionSample::new(" ", BTreeMap::new()).is_err());
    }

    fn arb_record() -> impl Strategy<Value = HouseholdRecord> {
        (
            "[a-z0-9]{1,8}",
            prop::sample::select(vec!["Songkhla", "Amnat Charoen", "Chon Buri", "Ranong"]),
            prop::sample::select(OccupationCategory::ALL.to_vec()),
            prop_oneof![(0u32..10_000_000).prop_map(f64::from), (0.0f64..1.0e7)],
        )
            .prop_map(|(id, region, occupation, annual_income)| HouseholdRecord {
                household_id: id,
                region_id: region.to_string(),
                occupation,
                annual_income,
            })
    }

    proptest! {
        #[test]
        fn csv_round_trip(records in prop::collection::vec(arb_record(), 0..40)) {
            let mut buf = Vec::new();
            write_household_csv(&mut buf, &records).unwrap();
            let back = parse_household_csv(buf.as_slice(), None, IngestOptions::default()).unwrap();
            prop_assert_eq!(back.report.rejected, 0);
            prop_assert_eq!(back.records, records);
        }

        #[test]
        fn grouping_partitions_records(records in prop::collection::vec(arb_record(), 0..60)) {
            let groups = group_by_region(&records);
            let total: usize = groups.iter().map(RegionSample::head_count).sum();
            prop_assert_eq!(total, records.len());
            for g in &groups {
                let seq_total: usize = g.samples().values().map(Vec::len).sum();
                prop_assert_eq!(seq_total, g.head_count());
                for (occ, incomes) in g.samples() {
                    let expected: Vec<f64> = records
                        .iter()
                        .filter(|r| r.region_id == g.region_id() && r.occupation == *occ)
                        .map(|r| r.annual_income)
                        .collect();
                    prop_assert_eq!(incomes, &expected);
                }
            }
        }
    }
}
