//! Cohort-level support networks.
//!
//! Each region contributes one transaction: the set of its domination pairs.
//! The support of a pair is the fraction of transactions containing it, and a
//! cohort's support network keeps the pairs whose support is strictly above
//! a threshold (0.5 by default).

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::classify::AgClass;
use crate::dominance::DominationNetwork;
use crate::ingest::OccupationCategory;
use crate::{Error, Result};

pub const DEFAULT_SUPPORT_THRESHOLD: f64 = 0.5;

/// `(dominant, dominated)`.
pub type OccupationPair = (OccupationCategory, OccupationCategory);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Cohort {
    All,
    #[serde(rename = "AG")]
    Ag,
    #[serde(rename = "mixAG")]
    MixAg,
    #[serde(rename = "nonAG")]
    NonAg,
}

impl Cohort {
    pub const ALL: [Cohort; 4] = [Cohort::All, Cohort::Ag, Cohort::MixAg, Cohort::NonAg];

    pub fn label(self) -> &'static str {
        match self {
            Cohort::All => "All",
            Cohort::Ag => "AG",
            Cohort::MixAg => "mixAG",
            Cohort::NonAg => "nonAG",
        }
    }

    pub fn contains(self, class: AgClass) -> bool {
        self == Cohort::All || self == Cohort::from(class)
    }
}

impl From<AgClass> for Cohort {
    fn from(class: AgClass) -> Self {
        match class {
            AgClass::Ag => Cohort::Ag,
            AgClass::MixAg => Cohort::MixAg,
            AgClass::NonAg => Cohort::NonAg,
        }
    }
}

impl fmt::Display for Cohort {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.label())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Transaction {
    region_id: String,
    edges: BTreeSet<OccupationPair>,
}

impl Transaction {
    /// Fails if the edge set holds a pair in both directions or a self-loop.
    pub fn new(region_id: impl Into<String>, edges: impl IntoIterator<Item = OccupationPair>) -> Result<Self> {
        let edges: BTreeSet<OccupationPair> = edges.into_iter().collect();
        for &(x, y) in &edges {
            if x == y || edges.contains(&(y, x)) {
                return Err(Error::NotAntisymmetric(x.to_string(), y.to_string()));
            }
        }
        Ok(Self { region_id: region_id.into(), edges })
    }

    pub fn region_id(&self) -> &str {
        &self.region_id
    }

    pub fn edges(&self) -> &BTreeSet<OccupationPair> {
        &self.edges
    }

    pub fn contains(&self, pair: OccupationPair) -> bool {
        self.edges.contains(&pair)
    }
}

/// Projects a domination network onto its `(dominant, dominated)` pairs.
pub fn to_transaction(network: &DominationNetwork) -> Transaction {
    Transaction {
        region_id: network.region_id.clone(),
        edges: network.edges.iter().map(|e| (e.dominant, e.dominated)).collect(),
    }
}

/// A support value kept as the exact ratio `count / total`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Support {
    pub count: usize,
    pub total: usize,
}

impl Support {
    pub fn value(self) -> f64 {
        self.count as f64 / self.total as f64
    }

    pub fn exceeds(self, threshold: f64) -> bool {
        self.value() > threshold
    }
}

/// Fraction of `transactions` containing `pair`.
pub fn support(pair: OccupationPair, transactions: &[Transaction]) -> Result<Support> {
    if transactions.is_empty() {
        return Err(Error::EmptyInput("support requires at least one transaction"));
    }
    let count = transactions.iter().filter(|t| t.contains(pair)).count();
    Ok(Support { count, total: transactions.len() })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SupportEdge {
    pub dominant: OccupationCategory,
    pub dominated: OccupationCategory,
    /// Number of transactions containing the pair.
    pub count: usize,
    pub support: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SupportNetwork {
    pub cohort: Cohort,
    pub threshold: f64,
    pub transaction_count: usize,
    /// Sorted by `(dominant, dominated)`.
    pub edges: Vec<SupportEdge>,
}

impl SupportNetwork {
    pub fn has_edge(&self, dominant: OccupationCategory, dominated: OccupationCategory) -> bool {
        self.edges.iter().any(|e| e.dominant == dominant && e.dominated == dominated)
    }
}

/// Counts how many transactions contain each pair.
pub fn pair_counts(transactions: &[Transaction]) -> BTreeMap<OccupationPair, usize> {
    let mut counts = BTreeMap::new();
    for t in transactions {
        for pair in &t.edges {
            *counts.entry(*pair).or_default() += 1;
        }
    }
    counts
}

/// Keeps every pair whose support is strictly greater than `threshold`.
///
/// The caller chooses which regions belong to `cohort`; this function
/// does not filter.
pub fn build_support_network(transactions: &[Transaction], cohort: Cohort, threshold: f64) -> Result<SupportNetwork> {
    if transactions.is_empty() {
        return Err(Error::EmptyInput("support network requires at least one transaction"));
    }
    if !(0.0..=1.0).contains(&threshold) {
        return Err(Error::InvalidParameter(format!("support threshold must lie in [0, 1], got {threshold}")));
    }
    let total = transactions.len();
    let edges = pair_counts(transactions)
        .into_iter()
        .map(|(pair, count)| (pair, Support { count, total }))
        .filter(|(_, s)| s.exceeds(threshold))
        .map(|((dominant, dominated), s)| SupportEdge { dominant, dominated, count: s.count, support: s.value() })
        .collect();
    Ok(SupportNetwork { cohort, threshold, transaction_count: total, edges })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use OccupationCategory::*;

    fn t(id: &str, edges: &[OccupationPair]) -> Transaction {
        Transaction::new(id, edges.iter().copied()).unwrap()
    }

    #[test]
    fn antisymmetry_enforced() {
        assert!(Transaction::new("r", [(Student, Merchant), (Merchant, Student)]).is_err());
        assert!(Transaction::new("r", [(Student, Student)]).is_err());
    }

    #[test]
    fn support_ratios() {
        let pair = (EmOfficer, Student);
        let ts = vec![t("a", &[pair]), t("b", &[pair]), t("c", &[])];
        assert_eq!(support(pair, &ts).unwrap(), Support { count: 2, total: 3 });
        assert!((support(pair, &ts).unwrap().value() - 0.6667).abs() < 1e-4);
        assert_eq!(support(pair, &ts[..2]).unwrap().value(), 1.0);
        assert_eq!(support((Student, EmOfficer), &ts).unwrap().value(), 0.0);
        assert!(support(pair, &[]).is_err());
    }

    #[test]
    fn threshold_is_strict() {
        let half = (Merchant, Student);
        let three_quarters = (EmOfficer, Student);
        let ts = vec![
            t("a", &[half, three_quarters]),
            t("b", &[half, three_quarters]),
            t("c", &[three_quarters]),
            t("d", &[]),
        ];
        let net = build_support_network(&ts, Cohort::All, 0.5).unwrap();
        assert!(!net.has_edge(Merchant, Student));
        assert!(net.has_edge(EmOfficer, Student));
        assert_eq!(net.edges[0].support, 0.75);
        assert_eq!(net.transaction_count, 4);

        let strict = build_support_network(&ts, Cohort::All, 1.0).unwrap();
        assert!(strict.edges.is_empty());
        let everywhere = vec![t("a", &[half]), t("b", &[half])];
        // Support 1.0 is not greater than 1.0 either.
        assert!(build_support_network(&everywhere, Cohort::All, 1.0).unwrap().edges.is_empty());
        assert_eq!(build_support_network(&everywhere, Cohort::All, 0.99).unwrap().edges.len(), 1);
        assert!(build_support_network(&[], Cohort::All, 0.5).is_err());
    }

    #[test]
    fn cohort_labels() {
        assert_eq!(serde_json::to_string(&Cohort::MixAg).unwrap(), "\"mixAG\"");
        assert!(Cohort::All.contains(AgClass::Ag));
        assert!(Cohort::NonAg.contains(AgClass::NonAg));
        assert!(!Cohort::NonAg.contains(AgClass::Ag));
    }

    fn arb_transactions() -> impl Strategy<Value = Vec<Transaction>> {
        let pair = (0usize..14, 0usize..14).prop_filter("no self loops", |(a, b)| a != b);
        prop::collection::vec(prop::collection::vec(pair, 0..20), 1..12).prop_map(|sets| {
            sets.into_iter()
                .enumerate()
                .map(|(i, pairs)| {
                    let mut edges = BTreeSet::new();
                    for (a, b) in pairs {
                        let (x, y) = (OccupationCategory::ALL[a], OccupationCategory::ALL[b]);
                        if !edges.contains(&(y, x)) {
                            edges.insert((x, y));
                        }
                    }
                    Transaction::new(format!("r{i}"), edges).unwrap()
                })
                .collect()
        })
    }

    proptest! {
        #[test]
        fn raising_threshold_never_adds_edges(ts in arb_transactions(), lo in 0.0f64..1.0, hi in 0.0f64..1.0) {
            let (lo, hi) = if lo <= hi { (lo, hi) } else { (hi, lo) };
            let a = build_support_network(&ts, Cohort::All, lo).unwrap();
            let b = build_support_network(&ts, Cohort::All, hi).unwrap();
            for e in &b.edges {
                prop_assert!(a.has_edge(e.dominant, e.dominated));
            }
            for e in &b.edges {
                prop_assert!(e.count as f64 > hi * ts.len() as f64 - 1e-9);
                prop_assert!((e.support * ts.len() as f64 - e.count as f64).abs() < 1e-9);
            }
        }
    }
}
