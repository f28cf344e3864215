use std::collections::BTreeMap;
use std::path::Path;

use serde::Serialize;

use crate::absorbing::AbsorptionCertificate;
use crate::almost::ExtremalCertificate;
use crate::error::Result;
use crate::extremal::ExtremalRun;
use crate::hypergraph::{Hypergraph, Matching};

/// Which route produced the reported matching.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Branch {
    Nonextremal,
    Extremal,
    ExactFallback,
    Greedy,
    Exact,
    Failed,
}

impl Branch {
    pub fn as_str(&self) -> &'static str {
        match self {
            Branch::Nonextremal => "nonextremal",
            Branch::Extremal => "extremal",
            Branch::ExactFallback => "exact-fallback",
            Branch::Greedy => "greedy",
            Branch::Exact => "exact",
            Branch::Failed => "failed",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct InstanceInfo {
    pub label: String,
    pub k: usize,
    pub n: usize,
    pub edges: usize,
    pub min_codegree: usize,
}

impl InstanceInfo {
    pub fn of(h: &Hypergraph, label: impl Into<String>) -> Self {
        InstanceInfo { label: label.into(), k: h.k(), n: h.n(), edges: h.edge_count(), min_codegree: h.min_codegree() }
    }
}

/// Bookkeeping of the dummy-vertex reduction.
#[derive(Clone, Debug, Serialize)]
pub struct ReductionInfo {
    /// `⌊n/k⌋ - δ`
    pub c: usize,
    /// `n mod k`
    pub r: usize,
    /// `"direct"`, `"greedy"`, `"r+c<k"` or `"r+c>=k"`.
    pub case: String,
    pub dummies: usize,
    pub reduced_n: usize,
    pub reduced_min_codegree: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub instance: InstanceInfo,
    pub method: String,
    pub branch: Branch,
    pub success: bool,
    pub target: usize,
    pub matching_size: usize,
    pub uncovered: usize,
    pub matching: Vec<Vec<usize>>,
    pub absorption_certificates: Vec<AbsorptionCertificate>,
    pub extremal_certificate: Option<ExtremalCertificate>,
    pub extremal: Option<ExtremalRun>,
    pub reduction: Option<ReductionInfo>,
    pub counters: BTreeMap<String, u64>,
    pub warnings: Vec<String>,
    pub seed: u64,
    pub wall_ms: f64,
}

impl RunReport {
    pub fn new(h: &Hypergraph, method: &str, target: usize, seed: u64) -> Self {
        RunReport {
            instance: InstanceInfo::of(h, ""),
            method: method.into(),
            branch: Branch::Failed,
            success: false,
            target,
            matching_size: 0,
            uncovered: h.n(),
            matching: Vec::new(),
            absorption_certificates: Vec::new(),
            extremal_certificate: None,
            extremal: None,
            reduction: None,
            counters: BTreeMap::new(),
            warnings: Vec::new(),
            seed,
            wall_ms: 0.0,
        }
    }

    pub fn set_matching(&mut self, h: &Hypergraph, m: &Matching) {
        self.matching = m.vertex_lists(h);
        self.matching_size = m.len();
        self.uncovered = h.n() - m.covered().len();
    }

    pub fn bump(&mut self, counter: &str, by: u64) {
        *self.counters.entry(counter.to_string()).or_default() += by;
    }

    pub fn counter(&self, counter: &str) -> u64 {
        self.counters.get(counter).copied().unwrap_or(0)
    }

    /// Rebuilds the reported matching against `h`.
    pub fn reload_matching(&self, h: &Hypergraph) -> Result<Matching> {
        Matching::from_vertex_lists(h, &self.matching)
    }

    /// True if the reported matching is a valid matching of `h` with the reported size.
    pub fn verify(&self, h: &Hypergraph) -> bool {
        self.reload_matching(h).is_ok_and(|m| h.is_valid_matching(&m) && m.len() == self.matching_size)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }

    pub fn write_json(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_json())?;
        Ok(())
    }
}
