//! Serializable reduction traces.
//!
//! A trace is a tree of steps stored as a flat preorder list. Every step names
//! the rule it applied, the digest of the graph it started from, the
//! successor graphs it produced (with their digests and the index of the step
//! that reduces each of them), and the exact multiplier it contributes. The
//! count represented by a step is its multiplier times the counts of its
//! successors, so the count of the whole trace is the product of all
//! multipliers.
//!
//! # Digest
//!
//! `digest(G)` is the lowercase hex SHA-256 of the ASCII string
//! `"v<N>;"` followed by `"<a>-<b>;"` for every edge, where `a < b` are the
//! endpoints and the pairs are sorted lexicographically (parallel edges repeat).
//! It depends only on the vertex count and the endpoint multiset, not on the
//! order of the edge list.

use std::fmt;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::counters::{decimal, Algorithm, CountResult};
use crate::graph::MultiGraph;

pub fn digest(g: &MultiGraph) -> String {
    let mut h = Sha256::new();
    h.update(format!("v{};", g.num_vertices()).as_bytes());
    for (a, b) in g.canonical_edges() {
        h.update(format!("{a}-{b};").as_bytes());
    }
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

/// The rewrite a step applied. Serialized names are the stable tags of the
/// trace format.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Rule {
    /// No degree-3 vertex: an even cycle, count 2.
    BaseCycle,
    /// Even run of degree-2 vertices shortened by two.
    Parity22,
    /// Odd run of degree-2 vertices shortened by two.
    Parity23,
    /// Adjacent degree-3 pair joined by a double edge.
    #[serde(rename = "Case1_1")]
    AdjacentDoubleEdge,
    /// Single edge between the pair is a bridge; the odd side is closed by a
    /// pendant reduction.
    #[serde(rename = "Case1_2_1a")]
    AdjacentBridge,
    /// As [`Rule::AdjacentBridge`], but the pendant reduction needs the
    /// double-subdivision fix first.
    #[serde(rename = "Case1_2_1b")]
    AdjacentBridgeParallel,
    /// Single non-bridge edge between the pair.
    #[serde(rename = "Case1_2_2")]
    AdjacentNonBridge,
    /// Degree-3 pair joined by a double edge and a path through one degree-2
    /// vertex; this is the whole graph and its count is 4.
    #[serde(rename = "Case2_theta")]
    SubdividedTheta,
    /// Pair joined by one degree-2 vertex and also by a direct edge.
    #[serde(rename = "Case2_1")]
    PathWithChord,
    /// Pair joined only by one degree-2 vertex, not a bridge path.
    #[serde(rename = "Case2_2_analog")]
    PathNonBridge,
    /// Pair joined only by one degree-2 vertex that disconnects the graph; the
    /// two sides are counted independently.
    ComponentProduct,
    /// Pendant reduction during preprocessing.
    Claim1,
}

impl Rule {
    pub fn tag(self) -> &'static str {
        match self {
            Rule::BaseCycle => "BaseCycle",
            Rule::Parity22 => "Parity22",
            Rule::Parity23 => "Parity23",
            Rule::AdjacentDoubleEdge => "Case1_1",
            Rule::AdjacentBridge => "Case1_2_1a",
            Rule::AdjacentBridgeParallel => "Case1_2_1b",
            Rule::AdjacentNonBridge => "Case1_2_2",
            Rule::SubdividedTheta => "Case2_theta",
            Rule::PathWithChord => "Case2_1",
            Rule::PathNonBridge => "Case2_2_analog",
            Rule::ComponentProduct => "ComponentProduct",
            Rule::Claim1 => "Claim1",
        }
    }

    /// Expected (successor count, multiplier) for rules where both are fixed.
    pub fn shape(self) -> (usize, u32) {
        match self {
            Rule::BaseCycle => (0, 2),
            Rule::SubdividedTheta => (0, 4),
            Rule::Parity22 | Rule::Parity23 | Rule::Claim1 => (1, 1),
            Rule::AdjacentDoubleEdge
            | Rule::AdjacentNonBridge
            | Rule::PathWithChord
            | Rule::PathNonBridge => (1, 2),
            Rule::AdjacentBridge | Rule::AdjacentBridgeParallel | Rule::ComponentProduct => (2, 1),
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Successor {
    pub digest: String,
    pub graph: MultiGraph,
    /// Index of the step that reduces this graph.
    pub step: usize,
}

/// Outcome of counting both sides of a step.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepCheck {
    /// `M(L(before))`.
    #[serde(with = "decimal")]
    pub before: BigUint,
    /// `multiplier × Π M(L(successor))`.
    #[serde(with = "decimal")]
    pub after: BigUint,
    pub algorithm: Algorithm,
    /// For two-way splits that keep only one branch: whether the discarded
    /// branch counts the same as the kept one.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub twin_agrees: Option<bool>,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionStep {
    pub rule: Rule,
    pub before_digest: String,
    pub before_vertices: usize,
    pub before_edges: usize,
    /// Degree-3 vertices of the graph this step starts from.
    pub cubic_count: usize,
    #[serde(with = "decimal")]
    pub multiplier: BigUint,
    pub after: Vec<Successor>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub check: Option<StepCheck>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionTrace {
    /// The graph as given, before any pendant preprocessing.
    pub input: MultiGraph,
    pub input_digest: String,
    /// The instance the main reduction starts from (equal to `input` unless
    /// pendant preprocessing ran).
    pub root: MultiGraph,
    pub root_digest: String,
    /// Degree-3 vertices of `root`.
    pub cubic_count: usize,
    /// Step 0 reduces `input`; preprocessing steps come first as a chain.
    pub steps: Vec<ReductionStep>,
    pub claimed_count: CountResult,
}

impl ReductionTrace {
    /// `k` in `M(L(G)) = 2^k`.
    pub fn exponent(&self) -> u64 {
        self.claimed_count
            .pow2_exponent
            .expect("claimed counts are powers of two")
    }

    pub fn summary_line(&self) -> String {
        format!(
            "M(L(G)) = 2^{}, k = n/2+1, n = {}",
            self.exponent(),
            self.cubic_count
        )
    }

    pub fn checked_steps(&self) -> usize {
        self.steps.iter().filter(|s| s.check.is_some()).count()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("trace serialization cannot fail")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}
