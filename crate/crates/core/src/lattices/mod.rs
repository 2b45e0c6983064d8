//! Lattice families and their closed-form matching counts.
//!
//! | family | graph | `log₂ M` |
//! |---|---|---|
//! | `HexT` | `H^T(n, m)`, counted through `L(H^T)` | `(m+1)(n+1) + 1` if `(m+1)(n+1)` is even, else `M = 0` |
//! | `R_T` | `L(S(H^T(n, m)))` | `mn + m + n + 2` |
//! | `R_C` | `L(H₁⋆)` | `mn + m + 1` |
//! | `R_F` | `L(H₂⋆)` | `mn` |
//! | `K_T` | `L(H^T(n−1, 2m−1))` | `2mn + 1` |
//! | `K_C` | `L(H₁(n−1, 2m−1))`, `f*` removed | `2mn − n + 1` |
//! | `K_F` | `L(H₂(n−1, 2m−1))`, `f*`, `g*` removed | `2mn − 2m − n + 1` |
//! | `SG2` | `L(Gₙ)` | `(3ⁿ − 1)/2` for odd `n`, else `M = 0` |
//! | `Gn` | `Gₙ`, counted through `L(Gₙ)` | as `SG2` |
//!
//! See [`hex`] for the coordinates and cut sets.

pub mod hex;
pub mod sierpinski;

use std::f64::consts::LN_2;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::counters::{ln_big, CountResult};
use crate::graph::MultiGraph;
use crate::linegraph::line_graph;

/// Stages above this overflow the exponent arithmetic.
pub const MAX_STAGE: usize = 30;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    HexT,
    #[serde(rename = "R_T")]
    RT,
    #[serde(rename = "R_C")]
    RC,
    #[serde(rename = "R_F")]
    RF,
    #[serde(rename = "K_T")]
    KT,
    #[serde(rename = "K_C")]
    KC,
    #[serde(rename = "K_F")]
    KF,
    SG2,
    Gn,
}

impl Family {
    pub const ALL: [Family; 9] = [
        Family::HexT,
        Family::RT,
        Family::RC,
        Family::RF,
        Family::KT,
        Family::KC,
        Family::KF,
        Family::SG2,
        Family::Gn,
    ];

    /// Command-line spelling.
    pub fn slug(self) -> &'static str {
        match self {
            Family::HexT => "hex-t",
            Family::RT => "r-t",
            Family::RC => "r-c",
            Family::RF => "r-f",
            Family::KT => "k-t",
            Family::KC => "k-c",
            Family::KF => "k-f",
            Family::SG2 => "sg2",
            Family::Gn => "gn",
        }
    }

    pub fn is_staged(self) -> bool {
        matches!(self, Family::SG2 | Family::Gn)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.slug())
    }
}

impl FromStr for Family {
    type Err = LatticeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let key: String = s
            .chars()
            .filter(|c| c.is_ascii_alphanumeric())
            .collect::<String>()
            .to_ascii_lowercase();
        Family::ALL
            .into_iter()
            .find(|f| f.slug().replace('-', "") == key)
            .ok_or_else(|| LatticeError::UnknownFamily(s.to_string()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Boundary {
    Torus,
    Cylinder,
    Free,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("unknown lattice family `{0}`")]
    UnknownFamily(String),
    #[error("{family} needs {name} ≥ 1")]
    ZeroParameter { family: Family, name: &'static str },
    #[error("stage {stage} exceeds the supported maximum {MAX_STAGE}")]
    StageTooLarge { stage: usize },
    #[error("entropy of a graph with no perfect matching")]
    ZeroCount,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeSpec {
    pub family: Family,
    /// Unused for staged families.
    pub n: usize,
    pub m: usize,
    /// Sierpinski families only.
    pub stage: usize,
}

impl LatticeSpec {
    pub fn grid(family: Family, n: usize, m: usize) -> Self {
        LatticeSpec {
            family,
            n,
            m,
            stage: 0,
        }
    }

    pub fn staged(family: Family, stage: usize) -> Self {
        LatticeSpec {
            family,
            n: 0,
            m: 0,
            stage,
        }
    }

    pub fn validate(&self) -> Result<(), LatticeError> {
        if self.family.is_staged() {
            if self.stage > MAX_STAGE {
                return Err(LatticeError::StageTooLarge { stage: self.stage });
            }
            return Ok(());
        }
        for (value, name) in [(self.n, "n"), (self.m, "m")] {
            if value == 0 {
                return Err(LatticeError::ZeroParameter {
                    family: self.family,
                    name,
                });
            }
        }
        Ok(())
    }

    /// `rt(2,3)` or `sg2(3)`.
    pub fn label(&self) -> String {
        if self.family.is_staged() {
            format!("{}({})", self.family, self.stage)
        } else {
            format!("{}({},{})", self.family, self.n, self.m)
        }
    }
}

#[derive(Clone, Debug)]
pub struct Generated {
    pub spec: LatticeSpec,
    pub graph: MultiGraph,
    /// The graph whose perfect matchings the prediction counts: `graph`
    /// itself, or its line graph for `HexT` and `Gn`.
    pub target: MultiGraph,
    /// Built from a torus with parallel edges.
    pub degenerate: bool,
}

pub fn generate(spec: &LatticeSpec) -> Result<Generated, LatticeError> {
    spec.validate()?;
    let (n, m) = (spec.n, spec.m);
    let mut degenerate = false;
    let graph = match spec.family {
        Family::HexT => hex::hex_torus(n, m).graph,
        Family::RT => hex::r_torus(n, m),
        Family::RC => hex::r_cylinder(n, m),
        Family::RF => hex::r_free(n, m),
        Family::KT | Family::KC | Family::KF => {
            let bc = match spec.family {
                Family::KT => Boundary::Torus,
                Family::KC => Boundary::Cylinder,
                _ => Boundary::Free,
            };
            let pre = hex::kagome_preimage(bc, n, m);
            degenerate = pre.degenerate;
            let g = line_graph(&pre.graph).graph;
            assert_eq!(
                g.num_vertices(),
                6 * m * n,
                "Kagomé lattices have 6mn vertices"
            );
            g
        }
        Family::SG2 => sierpinski::gasket(spec.stage),
        Family::Gn => sierpinski::companion(spec.stage).graph,
    };
    let target = match spec.family {
        Family::HexT | Family::Gn => line_graph(&graph).graph,
        _ => graph.clone(),
    };
    Ok(Generated {
        spec: *spec,
        graph,
        target,
        degenerate,
    })
}

/// Denominator of a finite-size entropy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Normalizer {
    /// `2 ln M / |V|`.
    Vertices,
    /// `ln M / (3(m+1)(n+1))`.
    PerDimer { n: usize, m: usize },
}

impl Normalizer {
    pub fn describe(&self) -> String {
        match self {
            Normalizer::Vertices => "2 ln M / |V|".to_string(),
            Normalizer::PerDimer { n, m } => {
                format!("ln M / (3(m+1)(n+1)) = ln M / {}", 3 * (m + 1) * (n + 1))
            }
        }
    }

    /// Entropy of a graph with `vertices` vertices and `ln M = log_count`.
    pub fn apply(&self, log_count: f64, vertices: usize) -> f64 {
        match *self {
            Normalizer::Vertices => 2.0 * log_count / vertices as f64,
            Normalizer::PerDimer { n, m } => log_count / (3 * (m + 1) * (n + 1)) as f64,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FamilyPrediction {
    /// `None` means the predicted count is 0.
    pub pow2_exponent: Option<u64>,
    pub entropy_limit: f64,
    pub normalizer: Normalizer,
    /// Vertices of the counted graph.
    pub target_vertices: u64,
}

impl FamilyPrediction {
    /// `exponent · ln 2` pushed through the normalizer.
    pub fn closed_form_entropy(&self) -> Option<f64> {
        self.pow2_exponent.map(|k| {
            self.normalizer
                .apply(k as f64 * LN_2, self.target_vertices as usize)
        })
    }
}

pub fn predict(spec: &LatticeSpec) -> Result<FamilyPrediction, LatticeError> {
    spec.validate()?;
    let (n, m) = (spec.n as u64, spec.m as u64);
    let cells = (m + 1) * (n + 1);
    let per_dimer = Normalizer::PerDimer {
        n: spec.n,
        m: spec.m,
    };
    let third = LN_2 / 3.0;
    let (exponent, limit, normalizer, vertices) = match spec.family {
        Family::HexT => (
            (cells % 2 == 0).then_some(cells + 1),
            2.0 * third,
            Normalizer::Vertices,
            3 * cells,
        ),
        Family::RT => (Some(m * n + m + n + 2), third, per_dimer, 6 * cells),
        Family::RC => (Some(m * n + m + 1), third, per_dimer, 6 * cells),
        Family::RF => (Some(m * n), third, per_dimer, 6 * cells),
        Family::KT => (
            Some(2 * m * n + 1),
            2.0 * third,
            Normalizer::Vertices,
            6 * m * n,
        ),
        Family::KC => (
            Some(2 * m * n - n + 1),
            2.0 * third,
            Normalizer::Vertices,
            6 * m * n,
        ),
        Family::KF => (
            Some((2 * m - 1) * (n - 1)),
            2.0 * third,
            Normalizer::Vertices,
            6 * m * n,
        ),
        Family::SG2 | Family::Gn => {
            let p = 3u64.pow(spec.stage as u32);
            (
                (spec.stage % 2 == 1).then_some((p - 1) / 2),
                2.0 * third,
                Normalizer::Vertices,
                3 * (p + 1) / 2,
            )
        }
    };
    Ok(FamilyPrediction {
        pow2_exponent: exponent,
        entropy_limit: limit,
        normalizer,
        target_vertices: vertices,
    })
}

/// Prediction for the clique-inserted graph `L(S(G))` of a connected cubic
/// graph on `nu` vertices: `2^(ν/2+1)` on `3ν` vertices.
pub fn predict_clique_inserted(nu: usize) -> FamilyPrediction {
    FamilyPrediction {
        pow2_exponent: Some((nu / 2 + 1) as u64),
        entropy_limit: LN_2 / 3.0,
        normalizer: Normalizer::Vertices,
        target_vertices: 3 * nu as u64,
    }
}

/// Prediction for `L(G)` of a connected cubic graph on `nu` vertices with an
/// even number of edges: `2^(ν/2+1)` on `3ν/2` vertices.
pub fn predict_cubic_line_graph(nu: usize) -> FamilyPrediction {
    FamilyPrediction {
        pow2_exponent: Some((nu / 2 + 1) as u64),
        entropy_limit: 2.0 * LN_2 / 3.0,
        normalizer: Normalizer::Vertices,
        target_vertices: 3 * nu as u64 / 2,
    }
}

pub fn finite_entropy(
    g: &MultiGraph,
    count: &CountResult,
    normalizer: Normalizer,
) -> Result<f64, LatticeError> {
    if count.is_zero() {
        return Err(LatticeError::ZeroCount);
    }
    Ok(normalizer.apply(ln_big(&count.value), g.num_vertices()))
}
