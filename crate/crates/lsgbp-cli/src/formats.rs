//! On-disk formats: JSON instance files tagged by problem name, and JSON
//! solution files. Graphs are embedded as a vertex count plus a 0-indexed
//! edge list; objective values travel as decimal strings (or the reserved
//! token `"worst"`) so arbitrary-precision results survive serialization.

use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};

use lsgbp::adapters::{
    ClusterEditing, MaxCCut, MultiKnapsack, NashWelfare, PiDeletion, PiPredicate, Problem,
    VectorBinPacking,
};
use lsgbp::Graph;

/// A problem instance as written in a file. The `problem` field selects
/// the payload; payload fields mirror the adapter constructors.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(tag = "problem", deny_unknown_fields)]
pub enum InstanceFile {
    #[serde(rename = "max-c-cut")]
    MaxCCut {
        n: usize,
        edges: Vec<(usize, usize)>,
        c: usize,
    },
    #[serde(rename = "cluster-editing")]
    ClusterEditing { n: usize, edges: Vec<(usize, usize)> },
    #[serde(rename = "vbp")]
    Vbp {
        vectors: Vec<Vec<i64>>,
        bin_weights: Vec<Vec<i64>>,
    },
    #[serde(rename = "multi-knapsack")]
    MultiKnapsack {
        capacities: Vec<i64>,
        values: Vec<Vec<i64>>,
        weights: Vec<Vec<i64>>,
    },
    #[serde(rename = "nash")]
    Nash { utilities: Vec<Vec<i64>> },
    #[serde(rename = "pi-deletion")]
    PiDeletion {
        n: usize,
        edges: Vec<(usize, usize)>,
        c: usize,
        pi: PiTag,
    },
}

/// File spelling of the deletion property.
#[derive(Copy, Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PiTag {
    Edgeless,
    Clique,
}

impl From<PiTag> for PiPredicate {
    fn from(tag: PiTag) -> Self {
        match tag {
            PiTag::Edgeless => PiPredicate::Edgeless,
            PiTag::Clique => PiPredicate::Clique,
        }
    }
}

impl InstanceFile {
    /// The tag this file carries, identical to `Problem::tag`.
    pub fn tag(&self) -> &'static str {
        match self {
            InstanceFile::MaxCCut { .. } => "max-c-cut",
            InstanceFile::ClusterEditing { .. } => "cluster-editing",
            InstanceFile::Vbp { .. } => "vbp",
            InstanceFile::MultiKnapsack { .. } => "multi-knapsack",
            InstanceFile::Nash { .. } => "nash",
            InstanceFile::PiDeletion { .. } => "pi-deletion",
        }
    }

    /// Validates the payload and builds the problem object.
    pub fn into_problem(self) -> Result<Problem> {
        Ok(match self {
            InstanceFile::MaxCCut { n, edges, c } => {
                Problem::MaxCCut(MaxCCut::new(Graph::new(n, edges)?, c)?)
            }
            InstanceFile::ClusterEditing { n, edges } => {
                Problem::ClusterEditing(ClusterEditing::new(Graph::new(n, edges)?))
            }
            InstanceFile::Vbp {
                vectors,
                bin_weights,
            } => Problem::VectorBinPacking(VectorBinPacking::new(vectors, bin_weights)?),
            InstanceFile::MultiKnapsack {
                capacities,
                values,
                weights,
            } => Problem::MultiKnapsack(MultiKnapsack::new(capacities, values, weights)?),
            InstanceFile::Nash { utilities } => Problem::NashWelfare(NashWelfare::new(utilities)?),
            InstanceFile::PiDeletion { n, edges, c, pi } => {
                Problem::PiDeletion(PiDeletion::new(Graph::new(n, edges)?, c, pi.into())?)
            }
        })
    }
}

/// Reads and validates an instance file.
pub fn parse_instance(path: &Path) -> Result<Problem> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let file: InstanceFile = serde_json::from_str(&text)
        .with_context(|| format!("parsing {}", path.display()))?;
    file.into_problem()
        .with_context(|| format!("validating {}", path.display()))
}

/// A partition on disk, with the value and search metadata the solver
/// recorded. `assign` is 1-based like the in-memory representation.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct SolutionFile {
    pub assign: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub meta: Option<Meta>,
}

/// How a solution was produced.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Meta {
    pub k: usize,
    pub seed: u64,
    pub strategy: String,
    pub iterations: u64,
}

/// Byte-deterministic serialization: pretty JSON plus a trailing newline.
pub fn render_solution(solution: &SolutionFile) -> String {
    let mut text = serde_json::to_string_pretty(solution).expect("solution files always serialize");
    text.push('\n');
    text
}

pub fn read_solution(path: &Path) -> Result<SolutionFile> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let file: SolutionFile =
        serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    if file.assign.is_empty() {
        bail!("{}: assign must not be empty", path.display());
    }
    Ok(file)
}
