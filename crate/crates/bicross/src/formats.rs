//! JSON documents read and written by the command-line tool.

use std::path::{Path, PathBuf};

use bicross_core::bicrossed::{AxiomResult, ControlResult};
use bicross_core::cohomology::{AbelianInvariants, CocyclePair};
use bicross_core::group::{FiniteGroup, GroupConfig};
use bicross_core::matched::{exact_factorization, MatchedPair};
use bicross_core::operator::PhasePermOperator;
use serde::{Deserialize, Serialize};

use crate::error::CliError;

/// A group given by its multiplication table or by permutation generators.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupFile {
    Table { name: String, order: usize, table: Vec<Vec<usize>> },
    Permutations { name: String, degree: usize, generators: Vec<Vec<usize>> },
}

impl GroupFile {
    pub fn name(&self) -> &str {
        match self {
            GroupFile::Table { name, .. } | GroupFile::Permutations { name, .. } => name,
        }
    }

    pub fn build(&self, config: &GroupConfig) -> Result<FiniteGroup, CliError> {
        match self {
            GroupFile::Table { order, table, .. } => {
                if *order != table.len() {
                    return Err(CliError::input(format!(
                        "group `{}`: order {} but the table has {} rows",
                        self.name(),
                        order,
                        table.len()
                    )));
                }
                Ok(FiniteGroup::from_table(table, config)?)
            }
            GroupFile::Permutations { degree, generators, .. } => {
                Ok(FiniteGroup::from_permutations(*degree, generators, config)?)
            }
        }
    }

    /// The table form, with the identity at index 0.
    pub fn from_group(name: &str, g: &FiniteGroup) -> GroupFile {
        GroupFile::Table { name: name.to_string(), order: g.order(), table: g.table_rows() }
    }
}

/// Where a pair file finds its ambient group.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupRef {
    /// Path, relative to the pair file.
    Path(PathBuf),
    Inline(GroupFile),
}

/// An exact factorization: the ambient group and the element lists of `H1`, `H2`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PairFile {
    pub name: String,
    pub group: GroupRef,
    pub h1: Vec<usize>,
    pub h2: Vec<usize>,
}

impl PairFile {
    /// Builds the pair inside an already loaded ambient group.
    pub fn build(&self, ambient: &FiniteGroup) -> Result<MatchedPair, CliError> {
        let n = ambient.order();
        if let Some(x) = self.h1.iter().chain(&self.h2).find(|&&x| x >= n) {
            return Err(CliError::input(format!("element {x} is outside a group of order {n}")));
        }
        Ok(exact_factorization(ambient, &self.h1, &self.h2)?)
    }
}

/// The derived tables of a matched pair, indexed by subgroup position.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PairTables {
    pub n1: usize,
    pub n2: usize,
    /// Ambient index of each element of `H1`, in subgroup order.
    pub h1: Vec<usize>,
    /// Ambient index of each element of `H2`, in subgroup order.
    pub h2: Vec<usize>,
    /// `alpha[g][s] = α_g(s)`.
    pub alpha: Vec<Vec<usize>>,
    /// `beta[s][g] = β_s(g)`.
    pub beta: Vec<Vec<usize>>,
    pub identities_hold: bool,
}

impl PairTables {
    pub fn new(pair: &MatchedPair) -> PairTables {
        let (n1, n2) = (pair.n1(), pair.n2());
        PairTables {
            n1,
            n2,
            h1: pair.i.clone(),
            h2: pair.j.iter().map(|&x| pair.ambient.inv(x)).collect(),
            alpha: (0..n1).map(|g| (0..n2).map(|s| pair.alpha(g, s)).collect()).collect(),
            beta: (0..n2).map(|s| (0..n1).map(|g| pair.beta(s, g)).collect()).collect(),
            identities_hold: pair.verify_matched_identities().is_empty(),
        }
    }
}

/// A cocycle pair as numerators over a common denominator.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CocycleFile {
    pub denominator: i64,
    #[serde(rename = "U")]
    pub u: Vec<Vec<Vec<i64>>>,
    #[serde(rename = "V")]
    pub v: Vec<Vec<Vec<i64>>>,
}

impl CocycleFile {
    pub fn from_pair(c: &CocyclePair) -> CocycleFile {
        let (denominator, u, v) = c.to_numerators();
        CocycleFile { denominator, u, v }
    }

    pub fn build(&self, pair: &MatchedPair) -> Result<CocyclePair, CliError> {
        Ok(CocyclePair::from_numerators(pair, self.denominator, &self.u, &self.v)?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GammaReport {
    pub torus_rank: usize,
    pub invariant_factors: Vec<u64>,
}

impl From<&AbelianInvariants> for GammaReport {
    fn from(a: &AbelianInvariants) -> Self {
        GammaReport { torus_rank: a.torus_rank, invariant_factors: a.invariant_factors.clone() }
    }
}

/// A phase-permutation operator: basis `x` goes to `perm[x]` with phase
/// `phase_num[x]/phase_den[x]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OperatorDump {
    pub dim: usize,
    pub perm: Vec<usize>,
    pub phase_num: Vec<i64>,
    pub phase_den: Vec<i64>,
}

impl From<&PhasePermOperator> for OperatorDump {
    fn from(op: &PhasePermOperator) -> Self {
        OperatorDump {
            dim: op.dim(),
            perm: op.perm().to_vec(),
            phase_num: op.phases().iter().map(|p| p.num()).collect(),
            phase_den: op.phases().iter().map(|p| p.den()).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomLine {
    pub axiom: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessLine>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessLine {
    pub args: Vec<usize>,
    pub detail: String,
}

impl From<&AxiomResult> for AxiomLine {
    fn from(r: &AxiomResult) -> Self {
        AxiomLine {
            axiom: r.axiom.to_string(),
            passed: r.passed,
            witness: r
                .witness
                .as_ref()
                .map(|w| WitnessLine { args: w.args.clone(), detail: w.detail.clone() }),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ControlLine {
    pub axiom: String,
    pub perturbation: String,
    pub detected: bool,
}

impl From<&ControlResult> for ControlLine {
    fn from(c: &ControlResult) -> Self {
        ControlLine {
            axiom: c.axiom.to_string(),
            perturbation: c.perturbation.to_string(),
            detected: c.detected,
        }
    }
}

pub fn parse_json<T: serde::de::DeserializeOwned>(path: &Path, bytes: &[u8]) -> Result<T, CliError> {
    serde_json::from_slice(bytes).map_err(|e| CliError::Json { path: path.to_path_buf(), source: e })
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(value).expect("serializable");
    text.push('\n');
    std::fs::write(path, text).map_err(|e| CliError::io(path, e))
}
