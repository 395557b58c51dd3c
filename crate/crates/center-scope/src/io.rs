//! File formats.
//!
//! Two input schemas share one extension and are told apart by their
//! top-level keys:
//!
//! - fusion data: `{"conductor", "objects": [{"name", "simples", "fusion",
//!   "dims"}...], "bimodules": [{"from", "to", "simples", "left_action",
//!   "right_action"}...]}`, where `fusion[i][j][l]` is the multiplicity of
//!   simple `l` in `i * j`, `"from"` names the object acting on the left of
//!   the bimodule, and both actions list one square matrix per acting simple,
//!   indexed `[input][output]`;
//! - a direct problem: `{"conductor", "M", "v", "D"}` (plus an optional
//!   `"layout"` of per-object simple counts), feeding the solver directly.
//!
//! Integer matrices are row-major nested arrays of decimal integer strings
//! (plain JSON integers are also accepted on input); field elements are
//! `{"conductor": n, "coeffs": ["p/q", ...]}` on the reduced power basis.

use std::path::Path;

use num::bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::cyclotomic::CycloNumber;
use crate::error::{Error, Result};
use crate::exact_linalg::IntMatrix;
use crate::fusion_data::{BimoduleBlock, FusionRing, TwoCategoryData};
use crate::solver::{DecompositionProblem, InductionResult, SearchOutcome};

#[derive(Debug, Serialize, Deserialize)]
pub struct ObjectSpec {
    pub name: String,
    pub simples: usize,
    pub fusion: Vec<Vec<Vec<u64>>>,
    pub dims: Vec<CycloNumber>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct BimoduleSpec {
    pub from: String,
    pub to: String,
    pub simples: usize,
    pub left_action: Vec<Vec<Vec<u64>>>,
    pub right_action: Vec<Vec<Vec<u64>>>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct FusionDataFile {
    pub conductor: u32,
    pub objects: Vec<ObjectSpec>,
    #[serde(default)]
    pub bimodules: Vec<BimoduleSpec>,
}

/// An integer matrix entry: a decimal string or a plain JSON integer.
#[derive(Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum IntEntry {
    Int(i64),
    Str(String),
}

impl IntEntry {
    fn to_bigint(&self) -> Result<BigInt> {
        match self {
            IntEntry::Int(k) => Ok(BigInt::from(*k)),
            IntEntry::Str(s) => s
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad integer entry {s:?}"))),
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct ProblemFile {
    pub conductor: u32,
    #[serde(rename = "M")]
    pub m: Vec<Vec<IntEntry>>,
    pub v: Vec<Vec<CycloNumber>>,
    #[serde(rename = "D")]
    pub d: CycloNumber,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub layout: Option<Vec<usize>>,
}

/// Either input schema.
#[derive(Debug)]
pub enum InputFile {
    Fusion(FusionDataFile),
    Problem(ProblemFile),
}

pub fn matrix_to_strings(m: &IntMatrix) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| m.get(i, j).to_string()).collect())
        .collect()
}

pub fn matrix_from_entries(rows: &[Vec<IntEntry>]) -> Result<IntMatrix> {
    let r = rows.len();
    let c = rows.first().map(|x| x.len()).unwrap_or(0);
    if rows.iter().any(|x| x.len() != c) {
        return Err(Error::ShapeMismatch("ragged matrix rows".into()));
    }
    let mut data = Vec::with_capacity(r * c);
    for row in rows {
        for e in row {
            data.push(e.to_bigint()?);
        }
    }
    IntMatrix::new(r, c, data)
}

fn parse_error(path: &Path, err: &serde_json::Error) -> Error {
    Error::Parse(format!(
        "{}:{}:{}: {err}",
        path.display(),
        err.line(),
        err.column()
    ))
}

/// Read either input schema, discriminating on the top-level keys.
pub fn read_input(path: &Path) -> Result<InputFile> {
    let text = std::fs::read_to_string(path)?;
    let value: serde_json::Value =
        serde_json::from_str(&text).map_err(|e| parse_error(path, &e))?;
    let obj = value
        .as_object()
        .ok_or_else(|| Error::Parse(format!("{}: expected a JSON object", path.display())))?;
    if obj.contains_key("objects") {
        let parsed: FusionDataFile =
            serde_json::from_value(value).map_err(|e| parse_error(path, &e))?;
        Ok(InputFile::Fusion(parsed))
    } else if obj.contains_key("M") {
        let parsed: ProblemFile =
            serde_json::from_value(value).map_err(|e| parse_error(path, &e))?;
        Ok(InputFile::Problem(parsed))
    } else {
        Err(Error::Parse(format!(
            "{}: expected top-level \"objects\" (fusion data) or \"M\" (problem)",
            path.display()
        )))
    }
}

pub fn to_two_category(file: &FusionDataFile) -> Result<TwoCategoryData> {
    let mut rings = Vec::with_capacity(file.objects.len());
    for spec in &file.objects {
        if spec.fusion.len() != spec.simples {
            return Err(Error::ShapeMismatch(format!(
                "object {}: {} fusion matrices for {} simples",
                spec.name,
                spec.fusion.len(),
                spec.simples
            )));
        }
        rings.push(FusionRing::new(&spec.name, &spec.fusion, spec.dims.clone())?);
    }
    let index_of = |name: &str| {
        file.objects
            .iter()
            .position(|o| o.name == name)
            .ok_or_else(|| Error::InconsistentData(format!("unknown object name {name:?}")))
    };
    let mut blocks = Vec::with_capacity(file.bimodules.len());
    for spec in &file.bimodules {
        let from = index_of(&spec.from)?;
        let to = index_of(&spec.to)?;
        blocks.push(BimoduleBlock::new(
            from,
            to,
            spec.simples,
            &spec.left_action,
            &spec.right_action,
            rings[from].simple_count(),
            rings[to].simple_count(),
        )?);
    }
    TwoCategoryData::new(file.conductor, rings, blocks)
}

pub fn problem_from_file(file: &ProblemFile) -> Result<DecompositionProblem> {
    let m = matrix_from_entries(&file.m)?;
    DecompositionProblem::new(
        m,
        file.v.clone(),
        file.d.clone(),
        file.conductor,
        file.layout.clone(),
    )
}

pub fn problem_to_file(p: &DecompositionProblem) -> ProblemFile {
    ProblemFile {
        conductor: p.conductor(),
        m: matrix_to_strings(p.gram())
            .into_iter()
            .map(|row| row.into_iter().map(IntEntry::Str).collect())
            .collect(),
        v: p.vs().to_vec(),
        d: p.global_dim().clone(),
        layout: p.layout().map(|l| l.to_vec()),
    }
}

/// A candidate decomposition for `verify`: `{"A": [[...]]}` or a bare
/// row-major array.
pub fn read_candidate(path: &Path) -> Result<IntMatrix> {
    #[derive(Deserialize)]
    struct Wrapped {
        #[serde(rename = "A")]
        a: Vec<Vec<IntEntry>>,
    }
    let text = std::fs::read_to_string(path)?;
    if let Ok(w) = serde_json::from_str::<Wrapped>(&text) {
        return matrix_from_entries(&w.a);
    }
    let bare: Vec<Vec<IntEntry>> =
        serde_json::from_str(&text).map_err(|e| parse_error(path, &e))?;
    matrix_from_entries(&bare)
}

#[derive(Debug, Serialize, Deserialize)]
pub struct ResultRecord {
    pub column_count: usize,
    #[serde(rename = "A")]
    pub a: Vec<Vec<String>>,
    pub blocks: Vec<Vec<Vec<String>>>,
    pub column_dots: Vec<Vec<CycloNumber>>,
}

impl ResultRecord {
    pub fn from_result(r: &InductionResult) -> Self {
        ResultRecord {
            column_count: r.column_count,
            a: matrix_to_strings(&r.a),
            blocks: r.blocks.iter().map(matrix_to_strings).collect(),
            column_dots: r.column_dots.clone(),
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct ResultsFile {
    pub solution_count: usize,
    pub column_counts: Vec<usize>,
    pub truncated: bool,
    pub search_nodes: u64,
    pub candidates_checked: u64,
    pub wall_ms: u128,
    pub results: Vec<ResultRecord>,
}

impl ResultsFile {
    pub fn from_outcome(outcome: &SearchOutcome) -> Self {
        ResultsFile {
            solution_count: outcome.results.len(),
            column_counts: outcome.results.iter().map(|r| r.column_count).collect(),
            truncated: outcome.truncated,
            search_nodes: outcome.stats.nodes,
            candidates_checked: outcome.stats.candidates,
            wall_ms: outcome.stats.wall.as_millis(),
            results: outcome.results.iter().map(ResultRecord::from_result).collect(),
        }
    }
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let text = serde_json::to_string_pretty(value)
        .map_err(|e| Error::Parse(format!("serialization: {e}")))?;
    std::fs::write(path, text + "\n")?;
    Ok(())
}
