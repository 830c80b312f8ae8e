// Copyright 2026 The clifford-vqd Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! File formats: Hamiltonian text files, TOML sweep manifests, and CSV or
//! JSON result files.

use std::collections::HashSet;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pauli::{parse_hamiltonian, PauliSumHamiltonian};
use crate::refine::LevelRefinement;
use crate::search::{LadderResult, SearchConfig, SweepManifest, SweepPoint};

pub fn load_hamiltonian(path: impl AsRef<Path>) -> Result<PauliSumHamiltonian> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_hamiltonian(&text)
}

/// Manifest as written on disk, before paths are resolved.
///
/// ```toml
/// levels = 3
/// transfer = true
///
/// [[points]]
/// label = "0.74"
/// hamiltonian = "h2_0.74.txt"
/// ```
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ManifestFile {
    pub levels: usize,
    #[serde(default)]
    pub transfer: bool,
    pub points: Vec<ManifestPoint>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ManifestPoint {
    pub label: String,
    pub hamiltonian: PathBuf,
}

/// Parses and structurally validates manifest text; does not touch the
/// filesystem.
pub fn parse_manifest(text: &str) -> Result<ManifestFile> {
    let m: ManifestFile = toml::from_str(text).map_err(|e| Error::Manifest(e.to_string()))?;
    if m.levels == 0 {
        return Err(Error::Manifest("levels must be at least 1".into()));
    }
    if m.points.is_empty() {
        return Err(Error::Manifest("no points".into()));
    }
    let mut seen = HashSet::new();
    for p in &m.points {
        if !seen.insert(p.label.as_str()) {
            return Err(Error::Manifest(format!("duplicate label {:?}", p.label)));
        }
    }
    Ok(m)
}

/// Loads a manifest; relative Hamiltonian paths resolve against the
/// manifest's directory and every referenced file must exist.
pub fn load_manifest(path: impl AsRef<Path>) -> Result<SweepManifest> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let m = parse_manifest(&text)?;
    let base = path.parent().unwrap_or(Path::new("."));
    let points = m
        .points
        .into_iter()
        .map(|p| {
            let source = if p.hamiltonian.is_absolute() {
                p.hamiltonian
            } else {
                base.join(p.hamiltonian)
            };
            if !source.is_file() {
                return Err(Error::Manifest(format!(
                    "point {:?}: Hamiltonian file {} not found",
                    p.label,
                    source.display()
                )));
            }
            Ok(SweepPoint {
                label: p.label,
                hamiltonian_source: source,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SweepManifest {
        points,
        levels_requested: m.levels,
        transfer_enabled: m.transfer,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Json,
}

/// Run settings echoed into structured output.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub n_qubits: usize,
    pub entangling_blocks: usize,
    pub levels: usize,
    pub search: SearchConfig,
    pub oracle: bool,
    pub transfer: bool,
}

/// One output row: a level at a sweep point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LevelRecord {
    pub point_label: String,
    pub level: usize,
    pub energy_ha: f64,
    pub penalty_ha: f64,
    pub cost_ha: f64,
    pub exact_ha: Option<f64>,
    pub abs_error_ha: Option<f64>,
    pub params: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultsDocument {
    pub config: RunConfig,
    pub seed: u64,
    pub records: Vec<LevelRecord>,
}

impl ResultsDocument {
    pub fn new(config: RunConfig, ladders: &[LadderResult]) -> Self {
        let records = ladders
            .iter()
            .flat_map(|ladder| {
                ladder.levels.iter().map(|l| LevelRecord {
                    point_label: ladder.hamiltonian_id.clone(),
                    level: l.level,
                    energy_ha: l.energy,
                    penalty_ha: l.penalty,
                    cost_ha: l.cost,
                    exact_ha: l.exact_energy,
                    abs_error_ha: l.abs_error,
                    params: l.params.to_string(),
                })
            })
            .collect();
        Self {
            seed: config.search.seed,
            config,
            records,
        }
    }
}

pub const CSV_HEADER: [&str; 8] = [
    "point_label",
    "level",
    "energy_ha",
    "penalty_ha",
    "cost_ha",
    "exact_ha",
    "abs_error_ha",
    "params",
];

/// Fixed-point rendering with twelve digits after the decimal point.
pub fn format_ha(v: f64) -> String {
    let s = format!("{v:.12}");
    // avoid "-0.000000000000"
    if s.trim_start_matches('-').bytes().all(|b| b == b'0' || b == b'.') {
        s.trim_start_matches('-').to_string()
    } else {
        s
    }
}

fn format_opt(v: Option<f64>) -> String {
    v.map(format_ha).unwrap_or_default()
}

pub fn results_to_csv(doc: &ResultsDocument) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let csv_err = |e: csv::Error| Error::Results(e.to_string());
    w.write_record(CSV_HEADER).map_err(csv_err)?;
    for r in &doc.records {
        w.write_record([
            r.point_label.clone(),
            r.level.to_string(),
            format_ha(r.energy_ha),
            format_ha(r.penalty_ha),
            format_ha(r.cost_ha),
            format_opt(r.exact_ha),
            format_opt(r.abs_error_ha),
            r.params.clone(),
        ])
        .map_err(csv_err)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Results(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

pub fn results_to_json(doc: &ResultsDocument) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("results serialize");
    s.push('\n');
    s
}

/// Parses a JSON results file written by [`write_results`].
pub fn parse_results_json(text: &str) -> Result<ResultsDocument> {
    let doc: ResultsDocument =
        serde_json::from_str(text).map_err(|e| Error::Results(e.to_string()))?;
    for r in &doc.records {
        if r.params.bytes().any(|b| !(b'0'..=b'3').contains(&b)) {
            return Err(Error::Results(format!("invalid params {:?}", r.params)));
        }
    }
    Ok(doc)
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).map_err(|e| Error::io(path, e))
}

pub fn write_results(doc: &ResultsDocument, format: OutputFormat, path: impl AsRef<Path>) -> Result<()> {
    let body = match format {
        OutputFormat::Csv => results_to_csv(doc)?,
        OutputFormat::Json => results_to_json(doc),
    };
    write_file(path.as_ref(), &body)
}

pub const REFINE_CSV_HEADER: [&str; 9] = [
    "level",
    "init_kind",
    "seed",
    "init_cost_ha",
    "final_cost_ha",
    "iterations_to_tolerance",
    "tolerance_ha",
    "sweeps",
    "clifford_cost_ha",
];

pub fn refine_to_csv(levels: &[LevelRefinement]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let csv_err = |e: csv::Error| Error::Results(e.to_string());
    w.write_record(REFINE_CSV_HEADER).map_err(csv_err)?;
    for l in levels {
        for r in std::iter::once(&l.warm).chain(&l.cold) {
            w.write_record([
                r.level.to_string(),
                r.init_kind.as_str().to_string(),
                r.seed.map(|s| s.to_string()).unwrap_or_default(),
                format_ha(r.init_cost),
                format_ha(r.final_cost),
                r.iterations_to_tolerance
                    .map(|i| i.to_string())
                    .unwrap_or_else(|| "not_reached".into()),
                format!("{:e}", r.tolerance),
                r.sweeps.to_string(),
                format_ha(l.clifford_cost),
            ])
            .map_err(csv_err)?;
        }
    }
    let bytes = w.into_inner().map_err(|e| Error::Results(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

pub fn write_refine(levels: &[LevelRefinement], format: OutputFormat, path: impl AsRef<Path>) -> Result<()> {
    let body = match format {
        OutputFormat::Csv => refine_to_csv(levels)?,
        OutputFormat::Json => {
            let mut s = serde_json::to_string_pretty(levels).expect("reports serialize");
            s.push('\n');
            s
        }
    };
    write_file(path.as_ref(), &body)
}
