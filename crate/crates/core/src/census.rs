//! Exhaustive classification of small labelled graphs.
//!
//! Graphs on `n` vertices are enumerated as edge subsets (or edge labellings)
//! in a fixed order, grouped by canonical key, and one record per
//! isomorphism class is written as a JSON line. Counts in the report are per
//! labelled graph unless deduplication is on.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::fs::{File, OpenOptions};
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::engine::{verify_verdict, Engine, EngineConfig, EngineError, Note, Verdict, VerdictKind, Witness};
use crate::graph::{canonical_key, AbelianGroupLabel, LabeledGraph};

/// Labelled enumeration stops being practical beyond this.
pub const MAX_CENSUS_VERTICES: usize = 8;
/// Upper bound on graphs per vertex count for labelled Coxeter censuses.
pub const MAX_GRAPHS_PER_SIZE: u64 = 1 << 28;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "labels")]
pub enum CensusFlavor {
    Racg,
    Raag,
    /// Coxeter graphs whose edge labels are drawn from the set.
    Coxeter(Vec<u32>),
}

impl CensusFlavor {
    pub fn name(&self) -> &'static str {
        match self {
            CensusFlavor::Racg => "racg",
            CensusFlavor::Raag => "raag",
            CensusFlavor::Coxeter(_) => "coxeter",
        }
    }

    fn group(&self) -> AbelianGroupLabel {
        match self {
            CensusFlavor::Raag => AbelianGroupLabel::z(),
            _ => AbelianGroupLabel::z2(),
        }
    }

    fn labels(&self) -> Vec<u32> {
        match self {
            CensusFlavor::Coxeter(l) => l.clone(),
            _ => vec![2],
        }
    }
}

impl fmt::Display for CensusFlavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CensusFlavor::Coxeter(l) => {
                let l: Vec<String> = l.iter().map(u32::to_string).collect();
                write!(f, "coxeter:{}", l.join(","))
            }
            other => f.write_str(other.name()),
        }
    }
}

impl FromStr for CensusFlavor {
    type Err = CensusError;

    /// `racg`, `raag`, or `coxeter:3,4,5` (label 2 is not implied).
    fn from_str(s: &str) -> Result<Self, CensusError> {
        let bad = || CensusError::InvalidConfig(format!("unknown census flavor `{s}`"));
        match s {
            "racg" => Ok(CensusFlavor::Racg),
            "raag" => Ok(CensusFlavor::Raag),
            _ => {
                let rest = s.strip_prefix("coxeter:").ok_or_else(bad)?;
                let mut labels = rest
                    .split(',')
                    .map(|t| t.trim().parse::<u32>().ok().filter(|&l| l >= 2))
                    .collect::<Option<Vec<_>>>()
                    .ok_or_else(bad)?;
                labels.sort_unstable();
                labels.dedup();
                if labels.is_empty() {
                    return Err(bad());
                }
                Ok(CensusFlavor::Coxeter(labels))
            }
        }
    }
}

#[derive(Debug, Clone)]
pub struct CensusConfig {
    pub flavor: CensusFlavor,
    pub min_vertices: usize,
    pub max_vertices: usize,
    pub min_edges: usize,
    pub max_edges: Option<usize>,
    /// Count isomorphism classes instead of labelled graphs.
    pub dedup: bool,
    /// Worker threads; 0 means one per core.
    pub workers: usize,
    /// Records file (JSON lines). Existing records are reused by key.
    pub out: Option<PathBuf>,
    pub engine: EngineConfig,
}

impl CensusConfig {
    pub fn new(flavor: CensusFlavor, max_vertices: usize) -> Self {
        CensusConfig {
            flavor,
            min_vertices: 1,
            max_vertices,
            min_edges: 0,
            max_edges: None,
            dedup: false,
            workers: 0,
            out: None,
            engine: EngineConfig::default(),
        }
    }

    fn validate(&self) -> Result<(), CensusError> {
        if self.min_vertices == 0 || self.min_vertices > self.max_vertices {
            return Err(CensusError::InvalidConfig(format!(
                "vertex range {}..={} is empty",
                self.min_vertices, self.max_vertices
            )));
        }
        if self.max_vertices > MAX_CENSUS_VERTICES {
            return Err(CensusError::CapExceeded {
                n: self.max_vertices,
                cap: MAX_CENSUS_VERTICES,
            });
        }
        for n in self.min_vertices..=self.max_vertices {
            graph_count(&self.flavor, n)?;
        }
        Ok(())
    }

    fn edge_ok(&self, e: usize) -> bool {
        e >= self.min_edges && self.max_edges.is_none_or(|m| e <= m)
    }
}

#[derive(Debug, Error)]
pub enum CensusError {
    #[error("invalid census configuration: {0}")]
    InvalidConfig(String),
    #[error("{n} vertices exceeds the census cap of {cap}")]
    CapExceeded { n: usize, cap: usize },
    #[error("I/O error{}: {source}", .key.as_ref().map(|k| format!(" at record {k}")).unwrap_or_default())]
    Io {
        key: Option<String>,
        #[source]
        source: io::Error,
    },
    #[error("census does not cover every smaller cell: {0}")]
    IncompleteCoverage(String),
    #[error(transparent)]
    Engine(#[from] EngineError),
}

fn io_err(key: Option<&str>) -> impl FnOnce(io::Error) -> CensusError + '_ {
    move |source| CensusError::Io {
        key: key.map(str::to_string),
        source,
    }
}

fn graph_count(flavor: &CensusFlavor, n: usize) -> Result<u64, CensusError> {
    let pairs = (n * n.saturating_sub(1) / 2) as u32;
    let base = flavor.labels().len() as u64 + 1;
    base.checked_pow(pairs)
        .filter(|&t| t <= MAX_GRAPHS_PER_SIZE)
        .ok_or(CensusError::CapExceeded {
            n,
            cap: MAX_CENSUS_VERTICES,
        })
}

/// Decodes the `index`-th labelling on `n` vertices: pair `(i, j)` in
/// lexicographic order takes digit `index` base `|labels| + 1`, with 0 for
/// no edge.
fn build(flavor: &CensusFlavor, labels: &[u32], n: usize, mut index: u64) -> LabeledGraph {
    let base = labels.len() as u64 + 1;
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let d = index % base;
            index /= base;
            if d > 0 {
                edges.push((i, j, labels[d as usize - 1]));
            }
        }
    }
    LabeledGraph::uniform(n, flavor.group(), &edges).expect("valid by construction")
}

fn edge_count(labels: usize, n: usize, mut index: u64) -> usize {
    let base = labels as u64 + 1;
    let mut e = 0;
    for _ in 0..n * n.saturating_sub(1) / 2 {
        e += usize::from(!index.is_multiple_of(base));
        index /= base;
    }
    e
}

/// Every graph selected by the configuration, in enumeration order. With
/// `dedup`, only the first graph of each isomorphism class.
pub fn enumerate_graphs(
    config: &CensusConfig,
) -> Result<impl Iterator<Item = LabeledGraph> + '_, CensusError> {
    config.validate()?;
    let labels = config.flavor.labels();
    let mut seen = HashSet::new();
    let iter = (config.min_vertices..=config.max_vertices).flat_map(move |n| {
        let total = graph_count(&config.flavor, n).expect("validated");
        let labels = labels.clone();
        (0..total).filter_map(move |i| {
            let e = edge_count(labels.len(), n, i);
            config.edge_ok(e).then(|| build(&config.flavor, &labels, n, i))
        })
    });
    Ok(iter.filter(move |g| {
        !config.dedup || seen.insert(canonical_key(g, MAX_CENSUS_VERTICES).expect("within cap"))
    }))
}

/// One line of the records file: an isomorphism class and its verdict.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusRecord {
    pub key: String,
    pub n: usize,
    pub e: usize,
    pub flavor: String,
    pub verdict: VerdictKind,
    pub rule: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<Note>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnknownEntry {
    pub key: String,
    pub reasons: Vec<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellReport {
    pub n: usize,
    pub e: usize,
    pub coherent: u64,
    pub incoherent: u64,
    pub unknown: u64,
    pub incoherent_keys: Vec<String>,
    pub unknown_keys: Vec<UnknownEntry>,
}

impl CellReport {
    pub fn total(&self) -> u64 {
        self.coherent + self.incoherent + self.unknown
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationFailure {
    pub key: String,
    pub failure: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusReport {
    pub flavor: String,
    pub min_vertices: usize,
    pub max_vertices: usize,
    pub min_edges: usize,
    pub max_edges: Option<usize>,
    pub dedup: bool,
    /// Cells in `(n, e)` order.
    pub cells: Vec<CellReport>,
    /// Isomorphism classes classified in this run (not resumed).
    pub classified: usize,
    pub resumed: usize,
    pub verification_failures: Vec<VerificationFailure>,
    pub elapsed_ms: u128,
}

impl CensusReport {
    pub fn cell(&self, n: usize, e: usize) -> Option<&CellReport> {
        self.cells.iter().find(|c| c.n == n && c.e == e)
    }

    pub fn totals(&self) -> (u64, u64, u64) {
        self.cells.iter().fold((0, 0, 0), |(a, b, c), x| {
            (a + x.coherent, b + x.incoherent, c + x.unknown)
        })
    }

    /// Cells for `n` vertices with at most `max_e` edges.
    pub fn cells_upto(&self, n: usize, max_e: usize) -> impl Iterator<Item = &CellReport> {
        self.cells.iter().filter(move |c| c.n == n && c.e <= max_e)
    }
}

struct Class {
    key: String,
    n: usize,
    e: usize,
    index: u64,
    labelled: u64,
}

fn read_existing(path: &Path) -> Result<HashMap<String, CensusRecord>, CensusError> {
    let mut out = HashMap::new();
    let file = match File::open(path) {
        Ok(f) => f,
        Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok(out),
        Err(e) => return Err(io_err(None)(e)),
    };
    for line in BufReader::new(file).lines() {
        let line = line.map_err(io_err(None))?;
        // A torn final line from an interrupted run is classified again.
        if let Ok(r) = serde_json::from_str::<CensusRecord>(&line) {
            out.insert(r.key.clone(), r);
        }
    }
    Ok(out)
}

fn classes_for(config: &CensusConfig, labels: &[u32], n: usize) -> Vec<Class> {
    let total = graph_count(&config.flavor, n).expect("validated");
    let map = (0..total)
        .into_par_iter()
        .filter_map(|i| {
            let e = edge_count(labels.len(), n, i);
            config.edge_ok(e).then_some((i, e))
        })
        .fold(HashMap::<String, (u64, usize, u64)>::new, |mut acc, (i, e)| {
            let g = build(&config.flavor, labels, n, i);
            let key = canonical_key(&g, MAX_CENSUS_VERTICES).expect("within cap");
            let slot = acc.entry(key).or_insert((i, e, 0));
            slot.0 = slot.0.min(i);
            slot.2 += 1;
            acc
        })
        .reduce(HashMap::new, |mut a, b| {
            for (k, (i, e, c)) in b {
                let slot = a.entry(k).or_insert((i, e, 0));
                slot.0 = slot.0.min(i);
                slot.2 += c;
            }
            a
        });
    let mut classes: Vec<Class> = map
        .into_iter()
        .map(|(key, (index, e, labelled))| Class {
            key,
            n,
            e,
            index,
            labelled,
        })
        .collect();
    classes.sort_by(|a, b| (a.e, &a.key).cmp(&(b.e, &b.key)));
    classes
}

/// Classifies every enumerated graph, appends new records to the output
/// file, and aggregates counts per `(n, e)`. Each verdict is re-verified on
/// the first labelled graph of its class.
pub fn run_census(config: &CensusConfig) -> Result<CensusReport, CensusError> {
    config.validate()?;
    let start = Instant::now();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.workers)
        .build()
        .map_err(|e| CensusError::InvalidConfig(e.to_string()))?;
    let existing = match &config.out {
        Some(p) => read_existing(p)?,
        None => HashMap::new(),
    };
    let mut writer = match &config.out {
        Some(p) => Some(BufWriter::new(
            OpenOptions::new()
                .create(true)
                .append(true)
                .open(p)
                .map_err(io_err(None))?,
        )),
        None => None,
    };
    let engine = Engine::new(config.engine.clone());
    let labels = config.flavor.labels();
    let flavor_name = config.flavor.name().to_string();

    let mut cells: BTreeMap<(usize, usize), CellReport> = BTreeMap::new();
    let mut failures = Vec::new();
    let (mut classified, mut resumed) = (0, 0);

    for n in config.min_vertices..=config.max_vertices {
        let classes = pool.install(|| classes_for(config, &labels, n));
        let results: Vec<(CensusRecord, bool, Option<String>)> = pool.install(|| {
            classes
                .par_iter()
                .map(|c| {
                    let g = build(&config.flavor, &labels, n, c.index);
                    if let Some(r) = existing.get(&c.key) {
                        let failure = r.witness.as_ref().and_then(|w| {
                            crate::engine::verify_witness(&g, w).err().map(|f| f.to_string())
                        });
                        return Ok((r.clone(), true, failure));
                    }
                    let verdict = engine.classify(&g)?;
                    let failure = verify_verdict(&g, &verdict).err().map(|f| f.to_string());
                    Ok((record(c, &flavor_name, &verdict), false, failure))
                })
                .collect::<Result<_, EngineError>>()
        })?;
        for (c, (rec, was_resumed, failure)) in classes.iter().zip(results) {
            if was_resumed {
                resumed += 1;
            } else {
                classified += 1;
                if let Some(w) = writer.as_mut() {
                    let line = serde_json::to_string(&rec).expect("records serialize");
                    writeln!(w, "{line}").map_err(io_err(Some(&rec.key)))?;
                }
            }
            if let Some(failure) = failure {
                failures.push(VerificationFailure {
                    key: rec.key.clone(),
                    failure,
                });
            }
            let weight = if config.dedup { 1 } else { c.labelled };
            let cell = cells.entry((c.n, c.e)).or_insert_with(|| CellReport {
                n: c.n,
                e: c.e,
                ..CellReport::default()
            });
            match rec.verdict {
                VerdictKind::Coherent => cell.coherent += weight,
                VerdictKind::Incoherent => {
                    cell.incoherent += weight;
                    cell.incoherent_keys.push(rec.key.clone());
                }
                VerdictKind::Unknown => {
                    cell.unknown += weight;
                    cell.unknown_keys.push(UnknownEntry {
                        key: rec.key.clone(),
                        reasons: rec
                            .notes
                            .iter()
                            .map(|n| crate::engine::note_name(n.code).to_string())
                            .collect(),
                    });
                }
            }
        }
        if let Some(w) = writer.as_mut() {
            w.flush().map_err(io_err(None))?;
        }
    }

    Ok(CensusReport {
        flavor: config.flavor.to_string(),
        min_vertices: config.min_vertices,
        max_vertices: config.max_vertices,
        min_edges: config.min_edges,
        max_edges: config.max_edges,
        dedup: config.dedup,
        cells: cells.into_values().collect(),
        classified,
        resumed,
        verification_failures: failures,
        elapsed_ms: start.elapsed().as_millis(),
    })
}

fn record(c: &Class, flavor: &str, v: &Verdict) -> CensusRecord {
    CensusRecord {
        key: c.key.clone(),
        n: c.n,
        e: c.e,
        flavor: flavor.to_string(),
        verdict: v.kind(),
        rule: v.rule_summary(),
        witness: match v {
            Verdict::Incoherent(w) => Some(w.clone()),
            _ => None,
        },
        notes: v.notes().to_vec(),
    }
}

/// The least `(n, e)` with an incoherent graph. Fails unless the report
/// covers every cell below the answer (or every cell, when there is none).
pub fn smallest_incoherent(report: &CensusReport) -> Result<Option<(usize, usize)>, CensusError> {
    let found = report
        .cells
        .iter()
        .filter(|c| c.incoherent > 0)
        .map(|c| (c.n, c.e))
        .min();
    if report.min_vertices > 1 || report.min_edges > 0 {
        return Err(CensusError::IncompleteCoverage(format!(
            "enumeration starts at {} vertices and {} edges",
            report.min_vertices, report.min_edges
        )));
    }
    if let Some(max_e) = report.max_edges {
        let (upto_n, need_last) = match found {
            Some((n, e)) => (n, e),
            None => (report.max_vertices, report.max_vertices * (report.max_vertices - 1) / 2),
        };
        let full = |n: usize| n * n.saturating_sub(1) / 2;
        let needed = (1..upto_n).map(full).max().unwrap_or(0).max(need_last);
        if max_e < needed {
            return Err(CensusError::IncompleteCoverage(format!(
                "edge cap {max_e} hides cells up to {needed} edges"
            )));
        }
    }
    Ok(found)
}

/// Per-cell counts as CSV.
pub fn write_csv(report: &CensusReport, mut w: impl Write) -> io::Result<()> {
    writeln!(w, "n,e,coherent,incoherent,unknown,total")?;
    for c in &report.cells {
        writeln!(
            w,
            "{},{},{},{},{},{}",
            c.n,
            c.e,
            c.coherent,
            c.incoherent,
            c.unknown,
            c.total()
        )?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_on_four_vertices() {
        let mut cfg = CensusConfig::new(CensusFlavor::Racg, 4);
        cfg.min_vertices = 4;
        assert_eq!(enumerate_graphs(&cfg).unwrap().count(), 64);
        cfg.dedup = true;
        assert_eq!(enumerate_graphs(&cfg).unwrap().count(), 11);
        let one = CensusConfig::new(CensusFlavor::Raag, 1);
        assert_eq!(enumerate_graphs(&one).unwrap().count(), 1);
    }

    #[test]
    fn coxeter_label_enumeration() {
        let mut cfg = CensusConfig::new("coxeter:2,3".parse().unwrap(), 3);
        cfg.min_vertices = 3;
        assert_eq!(enumerate_graphs(&cfg).unwrap().count(), 27);
        assert!("coxeter:1".parse::<CensusFlavor>().is_err());
    }

    #[test]
    fn small_raag_census() {
        let report = run_census(&CensusConfig::new(CensusFlavor::Raag, 4)).unwrap();
        assert_eq!(smallest_incoherent(&report).unwrap(), Some((4, 4)));
        assert_eq!(report.cell(4, 4).unwrap().incoherent, 3);
        assert!(report.verification_failures.is_empty());
    }

    #[test]
    fn edge_cap_coverage() {
        let mut cfg = CensusConfig::new(CensusFlavor::Racg, 3);
        cfg.max_edges = Some(1);
        let report = run_census(&cfg).unwrap();
        assert!(smallest_incoherent(&report).is_err());
    }

    #[test]
    fn resume_skips_known_keys() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("records.jsonl");
        let mut cfg = CensusConfig::new(CensusFlavor::Racg, 4);
        cfg.out = Some(path.clone());
        let first = run_census(&cfg).unwrap();
        let lines = std::fs::read_to_string(&path).unwrap().lines().count();
        assert_eq!(lines, first.classified);
        let second = run_census(&cfg).unwrap();
        assert_eq!(second.classified, 0);
        assert_eq!(second.resumed, first.classified);
        assert_eq!(second.cells, first.cells);
        assert_eq!(std::fs::read_to_string(&path).unwrap().lines().count(), lines);
    }

    #[test]
    fn csv_shape() {
        let report = run_census(&CensusConfig::new(CensusFlavor::Racg, 2)).unwrap();
        let mut buf = Vec::new();
        write_csv(&report, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text, "n,e,coherent,incoherent,unknown,total\n1,0,1,0,0,1\n2,0,1,0,0,1\n2,1,1,0,0,1\n");
    }
}
