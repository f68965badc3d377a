//! Corpus verification: per-graph records, corpus summaries and reports.
//!
//! For each 3K1-free graph the record holds exact Δ, ω and χ and checks
//!
//! - `mr2`: χ ≤ max{ω, Δ-1} whenever Δ ≥ 8;
//! - `mr1`: χ ≤ Δ-1 whenever ω = 4 and Δ ≥ 7;
//! - `bk`: χ ≤ max{ω, Δ-1} whenever Δ ≥ 9;
//! - `statement_I`: for every vertex `u`, the vertices outside `N[u]` form a
//!   clique of size at most ω.
//!
//! A pass flag is false only when its check applies and fails. Records are
//! written as JSON lines in corpus order.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs::File;
use std::io::{self, BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::canon::{canonical_form, corpus_3k1_free, CanonError, MAX_CANON_VERTICES};
use crate::chromatic::chromatic_number;
use crate::graph::Graph;
use crate::graph6::{from_graph6, to_graph6, Graph6Error};
use crate::invariants::{find_independent_triple, max_clique, max_degree, statement_i_holds};
use crate::kempe::{color_3k1_free, EngineTelemetry, SearchBudget, MIN_DELTA_FOR_BOUND};

/// Δ threshold for the `mr1` check (which also needs ω = 4).
pub const MR1_MIN_DELTA: usize = 7;
pub const MR1_OMEGA: usize = 4;
/// Δ threshold for the `bk` check.
pub const BK_MIN_DELTA: usize = 9;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("line {line}: {source}")]
    Graph6 { line: usize, source: Graph6Error },
    #[error("line {line}: {source}")]
    Json { line: usize, source: serde_json::Error },
    #[error(transparent)]
    Canon(#[from] CanonError),
    #[error("write failed: {0}")]
    Write(#[from] io::Error),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationRecord {
    /// Canonical graph6 (plain graph6 above the canonical-labeling limit).
    pub id: String,
    pub n: usize,
    pub delta: usize,
    pub omega: usize,
    pub chi: usize,
    /// max{ω, Δ-1}
    pub bound_mr2: usize,
    pub mr2_applicable: bool,
    pub mr2_pass: bool,
    pub mr1_applicable: bool,
    pub mr1_pass: bool,
    pub bk_applicable: bool,
    pub bk_pass: bool,
    #[serde(rename = "statement_I_pass")]
    pub statement_i_pass: bool,
    pub engine: EngineTelemetry,
    /// Colors used by the move engine's coloring.
    pub engine_colors: usize,
    pub three_k1_free: bool,
    pub diagnostic: Option<String>,
}

impl VerificationRecord {
    pub fn is_violation(&self) -> bool {
        !(self.mr2_pass && self.mr1_pass && self.bk_pass && self.statement_i_pass)
    }

    /// Names of the failed checks.
    pub fn failed_checks(&self) -> Vec<&'static str> {
        [
            (self.mr2_pass, "mr2"),
            (self.mr1_pass, "mr1"),
            (self.bk_pass, "bk"),
            (self.statement_i_pass, "statement_I"),
        ]
        .into_iter()
        .filter(|(pass, _)| !pass)
        .map(|(_, name)| name)
        .collect()
    }
}

fn graph_id(g: &Graph) -> String {
    if g.order() <= MAX_CANON_VERTICES {
        canonical_form(g).expect("order checked").into_string()
    } else {
        to_graph6(g)
    }
}

fn inapplicable(g: &Graph, diagnostic: String) -> VerificationRecord {
    let (delta, omega, chi) = if g.order() == 0 {
        (0, 0, 0)
    } else {
        (
            max_degree(g).expect("non-empty"),
            max_clique(g).expect("non-empty").omega,
            chromatic_number(g).expect("non-empty").0,
        )
    };
    VerificationRecord {
        id: graph_id(g),
        n: g.order(),
        delta,
        omega,
        chi,
        bound_mr2: omega.max(delta.saturating_sub(1)),
        mr2_applicable: false,
        mr2_pass: true,
        mr1_applicable: false,
        mr1_pass: true,
        bk_applicable: false,
        bk_pass: true,
        statement_i_pass: true,
        engine: EngineTelemetry::default(),
        engine_colors: 0,
        three_k1_free: false,
        diagnostic: Some(diagnostic),
    }
}

/// Computes every field with exact algorithms. Graphs that are not 3K1-free
/// (or empty) get a record with all checks inapplicable and a diagnostic.
pub fn verify_graph(g: &Graph, budget: SearchBudget) -> VerificationRecord {
    if g.order() == 0 {
        return inapplicable(g, "empty graph".into());
    }
    if let Some(triple) = find_independent_triple(g) {
        return inapplicable(g, format!("not 3K1-free: {triple:?} is independent"));
    }
    let delta = max_degree(g).expect("non-empty");
    let omega = max_clique(g).expect("non-empty").omega;
    let (chi, _) = chromatic_number(g).expect("non-empty");
    let bound_mr2 = omega.max(delta.saturating_sub(1));

    let mr2_applicable = delta >= MIN_DELTA_FOR_BOUND;
    let mr1_applicable = omega == MR1_OMEGA && delta >= MR1_MIN_DELTA;
    let bk_applicable = delta >= BK_MIN_DELTA;
    let statement_i_pass = (0..g.order()).all(|u| {
        statement_i_holds(g, g.closed_neighborhood(u).expect("in range"), omega)
    });

    let engine = color_3k1_free(g, budget).expect("non-empty");
    VerificationRecord {
        id: graph_id(g),
        n: g.order(),
        delta,
        omega,
        chi,
        bound_mr2,
        mr2_applicable,
        mr2_pass: !mr2_applicable || chi <= bound_mr2,
        mr1_applicable,
        mr1_pass: !mr1_applicable || chi < delta,
        bk_applicable,
        bk_pass: !bk_applicable || chi <= bound_mr2,
        statement_i_pass,
        engine: engine.telemetry,
        engine_colors: engine.coloring.used_colors(),
        three_k1_free: true,
        diagnostic: None,
    }
}

/// Counts per applicability class. Aggregation is a sum, so summaries of
/// disjoint record sets can be merged in any order.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusSummary {
    pub graphs: usize,
    pub non_3k1_free: usize,
    pub mr2_applicable: usize,
    pub mr2_violations: usize,
    pub mr1_applicable: usize,
    pub mr1_violations: usize,
    pub bk_applicable: usize,
    pub bk_violations: usize,
    pub statement_i_violations: usize,
    pub engine_failures: usize,
    pub engine: EngineTelemetry,
    /// `(check, id)` for every failed check, in record order.
    pub violations: Vec<(String, String)>,
}

impl CorpusSummary {
    pub fn add(&mut self, r: &VerificationRecord) {
        self.graphs += 1;
        self.non_3k1_free += !r.three_k1_free as usize;
        self.mr2_applicable += r.mr2_applicable as usize;
        self.mr2_violations += !r.mr2_pass as usize;
        self.mr1_applicable += r.mr1_applicable as usize;
        self.mr1_violations += !r.mr1_pass as usize;
        self.bk_applicable += r.bk_applicable as usize;
        self.bk_violations += !r.bk_pass as usize;
        self.statement_i_violations += !r.statement_i_pass as usize;
        self.engine_failures += r.engine.failed as usize;
        self.engine.merge(&r.engine);
        for check in r.failed_checks() {
            self.violations.push((check.to_string(), r.id.clone()));
        }
    }

    pub fn merge(&mut self, other: &CorpusSummary) {
        self.graphs += other.graphs;
        self.non_3k1_free += other.non_3k1_free;
        self.mr2_applicable += other.mr2_applicable;
        self.mr2_violations += other.mr2_violations;
        self.mr1_applicable += other.mr1_applicable;
        self.mr1_violations += other.mr1_violations;
        self.bk_applicable += other.bk_applicable;
        self.bk_violations += other.bk_violations;
        self.statement_i_violations += other.statement_i_violations;
        self.engine_failures += other.engine_failures;
        self.engine.merge(&other.engine);
        self.violations.extend(other.violations.iter().cloned());
    }

    pub fn from_records(records: &[VerificationRecord]) -> Self {
        let mut s = CorpusSummary::default();
        for r in records {
            s.add(r);
        }
        s
    }

    pub fn has_violations(&self) -> bool {
        !self.violations.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CorpusSource {
    /// 3K1-free classes on `n` vertices from the enumerator.
    Enumerate { n: usize },
    /// One graph6 string per line.
    File(PathBuf),
}

/// Reads graph6 lines, skipping blank lines and `>>graph6<<` headers.
pub fn read_graph6<R: BufRead>(reader: R) -> Result<Vec<Graph>, HarnessError> {
    let mut out = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        let text = line.trim_end_matches('\r');
        let text = text.strip_prefix(">>graph6<<").unwrap_or(text);
        if text.is_empty() {
            continue;
        }
        let g = from_graph6(text).map_err(|source| HarnessError::Graph6 { line: idx + 1, source })?;
        out.push(g);
    }
    Ok(out)
}

pub fn write_graph6<W: Write>(mut writer: W, graphs: &[Graph]) -> io::Result<()> {
    for g in graphs {
        writeln!(writer, "{}", to_graph6(g))?;
    }
    writer.flush()
}

fn open(path: &Path) -> Result<BufReader<File>, HarnessError> {
    File::open(path)
        .map(BufReader::new)
        .map_err(|source| HarnessError::Io { path: path.to_path_buf(), source })
}

/// Graphs of the source with Δ ≥ `min_delta`, in source order.
pub fn load_corpus(source: &CorpusSource, min_delta: usize) -> Result<Vec<Graph>, HarnessError> {
    let graphs = match source {
        CorpusSource::Enumerate { n } => corpus_3k1_free(*n, min_delta)?
            .into_iter()
            .map(|c| c.graph)
            .collect(),
        CorpusSource::File(path) => read_graph6(open(path)?)?
            .into_iter()
            .filter(|g| max_degree(g).unwrap_or(0) >= min_delta)
            .collect(),
    };
    Ok(graphs)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusRun {
    pub records: Vec<VerificationRecord>,
    pub summary: CorpusSummary,
}

/// Verifies graphs in parallel; records come back in input order.
pub fn verify_graphs(graphs: &[Graph], budget: SearchBudget) -> CorpusRun {
    let records: Vec<VerificationRecord> =
        graphs.par_iter().map(|g| verify_graph(g, budget)).collect();
    let summary = CorpusSummary::from_records(&records);
    CorpusRun { records, summary }
}

pub fn verify_corpus(
    source: &CorpusSource,
    min_delta: usize,
    budget: SearchBudget,
) -> Result<CorpusRun, HarnessError> {
    Ok(verify_graphs(&load_corpus(source, min_delta)?, budget))
}

pub fn write_records<W: Write>(mut writer: W, records: &[VerificationRecord]) -> io::Result<()> {
    for r in records {
        serde_json::to_writer(&mut writer, r)?;
        writer.write_all(b"\n")?;
    }
    writer.flush()
}

pub fn read_records<R: BufRead>(reader: R) -> Result<Vec<VerificationRecord>, HarnessError> {
    let mut out = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let r = serde_json::from_str(&line).map_err(|source| HarnessError::Json { line: idx + 1, source })?;
        out.push(r);
    }
    Ok(out)
}

pub fn read_records_file(path: &Path) -> Result<Vec<VerificationRecord>, HarnessError> {
    read_records(open(path)?)
}

/// Aggregated view of a record set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub summary: CorpusSummary,
    pub delta_histogram: BTreeMap<usize, usize>,
    pub omega_histogram: BTreeMap<usize, usize>,
    pub chi_histogram: BTreeMap<usize, usize>,
}

pub fn report(records: &[VerificationRecord]) -> Report {
    let mut delta_histogram = BTreeMap::new();
    let mut omega_histogram = BTreeMap::new();
    let mut chi_histogram = BTreeMap::new();
    for r in records {
        *delta_histogram.entry(r.delta).or_insert(0) += 1;
        *omega_histogram.entry(r.omega).or_insert(0) += 1;
        *chi_histogram.entry(r.chi).or_insert(0) += 1;
    }
    Report {
        summary: CorpusSummary::from_records(records),
        delta_histogram,
        omega_histogram,
        chi_histogram,
    }
}

fn rate(pass: usize, total: usize) -> String {
    if total == 0 {
        "-".into()
    } else {
        format!("{:.2}%", 100.0 * pass as f64 / total as f64)
    }
}

impl Report {
    pub fn to_text(&self) -> String {
        let s = &self.summary;
        let mut out = String::new();
        let _ = writeln!(out, "graphs          {:>8}", s.graphs);
        let _ = writeln!(out, "not 3K1-free    {:>8}", s.non_3k1_free);
        let _ = writeln!(out);
        let _ = writeln!(out, "{:<12} {:>10} {:>10} {:>10}", "check", "applicable", "violations", "pass rate");
        for (name, applicable, violations) in [
            ("mr2", s.mr2_applicable, s.mr2_violations),
            ("mr1", s.mr1_applicable, s.mr1_violations),
            ("bk", s.bk_applicable, s.bk_violations),
            ("statement_I", s.graphs - s.non_3k1_free, s.statement_i_violations),
        ] {
            let _ = writeln!(
                out,
                "{:<12} {:>10} {:>10} {:>10}",
                name,
                applicable,
                violations,
                rate(applicable - violations, applicable)
            );
        }
        for (title, hist) in [
            ("delta", &self.delta_histogram),
            ("omega", &self.omega_histogram),
            ("chi", &self.chi_histogram),
        ] {
            let _ = writeln!(out);
            let _ = writeln!(out, "{:<6} {:>8}", title, "graphs");
            for (value, count) in hist {
                let _ = writeln!(out, "{:<6} {:>8}", value, count);
            }
        }
        let _ = writeln!(out);
        let _ = writeln!(out, "engine rule     {:>8}", s.engine.rule_count);
        let _ = writeln!(out, "engine search   {:>8}", s.engine.search_count);
        let _ = writeln!(out, "engine fallback {:>8}", s.engine.fallback_count);
        let _ = writeln!(out, "engine failures {:>8}", s.engine_failures);
        if s.has_violations() {
            let _ = writeln!(out);
            let _ = writeln!(out, "violations:");
            for (check, id) in &s.violations {
                let _ = writeln!(out, "  {check:<12} {id}");
            }
        }
        out
    }

    /// `section,key,value` rows.
    pub fn to_csv(&self) -> String {
        let s = &self.summary;
        let mut out = String::from("section,key,value\n");
        for (key, value) in [
            ("graphs", s.graphs),
            ("non_3k1_free", s.non_3k1_free),
            ("mr2_applicable", s.mr2_applicable),
            ("mr2_violations", s.mr2_violations),
            ("mr1_applicable", s.mr1_applicable),
            ("mr1_violations", s.mr1_violations),
            ("bk_applicable", s.bk_applicable),
            ("bk_violations", s.bk_violations),
            ("statement_I_violations", s.statement_i_violations),
            ("engine_rule_count", s.engine.rule_count),
            ("engine_search_count", s.engine.search_count),
            ("engine_fallback_count", s.engine.fallback_count),
            ("engine_failures", s.engine_failures),
        ] {
            let _ = writeln!(out, "summary,{key},{value}");
        }
        for (title, hist) in [
            ("delta", &self.delta_histogram),
            ("omega", &self.omega_histogram),
            ("chi", &self.chi_histogram),
        ] {
            for (value, count) in hist {
                let _ = writeln!(out, "{title},{value},{count}");
            }
        }
        for (check, id) in &s.violations {
            let _ = writeln!(out, "violation,{check},{id}");
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::VertexSet;

    fn budget() -> SearchBudget {
        SearchBudget::default()
    }

    #[test]
    fn complete_graph_record() {
        let r = verify_graph(&Graph::complete(9).unwrap(), budget());
        assert_eq!((r.n, r.delta, r.omega, r.chi, r.bound_mr2), (9, 8, 9, 9, 9));
        assert!(r.mr2_applicable && r.mr2_pass);
        assert!(!r.bk_applicable && !r.mr1_applicable);
        assert!(r.statement_i_pass);
        assert_eq!(r.engine_colors, 9);
        assert!(!r.is_violation());
    }

    #[test]
    fn clique_plus_isolated_vertex() {
        let g = Graph::star(8).unwrap().complement();
        let r = verify_graph(&g, budget());
        assert_eq!((r.delta, r.omega, r.chi), (7, 8, 8));
        assert!(!r.mr2_applicable && !r.bk_applicable);
        assert!(r.three_k1_free);
    }

    #[test]
    fn pentagon_join_clique() {
        // complement of C5 + 5K1 is C5 joined with K5
        let mut tf = Graph::cycle(5).unwrap();
        for _ in 0..5 {
            tf = tf.extended(VertexSet::EMPTY).unwrap();
        }
        let r = verify_graph(&tf.complement(), budget());
        assert_eq!((r.n, r.delta, r.omega, r.chi, r.bound_mr2), (10, 9, 7, 8, 8));
        assert!(r.mr2_applicable && r.mr2_pass);
        assert!(r.bk_applicable && r.bk_pass);
        assert!(!r.engine.failed);
        assert!(r.engine_colors <= 8);
    }

    #[test]
    fn claw_is_flagged_not_crashed() {
        let r = verify_graph(&Graph::star(3).unwrap(), budget());
        assert!(!r.three_k1_free);
        assert!(r.diagnostic.as_deref().unwrap().contains("not 3K1-free"));
        assert!(!r.mr2_applicable && !r.mr1_applicable && !r.bk_applicable);
        assert!(!r.is_violation());
    }

    #[test]
    fn blown_up_pentagon_violates_delta_minus_one_bound() {
        // C5 with every vertex replaced by a triangle: 3K1-free, Δ = 8, ω = 6, χ = 8 > 7
        let mut edges = Vec::new();
        for i in 0..5 {
            for a in 0..3 {
                for b in a + 1..3 {
                    edges.push((3 * i + a, 3 * i + b));
                }
                for b in 0..3 {
                    edges.push((3 * i + a, 3 * ((i + 1) % 5) + b));
                }
            }
        }
        let g = Graph::build(15, edges).unwrap();
        let r = verify_graph(&g, budget());
        assert!(r.three_k1_free);
        assert_eq!((r.delta, r.omega, r.chi, r.bound_mr2), (8, 6, 8, 7));
        assert!(r.mr2_applicable && !r.mr2_pass);
        assert!(!r.bk_applicable);
        assert!(r.engine.failed);
        assert_eq!(r.engine_colors, 8);
        assert!(r.statement_i_pass);
        assert_eq!(r.failed_checks(), vec!["mr2"]);

        let rep = report(std::slice::from_ref(&r));
        assert_eq!(rep.summary.mr2_violations, 1);
        assert!(rep.to_text().contains(&r.id));
        assert!(rep.to_csv().contains(&format!("violation,mr2,{}", r.id)));
    }

    #[test]
    fn record_json_field_names() {
        let r = verify_graph(&Graph::complete(3).unwrap(), budget());
        let json = serde_json::to_string(&r).unwrap();
        for key in [
            "\"id\"", "\"n\"", "\"delta\"", "\"omega\"", "\"chi\"", "\"bound_mr2\"",
            "\"mr2_applicable\"", "\"mr2_pass\"", "\"mr1_applicable\"", "\"mr1_pass\"",
            "\"bk_applicable\"", "\"bk_pass\"", "\"statement_I_pass\"", "\"engine\"",
            "\"rule_count\"", "\"search_count\"", "\"fallback_count\"", "\"failed\"",
        ] {
            assert!(json.contains(key), "{key} missing from {json}");
        }
        let mut buf = Vec::new();
        write_records(&mut buf, &[r.clone(), r.clone()]).unwrap();
        assert_eq!(read_records(buf.as_slice()).unwrap(), vec![r.clone(), r]);
    }

    #[test]
    fn graph6_reader_reports_line_numbers() {
        let text = ">>graph6<<A_\n\nBw\nB!\n";
        match read_graph6(text.as_bytes()) {
            Err(HarnessError::Graph6 { line, .. }) => assert_eq!(line, 4),
            other => panic!("unexpected {other:?}"),
        }
        let ok = read_graph6("A_\r\nBw\n".as_bytes()).unwrap();
        assert_eq!(ok.len(), 2);
        assert!(read_graph6("".as_bytes()).unwrap().is_empty());
    }

    #[test]
    fn single_record_report() {
        let r = verify_graph(&Graph::cycle(5).unwrap(), budget());
        let rep = report(&[r]);
        assert_eq!(rep.delta_histogram.len(), 1);
        assert_eq!(rep.chi_histogram.get(&3), Some(&1));
        assert_eq!(rep.summary.graphs, 1);
        let text = rep.to_text();
        assert!(text.contains("graphs"));
        assert!(!text.contains("violations:"));
    }

    #[test]
    fn summary_merge_matches_sequential_add() {
        let graphs: Vec<Graph> = corpus_3k1_free(6, 0).unwrap().into_iter().map(|c| c.graph).collect();
        let run = verify_graphs(&graphs, budget());
        let (left, right) = run.records.split_at(15);
        let mut merged = CorpusSummary::from_records(right);
        let mut first = CorpusSummary::from_records(left);
        first.merge(&merged);
        merged = first;
        assert_eq!(merged, run.summary);
        assert_eq!(run.summary.graphs, 38);
    }
}
