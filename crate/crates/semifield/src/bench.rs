//! Corpus benchmarks: per-statement verdicts, search effort and observed
//! translation sizes against their bounds.

use std::io::{self, Write};
use std::time::Instant;

use semifield_core::decide::{decide_statement_with, Class, Limits, Status};
use semifield_core::terms::{Signature, Statement};
use semifield_core::translate::{ell_to_basic_with, star_translate, BasicInequation};
use semifield_core::Result;
use serde::Serialize;
use serde_json::json;

use crate::corpus::read_corpus;
use crate::record::RunRecord;

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct Row {
    pub index: usize,
    pub line: usize,
    pub statement: String,
    pub size: usize,
    /// `valid`, `invalid`, `budget` or `error`.
    pub status: String,
    pub nodes: u64,
    /// Present when timings were requested.
    pub elapsed_ms: Option<f64>,
    /// Size of the inverse-free translation over `7S^2 + S`, for basic
    /// inequations.
    pub star_ratio: Option<f64>,
    /// Largest basic output over `2S^2`, for ℓ-group inputs already in
    /// meet-of-joins shape.
    pub basic_ratio: Option<f64>,
}

#[derive(Debug, Clone, Default, Serialize, PartialEq)]
pub struct Summary {
    pub rows: usize,
    pub valid: usize,
    pub invalid: usize,
    pub budget: usize,
    pub errors: usize,
    pub total_nodes: u64,
    pub max_nodes: u64,
    pub total_ms: Option<f64>,
    pub max_ms: Option<f64>,
    pub max_star_ratio: Option<f64>,
    pub max_basic_ratio: Option<f64>,
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct Report {
    pub class: Option<Class>,
    pub rows: Vec<Row>,
    pub summary: Summary,
}

/// The class a corpus of the given signature is decided over by default.
pub fn default_class(sig: Signature) -> Class {
    match sig {
        Signature::Monoid | Signature::Semiring => Class::Semifield,
        Signature::Semiring0 => Class::Semifield0,
        Signature::Group | Signature::Lgroup => Class::Lgroup,
    }
}

fn star_ratio(st: &Statement) -> Option<f64> {
    let b = BasicInequation::from_statement(st).ok()?;
    let s = b.size() as f64;
    Some(star_translate(&b).size() as f64 / (7.0 * s * s + s))
}

fn basic_ratio(st: &Statement, limits: &Limits) -> Option<f64> {
    if st.signature != Signature::Lgroup {
        return None;
    }
    let t = ell_to_basic_with(st, limits.terms).ok()?;
    if !t.shaped {
        return None;
    }
    let s = st.size() as f64;
    let largest = t
        .outputs
        .iter()
        .map(BasicInequation::size)
        .max()
        .unwrap_or(0);
    Some(largest as f64 / (2.0 * s * s))
}

fn max_opt(a: Option<f64>, b: Option<f64>) -> Option<f64> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.max(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

pub fn run_bench(
    text: &str,
    class: Option<Class>,
    limits: &Limits,
    timings: bool,
) -> Result<Report> {
    let corpus = read_corpus(text, Signature::Lgroup)?;
    let mut rows = Vec::with_capacity(corpus.entries.len());
    let mut summary = Summary::default();
    for (i, entry) in corpus.entries.iter().enumerate() {
        let st = &entry.statement;
        let class = class.unwrap_or_else(|| default_class(st.signature));
        let start = Instant::now();
        let result = decide_statement_with(st, class, limits);
        let elapsed_ms = timings.then(|| start.elapsed().as_secs_f64() * 1e3);
        let (status, nodes) = match &result {
            Ok(v) if v.status == Status::Valid => ("valid", v.stats.nodes),
            Ok(v) => ("invalid", v.stats.nodes),
            Err(e) if e.is_budget() => ("budget", 0),
            Err(_) => ("error", 0),
        };
        match status {
            "valid" => summary.valid += 1,
            "invalid" => summary.invalid += 1,
            "budget" => summary.budget += 1,
            _ => summary.errors += 1,
        }
        let row = Row {
            index: i + 1,
            line: entry.line,
            statement: st.to_string(),
            size: st.size(),
            status: status.to_string(),
            nodes,
            elapsed_ms,
            star_ratio: star_ratio(st),
            basic_ratio: basic_ratio(st, limits),
        };
        summary.total_nodes += nodes;
        summary.max_nodes = summary.max_nodes.max(nodes);
        if let Some(ms) = elapsed_ms {
            *summary.total_ms.get_or_insert(0.0) += ms;
            summary.max_ms = max_opt(summary.max_ms, Some(ms));
        }
        summary.max_star_ratio = max_opt(summary.max_star_ratio, row.star_ratio);
        summary.max_basic_ratio = max_opt(summary.max_basic_ratio, row.basic_ratio);
        rows.push(row);
    }
    summary.rows = rows.len();
    Ok(Report {
        class,
        rows,
        summary,
    })
}

fn ratio(r: Option<f64>) -> String {
    r.map_or_else(|| "-".to_string(), |x| format!("{x:.4}"))
}

/// Write the report as a text table, or as one record per row followed by a
/// summary record.
pub fn emit(report: &Report, json: bool, argv: &[String], out: &mut dyn Write) -> io::Result<()> {
    if json {
        for row in &report.rows {
            let rec = RunRecord::new("bench", argv, json!({ "row": row }));
            writeln!(out, "{}", rec.to_line())?;
        }
        let rec = RunRecord::new(
            "bench",
            argv,
            json!({ "class": report.class, "summary": report.summary }),
        );
        return writeln!(out, "{}", rec.to_line());
    }
    writeln!(
        out,
        "{:>5} {:>5} {:>8} {:>9} {:>10} {:>8} {:>8}  statement",
        "#", "size", "status", "nodes", "ms", "star", "basic"
    )?;
    for r in &report.rows {
        writeln!(
            out,
            "{:>5} {:>5} {:>8} {:>9} {:>10} {:>8} {:>8}  {}",
            r.index,
            r.size,
            r.status,
            r.nodes,
            r.elapsed_ms
                .map_or_else(|| "-".to_string(), |ms| format!("{ms:.3}")),
            ratio(r.star_ratio),
            ratio(r.basic_ratio),
            r.statement
        )?;
    }
    let s = &report.summary;
    writeln!(
        out,
        "rows {}: {} valid, {} invalid, {} over budget, {} errors",
        s.rows, s.valid, s.invalid, s.budget, s.errors
    )?;
    writeln!(out, "nodes: total {}, max {}", s.total_nodes, s.max_nodes)?;
    if let (Some(total), Some(max)) = (s.total_ms, s.max_ms) {
        writeln!(out, "time: total {total:.3} ms, max {max:.3} ms")?;
    }
    writeln!(
        out,
        "max size ratio: star {}, basic {}",
        ratio(s.max_star_ratio),
        ratio(s.max_basic_ratio)
    )
}
