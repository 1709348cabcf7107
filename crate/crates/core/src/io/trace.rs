//! Iteration traces and sweep summaries as CSV.
//!
//! Floats are written with 17 significant digits so traces parse back
//! without loss.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::solver::IterationRecord;

use super::{read_text, write_text};

pub const TRACE_HEADER: &str =
    "k,alpha,epsilon,objective,gap_surrogate,certified_bound,num_vertices,step_support,coreset_size,elapsed_ms";

pub const SUMMARY_HEADER: &str = "n,coreset_size,iterations,total_ms,ms_per_iter";

pub fn format_trace(records: &[IterationRecord]) -> String {
    let mut out = String::with_capacity(200 * (records.len() + 1));
    out.push_str(TRACE_HEADER);
    out.push('\n');
    for r in records {
        let _ = writeln!(
            out,
            "{},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{},{},{},{:.16e}",
            r.k,
            r.alpha,
            r.epsilon,
            r.objective,
            r.gap_surrogate,
            r.certified_bound,
            r.num_vertices,
            r.step_support,
            r.coreset_size,
            r.elapsed_ms
        );
    }
    out
}

pub fn write_trace(path: impl AsRef<Path>, records: &[IterationRecord]) -> Result<()> {
    write_text(path.as_ref(), &format_trace(records))
}

/// Parses a trace. Fields that are not stored (`subproblem_value`,
/// `descent_slack`) come back as NaN.
pub fn parse_trace(text: &str, path: &Path) -> Result<Vec<IterationRecord>> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, h)) if h.trim() == TRACE_HEADER => {}
        _ => return Err(Error::parse(path, 1, "missing or unexpected trace header")),
    }
    let mut out = Vec::new();
    for (i, line) in lines {
        if line.trim().is_empty() {
            continue;
        }
        let line_no = i + 1;
        let f: Vec<&str> = line.trim().split(',').collect();
        if f.len() != 10 {
            return Err(Error::parse(
                path,
                line_no,
                format!("expected 10 fields, found {}", f.len()),
            ));
        }
        let int = |s: &str| {
            s.parse::<usize>()
                .map_err(|_| Error::parse(path, line_no, format!("bad integer {s:?}")))
        };
        let float = |s: &str| {
            s.parse::<f64>()
                .map_err(|_| Error::parse(path, line_no, format!("bad number {s:?}")))
        };
        out.push(IterationRecord {
            k: int(f[0])?,
            alpha: float(f[1])?,
            epsilon: float(f[2])?,
            objective: float(f[3])?,
            gap_surrogate: float(f[4])?,
            certified_bound: float(f[5])?,
            num_vertices: int(f[6])?,
            step_support: int(f[7])?,
            coreset_size: int(f[8])?,
            elapsed_ms: float(f[9])?,
            subproblem_value: f64::NAN,
            descent_slack: f64::NAN,
        });
    }
    Ok(out)
}

pub fn read_trace(path: impl AsRef<Path>) -> Result<Vec<IterationRecord>> {
    let path = path.as_ref();
    parse_trace(&read_text(path)?, path)
}

/// Aggregates of one trace.
#[derive(Debug, Clone, PartialEq)]
pub struct TraceSummary {
    pub iterations: usize,
    pub final_objective: f64,
    pub final_certified_bound: f64,
    pub coreset_size: usize,
    pub total_ms: f64,
    pub ms_per_iter: f64,
}

pub fn summarize(records: &[IterationRecord]) -> Option<TraceSummary> {
    let last = records.last()?;
    let iterations = records.len();
    Some(TraceSummary {
        iterations,
        final_objective: last.objective,
        final_certified_bound: last.certified_bound,
        coreset_size: last.coreset_size,
        total_ms: last.elapsed_ms,
        ms_per_iter: last.elapsed_ms / iterations as f64,
    })
}

/// One row of a sweep summary.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub n: usize,
    pub summary: TraceSummary,
}

pub fn format_summary(rows: &[SweepRow]) -> String {
    let mut out = String::from(SUMMARY_HEADER);
    out.push('\n');
    for r in rows {
        let s = &r.summary;
        let _ = writeln!(
            out,
            "{},{},{},{:.16e},{:.16e}",
            r.n, s.coreset_size, s.iterations, s.total_ms, s.ms_per_iter
        );
    }
    out
}

pub fn write_summary(path: impl AsRef<Path>, rows: &[SweepRow]) -> Result<()> {
    write_text(path.as_ref(), &format_summary(rows))
}
