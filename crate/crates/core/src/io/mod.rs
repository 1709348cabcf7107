//! Text formats: LIBSVM examples, point clouds, graphs with seeds, and
//! iteration traces.
//!
//! Every parser takes the text plus the path it came from, so errors carry
//! the path and a 1-based line number. `#` starts a comment and blank lines
//! are skipped in all formats.

pub mod graph;
pub mod libsvm;
pub mod points;
pub mod trace;

use std::fs;
use std::path::Path;

use crate::error::{Error, Result};

pub use graph::{load_graph, parse_graph};
pub use libsvm::{format_libsvm, load_libsvm, parse_libsvm, write_libsvm};
pub use points::{format_points, load_points, parse_points, write_points};
pub use trace::{
    format_summary, format_trace, parse_trace, read_trace, summarize, write_summary, write_trace, SweepRow,
    TraceSummary, SUMMARY_HEADER, TRACE_HEADER,
};

pub(crate) fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::io(path, e))
}

pub(crate) fn write_text(path: &Path, text: &str) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    }
    fs::write(path, text).map_err(|e| Error::io(path, e))
}

/// Non-empty lines with comments stripped, paired with 1-based line numbers.
pub(crate) fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let body = line.split('#').next().unwrap_or("").trim();
        (!body.is_empty()).then_some((i + 1, body))
    })
}

pub(crate) fn parse_f64(token: &str) -> Option<f64> {
    token.parse::<f64>().ok().filter(|v| v.is_finite())
}
