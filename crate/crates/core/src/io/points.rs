//! Point clouds, one comma-separated point per line.

use std::path::Path;

use crate::error::{Error, Result};

use super::{content_lines, parse_f64, read_text, write_text};

pub fn parse_points(text: &str, path: &Path) -> Result<Vec<Vec<f64>>> {
    let mut points: Vec<Vec<f64>> = Vec::new();
    for (line, body) in content_lines(text) {
        let mut p = Vec::new();
        for tok in body.split(',') {
            match parse_f64(tok.trim()) {
                Some(v) => p.push(v),
                None => return Err(Error::parse(path, line, format!("bad coordinate {:?}", tok.trim()))),
            }
        }
        if let Some(first) = points.first() {
            if first.len() != p.len() {
                return Err(Error::parse(
                    path,
                    line,
                    format!("{} coordinates, expected {}", p.len(), first.len()),
                ));
            }
        }
        points.push(p);
    }
    if points.is_empty() {
        return Err(Error::parse(path, 0, "no points"));
    }
    Ok(points)
}

pub fn load_points(path: impl AsRef<Path>) -> Result<Vec<Vec<f64>>> {
    let path = path.as_ref();
    parse_points(&read_text(path)?, path)
}

pub fn format_points(points: &[Vec<f64>]) -> String {
    let mut out = String::new();
    for p in points {
        let line: Vec<String> = p.iter().map(|v| format!("{v:?}")).collect();
        out.push_str(&line.join(","));
        out.push('\n');
    }
    out
}

pub fn write_points(path: impl AsRef<Path>, points: &[Vec<f64>]) -> Result<()> {
    write_text(path.as_ref(), &format_points(points))
}
