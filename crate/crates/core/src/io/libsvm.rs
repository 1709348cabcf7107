//! LIBSVM text format: `label idx:val idx:val ...` with 1-based indices and
//! labels `+1` / `-1`. The feature dimension is the largest index seen.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::problems::SvmData;

use super::{content_lines, parse_f64, read_text, write_text};

pub fn parse_libsvm(text: &str, path: &Path) -> Result<SvmData> {
    let mut rows: Vec<(bool, BTreeMap<usize, f64>)> = Vec::new();
    let mut dim = 0;
    for (line, body) in content_lines(text) {
        let mut tokens = body.split_whitespace();
        let label = tokens.next().unwrap_or_default();
        let positive = match parse_f64(label) {
            Some(1.0) => true,
            Some(-1.0) => false,
            _ => return Err(Error::parse(path, line, format!("label {label:?} is not +1 or -1"))),
        };
        let mut features = BTreeMap::new();
        for tok in tokens {
            let Some((idx, val)) = tok.split_once(':') else {
                return Err(Error::parse(path, line, format!("expected idx:val, found {tok:?}")));
            };
            let idx = match idx.parse::<usize>() {
                Ok(i) if i >= 1 => i,
                _ => return Err(Error::parse(path, line, format!("bad feature index {idx:?}"))),
            };
            let Some(val) = parse_f64(val) else {
                return Err(Error::parse(path, line, format!("bad feature value {val:?}")));
            };
            if features.insert(idx, val).is_some() {
                return Err(Error::parse(path, line, format!("duplicate feature index {idx}")));
            }
            dim = dim.max(idx);
        }
        rows.push((positive, features));
    }
    if rows.is_empty() {
        return Err(Error::parse(path, 0, "no examples"));
    }
    let (mut positive, mut negative) = (Vec::new(), Vec::new());
    for (is_pos, features) in rows {
        let mut col = vec![0.0; dim];
        for (idx, val) in features {
            col[idx - 1] = val;
        }
        if is_pos {
            positive.push(col);
        } else {
            negative.push(col);
        }
    }
    SvmData::new(dim, positive, negative)
}

pub fn load_libsvm(path: impl AsRef<Path>) -> Result<SvmData> {
    let path = path.as_ref();
    parse_libsvm(&read_text(path)?, path)
}

/// Positive examples first, zeros omitted, values in shortest round-trip
/// form.
pub fn format_libsvm(data: &SvmData) -> String {
    let mut out = String::new();
    for (label, cols) in [("+1", &data.positive), ("-1", &data.negative)] {
        for col in cols.iter() {
            out.push_str(label);
            for (i, &v) in col.iter().enumerate() {
                if v != 0.0 {
                    let _ = write!(out, " {}:{v:?}", i + 1);
                }
            }
            out.push('\n');
        }
    }
    out
}

pub fn write_libsvm(path: impl AsRef<Path>, data: &SvmData) -> Result<()> {
    write_text(path.as_ref(), &format_libsvm(data))
}
