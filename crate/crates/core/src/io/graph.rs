//! Weighted edge lists (`u v w`, 0-based node ids) and seed files
//! (`node label`).
//!
//! The node count is one past the largest id in the edge list. Repeated
//! edges, in either orientation, are merged by summing their weights.

use std::collections::HashMap;
use std::path::Path;

use crate::error::{Error, Result};
use crate::problems::Graph;

use super::{content_lines, parse_f64, read_text};

/// Parses edges and seeds. `num_labels` defaults to one past the largest
/// seed label.
pub fn parse_graph(
    edges_text: &str,
    edges_path: &Path,
    seeds_text: &str,
    seeds_path: &Path,
    num_labels: Option<usize>,
) -> Result<Graph> {
    let mut edges: Vec<(usize, usize, f64)> = Vec::new();
    let mut seen: HashMap<(usize, usize), usize> = HashMap::new();
    let mut num_nodes = 0;
    for (line, body) in content_lines(edges_text) {
        let tokens: Vec<&str> = body.split_whitespace().collect();
        let [u, v, w] = tokens[..] else {
            return Err(Error::parse(edges_path, line, "expected \"u v w\""));
        };
        let (Ok(u), Ok(v)) = (u.parse::<usize>(), v.parse::<usize>()) else {
            return Err(Error::parse(edges_path, line, "node ids must be non-negative integers"));
        };
        let Some(w) = parse_f64(w) else {
            return Err(Error::parse(edges_path, line, format!("bad weight {w:?}")));
        };
        if u == v {
            return Err(Error::parse(edges_path, line, format!("self-loop on node {u}")));
        }
        if w < 0.0 {
            return Err(Error::parse(edges_path, line, format!("negative weight {w}")));
        }
        num_nodes = num_nodes.max(u + 1).max(v + 1);
        let key = (u.min(v), u.max(v));
        match seen.get(&key) {
            Some(&e) => {
                log::warn!(
                    "{}: line {line}: duplicate edge ({u}, {v}); weights summed",
                    edges_path.display()
                );
                edges[e].2 += w;
            }
            None => {
                seen.insert(key, edges.len());
                edges.push((u, v, w));
            }
        }
    }

    let mut seeds = Vec::new();
    for (line, body) in content_lines(seeds_text) {
        let tokens: Vec<&str> = body.split_whitespace().collect();
        let [node, label] = tokens[..] else {
            return Err(Error::parse(seeds_path, line, "expected \"node label\""));
        };
        let (Ok(node), Ok(label)) = (node.parse::<usize>(), label.parse::<usize>()) else {
            return Err(Error::parse(
                seeds_path,
                line,
                "node and label must be non-negative integers",
            ));
        };
        if node >= num_nodes {
            return Err(Error::parse(seeds_path, line, format!("unknown node {node}")));
        }
        if let Some(d) = num_labels {
            if label >= d {
                return Err(Error::parse(
                    seeds_path,
                    line,
                    format!("label {label} out of range 0..{d}"),
                ));
            }
        }
        if let Some(&(_, prev)) = seeds.iter().find(|&&(n, _)| n == node) {
            if prev != label {
                return Err(Error::parse(
                    seeds_path,
                    line,
                    format!("node {node} already seeded with label {prev}"),
                ));
            }
            continue;
        }
        seeds.push((node, label));
    }
    if seeds.is_empty() {
        return Err(Error::parse(seeds_path, 0, "no seeds"));
    }
    let num_labels = num_labels.unwrap_or_else(|| seeds.iter().map(|&(_, l)| l + 1).max().unwrap_or(1));
    Ok(Graph {
        num_nodes,
        num_labels,
        edges,
        seeds,
    })
}

pub fn load_graph(
    edges_path: impl AsRef<Path>,
    seeds_path: impl AsRef<Path>,
    num_labels: Option<usize>,
) -> Result<Graph> {
    let (ep, sp) = (edges_path.as_ref(), seeds_path.as_ref());
    parse_graph(&read_text(ep)?, ep, &read_text(sp)?, sp, num_labels)
}
