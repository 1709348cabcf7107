//! Relaxed multiway graph cut:
//! `min sum_{(u,v)} w_uv |x_u - x_v|_1` with each `x_u` a label distribution
//! and seeded nodes fixed to their label.
//!
//! Only free nodes are decision blocks. Seeded nodes enter the affine map as
//! constants, and edge weights scale the rows of the incidence map, so the
//! image is `w_e (x_u - x_v)` stacked over edges and labels.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::feasible::FeasibleSet;
use crate::instance::{ObjectiveKind, ProblemInstance};
use crate::linalg::{self, Matrix};
use crate::solver::Coreset;

#[derive(Debug, Clone, PartialEq)]
pub struct Graph {
    pub num_nodes: usize,
    pub num_labels: usize,
    /// `(u, v, weight)` with `u != v` and `weight >= 0`.
    pub edges: Vec<(usize, usize, f64)>,
    /// `(node, label)` pairs.
    pub seeds: Vec<(usize, usize)>,
}

#[derive(Debug, Clone)]
pub struct GraphCut {
    instance: ProblemInstance,
    graph: Graph,
    free_nodes: Vec<usize>,
    seed_label: Vec<Option<usize>>,
}

pub fn build_graph_cut(graph: &Graph) -> Result<GraphCut> {
    let n = graph.num_nodes;
    let d = graph.num_labels;
    if d == 0 {
        return Err(Error::InvalidData("at least one label is required".into()));
    }
    if graph.seeds.is_empty() {
        return Err(Error::InvalidData("at least one seed is required".into()));
    }
    for &(u, v, w) in &graph.edges {
        if u >= n || v >= n {
            return Err(Error::InvalidData(format!("edge ({u}, {v}) names an unknown node")));
        }
        if u == v {
            return Err(Error::InvalidData(format!("self-loop on node {u}")));
        }
        if !(w.is_finite() && w >= 0.0) {
            return Err(Error::InvalidData(format!("edge ({u}, {v}) has weight {w}")));
        }
    }
    let mut seed_label = vec![None; n];
    for &(node, label) in &graph.seeds {
        if node >= n {
            return Err(Error::InvalidData(format!("seed names unknown node {node}")));
        }
        if label >= d {
            return Err(Error::InvalidData(format!("seed label {label} out of range 0..{d}")));
        }
        match seed_label[node] {
            Some(l) if l != label => {
                return Err(Error::InvalidData(format!(
                    "node {node} seeded with labels {l} and {label}"
                )))
            }
            _ => seed_label[node] = Some(label),
        }
    }

    let free_nodes: Vec<usize> = (0..n).filter(|&u| seed_label[u].is_none()).collect();
    let mut block_of = vec![usize::MAX; n];
    for (b, &u) in free_nodes.iter().enumerate() {
        block_of[u] = b;
    }
    warn_unreachable(graph, &seed_label);

    let rows = graph.edges.len() * d;
    let mut triplets = Vec::new();
    let mut offset = vec![0.0; rows];
    for (e, &(u, v, w)) in graph.edges.iter().enumerate() {
        for (node, sign) in [(u, w), (v, -w)] {
            match seed_label[node] {
                Some(label) => offset[e * d + label] += sign,
                None => {
                    for l in 0..d {
                        triplets.push((e * d + l, block_of[node] * d + l, sign));
                    }
                }
            }
        }
    }
    let matrix = Matrix::from_triplets(rows, free_nodes.len() * d, triplets)?;
    let feasible = FeasibleSet::product(vec![d; free_nodes.len()])?;
    let instance = ProblemInstance::new(feasible, matrix, offset, ObjectiveKind::L1)?;
    Ok(GraphCut {
        instance,
        graph: graph.clone(),
        free_nodes,
        seed_label,
    })
}

fn warn_unreachable(graph: &Graph, seed_label: &[Option<usize>]) {
    let n = graph.num_nodes;
    let mut adjacency = vec![Vec::new(); n];
    for &(u, v, w) in &graph.edges {
        if w > 0.0 {
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
    }
    let mut seen = vec![false; n];
    let mut queue: VecDeque<usize> = (0..n).filter(|&u| seed_label[u].is_some()).collect();
    for &u in &queue {
        seen[u] = true;
    }
    while let Some(u) = queue.pop_front() {
        for &v in &adjacency[u] {
            if !seen[v] {
                seen[v] = true;
                queue.push_back(v);
            }
        }
    }
    let lost: Vec<usize> = (0..n).filter(|&u| !seen[u]).collect();
    if !lost.is_empty() {
        log::warn!(
            "{} free node(s) have no path to a seed; the objective is indifferent to their labels (first: {})",
            lost.len(),
            lost[0]
        );
    }
}

impl GraphCut {
    pub fn instance(&self) -> &ProblemInstance {
        &self.instance
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    /// Nodes that carry decision variables, in block order.
    pub fn free_nodes(&self) -> &[usize] {
        &self.free_nodes
    }

    /// Label distribution of every node, seeds included.
    pub fn assignment(&self, x: &[f64]) -> Vec<Vec<f64>> {
        let d = self.graph.num_labels;
        let mut out = vec![vec![0.0; d]; self.graph.num_nodes];
        for (u, label) in self.seed_label.iter().enumerate() {
            if let Some(l) = label {
                out[u][*l] = 1.0;
            }
        }
        for (b, &u) in self.free_nodes.iter().enumerate() {
            out[u].copy_from_slice(&x[b * d..(b + 1) * d]);
        }
        out
    }

    /// Most likely label per node, lowest label on ties.
    pub fn rounded_labels(&self, x: &[f64]) -> Vec<usize> {
        self.assignment(x)
            .iter()
            .map(|p| {
                let mut best = 0;
                for (l, &v) in p.iter().enumerate() {
                    if v > p[best] {
                        best = l;
                    }
                }
                best
            })
            .collect()
    }

    /// Labels with mass in some step support.
    pub fn labels_in_coreset(&self, coreset: &Coreset) -> Vec<usize> {
        let d = self.graph.num_labels;
        let mut seen = vec![false; d];
        for j in coreset.union() {
            seen[j % d] = true;
        }
        (0..d).filter(|&l| seen[l]).collect()
    }
}

/// `sum_{(u,v)} w_uv |x_u - x_v|_1` evaluated edge by edge.
pub fn direct_objective(graph: &Graph, assignment: &[Vec<f64>]) -> f64 {
    graph
        .edges
        .iter()
        .map(|&(u, v, w)| {
            let diff: Vec<f64> = assignment[u].iter().zip(&assignment[v]).map(|(a, b)| a - b).collect();
            w * linalg::norm1(&diff)
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::{run, SolverConfig};

    #[test]
    fn fully_seeded_edge_is_constant() {
        let g = Graph {
            num_nodes: 2,
            num_labels: 2,
            edges: vec![(0, 1, 1.5)],
            seeds: vec![(0, 0), (1, 1)],
        };
        let cut = build_graph_cut(&g).unwrap();
        assert_eq!(cut.instance().dim(), 0);
        assert_eq!(cut.instance().objective_at(&[]).unwrap(), 3.0);
        let res = run(
            cut.instance(),
            &SolverConfig {
                max_iters: 3,
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(res.final_record().objective, 3.0);
    }

    #[test]
    fn path_between_two_seeds() {
        let g = Graph {
            num_nodes: 3,
            num_labels: 2,
            edges: vec![(0, 1, 1.0), (1, 2, 1.0)],
            seeds: vec![(0, 0), (2, 1)],
        };
        let cut = build_graph_cut(&g).unwrap();
        for t in [0.0, 0.3, 1.0] {
            let f = cut.instance().objective_at(&[t, 1.0 - t]).unwrap();
            assert!((f - 2.0).abs() < 1e-12);
        }
    }

    #[test]
    fn star_center_follows_its_leaves() {
        let g = Graph {
            num_nodes: 4,
            num_labels: 3,
            edges: vec![(0, 1, 1.0), (0, 2, 2.0), (3, 0, 0.5)],
            seeds: vec![(1, 1), (2, 1), (3, 1)],
        };
        let cut = build_graph_cut(&g).unwrap();
        let res = run(
            cut.instance(),
            &SolverConfig {
                max_iters: 20,
                ..Default::default()
            },
        )
        .unwrap();
        assert!(res.final_record().objective.abs() < 1e-12);
        assert_eq!(cut.rounded_labels(&res.x)[0], 1);
        assert_eq!(cut.labels_in_coreset(&res.coreset), vec![1]);
    }

    #[test]
    fn invalid_graphs_are_rejected() {
        let base = Graph {
            num_nodes: 2,
            num_labels: 2,
            edges: vec![(0, 1, 1.0)],
            seeds: vec![(0, 0)],
        };
        let mut g = base.clone();
        g.edges.push((1, 1, 1.0));
        assert!(build_graph_cut(&g).is_err());
        let mut g = base.clone();
        g.seeds.push((0, 1));
        assert!(build_graph_cut(&g).is_err());
        let mut g = base.clone();
        g.seeds = vec![(0, 2)];
        assert!(build_graph_cut(&g).is_err());
        let mut g = base;
        g.edges[0].2 = -1.0;
        assert!(build_graph_cut(&g).is_err());
    }
}
