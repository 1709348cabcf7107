//! Dual of the l1-regularized SVM: the `l_inf` distance between the reduced
//! convex hulls of the two classes,
//! `min |A⁺u - A⁻v|_inf` over `u, v` in simplices capped at `1/R`.

use crate::error::{Error, Result};
use crate::feasible::FeasibleSet;
use crate::instance::{ObjectiveKind, ProblemInstance};
use crate::linalg::{self, Matrix};
use crate::solver::Coreset;
use crate::subdiff::vertex_set_linf;

/// Labelled examples, one dense feature vector per example.
#[derive(Debug, Clone, PartialEq)]
pub struct SvmData {
    pub dim: usize,
    pub positive: Vec<Vec<f64>>,
    pub negative: Vec<Vec<f64>>,
}

impl SvmData {
    pub fn new(dim: usize, positive: Vec<Vec<f64>>, negative: Vec<Vec<f64>>) -> Result<Self> {
        for (i, col) in positive.iter().chain(&negative).enumerate() {
            if col.len() != dim {
                return Err(Error::InvalidData(format!(
                    "example {i} has {} features, expected {dim}",
                    col.len()
                )));
            }
        }
        Ok(Self {
            dim,
            positive,
            negative,
        })
    }

    pub fn len(&self) -> usize {
        self.positive.len() + self.negative.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// A separating hyperplane `<w, a> = offset` read off a dual iterate.
#[derive(Debug, Clone, PartialEq)]
pub struct Hyperplane {
    pub normal: Vec<f64>,
    pub offset: f64,
}

impl Hyperplane {
    /// `+1` on the positive side (ties included), `-1` otherwise.
    pub fn classify(&self, point: &[f64]) -> i8 {
        if linalg::dot(&self.normal, point) >= self.offset {
            1
        } else {
            -1
        }
    }
}

#[derive(Debug, Clone)]
pub struct L1Svm {
    instance: ProblemInstance,
    data: SvmData,
    reduction: f64,
}

/// Builds the instance on `[A⁺ | -A⁻]` over the capped product `[m, n]`.
pub fn build_l1svm(data: &SvmData, reduction: f64) -> Result<L1Svm> {
    if data.positive.is_empty() || data.negative.is_empty() {
        return Err(Error::InvalidData(format!(
            "both classes need examples (got {} positive, {} negative)",
            data.positive.len(),
            data.negative.len()
        )));
    }
    if !(reduction.is_finite() && reduction >= 1.0) {
        return Err(Error::InvalidData(format!(
            "reduction parameter {reduction} must be >= 1"
        )));
    }
    let m = data.positive.len();
    let n = data.negative.len();
    let mut columns = data.positive.clone();
    columns.extend(data.negative.iter().map(|c| c.iter().map(|v| -v).collect::<Vec<_>>()));
    let matrix = Matrix::from_columns(data.dim, &columns)?;
    let feasible = FeasibleSet::capped(vec![m, n], 1.0 / reduction)?;
    let instance = ProblemInstance::new(feasible, matrix, vec![0.0; data.dim], ObjectiveKind::LInf)?;
    Ok(L1Svm {
        instance,
        data: data.clone(),
        reduction,
    })
}

impl L1Svm {
    pub fn instance(&self) -> &ProblemInstance {
        &self.instance
    }

    pub fn data(&self) -> &SvmData {
        &self.data
    }

    pub fn reduction(&self) -> f64 {
        self.reduction
    }

    pub fn num_positive(&self) -> usize {
        self.data.positive.len()
    }

    /// Upper bound `2 ceil(R) + |V| - 1` on the support of a subproblem
    /// solution.
    pub fn support_bound(&self, num_vertices: usize) -> usize {
        2 * (self.reduction - 1e-12).ceil() as usize + num_vertices - 1
    }

    /// Coreset indices split into positive and negative example indices.
    pub fn coreset_examples(&self, coreset: &Coreset) -> (Vec<usize>, Vec<usize>) {
        let m = self.num_positive();
        let (pos, neg): (Vec<usize>, Vec<usize>) = coreset.union().into_iter().partition(|&j| j < m);
        (pos, neg.into_iter().map(|j| j - m).collect())
    }

    /// Best-effort hyperplane from a dual iterate `x = (u, v)`.
    ///
    /// The normal averages the signed coordinates that attain `|A⁺u - A⁻v|_inf`
    /// within `2 eps`; the offset sits halfway between the two hull points.
    /// Not certified.
    pub fn hyperplane(&self, x: &[f64], eps: f64) -> Result<Hyperplane> {
        let m = self.num_positive();
        let image = self.instance.image(x)?;
        let active = vertex_set_linf(&image, eps);
        let mut normal = vec![0.0; self.data.dim];
        let w = 1.0 / active.len() as f64;
        for v in &active {
            normal[v.index] += w * v.sign();
        }
        let pos_point = weighted_sum(&self.data.positive, &x[..m], self.data.dim);
        let neg_point = weighted_sum(&self.data.negative, &x[m..], self.data.dim);
        let offset = 0.5 * (linalg::dot(&normal, &pos_point) + linalg::dot(&normal, &neg_point));
        Ok(Hyperplane { normal, offset })
    }

    /// Fraction of training examples on the correct side of `h`.
    pub fn training_accuracy(&self, h: &Hyperplane) -> f64 {
        let good = self.data.positive.iter().filter(|p| h.classify(p) == 1).count()
            + self.data.negative.iter().filter(|p| h.classify(p) == -1).count();
        good as f64 / self.data.len() as f64
    }
}

fn weighted_sum(columns: &[Vec<f64>], weights: &[f64], dim: usize) -> Vec<f64> {
    let mut out = vec![0.0; dim];
    for (col, &w) in columns.iter().zip(weights) {
        if w != 0.0 {
            for (o, v) in out.iter_mut().zip(col) {
                *o += w * v;
            }
        }
    }
    out
}
