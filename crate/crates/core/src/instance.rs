//! The problem-instance contract and iterate bookkeeping.
//!
//! A [`ProblemInstance`] bundles a feasible set `D`, an affine image map
//! `x -> Ax + b`, the outer function applied to the image, and the constants
//! used by certificates: the Lipschitz constant `L` and the curvature
//! coefficient `D_f` with `C_f(eps) <= D_f / eps`.
//!
//! Neighborhoods are taken in image space, in the norm the outer function is
//! 1-Lipschitz for (`l_inf` for the max kinds, `l_1`, `l_2` for the median), so
//! `L = 1` for every kind built here.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::feasible::FeasibleSet;
use crate::linalg::{self, Matrix, SparseVector};
use crate::lp::{self, BoundingBox, ImageMap, SubproblemSolution};
use crate::subdiff::{self, Sign, SubgradientSet};

/// Outer function applied to the image `Ax + b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ObjectiveKind {
    /// `max_i y_i`.
    Max,
    /// `|y|_inf`.
    LInf,
    /// `|y|_1`.
    L1,
    /// `(1/n) sum_j |y - a_j|_2` over the columns `a_j` of `A` (with `b = 0`).
    Median,
}

/// Objective value and approximate subdifferential at one image point.
#[derive(Debug, Clone, PartialEq)]
pub struct Linearization {
    pub objective: f64,
    pub set: SubgradientSet,
    /// Added to the negated subproblem value to form the gap surrogate.
    pub certificate_extra: f64,
    /// Additive slack per unit step in the one-step descent inequality.
    pub descent_slack: f64,
}

#[derive(Debug)]
pub struct ProblemInstance {
    feasible: FeasibleSet,
    matrix: Matrix,
    offset: Vec<f64>,
    kind: ObjectiveKind,
    lipschitz: f64,
    curvature_coeff: f64,
    image_diameter: f64,
    bounding_box: Option<BoundingBox>,
}

impl Clone for ProblemInstance {
    fn clone(&self) -> Self {
        Self {
            feasible: self.feasible.clone(),
            matrix: self.matrix.clone(),
            offset: self.offset.clone(),
            kind: self.kind,
            lipschitz: self.lipschitz,
            curvature_coeff: self.curvature_coeff,
            image_diameter: self.image_diameter,
            bounding_box: self
                .bounding_box
                .as_ref()
                .map(|_| BoundingBox::new(self.matrix.nrows(), self.feasible.cap())),
        }
    }
}

impl ProblemInstance {
    /// Validates dimensions and computes `L = 1` and `D_f = 2 diam(AD)^2`.
    pub fn new(feasible: FeasibleSet, matrix: Matrix, offset: Vec<f64>, kind: ObjectiveKind) -> Result<Self> {
        if matrix.ncols() != feasible.dim() {
            return Err(Error::DimensionMismatch {
                expected: feasible.dim(),
                found: matrix.ncols(),
            });
        }
        if offset.len() != matrix.nrows() {
            return Err(Error::DimensionMismatch {
                expected: matrix.nrows(),
                found: offset.len(),
            });
        }
        if offset.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidData("non-finite offset entry".into()));
        }
        if kind != ObjectiveKind::L1 && matrix.nrows() == 0 {
            return Err(Error::InvalidData("image dimension is zero".into()));
        }
        if kind == ObjectiveKind::Median {
            if matrix.ncols() == 0 {
                return Err(Error::InvalidData("no points".into()));
            }
            if offset.iter().any(|&b| b != 0.0) {
                return Err(Error::InvalidData("median instances take no offset".into()));
            }
        }
        let diam = image_diameter(&matrix, &feasible, kind);
        Ok(Self {
            feasible,
            matrix,
            offset,
            kind,
            lipschitz: 1.0,
            curvature_coeff: 2.0 * diam * diam,
            image_diameter: diam,
            bounding_box: None,
        })
    }

    pub fn with_lipschitz(mut self, lipschitz: f64) -> Result<Self> {
        if !(lipschitz.is_finite() && lipschitz >= 0.0) {
            return Err(Error::InvalidData(format!("Lipschitz constant {lipschitz}")));
        }
        self.lipschitz = lipschitz;
        Ok(self)
    }

    pub fn with_curvature_coeff(mut self, coeff: f64) -> Result<Self> {
        if !(coeff.is_finite() && coeff >= 0.0) {
            return Err(Error::InvalidData(format!("curvature coefficient {coeff}")));
        }
        self.curvature_coeff = coeff;
        Ok(self)
    }

    /// Caches, per image row and sign, the columns a greedy fill would pick,
    /// so that single-vertex subproblems touch `O(blocks / cap)` entries.
    pub fn with_bounding_box(mut self) -> Self {
        self.bounding_box = Some(BoundingBox::new(self.matrix.nrows(), self.feasible.cap()));
        self
    }

    pub fn bounding_box(&self) -> Option<&BoundingBox> {
        self.bounding_box.as_ref()
    }

    pub fn feasible(&self) -> &FeasibleSet {
        &self.feasible
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn offset(&self) -> &[f64] {
        &self.offset
    }

    pub fn kind(&self) -> ObjectiveKind {
        self.kind
    }

    pub fn lipschitz(&self) -> f64 {
        self.lipschitz
    }

    pub fn curvature_coeff(&self) -> f64 {
        self.curvature_coeff
    }

    /// Diameter of `AD` in the norm matching the objective kind.
    pub fn image_diameter(&self) -> f64 {
        self.image_diameter
    }

    pub fn dim(&self) -> usize {
        self.matrix.ncols()
    }

    pub fn image_rows(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn image_map(&self) -> ImageMap<'_> {
        ImageMap {
            matrix: &self.matrix,
            offset: &self.offset,
            feasible: &self.feasible,
            bounding_box: self.bounding_box.as_ref(),
        }
    }

    /// Default starting point: the greedy first vertex of `D`.
    pub fn start_point(&self) -> Vec<f64> {
        self.feasible.first_vertex()
    }

    /// `Ax + b`.
    pub fn image(&self, x: &[f64]) -> Result<Vec<f64>> {
        if x.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: x.len(),
            });
        }
        let mut y = self.matrix.mul_dense(x);
        for (v, b) in y.iter_mut().zip(&self.offset) {
            *v += b;
        }
        Ok(y)
    }

    fn check_image(&self, image: &[f64]) -> Result<()> {
        if image.len() != self.image_rows() {
            return Err(Error::DimensionMismatch {
                expected: self.image_rows(),
                found: image.len(),
            });
        }
        Ok(())
    }

    /// The outer function at an image point.
    pub fn evaluate_objective(&self, image: &[f64]) -> Result<f64> {
        self.check_image(image)?;
        Ok(match self.kind {
            ObjectiveKind::Max => image.iter().copied().fold(f64::NEG_INFINITY, f64::max),
            ObjectiveKind::LInf => linalg::norm_inf(image),
            ObjectiveKind::L1 => linalg::norm1(image),
            ObjectiveKind::Median => {
                let n = self.matrix.ncols();
                let mut col = vec![0.0; self.image_rows()];
                let mut total = 0.0;
                for j in 0..n {
                    total += match self.matrix.dense_column(j) {
                        Some(p) => linalg::dist2(image, p),
                        None => {
                            col.iter_mut().for_each(|v| *v = 0.0);
                            self.matrix.for_each_in_column(j, |r, v| col[r] = v);
                            linalg::dist2(image, &col)
                        }
                    };
                }
                total / n as f64
            }
        })
    }

    pub fn objective_at(&self, x: &[f64]) -> Result<f64> {
        let image = self.image(x)?;
        self.evaluate_objective(&image)
    }

    /// Objective value and `T(x, eps)` at the image point `Ax + b`.
    pub fn linearize(&self, image: &[f64], eps: f64) -> Result<Linearization> {
        self.check_image(image)?;
        if eps.is_nan() || eps < 0.0 {
            return Err(Error::InvalidData(format!("neighborhood radius {eps}")));
        }
        if self.kind == ObjectiveKind::Median {
            let m = subdiff::median_subgradient(&self.matrix, image, eps);
            let correction = m.near_count as f64 / self.dim() as f64 * self.image_diameter;
            return Ok(Linearization {
                objective: m.objective,
                set: SubgradientSet::Singleton {
                    gradient: m.gradient,
                    image_gradient: m.image_gradient,
                },
                certificate_extra: correction,
                descent_slack: correction,
            });
        }
        let objective = self.evaluate_objective(image)?;
        let (set, extra) = match self.kind {
            ObjectiveKind::Max => (SubgradientSet::VertexHull(subdiff::vertex_set_max(image, eps)), 0.0),
            ObjectiveKind::LInf => (SubgradientSet::VertexHull(subdiff::vertex_set_linf(image, eps)), 0.0),
            ObjectiveKind::L1 => {
                let pattern = subdiff::sign_pattern_l1(image, eps);
                // Box elements are only (2 sum_free |y_i|)-subgradients.
                let free_mass: f64 = pattern
                    .iter()
                    .zip(image)
                    .filter(|(s, _)| **s == Sign::Free)
                    .map(|(_, v)| v.abs())
                    .sum();
                let extra = (2.0 * free_mass - 2.0 * self.lipschitz * eps).max(0.0);
                (SubgradientSet::SignPattern(pattern), extra)
            }
            ObjectiveKind::Median => unreachable!(),
        };
        Ok(Linearization {
            objective,
            set,
            certificate_extra: extra,
            descent_slack: 0.0,
        })
    }

    pub fn subgradient_set(&self, image: &[f64], eps: f64) -> Result<SubgradientSet> {
        Ok(self.linearize(image, eps)?.set)
    }

    /// Minimizes `max_{d in set} <A(z - x), d>` over `D`.
    pub fn solve_subproblem(&self, set: &SubgradientSet, image: &[f64]) -> Result<SubproblemSolution> {
        self.check_image(image)?;
        let map = self.image_map();
        match set {
            SubgradientSet::VertexHull(v) => lp::solve_minmax_vertexhull(v, image, &map),
            SubgradientSet::SignPattern(p) => lp::solve_minmax_signpattern(p, image, &map),
            SubgradientSet::Singleton {
                gradient,
                image_gradient,
            } => lp::solve_linear(gradient, image_gradient, image, &map),
        }
    }

    /// One exact subgradient of the outer function at `image`, lowest index on
    /// ties and the zero element at kinks of `|.|`.
    pub fn exact_image_subgradient(&self, image: &[f64]) -> Result<Vec<f64>> {
        self.check_image(image)?;
        let mut g = vec![0.0; image.len()];
        match self.kind {
            ObjectiveKind::Max => {
                let mut best = 0;
                for (i, &v) in image.iter().enumerate() {
                    if v > image[best] {
                        best = i;
                    }
                }
                g[best] = 1.0;
            }
            ObjectiveKind::LInf => {
                let mut best = 0;
                for (i, &v) in image.iter().enumerate() {
                    if v.abs() > image[best].abs() {
                        best = i;
                    }
                }
                g[best] = if image[best] < 0.0 { -1.0 } else { 1.0 };
            }
            ObjectiveKind::L1 => {
                for (gi, &v) in g.iter_mut().zip(image) {
                    *gi = if v > 0.0 {
                        1.0
                    } else if v < 0.0 {
                        -1.0
                    } else {
                        0.0
                    };
                }
            }
            ObjectiveKind::Median => {
                g = subdiff::median_subgradient(&self.matrix, image, 0.0).image_gradient;
            }
        }
        Ok(g)
    }
}

/// `D_f = 2 diam(AD)^2` as constructed for `instance`.
pub fn diameter_bound(instance: &ProblemInstance) -> f64 {
    2.0 * instance.image_diameter().powi(2)
}

/// Diameter of the image of `D` under `A` in the norm matching `kind`.
///
/// Images of simplex products are polytopes spanned by images of vertices,
/// so only columns are compared. For the max kinds the product diameter is
/// exact: `max_r sum_blocks (max - min of row r over the block)`. For `l_1`
/// and `l_2` the per-block diameters are summed, which is exact for a single
/// block and an upper bound otherwise. Caps are ignored (an upper bound).
pub fn image_diameter(matrix: &Matrix, feasible: &FeasibleSet, kind: ObjectiveKind) -> f64 {
    match kind {
        ObjectiveKind::Max | ObjectiveKind::LInf => linf_product_diameter(matrix, feasible),
        ObjectiveKind::L1 => feasible
            .blocks()
            .into_iter()
            .map(|b| block_diameter(matrix, b, linalg::norm1))
            .sum(),
        ObjectiveKind::Median => feasible
            .blocks()
            .into_iter()
            .map(|b| block_diameter(matrix, b, linalg::norm2))
            .sum(),
    }
}

fn linf_product_diameter(matrix: &Matrix, feasible: &FeasibleSet) -> f64 {
    let p = matrix.nrows();
    let mut total = vec![0.0; p];
    let mut hi = vec![0.0; p];
    let mut lo = vec![0.0; p];
    let mut count = vec![0usize; p];
    for block in feasible.blocks() {
        hi.iter_mut().for_each(|v| *v = f64::NEG_INFINITY);
        lo.iter_mut().for_each(|v| *v = f64::INFINITY);
        count.iter_mut().for_each(|v| *v = 0);
        let len = block.len();
        for j in block {
            matrix.for_each_in_column(j, |r, v| {
                hi[r] = f64::max(hi[r], v);
                lo[r] = f64::min(lo[r], v);
                count[r] += 1;
            });
        }
        for r in 0..p {
            let (mut h, mut l) = (hi[r], lo[r]);
            if count[r] < len {
                // Columns without a stored entry hold an implicit zero.
                h = h.max(0.0);
                l = l.min(0.0);
            }
            total[r] += h - l;
        }
    }
    total.into_iter().fold(0.0, f64::max)
}

fn block_diameter(matrix: &Matrix, block: std::ops::Range<usize>, norm: impl Fn(&[f64]) -> f64 + Sync) -> f64 {
    let p = matrix.nrows();
    let columns: Vec<Vec<f64>> = block
        .map(|j| match matrix.dense_column(j) {
            Some(c) => c.to_vec(),
            None => {
                let mut c = vec![0.0; p];
                matrix.for_each_in_column(j, |r, v| c[r] = v);
                c
            }
        })
        .collect();
    (0..columns.len())
        .into_par_iter()
        .map(|i| {
            let mut diff = vec![0.0; p];
            let mut best: f64 = 0.0;
            for k in i + 1..columns.len() {
                for ((d, a), b) in diff.iter_mut().zip(&columns[i]).zip(&columns[k]) {
                    *d = a - b;
                }
                best = best.max(norm(&diff));
            }
            best
        })
        .reduce(|| 0.0, f64::max)
}

/// Current iterate `x` with its cached image `Ax + b`.
#[derive(Debug, Clone, PartialEq)]
pub struct IterateState {
    x: Vec<f64>,
    image: Vec<f64>,
    support: Vec<usize>,
    k: usize,
    refresh_period: usize,
    since_refresh: usize,
}

impl IterateState {
    pub fn new(instance: &ProblemInstance, x: Vec<f64>, refresh_period: usize) -> Result<Self> {
        if refresh_period == 0 {
            return Err(Error::Config("refresh period must be positive".into()));
        }
        let report = instance.feasible().check(&x);
        if x.len() != instance.dim() {
            return Err(Error::DimensionMismatch {
                expected: instance.dim(),
                found: x.len(),
            });
        }
        if !report.feasible {
            return Err(Error::InvalidData(format!(
                "starting point infeasible (violation {:.3e})",
                report.max_violation
            )));
        }
        let image = instance.image(&x)?;
        let support = (0..x.len()).filter(|&j| x[j] != 0.0).collect();
        Ok(Self {
            x,
            image,
            support,
            k: 0,
            refresh_period,
            since_refresh: 0,
        })
    }

    pub fn x(&self) -> &[f64] {
        &self.x
    }

    pub fn image(&self) -> &[f64] {
        &self.image
    }

    /// Sorted indices of the nonzero entries of `x`.
    pub fn support(&self) -> &[usize] {
        &self.support
    }

    /// Number of updates applied so far.
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn refresh_period(&self) -> usize {
        self.refresh_period
    }

    pub fn into_x(self) -> Vec<f64> {
        self.x
    }

    /// Recomputes the image exactly from `x`.
    pub fn refresh(&mut self, instance: &ProblemInstance) {
        let mut image = instance.matrix().mul_on_support(&self.x, &self.support);
        for (v, b) in image.iter_mut().zip(instance.offset()) {
            *v += b;
        }
        self.image = image;
        self.since_refresh = 0;
    }

    /// `x <- (1 - alpha) x + alpha s` and the same recurrence on the image.
    ///
    /// Only the current support and the support of `s` are touched. The image
    /// is recomputed from scratch every `refresh_period` updates.
    pub fn update_iterate(
        &mut self,
        instance: &ProblemInstance,
        s: &SparseVector,
        s_image: &[f64],
        alpha: f64,
    ) -> Result<()> {
        if !(0.0..=1.0).contains(&alpha) {
            return Err(Error::InvalidStep(alpha));
        }
        if s.dim() != self.x.len() {
            return Err(Error::DimensionMismatch {
                expected: self.x.len(),
                found: s.dim(),
            });
        }
        if s_image.len() != self.image.len() {
            return Err(Error::DimensionMismatch {
                expected: self.image.len(),
                found: s_image.len(),
            });
        }
        self.k += 1;
        if alpha == 0.0 {
            return Ok(());
        }
        if alpha == 1.0 {
            for &j in &self.support {
                self.x[j] = 0.0;
            }
            for (j, v) in s.iter() {
                self.x[j] = v;
            }
            self.support = s.indices().to_vec();
            self.image.copy_from_slice(s_image);
        } else {
            let keep = 1.0 - alpha;
            for &j in &self.support {
                self.x[j] *= keep;
            }
            for (j, v) in s.iter() {
                self.x[j] += alpha * v;
            }
            let merged = merge_sorted(&self.support, s.indices());
            self.support = merged.into_iter().filter(|&j| self.x[j] != 0.0).collect();
            for (y, &t) in self.image.iter_mut().zip(s_image) {
                *y = keep * *y + alpha * t;
            }
        }
        self.since_refresh += 1;
        if self.since_refresh >= self.refresh_period {
            self.refresh(instance);
        }
        Ok(())
    }
}

fn merge_sorted(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut k) = (0, 0);
    while i < a.len() || k < b.len() {
        let next = match (a.get(i), b.get(k)) {
            (Some(&x), Some(&y)) if x == y => {
                i += 1;
                k += 1;
                x
            }
            (Some(&x), Some(&y)) if x < y => {
                i += 1;
                x
            }
            (Some(_), Some(&y)) => {
                k += 1;
                y
            }
            (Some(&x), None) => {
                i += 1;
                x
            }
            (None, Some(&y)) => {
                k += 1;
                y
            }
            (None, None) => unreachable!(),
        };
        out.push(next);
    }
    out
}
