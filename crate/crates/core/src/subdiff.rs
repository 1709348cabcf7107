//! Approximate subdifferentials `T(x, eps)`, built in image space.
//!
//! For `f(x) = g(Ax + b)` the set is `Aᵀ T_g(Ax + b, eps)`, so everything here
//! works on the image vector and the transpose is applied lazily by the
//! subproblem solvers.

use crate::linalg::Matrix;

/// A signed standard basis vector `sign * e_index` in image space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedBasis {
    pub index: usize,
    pub positive: bool,
}

impl SignedBasis {
    pub fn plus(index: usize) -> Self {
        Self { index, positive: true }
    }

    pub fn minus(index: usize) -> Self {
        Self { index, positive: false }
    }

    pub fn sign(&self) -> f64 {
        if self.positive {
            1.0
        } else {
            -1.0
        }
    }

    /// `<v, sign * e_index>`.
    pub fn pair(&self, v: &[f64]) -> f64 {
        self.sign() * v[self.index]
    }
}

/// Per-coordinate tag of an `l_1` sign pattern.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
    /// The coordinate ranges over `[-1, 1]`.
    Free,
}

impl Sign {
    pub fn value(&self) -> Option<f64> {
        match self {
            Sign::Plus => Some(1.0),
            Sign::Minus => Some(-1.0),
            Sign::Free => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum SubgradientSet {
    /// Convex hull of signed image-space basis vectors.
    VertexHull(Vec<SignedBasis>),
    /// The box `prod_i [d_i, d_i]` or `[-1, 1]` for free coordinates.
    SignPattern(Vec<Sign>),
    /// A single subgradient, given both in decision space and in image space.
    Singleton {
        gradient: Vec<f64>,
        image_gradient: Vec<f64>,
    },
}

impl SubgradientSet {
    /// The `num_vertices` trace column: `|V|` for hulls, `1 + #free` for sign
    /// patterns, `1` for singletons.
    pub fn vertex_count(&self) -> usize {
        match self {
            SubgradientSet::VertexHull(v) => v.len(),
            SubgradientSet::SignPattern(p) => 1 + p.iter().filter(|s| **s == Sign::Free).count(),
            SubgradientSet::Singleton { .. } => 1,
        }
    }

    /// `max_{d in T} <delta, d>` for an image-space displacement `delta`.
    pub fn support_function(&self, delta: &[f64]) -> f64 {
        match self {
            SubgradientSet::VertexHull(v) => v.iter().map(|d| d.pair(delta)).fold(f64::NEG_INFINITY, f64::max),
            SubgradientSet::SignPattern(p) => p
                .iter()
                .zip(delta)
                .map(|(s, &x)| match s.value() {
                    Some(d) => d * x,
                    None => x.abs(),
                })
                .sum(),
            SubgradientSet::Singleton { image_gradient, .. } => crate::linalg::dot(image_gradient, delta),
        }
    }
}

/// `{ e_i : x_i >= max_j x_j - 2 eps }` in index order.
pub fn vertex_set_max(image: &[f64], eps: f64) -> Vec<SignedBasis> {
    let top = image.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let threshold = top - 2.0 * eps;
    image
        .iter()
        .enumerate()
        .filter(|(_, &v)| v >= threshold)
        .map(|(i, _)| SignedBasis::plus(i))
        .collect()
}

/// `{ +e_i : x_i >= |x|_inf - 2 eps } ∪ { -e_i : x_i <= -|x|_inf + 2 eps }`.
///
/// The `+` vertices come first, each group in index order.
pub fn vertex_set_linf(image: &[f64], eps: f64) -> Vec<SignedBasis> {
    let norm = crate::linalg::norm_inf(image);
    let threshold = norm - 2.0 * eps;
    let plus = image
        .iter()
        .enumerate()
        .filter(|(_, &v)| v >= threshold)
        .map(|(i, _)| SignedBasis::plus(i));
    let minus = image
        .iter()
        .enumerate()
        .filter(|(_, &v)| v <= -threshold)
        .map(|(i, _)| SignedBasis::minus(i));
    plus.chain(minus).collect()
}

/// Coordinate `i` gets `sign(x_i)` when `|x_i| > eps`, otherwise it is free.
pub fn sign_pattern_l1(image: &[f64], eps: f64) -> Vec<Sign> {
    image
        .iter()
        .map(|&v| {
            if v.abs() <= eps {
                Sign::Free
            } else if v > 0.0 {
                Sign::Plus
            } else {
                Sign::Minus
            }
        })
        .collect()
}

/// Output of [`median_subgradient`].
#[derive(Debug, Clone, PartialEq)]
pub struct MedianSubgradient {
    /// `(1/n) sum_{far i} (x - p_i) / |x - p_i|`.
    pub image_gradient: Vec<f64>,
    /// `Aᵀ image_gradient`.
    pub gradient: Vec<f64>,
    /// Number of points within distance `eps` of the image.
    pub near_count: usize,
    /// Mean distance from the image to the points, computed in the same pass.
    pub objective: f64,
}

/// Dense pass for small dimensions with the accumulators held in registers.
/// Returns `(near_count, sum of distances)`.
fn dense_pass<const D: usize>(
    columns: std::slice::ChunksExact<'_, f64>,
    image: &[f64],
    eps: f64,
    image_gradient: &mut [f64],
) -> (usize, f64) {
    let x: [f64; D] = image.try_into().expect("image length matches point dimension");
    let mut g = [0.0; D];
    let mut near = 0;
    let mut total = 0.0;
    for col in columns {
        let p: &[f64; D] = col.try_into().expect("column length matches point dimension");
        let mut diff = [0.0; D];
        let mut sq = 0.0;
        for r in 0..D {
            diff[r] = x[r] - p[r];
            sq += diff[r] * diff[r];
        }
        let dist = sq.sqrt();
        total += dist;
        let far = dist > eps && dist > 0.0;
        near += usize::from(!far);
        let w = if far { 1.0 / dist } else { 0.0 };
        for r in 0..D {
            g[r] += w * diff[r];
        }
    }
    image_gradient.copy_from_slice(&g);
    (near, total)
}

/// Subgradient of the mean-distance objective, where `points` holds one point
/// per column and `image = Ax`.
///
/// Points within `eps` of the image contribute the zero vector.
pub fn median_subgradient(points: &Matrix, image: &[f64], eps: f64) -> MedianSubgradient {
    let dim = points.nrows();
    let n = points.ncols();
    let mut image_gradient = vec![0.0; dim];
    let mut near_count = 0;
    let mut total = 0.0;
    let mut diff = vec![0.0; dim];
    if let Some(columns) = points.dense_columns() {
        match dim {
            1 => (near_count, total) = dense_pass::<1>(columns, image, eps, &mut image_gradient),
            2 => (near_count, total) = dense_pass::<2>(columns, image, eps, &mut image_gradient),
            3 => (near_count, total) = dense_pass::<3>(columns, image, eps, &mut image_gradient),
            _ => {
                for col in columns {
                    let mut sq = 0.0;
                    for ((d, &x), &p) in diff.iter_mut().zip(image).zip(col) {
                        *d = x - p;
                        sq += *d * *d;
                    }
                    let dist = sq.sqrt();
                    total += dist;
                    if dist <= eps || dist == 0.0 {
                        near_count += 1;
                    } else {
                        let w = 1.0 / dist;
                        for (g, &d) in image_gradient.iter_mut().zip(&diff) {
                            *g += w * d;
                        }
                    }
                }
            }
        }
    } else {
        for j in 0..n {
            diff.copy_from_slice(image);
            points.for_each_in_column(j, |r, v| diff[r] -= v);
            let dist = crate::linalg::norm2(&diff);
            total += dist;
            if dist <= eps || dist == 0.0 {
                near_count += 1;
            } else {
                let w = 1.0 / dist;
                for (g, &d) in image_gradient.iter_mut().zip(&diff) {
                    *g += w * d;
                }
            }
        }
    }
    let scale = 1.0 / n as f64;
    image_gradient.iter_mut().for_each(|g| *g *= scale);
    let gradient = points.tr_mul(&image_gradient);
    MedianSubgradient {
        image_gradient,
        gradient,
        near_count,
        objective: total * scale,
    }
}
