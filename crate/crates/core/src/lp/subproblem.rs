//! Direction-finding subproblems `min_{z in D} max_{d in T} <A(z - x), d>`.
//!
//! Singletons and single vertices reduce to a linear objective over a simplex
//! product, which a blockwise greedy fill solves exactly. Larger vertex hulls
//! and sign patterns with free coordinates are posed as small LPs.

use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::feasible::FeasibleSet;
use crate::linalg::{Matrix, SparseVector};
use crate::lp::simplex::{solve_lp, LpProblem};
use crate::subdiff::{Sign, SignedBasis, SubgradientSet};

/// LP solutions below this magnitude are treated as zero.
pub const DROP_TOLERANCE: f64 = 1e-13;

#[derive(Debug, Clone, PartialEq)]
pub struct LinearMinimum {
    pub point: SparseVector,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SubproblemSolution {
    pub s: SparseVector,
    /// `A s + b`.
    pub s_image: Vec<f64>,
    /// The achieved min-max value `max_{d in T} <A(s - x), d>`.
    pub value: f64,
    /// Nonzero indices of `s`.
    pub support: Vec<usize>,
}

/// The affine map `z -> Az + b` together with its domain.
#[derive(Debug, Clone, Copy)]
pub struct ImageMap<'a> {
    pub matrix: &'a Matrix,
    pub offset: &'a [f64],
    pub feasible: &'a FeasibleSet,
    pub bounding_box: Option<&'a BoundingBox>,
}

impl ImageMap<'_> {
    fn solution(&self, s: SparseVector, value: impl FnOnce(&[f64]) -> f64) -> SubproblemSolution {
        let mut s_image = self.matrix.mul_sparse(&s);
        for (v, b) in s_image.iter_mut().zip(self.offset) {
            *v += b;
        }
        let value = value(&s_image);
        let support = s.indices().to_vec();
        SubproblemSolution {
            s,
            s_image,
            value,
            support,
        }
    }
}

/// Fills `order` greedily with `cap` until the remaining mass fits.
fn greedy_fill(order: &[usize], cap: f64, out: &mut Vec<(usize, f64)>) {
    let mut remaining = 1.0;
    for &j in order {
        if remaining <= cap + 1e-12 {
            out.push((j, remaining));
            return;
        }
        out.push((j, cap));
        remaining -= cap;
    }
}

/// Indices of `block` sorted by `(c_j, j)`.
fn sorted_block(c: &[f64], block: std::ops::Range<usize>) -> Vec<usize> {
    let mut order: Vec<usize> = block.collect();
    order.sort_by(|&a, &b| c[a].total_cmp(&c[b]).then(a.cmp(&b)));
    order
}

fn check_finite(c: &[f64]) -> Result<()> {
    match c.iter().position(|v| !v.is_finite()) {
        Some(i) => Err(Error::InvalidData(format!("non-finite cost at index {i}"))),
        None => Ok(()),
    }
}

/// `argmin_j c_j` as a vertex of the unit simplex, lowest index on ties.
pub fn min_linear_over_simplex(c: &[f64]) -> Result<LinearMinimum> {
    if c.is_empty() {
        return Err(Error::InvalidData("empty cost vector".into()));
    }
    check_finite(c)?;
    let mut best = 0;
    for (j, &v) in c.iter().enumerate().skip(1) {
        if v < c[best] {
            best = j;
        }
    }
    Ok(LinearMinimum {
        point: SparseVector::basis(c.len(), best),
        value: c[best],
    })
}

/// Greedy minimizer of `cᵀz` over `{ z : sum z = 1, 0 <= z <= cap }`.
pub fn min_linear_over_capped_simplex(c: &[f64], cap: f64) -> Result<LinearMinimum> {
    let set = FeasibleSet::capped(vec![c.len()], cap)?;
    min_linear_over_set(c, &set)
}

/// Blockwise greedy minimizer of `cᵀz` over a simplex product.
pub fn min_linear_over_set(c: &[f64], feasible: &FeasibleSet) -> Result<LinearMinimum> {
    if c.len() != feasible.dim() {
        return Err(Error::DimensionMismatch {
            expected: feasible.dim(),
            found: c.len(),
        });
    }
    check_finite(c)?;
    let cap = feasible.cap();
    let mut pairs = Vec::new();
    for block in feasible.blocks() {
        if cap >= 1.0 {
            let mut best = block.start;
            for j in block {
                if c[j] < c[best] {
                    best = j;
                }
            }
            pairs.push((best, 1.0));
        } else {
            greedy_fill(&sorted_block(c, block), cap, &mut pairs);
        }
    }
    let point = SparseVector::new(c.len(), pairs)?;
    let value = point.dot(c);
    Ok(LinearMinimum { point, value })
}

/// Lazily computed per-row bounding boxes: for each image row and sign, the
/// columns of every block that a greedy fill on that signed row would use.
#[derive(Debug)]
pub struct BoundingBox {
    keep: usize,
    cache: Vec<OnceLock<Vec<Vec<usize>>>>,
}

impl BoundingBox {
    pub fn new(nrows: usize, cap: f64) -> Self {
        Self {
            keep: (1.0 / cap - 1e-12).ceil().max(1.0) as usize,
            cache: (0..2 * nrows).map(|_| OnceLock::new()).collect(),
        }
    }

    /// Number of rows whose boxes have been computed so far.
    pub fn computed(&self) -> usize {
        self.cache.iter().filter(|c| c.get().is_some()).count()
    }

    fn candidates(&self, map: &ImageMap<'_>, vertex: SignedBasis) -> &[Vec<usize>] {
        let slot = 2 * vertex.index + usize::from(!vertex.positive);
        self.cache[slot].get_or_init(|| {
            let c = map.matrix.row_dense(vertex.index, vertex.sign());
            map.feasible
                .blocks()
                .into_iter()
                .map(|block| {
                    let mut order = sorted_block(&c, block);
                    order.truncate(self.keep);
                    order
                })
                .collect()
        })
    }
}

/// Linear step for a single subgradient given in both spaces.
pub fn solve_linear(
    gradient: &[f64],
    image_gradient: &[f64],
    image: &[f64],
    map: &ImageMap<'_>,
) -> Result<SubproblemSolution> {
    let min = min_linear_over_set(gradient, map.feasible)?;
    Ok(map.solution(min.point, |s_image| {
        image_gradient
            .iter()
            .zip(s_image.iter().zip(image))
            .map(|(g, (s, x))| g * (s - x))
            .sum()
    }))
}

fn single_vertex(vertex: SignedBasis, image: &[f64], map: &ImageMap<'_>) -> Result<SubproblemSolution> {
    let point = match map.bounding_box {
        Some(bbox) => {
            let cap = map.feasible.cap();
            let mut pairs = Vec::new();
            for order in bbox.candidates(map, vertex) {
                greedy_fill(order, cap, &mut pairs);
            }
            SparseVector::new(map.feasible.dim(), pairs)?
        }
        None => {
            let c = map.matrix.row_dense(vertex.index, vertex.sign());
            min_linear_over_set(&c, map.feasible)?.point
        }
    };
    Ok(map.solution(point, |s_image| {
        vertex.sign() * (s_image[vertex.index] - image[vertex.index])
    }))
}

fn block_equalities(lp: &mut LpProblem, feasible: &FeasibleSet, width: usize) {
    for block in feasible.blocks() {
        let mut row = vec![0.0; width];
        row[block].iter_mut().for_each(|v| *v = 1.0);
        lp.add_equality(row, 1.0);
    }
}

fn sparse_from_lp(x: &[f64]) -> SparseVector {
    SparseVector::from_dense(x, DROP_TOLERANCE)
}

/// Solves the subproblem for `T = conv(vertices)`.
///
/// One vertex is handled by a greedy fill on the signed matrix row; otherwise
/// the LP `min mu s.t. <Az + b - x_img, d_v> <= mu` is solved.
pub fn solve_minmax_vertexhull(
    vertices: &[SignedBasis],
    image: &[f64],
    map: &ImageMap<'_>,
) -> Result<SubproblemSolution> {
    let p = map.matrix.nrows();
    if image.len() != p {
        return Err(Error::DimensionMismatch {
            expected: p,
            found: image.len(),
        });
    }
    match vertices {
        [] => Err(Error::InvalidData("empty vertex set".into())),
        [v] => single_vertex(*v, image, map),
        _ => {
            let n = map.feasible.dim();
            let width = n + 1;
            let rows: Vec<Vec<f64>> = vertices
                .iter()
                .map(|v| map.matrix.row_dense(v.index, v.sign()))
                .collect();
            // mu = mu' + floor with floor strictly below the optimum, so mu'
            // stays positive and basic at every optimal vertex.
            let mut floor = f64::NEG_INFINITY;
            for (v, row) in vertices.iter().zip(&rows) {
                let low =
                    min_linear_over_set(row, map.feasible)?.value + v.sign() * (map.offset[v.index] - image[v.index]);
                floor = floor.max(low);
            }
            floor -= 1.0;

            let mut objective = vec![0.0; width];
            objective[n] = 1.0;
            let mut lp = LpProblem::new(objective);
            let cap = map.feasible.cap();
            for j in 0..n {
                lp.set_bounds(j, 0.0, cap);
            }
            for (v, row) in vertices.iter().zip(rows) {
                let mut coeffs = row;
                coeffs.push(-1.0);
                let rhs = v.sign() * (image[v.index] - map.offset[v.index]) + floor;
                lp.add_inequality(coeffs, rhs);
            }
            block_equalities(&mut lp, map.feasible, width);
            let sol = solve_lp(&lp)?;
            let point = sparse_from_lp(&sol.x[..n]);
            Ok(map.solution(point, |s_image| {
                vertices
                    .iter()
                    .map(|v| v.sign() * (s_image[v.index] - image[v.index]))
                    .fold(f64::NEG_INFINITY, f64::max)
            }))
        }
    }
}

/// Solves the subproblem for the box described by a sign pattern.
///
/// Free coordinates contribute `|(A(z - x))_i|`, linearized with one auxiliary
/// variable each.
pub fn solve_minmax_signpattern(pattern: &[Sign], image: &[f64], map: &ImageMap<'_>) -> Result<SubproblemSolution> {
    let p = map.matrix.nrows();
    if pattern.len() != p || image.len() != p {
        return Err(Error::DimensionMismatch {
            expected: p,
            found: pattern.len().min(image.len()),
        });
    }
    let fixed: Vec<f64> = pattern.iter().map(|s| s.value().unwrap_or(0.0)).collect();
    let cost = map.matrix.tr_mul(&fixed);
    let set = SubgradientSet::SignPattern(pattern.to_vec());
    let value_of = |s_image: &[f64]| {
        let delta: Vec<f64> = s_image.iter().zip(image).map(|(s, x)| s - x).collect();
        set.support_function(&delta)
    };

    let mut free_rows = Vec::new();
    for (i, s) in pattern.iter().enumerate() {
        if *s == Sign::Free {
            let mut touched = false;
            map.matrix.for_each_in_row(i, |_, v| touched |= v != 0.0);
            if touched {
                free_rows.push(i);
            }
        }
    }
    if free_rows.is_empty() {
        let min = min_linear_over_set(&cost, map.feasible)?;
        return Ok(map.solution(min.point, value_of));
    }

    // Each free residual r_i = <a_i, z> + b_i - x_i is split as u_i - v_i
    // with u_i, v_i >= 0, so |r_i| = u_i + v_i at the optimum.
    let n = map.feasible.dim();
    let free = free_rows.len();
    let width = n + 2 * free;
    let mut objective = cost;
    objective.resize(width, 1.0);
    let mut lp = LpProblem::new(objective);
    let cap = map.feasible.cap();
    for j in 0..n {
        lp.set_bounds(j, 0.0, cap);
    }
    for (k, &i) in free_rows.iter().enumerate() {
        let target = image[i] - map.offset[i];
        let mut row = vec![0.0; width];
        map.matrix.for_each_in_row(i, |j, v| row[j] = v);
        row[n + k] = -1.0;
        row[n + free + k] = 1.0;
        lp.add_equality(row, target);
    }
    block_equalities(&mut lp, map.feasible, width);
    let sol = solve_lp(&lp)?;
    let point = sparse_from_lp(&sol.x[..n]);
    Ok(map.solution(point, value_of))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dense(m: &LinearMinimum) -> Vec<f64> {
        m.point.to_dense()
    }

    #[test]
    fn simplex_argmin_with_ties() {
        assert_eq!(
            dense(&min_linear_over_simplex(&[3.0, 1.0, 2.0]).unwrap()),
            vec![0.0, 1.0, 0.0]
        );
        assert_eq!(dense(&min_linear_over_simplex(&[1.0, 1.0]).unwrap()), vec![1.0, 0.0]);
        assert_eq!(
            dense(&min_linear_over_simplex(&[-5.0, 0.0, 7.0]).unwrap()),
            vec![1.0, 0.0, 0.0]
        );
    }

    #[test]
    fn capped_greedy() {
        let c = [3.0, 1.0, 2.0];
        assert_eq!(
            dense(&min_linear_over_capped_simplex(&c, 1.0).unwrap()),
            vec![0.0, 1.0, 0.0]
        );
        assert_eq!(
            dense(&min_linear_over_capped_simplex(&c, 0.5).unwrap()),
            vec![0.0, 0.5, 0.5]
        );
        let third = min_linear_over_capped_simplex(&[1.0, 1.0, 1.0], 1.0 / 3.0).unwrap();
        assert_eq!(third.point.nnz(), 3);
        for v in dense(&third) {
            assert!((v - 1.0 / 3.0).abs() < 1e-15);
        }
        assert!(min_linear_over_capped_simplex(&c, 0.2).is_err());
    }

    #[test]
    fn single_vertex_uses_signed_row() {
        // Two blocks: columns 0,1 positive class, 2,3 negated negative class.
        let a = Matrix::from_rows(&[vec![1.0, 3.0, -2.0, -0.5]]).unwrap();
        let feasible = FeasibleSet::product(vec![2, 2]).unwrap();
        let offset = [0.0];
        let map = ImageMap {
            matrix: &a,
            offset: &offset,
            feasible: &feasible,
            bounding_box: None,
        };
        let image = [0.5];
        let sol = solve_minmax_vertexhull(&[SignedBasis::plus(0)], &image, &map).unwrap();
        assert_eq!(sol.s.to_dense(), vec![1.0, 0.0, 1.0, 0.0]);
        assert_eq!(sol.value, -1.0 - 0.5);

        let bbox = BoundingBox::new(1, 1.0);
        let boxed = ImageMap {
            bounding_box: Some(&bbox),
            ..map
        };
        let again = solve_minmax_vertexhull(&[SignedBasis::plus(0)], &image, &boxed).unwrap();
        assert_eq!(again, sol);
        assert_eq!(bbox.computed(), 1);
    }

    #[test]
    fn hull_lp_balances_two_rows() {
        // Image points (1,0), (0,1), (-1,-1); max of both coordinates is
        // smallest at the third vertex.
        let a = Matrix::from_columns(2, &[vec![1.0, 0.0], vec![0.0, 1.0], vec![-1.0, -1.0]]).unwrap();
        let feasible = FeasibleSet::unit_simplex(3).unwrap();
        let offset = [0.0, 0.0];
        let map = ImageMap {
            matrix: &a,
            offset: &offset,
            feasible: &feasible,
            bounding_box: None,
        };
        let image = [0.0, 0.0];
        let v = [SignedBasis::plus(0), SignedBasis::plus(1)];
        let sol = solve_minmax_vertexhull(&v, &image, &map).unwrap();
        assert!((sol.value + 1.0).abs() < 1e-12, "{sol:?}");
        assert_eq!(sol.support, vec![2]);
    }

    #[test]
    fn sign_pattern_all_free_returns_zero_at_origin_image() {
        let a = Matrix::from_columns(1, &[vec![1.0], vec![-1.0]]).unwrap();
        let feasible = FeasibleSet::unit_simplex(2).unwrap();
        let offset = [0.0];
        let map = ImageMap {
            matrix: &a,
            offset: &offset,
            feasible: &feasible,
            bounding_box: None,
        };
        let sol = solve_minmax_signpattern(&[Sign::Free], &[0.0], &map).unwrap();
        assert!(sol.value.abs() < 1e-12);
        assert!(sol.s_image[0].abs() < 1e-12);
    }
}
