//! Generic piecewise-linear convex minimization over the simplex,
//! `max_j (<a_j, x> + b_j)`.

use crate::error::Result;
use crate::feasible::FeasibleSet;
use crate::instance::{ObjectiveKind, ProblemInstance};
use crate::linalg::Matrix;

#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct PiecewiseLinearData {
    /// One affine piece per row.
    pub rows: Vec<Vec<f64>>,
    pub offsets: Vec<f64>,
}

pub fn build_piecewise_linear(data: &PiecewiseLinearData) -> Result<ProblemInstance> {
    let matrix = Matrix::from_rows(&data.rows)?;
    ProblemInstance::new(
        FeasibleSet::unit_simplex(matrix.ncols())?,
        matrix,
        data.offsets.clone(),
        ObjectiveKind::Max,
    )
}
