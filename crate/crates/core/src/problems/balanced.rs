//! Balanced development: choose a mix `y` over `m` resources so that the
//! worst priced product `max_j (1/p_j) sum_i a_ij y_i / b_i` is as small as
//! possible.

use crate::error::{Error, Result};
use crate::feasible::FeasibleSet;
use crate::instance::{ObjectiveKind, ProblemInstance};
use crate::linalg::Matrix;

/// Input for [`build_balanced_dev`]. `attributes[i][j]` is the amount of
/// resource `i` used by product `j`.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct BalancedDevData {
    pub attributes: Vec<Vec<f64>>,
    pub requirements: Vec<f64>,
    pub prices: Vec<f64>,
}

pub fn build_balanced_dev(data: &BalancedDevData) -> Result<ProblemInstance> {
    let m = data.requirements.len();
    let n = data.prices.len();
    if m == 0 || n == 0 {
        return Err(Error::InvalidData("need at least one resource and one product".into()));
    }
    if data.attributes.len() != m {
        return Err(Error::DimensionMismatch {
            expected: m,
            found: data.attributes.len(),
        });
    }
    if let Some(&b) = data.requirements.iter().find(|&&b| !(b.is_finite() && b > 0.0)) {
        return Err(Error::InvalidData(format!("requirement {b} must be positive")));
    }
    if let Some(&p) = data.prices.iter().find(|&&p| !(p.is_finite() && p > 0.0)) {
        return Err(Error::InvalidData(format!("price {p} must be positive")));
    }
    let mut rows = vec![vec![0.0; m]; n];
    for (i, attr) in data.attributes.iter().enumerate() {
        if attr.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: attr.len(),
            });
        }
        for (j, &a) in attr.iter().enumerate() {
            rows[j][i] = a / (data.requirements[i] * data.prices[j]);
        }
    }
    ProblemInstance::new(
        FeasibleSet::unit_simplex(m)?,
        Matrix::from_rows(&rows)?,
        vec![0.0; n],
        ObjectiveKind::Max,
    )
}
