//! The 1-median (geometric median restricted to the convex hull of the
//! points): `min_{x in simplex} (1/n) sum_i |Ax - p_i|_2` with the points as
//! the columns of `A`.

use crate::error::{Error, Result};
use crate::feasible::FeasibleSet;
use crate::instance::{ObjectiveKind, ProblemInstance};
use crate::linalg::Matrix;

pub fn build_one_median(points: &[Vec<f64>]) -> Result<ProblemInstance> {
    let Some(first) = points.first() else {
        return Err(Error::InvalidData("no points".into()));
    };
    let dim = first.len();
    if dim == 0 {
        return Err(Error::InvalidData("points have no coordinates".into()));
    }
    let matrix = Matrix::from_columns(dim, points)?;
    ProblemInstance::new(
        FeasibleSet::unit_simplex(points.len())?,
        matrix,
        vec![0.0; dim],
        ObjectiveKind::Median,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::{run, SolverConfig};

    #[test]
    fn single_point_is_optimal_immediately() {
        let inst = build_one_median(&[vec![3.0, -1.0]]).unwrap();
        let res = run(
            &inst,
            &SolverConfig {
                max_iters: 5,
                ..Default::default()
            },
        )
        .unwrap();
        assert!(res.trace.iter().all(|r| r.objective == 0.0));
    }

    #[test]
    fn two_points_give_half_distance() {
        let inst = build_one_median(&[vec![0.0, 0.0], vec![3.0, 4.0]]).unwrap();
        let res = run(
            &inst,
            &SolverConfig {
                max_iters: 50,
                ..Default::default()
            },
        )
        .unwrap();
        assert!((res.final_record().objective - 2.5).abs() < 1e-12);
        assert_eq!(inst.curvature_coeff(), 50.0);
    }

    #[test]
    fn ragged_points_are_rejected() {
        assert!(build_one_median(&[vec![0.0, 0.0], vec![1.0]]).is_err());
        assert!(build_one_median(&[]).is_err());
    }
}
