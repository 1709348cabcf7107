//! Linear programming and the direction-finding subproblems.

pub mod simplex;
pub mod subproblem;

pub use simplex::{solve_lp, LpError, LpProblem, LpSolution, MAX_PIVOTS};
pub use subproblem::{
    min_linear_over_capped_simplex, min_linear_over_set, min_linear_over_simplex, solve_linear,
    solve_minmax_signpattern, solve_minmax_vertexhull, BoundingBox, ImageMap, LinearMinimum, SubproblemSolution,
};
