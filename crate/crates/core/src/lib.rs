//! Deterministic nonsmooth Frank-Wolfe over simplex products.
//!
//! Objectives have the form `f(x) = g(Ax + b)` where `g` is a max of
//! coordinates, an `l_inf` or `l_1` norm, or a mean of Euclidean distances.
//! Each iteration replaces the gradient with a small set of subgradients
//! gathered from a neighborhood of the current image `Ax + b`, solves a
//! min-max direction subproblem (greedy or a small LP), and takes a
//! conditional-gradient step. The supports of the step directions form a
//! coreset, and every iteration reports a certified suboptimality bound.
//!
//! The crate is organised bottom-up:
//!
//! * [`linalg`], [`feasible`]: vectors, matrices and simplex products.
//! * [`subdiff`]: finite representations of the approximate subdifferential.
//! * [`instance`]: the [`ProblemInstance`] contract and iterate bookkeeping.
//! * [`lp`]: a dense bounded-variable simplex solver and the direction
//!   subproblems.
//! * [`solver`]: the main loop, schedules, line search, certificates,
//!   curvature estimation and a randomized-smoothing baseline.
//! * [`problems`]: l1-SVM dual, 1-median, multiway graph cut, balanced
//!   development, generic piecewise-linear max.
//! * [`io`], [`datagen`], [`plot`], [`experiment`]: data formats, synthetic
//!   generators, SVG charts and experiment orchestration.

pub mod datagen;
pub mod error;
pub mod experiment;
pub mod feasible;
pub mod instance;
pub mod io;
pub mod linalg;
pub mod lp;
pub mod plot;
pub mod problems;
pub mod solver;
pub mod subdiff;

pub use error::{Error, Result};
pub use feasible::{FeasibilityReport, FeasibleSet};
pub use instance::{IterateState, Linearization, ObjectiveKind, ProblemInstance};
pub use linalg::{Matrix, SparseVector};
pub use lp::{LpError, LpProblem, SubproblemSolution};
pub use solver::{run, run_from, run_observed, Coreset, IterationRecord, SolveResult, SolverConfig, StepPolicy};
pub use subdiff::{Sign, SignedBasis, SubgradientSet};
