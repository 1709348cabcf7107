//! Builders that turn application data into [`ProblemInstance`]s.
//!
//! [`ProblemInstance`]: crate::instance::ProblemInstance

pub mod balanced;
pub mod graph_cut;
pub mod median;
pub mod piecewise;
pub mod svm;

pub use balanced::{build_balanced_dev, BalancedDevData};
pub use graph_cut::{build_graph_cut, direct_objective, Graph, GraphCut};
pub use median::build_one_median;
pub use piecewise::{build_piecewise_linear, PiecewiseLinearData};
pub use svm::{build_l1svm, Hyperplane, L1Svm, SvmData};
