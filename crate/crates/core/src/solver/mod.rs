//! The main loop and everything it reports.

pub mod baseline;
pub mod bounds;
pub mod curvature;
pub mod line_search;
mod run;

pub use baseline::{smoothed_fw_baseline, smoothed_gradient, BaselineConfig};
pub use bounds::{a_priori_bound, coreset_k, gap_certificate, step_schedule, GapCertificate, TheoremBound};
pub use curvature::{estimate_curvature, estimate_curvature_with, CurvatureSample};
pub use line_search::bisection_line_search;
pub use run::{
    check_stepwise_bound, run, run_from, run_observed, Coreset, IterationRecord, SolveResult, SolverConfig, StepPolicy,
};
