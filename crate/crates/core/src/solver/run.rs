use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::instance::{IterateState, ProblemInstance};
use crate::solver::bounds::{a_priori_bound, gap_certificate, step_schedule};
use crate::solver::line_search::{bisection_line_search, DEFAULT_TOLERANCE};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StepPolicy {
    /// `alpha_k = 2 / (k + 2)`.
    #[default]
    Schedule,
    /// Bisection line search on `[0, 1]`; `eps_k` still follows the schedule.
    Bisection,
}

impl std::str::FromStr for StepPolicy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "schedule" => Ok(StepPolicy::Schedule),
            "bisection" => Ok(StepPolicy::Bisection),
            other => Err(Error::Config(format!("unknown step policy {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SolverConfig {
    pub max_iters: usize,
    /// Stop once the certified bound drops to this value.
    pub tol: f64,
    pub step_policy: StepPolicy,
    /// `c` in `eps_k = c sqrt(alpha_k)`.
    pub epsilon_coeff: f64,
    pub refresh_period: usize,
    /// Only used by the smoothing baseline.
    pub rng_seed: u64,
    pub line_search_tol: f64,
    /// When off, `elapsed_ms` is recorded as zero and traces are bitwise
    /// reproducible.
    pub record_timing: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            max_iters: 1000,
            tol: 0.0,
            step_policy: StepPolicy::Schedule,
            epsilon_coeff: 1.0,
            refresh_period: 100,
            rng_seed: 0,
            line_search_tol: DEFAULT_TOLERANCE,
            record_timing: true,
        }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<()> {
        if self.max_iters == 0 {
            return Err(Error::Config("max_iters must be at least 1".into()));
        }
        if !(self.tol.is_finite() && self.tol >= 0.0) {
            return Err(Error::Config(format!("tol {} must be finite and >= 0", self.tol)));
        }
        if !(self.epsilon_coeff.is_finite() && self.epsilon_coeff > 0.0) {
            return Err(Error::Config(format!(
                "epsilon coefficient {} must be positive",
                self.epsilon_coeff
            )));
        }
        if self.refresh_period == 0 {
            return Err(Error::Config("refresh_period must be positive".into()));
        }
        if self.line_search_tol.is_nan() || self.line_search_tol <= 0.0 {
            return Err(Error::Config("line_search_tol must be positive".into()));
        }
        if self.epsilon_coeff > 1.0 {
            log::warn!(
                "epsilon coefficient {} > 1 gives eps_k > 1 early on",
                self.epsilon_coeff
            );
        }
        Ok(())
    }
}

/// One row of a solver trace.
#[derive(Debug, Clone, PartialEq)]
pub struct IterationRecord {
    pub k: usize,
    pub alpha: f64,
    pub epsilon: f64,
    pub objective: f64,
    pub gap_surrogate: f64,
    pub certified_bound: f64,
    pub num_vertices: usize,
    pub step_support: usize,
    pub coreset_size: usize,
    pub elapsed_ms: f64,
    /// Raw subproblem value; not written to trace files.
    pub subproblem_value: f64,
    /// Per-unit-step slack of the descent inequality; not written to trace
    /// files.
    pub descent_slack: f64,
}

/// Supports of the step directions and their union.
#[derive(Debug, Clone, PartialEq)]
pub struct Coreset {
    initial: Vec<usize>,
    steps: Vec<Vec<usize>>,
    member: Vec<bool>,
    union: Vec<usize>,
    certificate: f64,
}

impl Coreset {
    pub fn new(dim: usize, initial: Vec<usize>) -> Self {
        Self {
            initial,
            steps: Vec::new(),
            member: vec![false; dim],
            union: Vec::new(),
            certificate: f64::INFINITY,
        }
    }

    /// Records `S_k`; pass an empty slice for steps that were not taken.
    pub fn push(&mut self, support: &[usize]) {
        for &j in support {
            if !self.member[j] {
                self.member[j] = true;
                self.union.push(j);
            }
        }
        self.steps.push(support.to_vec());
    }

    pub fn steps(&self) -> &[Vec<usize>] {
        &self.steps
    }

    /// Support of the starting point, kept apart from the step supports.
    pub fn initial(&self) -> &[usize] {
        &self.initial
    }

    /// Sorted union of all step supports.
    pub fn union(&self) -> Vec<usize> {
        let mut u = self.union.clone();
        u.sort_unstable();
        u
    }

    pub fn len(&self) -> usize {
        self.union.len()
    }

    pub fn is_empty(&self) -> bool {
        self.union.is_empty()
    }

    pub fn contains(&self, j: usize) -> bool {
        self.member.get(j).copied().unwrap_or(false)
    }

    /// `sum_k |S_k|`.
    pub fn total_step_support(&self) -> usize {
        self.steps.iter().map(Vec::len).sum()
    }

    /// A-priori suboptimality bound at the final iteration count.
    pub fn certificate(&self) -> f64 {
        self.certificate
    }

    pub(crate) fn set_certificate(&mut self, bound: f64) {
        self.certificate = bound;
    }
}

#[derive(Debug, Clone)]
pub struct SolveResult {
    pub x: Vec<f64>,
    pub trace: Vec<IterationRecord>,
    pub coreset: Coreset,
    /// The certified bound reached `tol` before `max_iters`.
    pub converged: bool,
}

impl SolveResult {
    pub fn final_record(&self) -> &IterationRecord {
        self.trace.last().expect("a run records at least one iteration")
    }
}

/// Runs the solver from the instance's default starting vertex.
pub fn run(instance: &ProblemInstance, config: &SolverConfig) -> Result<SolveResult> {
    run_from(instance, config, instance.start_point())
}

/// Runs the solver from `x0`.
///
/// Each iteration builds `T(x_k, eps_k)`, solves the direction subproblem,
/// records the gap certificate and steps toward the subproblem solution. The
/// run stops after `max_iters` records or once the certified bound is at most
/// `tol`; in the latter case the final record's step is not taken.
pub fn run_from(instance: &ProblemInstance, config: &SolverConfig, x0: Vec<f64>) -> Result<SolveResult> {
    run_observed(instance, config, x0, |_, _| {})
}

/// Like [`run_from`], calling `observer(record, x_k)` after each record is
/// made and before the step is taken.
pub fn run_observed<F>(
    instance: &ProblemInstance,
    config: &SolverConfig,
    x0: Vec<f64>,
    mut observer: F,
) -> Result<SolveResult>
where
    F: FnMut(&IterationRecord, &[f64]),
{
    config.validate()?;
    let mut state = IterateState::new(instance, x0, config.refresh_period)?;
    let mut coreset = Coreset::new(instance.dim(), state.support().to_vec());
    let mut trace = Vec::with_capacity(config.max_iters.min(1 << 16));
    let lipschitz = instance.lipschitz();
    let start = Instant::now();
    let mut converged = false;

    for k in 0..config.max_iters {
        let (scheduled, eps) = step_schedule(k, config.epsilon_coeff);
        let lin = instance.linearize(state.image(), eps)?;
        let sol = instance
            .solve_subproblem(&lin.set, state.image())
            .map_err(|e| Error::Subproblem {
                iteration: k,
                source: Box::new(e),
            })?;
        let cert = gap_certificate(sol.value, lipschitz, eps, lin.certificate_extra);
        let stop = cert.certified_bound <= config.tol;
        let alpha = match config.step_policy {
            StepPolicy::Schedule => scheduled,
            StepPolicy::Bisection if stop => 0.0,
            StepPolicy::Bisection => {
                bisection_line_search(instance, state.image(), &sol.s_image, config.line_search_tol)?
            }
        };
        if !stop {
            coreset.push(if alpha > 0.0 { &sol.support } else { &[] });
        }
        let elapsed_ms = if config.record_timing {
            start.elapsed().as_secs_f64() * 1e3
        } else {
            0.0
        };
        trace.push(IterationRecord {
            k,
            alpha,
            epsilon: eps,
            objective: lin.objective,
            gap_surrogate: cert.gap_surrogate,
            certified_bound: cert.certified_bound,
            num_vertices: lin.set.vertex_count(),
            step_support: sol.support.len(),
            coreset_size: coreset.len(),
            elapsed_ms,
            subproblem_value: sol.value,
            descent_slack: lin.descent_slack,
        });
        log::debug!(
            "k={k} f={:.6e} bound={:.3e} |V|={} support={}",
            lin.objective,
            cert.certified_bound,
            lin.set.vertex_count(),
            sol.support.len()
        );
        observer(trace.last().expect("just pushed"), state.x());
        if stop {
            converged = true;
            break;
        }
        state.update_iterate(instance, &sol.s, &sol.s_image, alpha)?;
    }
    coreset.set_certificate(a_priori_bound(lipschitz, instance.curvature_coeff(), trace.len()));
    Ok(SolveResult {
        x: state.into_x(),
        trace,
        coreset,
        converged,
    })
}

/// One-step descent inequality between consecutive records:
/// `f_{k+1} <= f_k + alpha (value_k + slack_k) + alpha^2 D_f / eps_k + 1e-8`,
/// i.e. `f_k - alpha (g_k - extra_k - slack_k) + alpha^2 D_f / eps_k`.
pub fn check_stepwise_bound(current: &IterationRecord, next: &IterationRecord, curvature: f64) -> bool {
    let alpha = current.alpha;
    let curvature_term = if alpha == 0.0 {
        0.0
    } else if current.epsilon > 0.0 {
        alpha * alpha * curvature / current.epsilon
    } else if curvature == 0.0 {
        0.0
    } else {
        f64::INFINITY
    };
    let bound = current.objective + alpha * (current.subproblem_value + current.descent_slack) + curvature_term + 1e-8;
    next.objective <= bound
}
