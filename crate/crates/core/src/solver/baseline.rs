//! Frank-Wolfe on a randomized smoothing `f_mu(x) = E f(x + mu u)`, with `u`
//! uniform in the unit ball, used as a comparison baseline.
//!
//! The smoothing radius shrinks as `mu_k = mu_0 / sqrt(k + 1)` and the number
//! of gradient samples grows as `m_k = growth * (k + 1)`. The reported gap is
//! the linearization gap of the smoothed gradient; no certified bound exists.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::instance::{IterateState, ProblemInstance};
use crate::lp::min_linear_over_set;
use crate::solver::bounds::step_schedule;
use crate::solver::run::{Coreset, IterationRecord, SolveResult, SolverConfig};

/// Uniform sample from the unit ball in `dim` dimensions.
pub fn unit_ball_sample<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> Vec<f64> {
    let mut u: Vec<f64> = (0..dim).map(|_| rng.sample(StandardNormal)).collect();
    let norm = crate::linalg::norm2(&u);
    let radius = rng.random::<f64>().powf(1.0 / dim as f64);
    let scale = if norm > 0.0 { radius / norm } else { 0.0 };
    u.iter_mut().for_each(|v| *v *= scale);
    u
}

/// Monte-Carlo gradient of `f_mu` at `x`, in image space (`Aᵀ` of it is the
/// decision-space gradient).
pub fn smoothed_image_gradient<R: Rng + ?Sized>(
    instance: &ProblemInstance,
    image: &[f64],
    mu: f64,
    samples: usize,
    rng: &mut R,
) -> Result<Vec<f64>> {
    if samples == 0 {
        return Err(Error::Config("at least one smoothing sample is needed".into()));
    }
    let mut acc = vec![0.0; image.len()];
    let mut point = vec![0.0; image.len()];
    for _ in 0..samples {
        let u = unit_ball_sample(rng, instance.dim());
        let shift = instance.matrix().mul_dense(&u);
        for ((p, &y), &d) in point.iter_mut().zip(image).zip(&shift) {
            *p = y + mu * d;
        }
        let g = instance.exact_image_subgradient(&point)?;
        for (a, v) in acc.iter_mut().zip(g) {
            *a += v;
        }
    }
    let scale = 1.0 / samples as f64;
    acc.iter_mut().for_each(|a| *a *= scale);
    Ok(acc)
}

/// Decision-space Monte-Carlo gradient of `f_mu` at `x`.
pub fn smoothed_gradient<R: Rng + ?Sized>(
    instance: &ProblemInstance,
    x: &[f64],
    mu: f64,
    samples: usize,
    rng: &mut R,
) -> Result<Vec<f64>> {
    let image = instance.image(x)?;
    let g = smoothed_image_gradient(instance, &image, mu, samples, rng)?;
    Ok(instance.matrix().tr_mul(&g))
}

/// Parameters of the smoothing baseline.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
#[serde(default)]
pub struct BaselineConfig {
    pub mu0: f64,
    pub samples_growth: usize,
}

impl Default for BaselineConfig {
    fn default() -> Self {
        Self {
            mu0: 0.1,
            samples_growth: 1,
        }
    }
}

/// Runs the baseline for `config.max_iters` iterations from the default
/// start. `epsilon` records `mu_k`, `num_vertices` records `m_k` and
/// `certified_bound` is NaN.
pub fn smoothed_fw_baseline(
    instance: &ProblemInstance,
    config: &SolverConfig,
    baseline: &BaselineConfig,
) -> Result<SolveResult> {
    config.validate()?;
    if !(baseline.mu0.is_finite() && baseline.mu0 > 0.0) || baseline.samples_growth == 0 {
        return Err(Error::Config(format!("invalid baseline parameters {baseline:?}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(config.rng_seed);
    let mut state = IterateState::new(instance, instance.start_point(), config.refresh_period)?;
    let mut coreset = Coreset::new(instance.dim(), state.support().to_vec());
    let mut trace = Vec::with_capacity(config.max_iters);
    let start = Instant::now();
    for k in 0..config.max_iters {
        let (alpha, _) = step_schedule(k, 1.0);
        let mu = baseline.mu0 / ((k + 1) as f64).sqrt();
        let samples = baseline.samples_growth * (k + 1);
        let objective = instance.evaluate_objective(state.image())?;
        let g_img = smoothed_image_gradient(instance, state.image(), mu, samples, &mut rng)?;
        let g = instance.matrix().tr_mul(&g_img);
        let step = min_linear_over_set(&g, instance.feasible())?;
        let mut s_image = instance.matrix().mul_sparse(&step.point);
        for (v, b) in s_image.iter_mut().zip(instance.offset()) {
            *v += b;
        }
        // <g, x - s> computed through the images.
        let gap: f64 = g_img
            .iter()
            .zip(state.image().iter().zip(&s_image))
            .map(|(g, (x, s))| g * (x - s))
            .sum();
        coreset.push(step.point.indices());
        trace.push(IterationRecord {
            k,
            alpha,
            epsilon: mu,
            objective,
            gap_surrogate: gap,
            certified_bound: f64::NAN,
            num_vertices: samples,
            step_support: step.point.nnz(),
            coreset_size: coreset.len(),
            elapsed_ms: if config.record_timing {
                start.elapsed().as_secs_f64() * 1e3
            } else {
                0.0
            },
            subproblem_value: -gap,
            descent_slack: 0.0,
        });
        state.update_iterate(instance, &step.point, &s_image, alpha)?;
    }
    Ok(SolveResult {
        x: state.into_x(),
        trace,
        coreset,
        converged: false,
    })
}
