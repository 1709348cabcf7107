//! Feasible sets: the unit simplex, products of simplices, and products of
//! simplices with a per-coordinate cap.

use std::ops::Range;

use rand::Rng;
use rand_distr::{Distribution, Exp1};

use crate::error::{Error, Result};

/// Block sums must match 1 within this tolerance.
pub const SUM_TOLERANCE: f64 = 1e-9;
/// Entries must lie in `[0, cap]` within this tolerance.
pub const BOUND_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub enum FeasibleSet {
    UnitSimplex(usize),
    ProductOfSimplices(Vec<usize>),
    /// Every block sums to one and every coordinate lies in `[0, cap]`.
    CappedSimplexProduct {
        blocks: Vec<usize>,
        cap: f64,
    },
}

/// Outcome of [`FeasibleSet::check`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FeasibilityReport {
    pub feasible: bool,
    pub max_violation: f64,
}

impl FeasibleSet {
    pub fn unit_simplex(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidFeasibleSet("simplex dimension must be >= 1".into()));
        }
        Ok(FeasibleSet::UnitSimplex(n))
    }

    /// An empty block list is allowed and describes the single point of
    /// dimension zero (a graph cut whose nodes are all seeded, for instance).
    pub fn product(blocks: Vec<usize>) -> Result<Self> {
        if blocks.contains(&0) {
            return Err(Error::InvalidFeasibleSet(format!(
                "block sizes must be >= 1, got {blocks:?}"
            )));
        }
        Ok(FeasibleSet::ProductOfSimplices(blocks))
    }

    pub fn capped(blocks: Vec<usize>, cap: f64) -> Result<Self> {
        if !(cap > 0.0 && cap <= 1.0) {
            return Err(Error::InvalidFeasibleSet(format!("cap {cap} outside (0, 1]")));
        }
        Self::product(blocks.clone())?;
        if let Some(&b) = blocks.iter().find(|&&b| cap * (b as f64) < 1.0 - 1e-12) {
            return Err(Error::InvalidFeasibleSet(format!(
                "cap {cap} leaves a block of size {b} unable to sum to one"
            )));
        }
        Ok(FeasibleSet::CappedSimplexProduct { blocks, cap })
    }

    pub fn block_sizes(&self) -> Vec<usize> {
        match self {
            FeasibleSet::UnitSimplex(n) => vec![*n],
            FeasibleSet::ProductOfSimplices(b) => b.clone(),
            FeasibleSet::CappedSimplexProduct { blocks, .. } => blocks.clone(),
        }
    }

    /// Index ranges of the blocks inside the stacked decision vector.
    pub fn blocks(&self) -> Vec<Range<usize>> {
        let mut start = 0;
        self.block_sizes()
            .into_iter()
            .map(|b| {
                let r = start..start + b;
                start += b;
                r
            })
            .collect()
    }

    pub fn dim(&self) -> usize {
        self.block_sizes().iter().sum()
    }

    /// Upper bound on each coordinate (1 for the uncapped sets).
    pub fn cap(&self) -> f64 {
        match self {
            FeasibleSet::CappedSimplexProduct { cap, .. } => *cap,
            _ => 1.0,
        }
    }

    /// Checks block sums and coordinate bounds, reporting the largest violation.
    pub fn check(&self, x: &[f64]) -> FeasibilityReport {
        if x.len() != self.dim() {
            return FeasibilityReport {
                feasible: false,
                max_violation: f64::INFINITY,
            };
        }
        let cap = self.cap();
        let mut sum_ok = true;
        let mut bound_ok = true;
        let mut worst: f64 = 0.0;
        for block in self.blocks() {
            let part = &x[block];
            let sum_err = (part.iter().sum::<f64>() - 1.0).abs();
            sum_ok &= sum_err <= SUM_TOLERANCE;
            worst = worst.max(sum_err);
            for &v in part {
                let err = (-v).max(v - cap).max(0.0);
                if !v.is_finite() {
                    bound_ok = false;
                    worst = f64::INFINITY;
                }
                bound_ok &= err <= BOUND_TOLERANCE;
                worst = worst.max(err);
            }
        }
        FeasibilityReport {
            feasible: sum_ok && bound_ok,
            max_violation: worst,
        }
    }

    /// The vertex obtained by filling each block greedily in index order.
    pub fn first_vertex(&self) -> Vec<f64> {
        let cap = self.cap();
        let mut x = vec![0.0; self.dim()];
        for block in self.blocks() {
            let mut remaining = 1.0;
            for j in block {
                if remaining <= cap + 1e-12 {
                    x[j] = remaining;
                    break;
                }
                x[j] = cap;
                remaining -= cap;
            }
        }
        x
    }

    pub fn barycenter(&self) -> Vec<f64> {
        let mut x = vec![0.0; self.dim()];
        for block in self.blocks() {
            let w = 1.0 / block.len() as f64;
            x[block].iter_mut().for_each(|v| *v = w);
        }
        x
    }

    /// A random vertex: each block is filled greedily in a random order.
    pub fn random_vertex<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<f64> {
        use rand::seq::SliceRandom;
        let cap = self.cap();
        let mut x = vec![0.0; self.dim()];
        for block in self.blocks() {
            let mut order: Vec<usize> = block.collect();
            order.shuffle(rng);
            let mut remaining = 1.0;
            for j in order {
                if remaining <= cap + 1e-12 {
                    x[j] = remaining;
                    break;
                }
                x[j] = cap;
                remaining -= cap;
            }
        }
        x
    }

    /// A random point: uniform (Dirichlet(1)) on each block, pulled toward the
    /// block barycenter just enough to respect the cap.
    pub fn random_point<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<f64> {
        let cap = self.cap();
        let mut x = vec![0.0; self.dim()];
        for block in self.blocks() {
            let len = block.len();
            let part = &mut x[block];
            let mut total = 0.0;
            for v in part.iter_mut() {
                let e: f64 = Exp1.sample(rng);
                *v = e;
                total += e;
            }
            part.iter_mut().for_each(|v| *v /= total);
            let center = 1.0 / len as f64;
            let peak = part.iter().fold(0.0f64, |m, &v| m.max(v));
            if peak > cap {
                let lambda = ((cap - center) / (peak - center)).clamp(0.0, 1.0);
                part.iter_mut().for_each(|v| *v = lambda * *v + (1.0 - lambda) * center);
            }
        }
        x
    }
}
