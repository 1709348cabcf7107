//! Empirical lower bounds on the curvature constant
//! `C_f(eps) = sup_{x, s, a} min_{d in T(x, eps)} (f(y) - f(x) - <y - x, d>) / a^2`
//! with `y = x + a (s - x)`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::instance::ProblemInstance;

/// One probe `(x, s, alpha)` of the curvature supremum.
#[derive(Debug, Clone, PartialEq)]
pub struct CurvatureSample {
    pub x: Vec<f64>,
    pub s: Vec<f64>,
    pub alpha: f64,
}

/// Default sampler: `x` uniform on `D`, `s` a random vertex or point, and
/// `alpha` log-uniform on `[1e-3, 1]`.
pub fn default_sample(instance: &ProblemInstance, rng: &mut ChaCha8Rng) -> CurvatureSample {
    let set = instance.feasible();
    let x = set.random_point(rng);
    let s = if rng.random_bool(0.5) {
        set.random_vertex(rng)
    } else {
        set.random_point(rng)
    };
    let alpha = 10f64.powf(-3.0 * rng.random::<f64>());
    CurvatureSample { x, s, alpha }
}

/// `min_{d in T(x, eps)} (f(y) - f(x) - <y - x, d>) / alpha^2` for one probe.
pub fn curvature_ratio(instance: &ProblemInstance, eps: f64, sample: &CurvatureSample) -> Result<f64> {
    if !(sample.alpha > 0.0 && sample.alpha <= 1.0) {
        return Err(Error::InvalidStep(sample.alpha));
    }
    let x_img = instance.image(&sample.x)?;
    let s_img = instance.image(&sample.s)?;
    let a = sample.alpha;
    let y_img: Vec<f64> = x_img.iter().zip(&s_img).map(|(x, s)| x + a * (s - x)).collect();
    let delta: Vec<f64> = y_img.iter().zip(&x_img).map(|(y, x)| y - x).collect();
    let lin = instance.linearize(&x_img, eps)?;
    let fy = instance.evaluate_objective(&y_img)?;
    Ok((fy - lin.objective - lin.set.support_function(&delta)) / (a * a))
}

/// Maximum of [`curvature_ratio`] over `num_samples` probes from
/// [`default_sample`].
pub fn estimate_curvature(instance: &ProblemInstance, eps: f64, num_samples: usize, seed: u64) -> Result<f64> {
    estimate_curvature_with(instance, eps, num_samples, seed, default_sample)
}

/// Like [`estimate_curvature`] with a custom probe distribution.
///
/// Sample `i` draws from a generator seeded with `seed` on stream `i`, so
/// the estimate does not depend on how the samples are split across threads.
pub fn estimate_curvature_with<F>(
    instance: &ProblemInstance,
    eps: f64,
    num_samples: usize,
    seed: u64,
    sampler: F,
) -> Result<f64>
where
    F: Fn(&ProblemInstance, &mut ChaCha8Rng) -> CurvatureSample + Sync,
{
    if num_samples == 0 {
        return Err(Error::Config("num_samples must be at least 1".into()));
    }
    let ratios: Vec<f64> = (0..num_samples)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(i as u64);
            let sample = sampler(instance, &mut rng);
            curvature_ratio(instance, eps, &sample)
        })
        .collect::<Result<_>>()?;
    Ok(ratios.into_iter().fold(f64::NEG_INFINITY, f64::max))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::feasible::FeasibleSet;
    use crate::instance::ObjectiveKind;
    use crate::linalg::Matrix;

    fn abs_instance() -> ProblemInstance {
        let a = Matrix::from_rows(&[vec![1.0, -1.0]]).unwrap();
        ProblemInstance::new(FeasibleSet::unit_simplex(2).unwrap(), a, vec![0.0], ObjectiveKind::LInf).unwrap()
    }

    #[test]
    fn linear_objective_has_no_curvature() {
        let a = Matrix::from_rows(&[vec![0.3, -1.0, 2.0]]).unwrap();
        let inst =
            ProblemInstance::new(FeasibleSet::unit_simplex(3).unwrap(), a, vec![0.5], ObjectiveKind::Max).unwrap();
        let c = estimate_curvature(&inst, 0.1, 500, 3).unwrap();
        assert!(c.abs() < 1e-8, "{c}");
    }

    #[test]
    fn absolute_value_respects_upper_bound() {
        let inst = abs_instance();
        for eps in [0.1, 0.5] {
            let c = estimate_curvature(&inst, eps, 2000, 11).unwrap();
            assert!(c <= inst.curvature_coeff() / eps + 1e-9, "{c}");
        }
    }

    #[test]
    fn independent_of_thread_count() {
        let inst = abs_instance();
        let a = estimate_curvature(&inst, 0.05, 300, 5).unwrap();
        let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let b = pool.install(|| estimate_curvature(&inst, 0.05, 300, 5).unwrap());
        assert_eq!(a.to_bits(), b.to_bits());
    }
}
