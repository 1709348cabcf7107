//! Seeded synthetic data. All generators use ChaCha8 seeded from a `u64`, so
//! output is identical across platforms.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::problems::SvmData;

fn gaussian_column(rng: &mut ChaCha8Rng, dim: usize, center0: f64, sigma: f64) -> Vec<f64> {
    let mut col: Vec<f64> = (0..dim).map(|_| sigma * rng.sample::<f64, _>(StandardNormal)).collect();
    col[0] += center0;
    col
}

/// `n` points in `R^d` with i.i.d. standard normal coordinates.
pub fn generate_gaussian_points(n: usize, d: usize, seed: u64) -> Result<Vec<Vec<f64>>> {
    if n == 0 || d == 0 {
        return Err(Error::Config(format!("need n, d >= 1 (got n = {n}, d = {d})")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok((0..n).map(|_| gaussian_column(&mut rng, d, 0.0, 1.0)).collect())
}

/// `m` positive examples around the origin and `n` negative examples
/// around `shift * e_1`, each coordinate with standard deviation `sigma`.
pub fn generate_two_gaussians(m: usize, n: usize, d: usize, shift: f64, sigma: f64, seed: u64) -> Result<SvmData> {
    if m == 0 || n == 0 || d == 0 {
        return Err(Error::Config(format!("need m, n, d >= 1 (got {m}, {n}, {d})")));
    }
    if !(sigma.is_finite() && sigma > 0.0) || !shift.is_finite() {
        return Err(Error::Config(format!("invalid shift {shift} or sigma {sigma}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let positive = (0..m).map(|_| gaussian_column(&mut rng, d, 0.0, sigma)).collect();
    let negative = (0..n).map(|_| gaussian_column(&mut rng, d, shift, sigma)).collect();
    SvmData::new(d, positive, negative)
}

/// `diam_inf` of the convex hull of `columns`: the largest coordinate range.
pub fn hull_diameter_inf(columns: &[Vec<f64>]) -> f64 {
    let Some(first) = columns.first() else {
        return 0.0;
    };
    (0..first.len())
        .map(|r| {
            let (lo, hi) = columns.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), c| {
                (lo.min(c[r]), hi.max(c[r]))
            });
            hi - lo
        })
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators_are_deterministic() {
        assert_eq!(
            generate_gaussian_points(5, 3, 7).unwrap(),
            generate_gaussian_points(5, 3, 7).unwrap()
        );
        assert_ne!(
            generate_gaussian_points(5, 3, 7).unwrap(),
            generate_gaussian_points(5, 3, 8).unwrap()
        );
        assert_eq!(
            generate_two_gaussians(4, 3, 2, 1.0, 0.5, 1).unwrap(),
            generate_two_gaussians(4, 3, 2, 1.0, 0.5, 1).unwrap()
        );
    }

    #[test]
    fn sample_mean_is_near_origin() {
        let pts = generate_gaussian_points(100_000, 3, 11).unwrap();
        for r in 0..3 {
            let mean = pts.iter().map(|p| p[r]).sum::<f64>() / pts.len() as f64;
            assert!(mean.abs() < 0.02, "coordinate {r}: {mean}");
        }
    }

    #[test]
    fn tiny_sigma_collapses_the_classes() {
        let data = generate_two_gaussians(20, 30, 3, 2.0, 1e-12, 5).unwrap();
        assert!(hull_diameter_inf(&data.positive) < 1e-10);
        assert!(hull_diameter_inf(&data.negative) < 1e-10);
        assert!((data.negative[0][0] - 2.0).abs() < 1e-10);
    }

    #[test]
    fn invalid_sizes_are_rejected() {
        assert!(generate_gaussian_points(0, 2, 0).is_err());
        assert!(generate_two_gaussians(1, 1, 1, 0.0, 0.0, 0).is_err());
    }
}
