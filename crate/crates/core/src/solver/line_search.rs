use crate::error::Result;
use crate::instance::ProblemInstance;

pub const DEFAULT_TOLERANCE: f64 = 1e-10;
pub const MAX_HALVINGS: usize = 60;

/// Bisection on the sign of forward differences of the convex function
/// `phi(a) = f((1 - a) x + a s)`, evaluated on images.
///
/// Returns whichever of the final midpoint, `1` and `0` has the smallest
/// value (in that order of preference on ties).
pub fn bisection_line_search(instance: &ProblemInstance, image: &[f64], s_image: &[f64], tol: f64) -> Result<f64> {
    let tol = if tol > 0.0 { tol } else { DEFAULT_TOLERANCE };
    let mut buf = vec![0.0; image.len()];
    let mut phi = |a: f64| {
        for ((b, &x), &s) in buf.iter_mut().zip(image).zip(s_image) {
            *b = x + a * (s - x);
        }
        instance.evaluate_objective(&buf)
    };
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    let mut halvings = 0;
    while hi - lo > tol && halvings < MAX_HALVINGS {
        let mid = 0.5 * (lo + hi);
        let h = (0.25 * (hi - lo)).min(0.5 * tol);
        if phi(mid + h)? < phi(mid)? {
            lo = mid;
        } else {
            hi = mid;
        }
        halvings += 1;
    }
    let mid = 0.5 * (lo + hi);
    let mut best = (mid, phi(mid)?);
    for a in [1.0, 0.0] {
        let v = phi(a)?;
        if v < best.1 {
            best = (a, v);
        }
    }
    Ok(best.0)
}
