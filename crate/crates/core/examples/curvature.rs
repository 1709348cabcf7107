// Usage: cargo run --example curvature
//
// Probes the curvature constant of f(x) = |x| on [-1, 1], written as the
// image of the 2-simplex under [1, -1]. At x = 0.1 with eps = 0 the probe
// (s = -1, alpha = 0.2 / 1.1) gives about 6.05; once eps reaches the kink the
// enlarged subdifferential absorbs it.

use nonsmooth_fw::solver::curvature::curvature_ratio;
use nonsmooth_fw::solver::{estimate_curvature, CurvatureSample};
use nonsmooth_fw::{FeasibleSet, Matrix, ObjectiveKind, ProblemInstance};

fn point(t: f64) -> Vec<f64> {
    vec![(1.0 + t) / 2.0, (1.0 - t) / 2.0]
}

fn main() -> nonsmooth_fw::Result<()> {
    let abs = ProblemInstance::new(
        FeasibleSet::unit_simplex(2)?,
        Matrix::from_rows(&[vec![1.0, -1.0]])?,
        vec![0.0],
        ObjectiveKind::LInf,
    )?;
    println!("curvature coefficient used by the solver: {}", abs.curvature_coeff());

    println!("alpha    eps=0     eps=0.1");
    for alpha in [0.05, 0.1, 0.1818, 0.3, 0.6, 1.0] {
        let probe = CurvatureSample {
            x: point(0.1),
            s: point(-1.0),
            alpha,
        };
        let exact = curvature_ratio(&abs, 0.0, &probe)?;
        let relaxed = curvature_ratio(&abs, 0.1, &probe)?;
        println!("{alpha:<8} {exact:<9.4} {relaxed:.4}");
    }

    for eps in [0.01, 0.1, 0.5] {
        let est = estimate_curvature(&abs, eps, 20_000, 1)?;
        println!(
            "sampled estimate at eps={eps}: {est:.3} (limit {:.1})",
            abs.curvature_coeff() / eps
        );
    }
    Ok(())
}
