// Usage: cargo run --example piecewise_linear
//
// Minimizes a random max of affine functions over the simplex and writes the
// convergence of the objective and certified bound to an SVG chart.

use nonsmooth_fw::plot::LineChart;
use nonsmooth_fw::problems::{build_piecewise_linear, PiecewiseLinearData};
use nonsmooth_fw::{run, SolverConfig};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() -> nonsmooth_fw::Result<()> {
    let (pieces, dim) = (30, 200);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let data = PiecewiseLinearData {
        rows: (0..pieces)
            .map(|_| (0..dim).map(|_| rng.random_range(-1.0..1.0)).collect())
            .collect(),
        offsets: (0..pieces).map(|_| rng.random_range(-0.1..0.1)).collect(),
    };
    let instance = build_piecewise_linear(&data)?;
    let res = run(
        &instance,
        &SolverConfig {
            max_iters: 2000,
            epsilon_coeff: 0.2,
            ..Default::default()
        },
    )?;

    let last = res.final_record();
    let best = res
        .trace
        .iter()
        .map(|r| r.objective - r.certified_bound)
        .fold(f64::NEG_INFINITY, f64::max);
    println!("{pieces} pieces over a {dim}-simplex");
    println!(
        "objective {:.5}, lower bound {best:.5}, coreset {} of {dim}",
        last.objective,
        res.coreset.len()
    );

    let path = std::env::temp_dir().join("piecewise_linear.svg");
    LineChart::new("max of affine functions")
        .x_label("iteration")
        .y_label("value")
        .log_y(true)
        .series(
            "certified bound",
            res.trace.iter().map(|r| (r.k as f64, r.certified_bound)),
        )
        .series("eps_k", res.trace.iter().map(|r| (r.k as f64, r.epsilon)))
        .write(&path)?;
    println!("chart written to {}", path.display());
    Ok(())
}
