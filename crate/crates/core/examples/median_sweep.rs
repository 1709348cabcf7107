// Usage: cargo run --example median_sweep [out_dir]
//
// Solves 1-median instances of growing size through the experiment runner.
// The summary CSV and charts show the coreset staying small while n grows.

use nonsmooth_fw::experiment::{run_experiment, ExperimentConfig, GeneratorSpec, ProblemKind};
use nonsmooth_fw::SolverConfig;

fn main() -> nonsmooth_fw::Result<()> {
    let out = std::env::args()
        .nth(1)
        .map(Into::into)
        .unwrap_or_else(|| std::env::temp_dir().join("nonsmooth_fw_sweep"));
    let config = ExperimentConfig {
        problem: ProblemKind::Median,
        generator: Some(GeneratorSpec::GaussianPoints { n: 100, d: 2, seed: 1 }),
        solver: SolverConfig {
            max_iters: 2000,
            tol: 1e-6,
            ..Default::default()
        },
        output_dir: out,
        label: "median".into(),
        sweep_n: vec![100, 1_000, 10_000, 100_000],
        ..Default::default()
    };
    let output = run_experiment(&config)?;
    println!("{:>8} {:>8} {:>10} {:>10}", "n", "coreset", "iters", "ms/iter");
    for row in &output.rows {
        let s = &row.summary;
        println!(
            "{:>8} {:>8} {:>10} {:>10.4}",
            row.n, s.coreset_size, s.iterations, s.ms_per_iter
        );
    }
    if let Some(summary) = &output.summary {
        println!("summary: {}", summary.display());
    }
    for plot in &output.plots {
        println!("plot: {}", plot.display());
    }
    Ok(())
}
