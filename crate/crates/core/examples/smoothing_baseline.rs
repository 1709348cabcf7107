// Usage: cargo run --example smoothing_baseline
//
// Runs the deterministic solver and the randomized-smoothing Frank-Wolfe
// baseline for the same number of iterations, then writes both traces and a
// chart to a temporary directory.

use nonsmooth_fw::datagen::generate_two_gaussians;
use nonsmooth_fw::experiment::{convergence_chart, RunTraces};
use nonsmooth_fw::io::write_trace;
use nonsmooth_fw::problems::build_l1svm;
use nonsmooth_fw::solver::{smoothed_fw_baseline, BaselineConfig};
use nonsmooth_fw::{run, SolverConfig};

fn main() -> nonsmooth_fw::Result<()> {
    let svm = build_l1svm(&generate_two_gaussians(200, 200, 20, 6.0, 1.0, 1)?, 1.0)?;
    let config = SolverConfig {
        max_iters: 200,
        epsilon_coeff: 0.1,
        rng_seed: 1,
        ..Default::default()
    };
    let main = run(svm.instance(), &config)?;
    let baseline = smoothed_fw_baseline(svm.instance(), &config, &BaselineConfig::default())?;

    println!("    k   certified bound   baseline gap");
    for k in [0, 10, 50, 100, 199] {
        println!(
            "{k:>5}   {:>15.4e}   {:>12.4e}",
            main.trace[k].certified_bound, baseline.trace[k].gap_surrogate
        );
    }

    let dir = std::env::temp_dir().join("nonsmooth_fw_baseline");
    write_trace(dir.join("main.csv"), &main.trace)?;
    write_trace(dir.join("baseline.csv"), &baseline.trace)?;
    let traces = RunTraces {
        main: main.trace,
        baseline: Some(baseline.trace),
    };
    convergence_chart("l1-SVM, n = 400", &traces).write(dir.join("convergence.svg"))?;
    println!("traces and chart in {}", dir.display());
    Ok(())
}
