// Usage: cargo run --example bisection_vs_schedule
//
// Same separable SVM, same eps schedule, two step rules. The line search
// usually certifies 1e-3 in a few dozen iterations; the fixed schedule
// needs far more.

use nonsmooth_fw::datagen::generate_two_gaussians;
use nonsmooth_fw::problems::build_l1svm;
use nonsmooth_fw::{run, SolverConfig, StepPolicy};

fn main() -> nonsmooth_fw::Result<()> {
    for seed in 0..3 {
        let svm = build_l1svm(&generate_two_gaussians(200, 200, 20, 6.0, 1.0, seed)?, 1.0)?;
        for policy in [StepPolicy::Bisection, StepPolicy::Schedule] {
            let config = SolverConfig {
                max_iters: 3000,
                tol: 1e-3,
                epsilon_coeff: 1e-3,
                step_policy: policy,
                ..Default::default()
            };
            let res = run(svm.instance(), &config)?;
            let last = res.final_record();
            println!(
                "seed {seed} {:<10} {:>5} iterations  converged {:<5}  bound {:.2e}  {:.1} ms",
                format!("{policy:?}"),
                res.trace.len(),
                res.converged,
                last.certified_bound,
                last.elapsed_ms
            );
        }
    }
    Ok(())
}
