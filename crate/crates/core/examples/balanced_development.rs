// Usage: cargo run --example balanced_development [data.json]
//
// Chooses a resource mix that keeps the worst price-weighted product as
// small as possible. The JSON file holds `attributes` (resources x
// products), `requirements` and `prices`.

use nonsmooth_fw::problems::{build_balanced_dev, BalancedDevData};
use nonsmooth_fw::{run, SolverConfig, StepPolicy};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let data: BalancedDevData = match std::env::args().nth(1) {
        Some(path) => serde_json::from_str(&std::fs::read_to_string(path)?)?,
        None => BalancedDevData {
            attributes: vec![
                vec![4.0, 1.0, 0.5, 2.0, 1.0],
                vec![0.5, 3.0, 1.0, 1.0, 0.5],
                vec![1.0, 1.0, 4.0, 0.2, 1.0],
                vec![0.3, 0.8, 0.6, 3.0, 2.5],
            ],
            requirements: vec![1.0, 2.0, 1.5, 1.0],
            prices: vec![1.0, 1.2, 0.8, 2.0, 1.5],
        },
    };
    let instance = build_balanced_dev(&data)?;
    for policy in [StepPolicy::Schedule, StepPolicy::Bisection] {
        let config = SolverConfig {
            max_iters: 3000,
            tol: 1e-3,
            epsilon_coeff: 0.05,
            step_policy: policy,
            ..Default::default()
        };
        let res = run(&instance, &config)?;
        let last = res.final_record();
        println!(
            "{policy:?}: worst product {:.5}, bound {:.2e}, {} iterations",
            last.objective,
            last.certified_bound,
            res.trace.len()
        );
        let mix: Vec<String> = res.x.iter().map(|v| format!("{v:.3}")).collect();
        println!("  mix [{}], resources used {:?}", mix.join(", "), res.coreset.union());
    }
    Ok(())
}
