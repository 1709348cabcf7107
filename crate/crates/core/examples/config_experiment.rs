// Usage: cargo run --example config_experiment
//
// Drives a run from a JSON experiment description, the same format the
// command-line tool accepts through `--config`.

use nonsmooth_fw::experiment::{run_experiment, ExperimentConfig};

const CONFIG: &str = r#"{
    "problem": "svm",
    "generator": { "kind": "two_gaussians", "m": 300, "n": 300, "d": 8, "shift": 2.5, "sigma": 1.0, "seed": 3 },
    "reduction": 3.0,
    "solver": { "max_iters": 400, "epsilon_coeff": 0.1, "record_timing": false },
    "baseline": true,
    "label": "svm-config"
}"#;

fn main() -> nonsmooth_fw::Result<()> {
    let mut config = ExperimentConfig::from_json(CONFIG)?;
    config.output_dir = std::env::temp_dir().join("nonsmooth_fw_config");
    let output = run_experiment(&config)?;
    for path in output.traces.iter().chain(&output.plots) {
        println!("wrote {}", path.display());
    }
    Ok(())
}
