// Usage: cargo run --example svm_coreset [data.svm] [R]
//
// Trains an l1-SVM through its reduced-hull dual and prints the examples
// that carry the solution. Without a file, two Gaussian classes are
// generated. The hyperplane is a best-effort readout of the dual iterate.

use nonsmooth_fw::datagen::generate_two_gaussians;
use nonsmooth_fw::io::load_libsvm;
use nonsmooth_fw::problems::build_l1svm;
use nonsmooth_fw::{run, SolverConfig};

fn main() -> nonsmooth_fw::Result<()> {
    let mut args = std::env::args().skip(1);
    let data = match args.next() {
        Some(path) => load_libsvm(path)?,
        None => generate_two_gaussians(1000, 1000, 5, 6.0, 1.0, 42)?,
    };
    let reduction: f64 = args.next().map(|r| r.parse().expect("R is a number")).unwrap_or(2.0);
    let svm = build_l1svm(&data, reduction)?;

    let config = SolverConfig {
        max_iters: 500,
        tol: 1e-3,
        epsilon_coeff: 0.1,
        ..Default::default()
    };
    let res = run(svm.instance(), &config)?;
    let last = res.final_record();
    println!(
        "{} examples, {} iterations, margin distance {:.4}, certified bound {:.2e}",
        data.len(),
        res.trace.len(),
        last.objective,
        last.certified_bound
    );

    let (pos, neg) = svm.coreset_examples(&res.coreset);
    println!("coreset: {} positive, {} negative examples", pos.len(), neg.len());
    println!("  positive {pos:?}");
    println!("  negative {neg:?}");

    let h = svm.hyperplane(&res.x, last.epsilon)?;
    println!(
        "normal {:?}",
        h.normal.iter().map(|v| format!("{v:.3}")).collect::<Vec<_>>()
    );
    println!(
        "offset {:.4}, training accuracy {:.3}",
        h.offset,
        svm.training_accuracy(&h)
    );
    Ok(())
}
