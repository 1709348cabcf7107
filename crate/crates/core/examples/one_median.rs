// Usage: cargo run --example one_median [points.csv]
//
// Geometric median of a point cloud over the simplex of its points. The
// coreset is the handful of points the iterate is built from.

use nonsmooth_fw::datagen::generate_gaussian_points;
use nonsmooth_fw::io::load_points;
use nonsmooth_fw::problems::build_one_median;
use nonsmooth_fw::{run, SolverConfig};

fn main() -> nonsmooth_fw::Result<()> {
    let points = match std::env::args().nth(1) {
        Some(path) => load_points(path)?,
        None => generate_gaussian_points(5000, 2, 7)?,
    };
    let instance = build_one_median(&points)?;
    let res = run(
        &instance,
        &SolverConfig {
            max_iters: 1000,
            ..Default::default()
        },
    )?;

    let center = instance.image(&res.x)?;
    let last = res.final_record();
    println!("{} points in {} dimensions", points.len(), center.len());
    println!("median estimate {center:?}");
    println!(
        "mean distance {:.6}, certified bound {:.3e}",
        last.objective, last.certified_bound
    );
    println!("coreset of {} points: {:?}", res.coreset.len(), res.coreset.union());
    for k in [0, 9, 99, 999] {
        if let Some(r) = res.trace.get(k) {
            println!(
                "  k={:<4} f={:.6} bound={:.3e} coreset={}",
                r.k, r.objective, r.certified_bound, r.coreset_size
            );
        }
    }
    Ok(())
}
