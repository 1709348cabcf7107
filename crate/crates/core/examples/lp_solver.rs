// Usage: cargo run --example lp_solver
//
// The bounded-variable simplex solver on its own, followed by one min-max
// direction subproblem solved through an instance.

use nonsmooth_fw::lp::solve_lp;
use nonsmooth_fw::{
    FeasibleSet, LpError, LpProblem, Matrix, ObjectiveKind, ProblemInstance, SignedBasis, SubgradientSet,
};

fn main() -> nonsmooth_fw::Result<()> {
    // max 3x + 2y  s.t.  x + y <= 4,  x + 3y <= 6,  0 <= x <= 3
    let mut lp = LpProblem::new(vec![-3.0, -2.0]);
    lp.add_inequality(vec![1.0, 1.0], 4.0)
        .add_inequality(vec![1.0, 3.0], 6.0)
        .set_bounds(0, 0.0, 3.0);
    let sol = solve_lp(&lp)?;
    println!("optimum {:.4} at {:?} after {} pivots", -sol.value, sol.x, sol.pivots);

    // A free variable and an equality.
    let mut lp = LpProblem::new(vec![1.0, 1.0, 0.0]);
    lp.add_equality(vec![1.0, -1.0, 2.0], 1.0)
        .set_bounds(0, f64::NEG_INFINITY, f64::INFINITY)
        .set_bounds(2, 0.0, 1.0);
    lp.add_inequality(vec![-1.0, 0.0, 0.0], 2.0);
    println!("with a free variable: {:?}", solve_lp(&lp).map(|s| (s.value, s.x)));

    let mut infeasible = LpProblem::new(vec![1.0]);
    infeasible.add_inequality(vec![1.0], -1.0);
    assert_eq!(solve_lp(&infeasible), Err(LpError::Infeasible));
    println!("x >= 0, x <= -1: infeasible");

    // min over two simplices of max(<r0, z>, -<r1, z>) with rows r0, r1.
    let instance = ProblemInstance::new(
        FeasibleSet::product(vec![2, 2])?,
        Matrix::from_rows(&[vec![1.0, 3.0, -2.0, -0.5], vec![0.5, -1.0, 1.0, 2.0]])?,
        vec![0.0, 0.0],
        ObjectiveKind::LInf,
    )?;
    let x = instance.start_point();
    let image = instance.image(&x)?;
    let set = SubgradientSet::VertexHull(vec![SignedBasis::plus(0), SignedBasis::minus(1)]);
    let sub = instance.solve_subproblem(&set, &image)?;
    println!(
        "direction subproblem: value {:.4}, s = {:?}, support {:?}",
        sub.value,
        sub.s.to_dense(),
        sub.support
    );
    Ok(())
}
