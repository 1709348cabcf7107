// Usage: cargo run --example graph_cut [edges.txt seeds.txt]
//
// LP relaxation of a multiway cut. The default graph is a 6x6 grid with one
// seed per corner; edge files hold `u v w` lines and seed files `node label`.

use nonsmooth_fw::io::load_graph;
use nonsmooth_fw::problems::{build_graph_cut, direct_objective, Graph};
use nonsmooth_fw::{run, SolverConfig};

fn grid(side: usize) -> Graph {
    let id = |r: usize, c: usize| r * side + c;
    let mut edges = Vec::new();
    for r in 0..side {
        for c in 0..side {
            if c + 1 < side {
                edges.push((id(r, c), id(r, c + 1), 1.0 + ((r + c) % 3) as f64));
            }
            if r + 1 < side {
                edges.push((id(r, c), id(r + 1, c), 1.0 + ((r * c) % 2) as f64));
            }
        }
    }
    let last = side - 1;
    Graph {
        num_nodes: side * side,
        num_labels: 4,
        edges,
        seeds: vec![(id(0, 0), 0), (id(0, last), 1), (id(last, 0), 2), (id(last, last), 3)],
    }
}

fn main() -> nonsmooth_fw::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let graph = match args.as_slice() {
        [edges, seeds] => load_graph(edges, seeds, None)?,
        _ => grid(6),
    };
    let cut = build_graph_cut(&graph)?;
    let res = run(
        cut.instance(),
        &SolverConfig {
            max_iters: 400,
            tol: 1e-2,
            ..Default::default()
        },
    )?;
    let last = res.final_record();
    println!(
        "{} nodes, {} free, {} labels: relaxed cut {:.4} (bound {:.2e}) after {} iterations",
        graph.num_nodes,
        cut.free_nodes().len(),
        graph.num_labels,
        last.objective,
        last.certified_bound,
        res.trace.len()
    );

    let labels = cut.rounded_labels(&res.x);
    let hard: Vec<Vec<f64>> = labels
        .iter()
        .map(|&l| (0..graph.num_labels).map(|k| if k == l { 1.0 } else { 0.0 }).collect())
        .collect();
    println!("rounded cut {:.4}", direct_objective(&graph, &hard));
    println!(
        "labels used by step directions: {:?}",
        cut.labels_in_coreset(&res.coreset)
    );
    let side = (graph.num_nodes as f64).sqrt() as usize;
    if side * side == graph.num_nodes {
        for row in labels.chunks(side) {
            println!("  {}", row.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(" "));
        }
    }
    Ok(())
}
