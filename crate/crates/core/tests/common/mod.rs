//! Independent oracles shared by the integration tests and the acceptance
//! harness. None of them call into the solver's LP or subproblem code.

#![allow(dead_code, clippy::needless_range_loop)]

use nonsmooth_fw::feasible::FeasibleSet;
use nonsmooth_fw::instance::{ObjectiveKind, ProblemInstance};
use nonsmooth_fw::linalg::Matrix;

/// A small LP in inequality/equality form with finite bounds.
#[derive(Debug, Clone)]
pub struct SmallLp {
    pub cost: Vec<f64>,
    pub ineq: Vec<(Vec<f64>, f64)>,
    pub eq: Vec<(Vec<f64>, f64)>,
    pub lo: Vec<f64>,
    pub hi: Vec<f64>,
}

/// Solves `a x = b` by Gaussian elimination with partial pivoting.
pub fn solve_square(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))?;
        if a[piv][col].abs() < 1e-10 {
            return None;
        }
        a.swap(col, piv);
        b.swap(col, piv);
        for r in 0..n {
            if r != col {
                let f = a[r][col] / a[col][col];
                if f != 0.0 {
                    for c in col..n {
                        a[r][c] -= f * a[col][c];
                    }
                    b[r] -= f * b[col];
                }
            }
        }
    }
    Some((0..n).map(|i| b[i] / a[i][i]).collect())
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Exact optimum by enumerating every basic solution: all equalities plus
/// `n - |eq|` tight constraints chosen among inequalities and bounds.
/// Returns `None` when no feasible vertex exists.
pub fn enumerate_lp(lp: &SmallLp) -> Option<(f64, Vec<f64>)> {
    let n = lp.cost.len();
    let mut tight: Vec<(Vec<f64>, f64)> = lp.ineq.clone();
    for j in 0..n {
        let mut e = vec![0.0; n];
        e[j] = 1.0;
        tight.push((e.clone(), lp.lo[j]));
        tight.push((e, lp.hi[j]));
    }
    if lp.eq.len() > n {
        return None;
    }
    let mut best: Option<(f64, Vec<f64>)> = None;
    for pick in combinations(tight.len(), n - lp.eq.len()) {
        let rows: Vec<&(Vec<f64>, f64)> = lp.eq.iter().chain(pick.iter().map(|&i| &tight[i])).collect();
        let a = rows.iter().map(|r| r.0.clone()).collect();
        let b = rows.iter().map(|r| r.1).collect();
        let Some(x) = solve_square(a, b) else {
            continue;
        };
        let tol = 1e-9;
        let feasible = (0..n).all(|j| x[j] >= lp.lo[j] - tol && x[j] <= lp.hi[j] + tol)
            && lp.ineq.iter().all(|(r, b)| dot(r, &x) <= b + tol)
            && lp.eq.iter().all(|(r, b)| (dot(r, &x) - b).abs() <= tol);
        if feasible {
            let v = dot(&lp.cost, &x);
            if best.as_ref().is_none_or(|(bv, _)| v < *bv) {
                best = Some((v, x));
            }
        }
    }
    best
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Geometric median by Weiszfeld iterations, started at the centroid.
pub fn weiszfeld(points: &[Vec<f64>]) -> (Vec<f64>, f64) {
    let d = points[0].len();
    let n = points.len() as f64;
    let mean_dist = |y: &[f64]| -> f64 {
        points
            .iter()
            .map(|p| p.iter().zip(y).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt())
            .sum::<f64>()
            / n
    };
    let mut y: Vec<f64> = (0..d).map(|r| points.iter().map(|p| p[r]).sum::<f64>() / n).collect();
    for _ in 0..100_000 {
        let mut num = vec![0.0; d];
        let mut den = 0.0;
        let mut at_point = false;
        for p in points {
            let dist = p.iter().zip(&y).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt();
            if dist < 1e-14 {
                at_point = true;
                continue;
            }
            for r in 0..d {
                num[r] += p[r] / dist;
            }
            den += 1.0 / dist;
        }
        if at_point || den == 0.0 {
            break;
        }
        let next: Vec<f64> = num.iter().map(|v| v / den).collect();
        let moved = next.iter().zip(&y).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        y = next;
        if moved < 1e-15 {
            break;
        }
    }
    // Data points are candidates too (Weiszfeld can stall next to one).
    let mut best = (y.clone(), mean_dist(&y));
    for p in points {
        let v = mean_dist(p);
        if v < best.1 {
            best = (p.clone(), v);
        }
    }
    best
}

/// Minimum of `f` over the grid `{k / steps}` on the simplex of dimension
/// `dim`.
pub fn grid_min_simplex(dim: usize, steps: usize, f: &dyn Fn(&[f64]) -> f64) -> f64 {
    fn rec(dim: usize, left: usize, steps: usize, cur: &mut Vec<f64>, f: &dyn Fn(&[f64]) -> f64, best: &mut f64) {
        if cur.len() == dim - 1 {
            cur.push(left as f64 / steps as f64);
            *best = best.min(f(cur));
            cur.pop();
            return;
        }
        for k in 0..=left {
            cur.push(k as f64 / steps as f64);
            rec(dim, left - k, steps, cur, f, best);
            cur.pop();
        }
    }
    let mut best = f64::INFINITY;
    rec(dim, steps, steps, &mut Vec::new(), f, &mut best);
    best
}

/// `|x|` on `[-1, 1]`, as the image of the 2-simplex under `[1, -1]`.
pub fn abs_instance() -> ProblemInstance {
    ProblemInstance::new(
        FeasibleSet::unit_simplex(2).unwrap(),
        Matrix::from_rows(&[vec![1.0, -1.0]]).unwrap(),
        vec![0.0],
        ObjectiveKind::LInf,
    )
    .unwrap()
}

/// Simplex point whose `[1, -1]` image is `t`.
pub fn abs_point(t: f64) -> Vec<f64> {
    vec![(1.0 + t) / 2.0, (1.0 - t) / 2.0]
}

/// Exact value of `min_{z in D} max_v <d_v, A z + b - img>` for a hull of
/// signed basis vectors, via [`enumerate_lp`] in `(z, t)` with `t` boxed.
pub fn minmax_hull_oracle(
    a: &Matrix,
    b: &[f64],
    img: &[f64],
    vertices: &[(usize, f64)],
    blocks: &[usize],
    cap: f64,
) -> f64 {
    let n = a.ncols();
    let big = 1e3;
    let mut cost = vec![0.0; n + 1];
    cost[n] = 1.0;
    let mut ineq = Vec::new();
    for &(i, sign) in vertices {
        let mut row: Vec<f64> = (0..n).map(|j| sign * a.get(i, j)).collect();
        row.push(-1.0);
        ineq.push((row, sign * (img[i] - b[i])));
    }
    let eq = block_rows(blocks, n + 1);
    let mut lo = vec![0.0; n + 1];
    let mut hi = vec![cap; n + 1];
    lo[n] = -big;
    hi[n] = big;
    enumerate_lp(&SmallLp { cost, ineq, eq, lo, hi }).expect("feasible").0
}

/// Exact value of `min_{z in D} sum_fixed s_i r_i + sum_free |r_i|` with
/// `r = A z + b - img`, where `signs[i]` is `Some(+-1)` or `None` (free).
pub fn minmax_sign_oracle(
    a: &Matrix,
    b: &[f64],
    img: &[f64],
    signs: &[Option<f64>],
    blocks: &[usize],
    cap: f64,
) -> f64 {
    let n = a.ncols();
    let free: Vec<usize> = (0..signs.len()).filter(|&i| signs[i].is_none()).collect();
    let width = n + free.len();
    let big = 1e3;
    let mut cost = vec![0.0; width];
    let mut constant = 0.0;
    for (i, s) in signs.iter().enumerate() {
        if let Some(s) = s {
            for j in 0..n {
                cost[j] += s * a.get(i, j);
            }
            constant += s * (b[i] - img[i]);
        }
    }
    let mut ineq = Vec::new();
    for (k, &i) in free.iter().enumerate() {
        cost[n + k] = 1.0;
        for sign in [1.0, -1.0] {
            // sign * r_i <= t_k
            let mut row: Vec<f64> = (0..n).map(|j| sign * a.get(i, j)).collect();
            row.extend((0..free.len()).map(|kk| if kk == k { -1.0 } else { 0.0 }));
            ineq.push((row, sign * (img[i] - b[i])));
        }
    }
    let eq = block_rows(blocks, width);
    let mut lo = vec![0.0; width];
    let mut hi = vec![cap; width];
    for k in 0..free.len() {
        hi[n + k] = big;
        lo[n + k] = 0.0;
    }
    enumerate_lp(&SmallLp { cost, ineq, eq, lo, hi }).expect("feasible").0 + constant
}

fn block_rows(blocks: &[usize], width: usize) -> Vec<(Vec<f64>, f64)> {
    let mut out = Vec::new();
    let mut start = 0;
    for &b in blocks {
        let mut row = vec![0.0; width];
        row[start..start + b].iter_mut().for_each(|v| *v = 1.0);
        out.push((row, 1.0));
        start += b;
    }
    out
}

/// Deterministic uniform draws in `[lo, hi)` from a simple LCG, so the
/// oracles do not depend on the library's generators.
pub struct Lcg(pub u64);

impl Lcg {
    pub fn next_f64(&mut self) -> f64 {
        self.0 = self
            .0
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        (self.0 >> 11) as f64 / (1u64 << 53) as f64
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.next_f64()
    }

    pub fn below(&mut self, n: usize) -> usize {
        ((self.next_f64() * n as f64) as usize).min(n - 1)
    }
}

/// Random LP with 2..=4 variables, finite boxes, up to three inequalities and
/// one equality. Roughly one in five is built without a known feasible point.
pub fn random_lp(rng: &mut Lcg) -> SmallLp {
    let n = 2 + rng.below(3);
    let lo: Vec<f64> = (0..n).map(|_| rng.uniform(-2.0, 0.0)).collect();
    let hi: Vec<f64> = lo.iter().map(|l| l + rng.uniform(0.5, 3.0)).collect();
    let x0: Vec<f64> = lo.iter().zip(&hi).map(|(l, h)| rng.uniform(*l, *h)).collect();
    let wild = rng.next_f64() < 0.2;
    let row = |rng: &mut Lcg| -> Vec<f64> { (0..n).map(|_| rng.uniform(-2.0, 2.0)).collect() };
    let mut ineq = Vec::new();
    for _ in 0..rng.below(4) {
        let r = row(rng);
        let b = if wild {
            rng.uniform(-6.0, 1.0)
        } else {
            dot(&r, &x0) + rng.uniform(0.0, 1.0)
        };
        ineq.push((r, b));
    }
    let mut eq = Vec::new();
    if rng.next_f64() < 0.5 {
        let r = row(rng);
        let b = if wild { rng.uniform(-6.0, 6.0) } else { dot(&r, &x0) };
        eq.push((r, b));
    }
    let cost = row(rng);
    SmallLp { cost, ineq, eq, lo, hi }
}

pub fn to_lp_problem(lp: &SmallLp) -> nonsmooth_fw::LpProblem {
    let mut p = nonsmooth_fw::LpProblem::new(lp.cost.clone());
    for (r, b) in &lp.ineq {
        p.add_inequality(r.clone(), *b);
    }
    for (r, b) in &lp.eq {
        p.add_equality(r.clone(), *b);
    }
    for j in 0..lp.cost.len() {
        p.set_bounds(j, lp.lo[j], lp.hi[j]);
    }
    p
}

/// A random direction subproblem together with its oracle value.
pub struct RandomSubproblem {
    pub instance: ProblemInstance,
    pub set: nonsmooth_fw::SubgradientSet,
    pub image: Vec<f64>,
    pub oracle: f64,
}

/// Alternates between vertex hulls (1..=3 signed vertices) and sign
/// patterns, over one or two blocks with an optional cap.
pub fn random_subproblem(rng: &mut Lcg, index: usize) -> RandomSubproblem {
    use nonsmooth_fw::{Sign, SignedBasis, SubgradientSet};
    let p = 1 + rng.below(3);
    let n = 2 + rng.below(3);
    let rows: Vec<Vec<f64>> = (0..p)
        .map(|_| (0..n).map(|_| rng.uniform(-2.0, 2.0)).collect())
        .collect();
    let a = Matrix::from_rows(&rows).unwrap();
    let b: Vec<f64> = (0..p).map(|_| rng.uniform(-1.0, 1.0)).collect();
    let image: Vec<f64> = (0..p).map(|_| rng.uniform(-2.0, 2.0)).collect();
    let blocks = if n >= 4 && rng.next_f64() < 0.5 {
        vec![2, n - 2]
    } else {
        vec![n]
    };
    let cap = if blocks.iter().all(|&s| s >= 2) && rng.next_f64() < 0.4 {
        0.5 + 0.5 * rng.next_f64()
    } else {
        1.0
    };
    let feasible = if cap < 1.0 {
        FeasibleSet::capped(blocks.clone(), cap).unwrap()
    } else {
        FeasibleSet::product(blocks.clone()).unwrap()
    };
    if index.is_multiple_of(2) {
        let count = 1 + rng.below(3.min(2 * p));
        let mut vertices: Vec<(usize, f64)> = Vec::new();
        while vertices.len() < count {
            let v = (rng.below(p), if rng.next_f64() < 0.5 { 1.0 } else { -1.0 });
            if !vertices.contains(&v) {
                vertices.push(v);
            }
        }
        let oracle = minmax_hull_oracle(&a, &b, &image, &vertices, &blocks, cap);
        let set = SubgradientSet::VertexHull(
            vertices
                .iter()
                .map(|&(i, s)| {
                    if s > 0.0 {
                        SignedBasis::plus(i)
                    } else {
                        SignedBasis::minus(i)
                    }
                })
                .collect(),
        );
        let instance = ProblemInstance::new(feasible, a, b, ObjectiveKind::LInf).unwrap();
        RandomSubproblem {
            instance,
            set,
            image,
            oracle,
        }
    } else {
        let signs: Vec<Option<f64>> = (0..p)
            .map(|_| match rng.below(3) {
                0 => Some(1.0),
                1 => Some(-1.0),
                _ => None,
            })
            .collect();
        let oracle = minmax_sign_oracle(&a, &b, &image, &signs, &blocks, cap);
        let set = SubgradientSet::SignPattern(
            signs
                .iter()
                .map(|s| match s {
                    Some(v) if *v > 0.0 => Sign::Plus,
                    Some(_) => Sign::Minus,
                    None => Sign::Free,
                })
                .collect(),
        );
        let instance = ProblemInstance::new(feasible, a, b, ObjectiveKind::L1).unwrap();
        RandomSubproblem {
            instance,
            set,
            image,
            oracle,
        }
    }
}

/// Minimum of `f` over the product of simplex grids `{k / steps}`.
pub fn grid_min_product(blocks: &[usize], steps: usize, f: &dyn Fn(&[f64]) -> f64) -> f64 {
    fn simplex_grid(dim: usize, left: usize, steps: usize, cur: &mut Vec<f64>, out: &mut Vec<Vec<f64>>) {
        if cur.len() + 1 == dim {
            cur.push(left as f64 / steps as f64);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for k in 0..=left {
            cur.push(k as f64 / steps as f64);
            simplex_grid(dim, left - k, steps, cur, out);
            cur.pop();
        }
    }
    let grids: Vec<Vec<Vec<f64>>> = blocks
        .iter()
        .map(|&d| {
            let mut out = Vec::new();
            simplex_grid(d, steps, steps, &mut Vec::new(), &mut out);
            out
        })
        .collect();
    let mut best = f64::INFINITY;
    let mut idx = vec![0usize; blocks.len()];
    loop {
        let x: Vec<f64> = idx.iter().enumerate().flat_map(|(b, &i)| grids[b][i].clone()).collect();
        best = best.min(f(&x));
        let mut b = 0;
        loop {
            if b == blocks.len() {
                return best;
            }
            idx[b] += 1;
            if idx[b] < grids[b].len() {
                break;
            }
            idx[b] = 0;
            b += 1;
        }
    }
}

/// Approximately standard normal draws (sum of twelve uniforms).
pub fn normalish(rng: &mut Lcg) -> f64 {
    (0..12).map(|_| rng.next_f64()).sum::<f64>() - 6.0
}

pub type DirectObjective = Box<dyn Fn(&[f64]) -> f64>;

/// An instance with an independently computed optimum and objective.
pub struct OracleCase {
    pub name: &'static str,
    pub instance: ProblemInstance,
    pub optimum: f64,
    /// Objective evaluated from the raw data, without the instance.
    pub direct: DirectObjective,
}

pub fn median_points(n: usize, seed: u64) -> Vec<Vec<f64>> {
    let mut rng = Lcg(seed);
    (0..n)
        .map(|_| vec![normalish(&mut rng), 2.0 * normalish(&mut rng)])
        .collect()
}

fn median_case(name: &'static str, points: Vec<Vec<f64>>) -> OracleCase {
    use nonsmooth_fw::problems::build_one_median;
    let instance = build_one_median(&points).unwrap();
    let optimum = weiszfeld(&points).1;
    let direct = Box::new(move |x: &[f64]| {
        let d = points[0].len();
        let y: Vec<f64> = (0..d)
            .map(|r| points.iter().zip(x).map(|(p, w)| w * p[r]).sum())
            .collect();
        points
            .iter()
            .map(|p| p.iter().zip(&y).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt())
            .sum::<f64>()
            / points.len() as f64
    });
    OracleCase {
        name,
        instance,
        optimum,
        direct,
    }
}

/// Small instances of every problem family with exact optima.
pub fn oracle_cases() -> Vec<OracleCase> {
    use nonsmooth_fw::problems::{
        build_balanced_dev, build_graph_cut, build_l1svm, build_piecewise_linear, BalancedDevData, Graph,
        PiecewiseLinearData, SvmData,
    };
    let mut cases = Vec::new();

    // Two points: the hulls are the points themselves.
    let svm2 = SvmData::new(2, vec![vec![1.0, 0.5]], vec![vec![-0.5, 2.5]]).unwrap();
    cases.push(OracleCase {
        name: "svm-two-points",
        instance: build_l1svm(&svm2, 1.0).unwrap().instance().clone(),
        optimum: 2.0,
        direct: Box::new(|_| 2.0),
    });

    let pos = vec![vec![2.0, 1.0], vec![3.0, -1.0], vec![2.5, 2.0]];
    let neg = vec![vec![-1.0, 0.0], vec![0.0, 3.0]];
    let svm = build_l1svm(&SvmData::new(2, pos.clone(), neg.clone()).unwrap(), 1.0).unwrap();
    let all: Vec<(usize, f64)> = (0..2).flat_map(|i| [(i, 1.0), (i, -1.0)]).collect();
    let inst = svm.instance().clone();
    let optimum = minmax_hull_oracle(inst.matrix(), &[0.0, 0.0], &[0.0, 0.0], &all, &[3, 2], 1.0);
    cases.push(OracleCase {
        name: "svm-hulls",
        instance: inst,
        optimum,
        direct: Box::new(move |x: &[f64]| {
            let u: Vec<f64> = (0..2).map(|r| (0..3).map(|j| x[j] * pos[j][r]).sum()).collect();
            let v: Vec<f64> = (0..2).map(|r| (0..2).map(|j| x[3 + j] * neg[j][r]).sum()).collect();
            u.iter().zip(&v).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
        }),
    });

    cases.push(median_case("median-one-point", vec![vec![1.0, -2.0]]));
    cases.push(median_case("median-two-points", vec![vec![0.0, 0.0], vec![3.0, 4.0]]));
    cases.push(median_case("median-twenty", median_points(20, 5)));

    // Three nodes, one free: the objective is affine on the free simplex.
    let tri = Graph {
        num_nodes: 3,
        num_labels: 3,
        edges: vec![(0, 2, 1.0), (1, 2, 1.5), (0, 1, 0.7)],
        seeds: vec![(0, 0), (1, 1)],
    };
    let tri_cut = build_graph_cut(&tri).unwrap();
    let tri_direct = |x: &[f64]| {
        let l1 = |label: usize| -> f64 { (0..3).map(|l| (x[l] - if l == label { 1.0 } else { 0.0 }).abs()).sum() };
        1.0 * l1(0) + 1.5 * l1(1) + 0.7 * 2.0
    };
    let optimum = grid_min_product(&[3], 60, &tri_direct);
    cases.push(OracleCase {
        name: "graph-cut-3",
        instance: tri_cut.instance().clone(),
        optimum,
        direct: Box::new(tri_direct),
    });

    let graph = Graph {
        num_nodes: 5,
        num_labels: 3,
        edges: vec![
            (0, 3, 1.0),
            (1, 3, 1.5),
            (2, 4, 2.0),
            (3, 4, 0.7),
            (1, 4, 0.5),
            (0, 4, 0.3),
        ],
        seeds: vec![(0, 0), (1, 1), (2, 2)],
    };
    let cut = build_graph_cut(&graph).unwrap();
    let edges = graph.edges.clone();
    let direct = move |x: &[f64]| {
        let label = |node: usize| -> Vec<f64> {
            match node {
                0..=2 => (0..3).map(|l| if l == node { 1.0 } else { 0.0 }).collect(),
                _ => x[(node - 3) * 3..(node - 2) * 3].to_vec(),
            }
        };
        edges
            .iter()
            .map(|&(u, v, w)| w * label(u).iter().zip(label(v)).map(|(a, b)| (a - b).abs()).sum::<f64>())
            .sum::<f64>()
    };
    let optimum = grid_min_product(&[3, 3], 12, &direct);
    cases.push(OracleCase {
        name: "graph-cut",
        instance: cut.instance().clone(),
        optimum,
        direct: Box::new(direct),
    });

    let data = BalancedDevData {
        attributes: vec![
            vec![3.0, 1.0, 0.5, 2.0],
            vec![0.5, 2.5, 1.0, 1.0],
            vec![1.0, 1.0, 3.0, 0.2],
        ],
        requirements: vec![1.0, 2.0, 1.5],
        prices: vec![1.0, 1.2, 0.8, 2.0],
    };
    let inst = build_balanced_dev(&data).unwrap();
    let plus: Vec<(usize, f64)> = (0..4).map(|j| (j, 1.0)).collect();
    let optimum = minmax_hull_oracle(inst.matrix(), &[0.0; 4], &[0.0; 4], &plus, &[3], 1.0);
    cases.push(OracleCase {
        name: "balanced",
        instance: inst,
        optimum,
        direct: Box::new(move |y: &[f64]| {
            (0..4)
                .map(|j| {
                    (0..3)
                        .map(|i| data.attributes[i][j] * y[i] / data.requirements[i])
                        .sum::<f64>()
                        / data.prices[j]
                })
                .fold(f64::NEG_INFINITY, f64::max)
        }),
    });

    let pw = PiecewiseLinearData {
        rows: vec![vec![1.0, -1.0, 0.5], vec![-0.5, 1.0, 0.0], vec![0.0, 0.5, -1.0]],
        offsets: vec![0.1, -0.2, 0.3],
    };
    let inst = build_piecewise_linear(&pw).unwrap();
    let plus: Vec<(usize, f64)> = (0..3).map(|j| (j, 1.0)).collect();
    let optimum = minmax_hull_oracle(inst.matrix(), &pw.offsets, &[0.0; 3], &plus, &[3], 1.0);
    cases.push(OracleCase {
        name: "piecewise",
        instance: inst,
        optimum,
        direct: Box::new(move |x: &[f64]| {
            pw.rows
                .iter()
                .zip(&pw.offsets)
                .map(|(r, b)| dot(r, x) + b)
                .fold(f64::NEG_INFINITY, f64::max)
        }),
    });
    cases
}
