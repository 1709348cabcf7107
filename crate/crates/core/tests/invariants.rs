mod common;

use common::Lcg;
use nonsmooth_fw::lp::min_linear_over_set;
use nonsmooth_fw::solver::step_schedule;
use nonsmooth_fw::{
    run_observed, FeasibleSet, IterateState, Matrix, ObjectiveKind, ProblemInstance, SolverConfig, SparseVector,
    StepPolicy,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const KINDS: [ObjectiveKind; 4] = [
    ObjectiveKind::Max,
    ObjectiveKind::LInf,
    ObjectiveKind::L1,
    ObjectiveKind::Median,
];

fn random_feasible(rng: &mut Lcg) -> FeasibleSet {
    let blocks: Vec<usize> = (0..1 + rng.below(3)).map(|_| 2 + rng.below(5)).collect();
    if rng.next_f64() < 0.3 {
        let cap = 0.5 + 0.5 * rng.next_f64();
        FeasibleSet::capped(blocks, cap).unwrap()
    } else {
        FeasibleSet::product(blocks).unwrap()
    }
}

fn random_instance(seed: u64, kind: ObjectiveKind) -> ProblemInstance {
    let mut rng = Lcg(seed);
    let feasible = random_feasible(&mut rng);
    let n = feasible.dim();
    let p = 1 + rng.below(5);
    let rows: Vec<Vec<f64>> = (0..p)
        .map(|_| {
            (0..n)
                .map(|_| {
                    if rng.next_f64() < 0.3 {
                        0.0
                    } else {
                        rng.uniform(-3.0, 3.0)
                    }
                })
                .collect()
        })
        .collect();
    let offset = if kind == ObjectiveKind::Median {
        vec![0.0; p]
    } else {
        (0..p).map(|_| rng.uniform(-1.0, 1.0)).collect()
    };
    ProblemInstance::new(feasible, Matrix::from_rows(&rows).unwrap(), offset, kind).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn iterates_stay_feasible_and_coreset_grows(
        seed in any::<u64>(),
        kind in 0..4usize,
        iters in 1..80usize,
        coeff in 0.05..1.0f64,
        bisection in any::<bool>(),
    ) {
        let inst = random_instance(seed, KINDS[kind]);
        let cfg = SolverConfig {
            max_iters: iters,
            epsilon_coeff: coeff,
            step_policy: if bisection { StepPolicy::Bisection } else { StepPolicy::Schedule },
            record_timing: false,
            refresh_period: 7,
            ..Default::default()
        };
        let x0 = inst.start_point();
        let mut previous_size = 0;
        let mut seen = Vec::new();
        let res = run_observed(&inst, &cfg, x0.clone(), |record, x| {
            seen.push((record.coreset_size, x.to_vec()));
        }).unwrap();
        for (size, x) in &seen {
            prop_assert!(*size >= previous_size);
            previous_size = *size;
            let report = inst.feasible().check(x);
            prop_assert!(report.feasible, "violation {}", report.max_violation);
        }
        prop_assert!(inst.feasible().check(&res.x).feasible);
        // Nonzeros of the final iterate come from the start or a step support.
        for (j, &v) in res.x.iter().enumerate() {
            if v > 1e-12 {
                prop_assert!(res.coreset.contains(j) || res.coreset.initial().contains(&j));
            }
        }
        prop_assert!(res.coreset.len() <= res.coreset.total_step_support());
        for r in &res.trace {
            prop_assert!(r.certified_bound.is_finite());
            prop_assert!(r.certified_bound >= -1e-9, "negative bound {}", r.certified_bound);
        }
    }

    #[test]
    fn update_iterate_tracks_image_and_feasibility(
        seed in any::<u64>(),
        steps in proptest::collection::vec((any::<u64>(), 0.0..=1.0f64), 1..60),
    ) {
        let inst = random_instance(seed, ObjectiveKind::LInf);
        let mut state = IterateState::new(&inst, inst.start_point(), 5).unwrap();
        for (s_seed, alpha) in steps {
            let mut rng = ChaCha8Rng::seed_from_u64(s_seed);
            let s_dense = if s_seed % 2 == 0 {
                inst.feasible().random_vertex(&mut rng)
            } else {
                inst.feasible().random_point(&mut rng)
            };
            let s = SparseVector::from_dense(&s_dense, 0.0);
            let s_image = inst.image(&s_dense).unwrap();
            state.update_iterate(&inst, &s, &s_image, alpha).unwrap();
            prop_assert!(inst.feasible().check(state.x()).feasible);
            let fresh = inst.image(state.x()).unwrap();
            for (a, b) in fresh.iter().zip(state.image()) {
                prop_assert!((a - b).abs() <= 1e-9 * (1.0 + a.abs()), "{a} vs {b}");
            }
        }
    }

    #[test]
    fn greedy_minimizer_beats_random_vertices(seed in any::<u64>(), cost_seed in any::<u64>()) {
        let mut rng = Lcg(seed);
        let set = random_feasible(&mut rng);
        let mut crng = Lcg(cost_seed);
        let c: Vec<f64> = (0..set.dim()).map(|_| crng.uniform(-2.0, 2.0)).collect();
        let best = min_linear_over_set(&c, &set).unwrap();
        let point = best.point.to_dense();
        prop_assert!(set.check(&point).feasible);
        prop_assert!((common::dot(&c, &point) - best.value).abs() <= 1e-12);
        let mut vrng = ChaCha8Rng::seed_from_u64(cost_seed);
        for _ in 0..50 {
            let v = set.random_vertex(&mut vrng);
            prop_assert!(best.value <= common::dot(&c, &v) + 1e-12);
            let p = set.random_point(&mut vrng);
            prop_assert!(best.value <= common::dot(&c, &p) + 1e-12);
        }
    }

    #[test]
    fn enlarged_set_contains_an_exact_subgradient(
        seed in any::<u64>(),
        kind in 0..3usize,
        eps in 0.0..1.0f64,
        dir_seed in any::<u64>(),
    ) {
        let inst = random_instance(seed, KINDS[kind]);
        let mut rng = ChaCha8Rng::seed_from_u64(dir_seed);
        let img = inst.image(&inst.feasible().random_point(&mut rng)).unwrap();
        let set = inst.subgradient_set(&img, eps).unwrap();
        let g = inst.exact_image_subgradient(&img).unwrap();
        let mut drng = Lcg(dir_seed);
        for _ in 0..20 {
            let delta: Vec<f64> = (0..img.len()).map(|_| drng.uniform(-1.0, 1.0)).collect();
            prop_assert!(set.support_function(&delta) >= common::dot(&g, &delta) - 1e-12);
        }
    }

    #[test]
    fn schedule_is_monotone(k in 0..1_000_000usize, coeff in 1e-6..10.0f64) {
        let (a0, e0) = step_schedule(k, coeff);
        let (a1, e1) = step_schedule(k + 1, coeff);
        prop_assert!(a1 < a0 && e1 < e0);
        prop_assert!((e0 - coeff * a0.sqrt()).abs() <= 1e-15 * coeff);
    }
}
