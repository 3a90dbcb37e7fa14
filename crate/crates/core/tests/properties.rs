//! Property tests for the geometric and probabilistic invariants.

use gocover::analytics::{
    binomial_distribution, poisson_distribution, poisson_truncation_bound, tv_distance,
    CoverageModel,
};
use gocover::field::{Deployment, FieldSpec, GridBoard, Metric};
use gocover::heuristics::{builtin_catalog, builtin_scorer, random_select, BUILTIN_NAMES};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn field_strategy() -> impl Strategy<Value = FieldSpec> {
    (20.0..200.0f64, 20.0..200.0f64)
        .prop_flat_map(|(l, w)| (Just(l), Just(w), 0.5..(l.min(w) * 0.45)))
        .prop_map(|(l, w, r)| FieldSpec::new(l, w, r).unwrap())
}

/// A field plus up to 40 nodes in relative coordinates.
fn deployment_strategy() -> impl Strategy<Value = (FieldSpec, Vec<[f64; 2]>)> {
    (
        field_strategy(),
        proptest::collection::vec((0.0..=1.0f64, 0.0..=1.0f64), 0..40),
    )
        .prop_map(|(field, rel)| {
            let nodes = rel
                .into_iter()
                .map(|(x, y)| [x * field.length_m(), y * field.width_m()])
                .collect();
            (field, nodes)
        })
}

proptest! {
    #[test]
    fn isolation_iff_zero_neighbors(
        (field, nodes) in deployment_strategy(),
        radius in 0.1..50.0f64,
        toroidal in any::<bool>(),
    ) {
        let metric = if toroidal { Metric::Toroidal } else { Metric::Planar };
        let dep = Deployment::new(field, metric, nodes).unwrap();
        for i in 0..dep.len() {
            let count = dep.count_neighbors(i, radius).unwrap();
            prop_assert_eq!(dep.is_isolated(i, radius).unwrap(), count == 0);
        }
    }

    #[test]
    fn toroidal_never_exceeds_planar(
        (field, nodes) in deployment_strategy(),
        radius in 0.1..50.0f64,
    ) {
        for (i, &a) in nodes.iter().enumerate() {
            for &b in &nodes[i + 1..] {
                let t = Metric::Toroidal.distance(&field, a, b);
                let p = Metric::Planar.distance(&field, a, b);
                prop_assert!(t <= p, "toroidal {t} > planar {p}");
            }
        }
        let planar = Deployment::new(field, Metric::Planar, nodes.clone()).unwrap();
        let wrapped = Deployment::new(field, Metric::Toroidal, nodes).unwrap();
        for i in 0..planar.len() {
            prop_assert!(
                wrapped.count_neighbors(i, radius).unwrap()
                    >= planar.count_neighbors(i, radius).unwrap()
            );
        }
    }

    #[test]
    fn neighbor_counts_survive_relabeling(
        (field, nodes) in deployment_strategy(),
        radius in 0.1..50.0f64,
        shuffle_seed in any::<u64>(),
    ) {
        let mut order: Vec<usize> = (0..nodes.len()).collect();
        order.shuffle(&mut ChaCha8Rng::seed_from_u64(shuffle_seed));
        let permuted: Vec<[f64; 2]> = order.iter().map(|&i| nodes[i]).collect();
        let a = Deployment::new(field, Metric::Planar, nodes).unwrap();
        let b = Deployment::new(field, Metric::Planar, permuted).unwrap();
        for (new_index, &old_index) in order.iter().enumerate() {
            prop_assert_eq!(
                a.count_neighbors(old_index, radius).unwrap(),
                b.count_neighbors(new_index, radius).unwrap()
            );
        }
    }

    #[test]
    fn occupy_and_free_points_partition_the_board(
        seed in any::<u64>(),
        pitch_div in 2u32..12,
    ) {
        let field = FieldSpec::new(60.0, 60.0, 5.0).unwrap();
        let mut board = GridBoard::new(field, 60.0 / pitch_div as f64).unwrap();
        let total = board.intersection_count();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut points: Vec<_> = board.intersections().collect();
        points.shuffle(&mut rng);
        for (k, p) in points.iter().take(total / 2).enumerate() {
            board.occupy(p).unwrap();
            prop_assert_eq!(board.occupied_count(), k + 1);
            prop_assert_eq!(board.free_count() + board.occupied_count(), total);
            prop_assert!(board.occupy(p).is_err());
        }
        prop_assert_eq!(board.free_points().count(), board.free_count());
    }

    #[test]
    fn builtin_scores_stay_in_unit_interval(
        (field, nodes) in deployment_strategy(),
        pitch_div in 2u32..12,
        toroidal in any::<bool>(),
    ) {
        let metric = if toroidal { Metric::Toroidal } else { Metric::Planar };
        let pitch = field.length_m().min(field.width_m()) / pitch_div as f64;
        let board = GridBoard::new(field, pitch).unwrap();
        let placed = Deployment::new(field, metric, nodes).unwrap();
        for name in BUILTIN_NAMES {
            let scorer = builtin_scorer(name).unwrap();
            for candidate in board.intersections() {
                let s = scorer.score(&board, &placed, &candidate);
                prop_assert!(
                    s.is_finite() && (0.0..=1.0).contains(&s),
                    "{name} scored {s} at ({}, {})",
                    candidate.row,
                    candidate.col
                );
            }
        }
    }

    #[test]
    fn selection_is_deterministic_and_respects_occupancy(
        seed in any::<u64>(),
        occupied_mask in any::<u32>(),
    ) {
        let field = FieldSpec::new(50.0, 50.0, 5.0).unwrap();
        let mut board = GridBoard::new(field, 10.0).unwrap(); // 6x6
        for (k, p) in board.intersections().collect::<Vec<_>>().into_iter().enumerate() {
            if k < 32 && occupied_mask & (1 << k) != 0 {
                board.occupy(&p).unwrap();
            }
        }
        prop_assume!(!board.is_full());
        let placed = Deployment::empty(field, Metric::Planar);
        let hs = builtin_catalog();
        let mut rng_a = ChaCha8Rng::seed_from_u64(seed);
        let mut rng_b = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..8 {
            let a = random_select(&board, &placed, &hs, 0.01, &mut rng_a).unwrap();
            let b = random_select(&board, &placed, &hs, 0.01, &mut rng_b).unwrap();
            prop_assert_eq!((a.row, a.col), (b.row, b.col));
            prop_assert!(!board.is_occupied(a.row, a.col));
        }
    }

    #[test]
    fn tv_distance_is_a_bounded_symmetric_metric(
        a in proptest::collection::vec(0.0..1.0f64, 1..30),
        b in proptest::collection::vec(0.0..1.0f64, 1..30),
    ) {
        let normalize = |v: &[f64]| {
            let total: f64 = v.iter().sum();
            if total == 0.0 {
                let mut unit = vec![0.0; v.len()];
                unit[0] = 1.0;
                unit
            } else {
                v.iter().map(|x| x / total).collect()
            }
        };
        let a = normalize(&a);
        let b = normalize(&b);
        let ab = tv_distance(&a, &b).unwrap();
        let ba = tv_distance(&b, &a).unwrap();
        prop_assert_eq!(ab, ba);
        prop_assert!((0.0..=1.0 + 1e-12).contains(&ab));
        prop_assert_eq!(tv_distance(&a, &a).unwrap(), 0.0);
    }

    #[test]
    fn coverage_distributions_normalize(
        n_nodes in 1u64..300,
        r_frac in 0.05..0.5f64,
    ) {
        let side = 100.0;
        let model = CoverageModel::new(n_nodes, r_frac * side, side).unwrap();
        let binom = binomial_distribution(&model);
        let total: f64 = binom.iter().sum();
        prop_assert!((total - 1.0).abs() < 1e-9, "binomial sum {total}");
        let mean: f64 = binom.iter().enumerate().map(|(n, &p)| n as f64 * p).sum();
        prop_assert!((mean - model.lambda_s).abs() < 1e-9, "mean {mean}");

        let k = poisson_truncation_bound(model.lambda_s) as usize;
        let poisson = poisson_distribution(model.lambda_s, k + 1).unwrap();
        let total: f64 = poisson.iter().sum();
        prop_assert!((total - 1.0).abs() <= 1e-9, "poisson sum {total}");
    }
}
