//! Statistical spot checks of the simulators against the closed form.

use gocover::analytics::{
    binomial_distribution, density, tv_distance, CoverageModel, DensityParams, StoppingRule,
};
use gocover::field::{FieldSpec, GridBoard, Metric};
use gocover::heuristics::HeuristicSet;
use gocover::montecarlo::{compare_strategies, mc_coverage_histogram, McConfig};
use gocover::placement::{uniform_random_place, PlacementConfig};

#[test]
fn mean_neighbor_count_tracks_the_density_formula() {
    // On the torus each node sees (N-1) pi R^2 / A expected neighbors; the
    // closed form rounds that to N pi R^2 / A. The band covers the
    // one-node bias (~0.015) plus three standard errors of the grand mean.
    let field = FieldSpec::new(100.0, 100.0, 7.0).unwrap();
    let lambda = density(DensityParams::for_field(&field, 500));
    let mut total = 0usize;
    for seed in 0..100u64 {
        let result = uniform_random_place(&field, 500, seed, Metric::Toroidal).unwrap();
        for i in 0..500 {
            total += result.deployment.count_neighbors(i, 7.0).unwrap();
        }
    }
    let mean = total as f64 / (100.0 * 500.0);
    assert!(
        (mean - lambda).abs() < 0.08,
        "mean neighbor count {mean} vs lambda {lambda}"
    );
}

#[test]
fn coverage_histogram_tightens_with_more_samples() {
    let field = FieldSpec::new(100.0, 100.0, 7.0).unwrap();
    let model = CoverageModel::for_field(&field, 1000).unwrap();
    let binom = binomial_distribution(&model);
    let tv_at = |trials: u64| {
        let cfg = McConfig {
            trials,
            samples_per_trial: 100,
            metric: Metric::Toroidal,
            master_seed: 17,
        };
        let hist = mc_coverage_histogram(&field, 1000, &cfg).unwrap();
        tv_distance(&hist, &binom).unwrap()
    };
    let coarse = tv_at(40);
    let fine = tv_at(1000);
    assert!(
        fine < coarse,
        "TV did not shrink with sample size: {coarse} -> {fine}"
    );
    assert!(fine < 0.02, "TV at 1e5 samples is {fine}");
}

#[test]
fn dispersion_alone_keeps_nodes_farther_apart_than_uniform() {
    let field = FieldSpec::new(100.0, 100.0, 7.0).unwrap();
    let board = GridBoard::new(field, 3.5).unwrap();
    let hs = HeuristicSet::from_weights(&[("dispersion", 1.0)]).unwrap();
    let cfg = PlacementConfig::new(StoppingRule::paper_literal(0.1), 0);
    let report = compare_strategies(&board, &hs, &cfg, 10, 23).unwrap();
    assert!(
        report.heuristic_mean_min_pairwise_m >= report.baseline_mean_min_pairwise_m,
        "lattice spacing {} fell below baseline {}",
        report.heuristic_mean_min_pairwise_m,
        report.baseline_mean_min_pairwise_m
    );
    // lattice-constrained placements can never sit closer than the pitch
    assert!(report.heuristic_mean_min_pairwise_m >= board.pitch_m() - 1e-12);
}
