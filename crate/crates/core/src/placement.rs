//! Node placement: the heuristic-guided loop that keeps occupying board
//! intersections until the analytic connectivity criterion is met, plus a
//! continuous uniform-random baseline for comparison.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::analytics::{connectivity_probability, density, DensityParams, StoppingRule};
use crate::field::{Deployment, FieldSpec, GridBoard, Metric};
use crate::heuristics::{random_select, random_select_any, HeuristicSet, HeuristicsError};

/// Default smoothing constant added to every composite score during
/// selection, keeping all free intersections reachable.
pub const DEFAULT_SMOOTHING: f64 = 0.01;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PlacementError {
    #[error("board exhausted before the stopping rule was satisfied")]
    BoardExhausted,
    #[error("placement exceeded the iteration cap of {cap}")]
    IterationCapExceeded { cap: u64 },
    #[error("invalid placement config: {0}")]
    InvalidConfig(String),
}

impl From<HeuristicsError> for PlacementError {
    fn from(err: HeuristicsError) -> Self {
        match err {
            HeuristicsError::BoardExhausted => PlacementError::BoardExhausted,
            other => PlacementError::InvalidConfig(other.to_string()),
        }
    }
}

/// Configuration of one placement run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlacementConfig {
    pub stopping: StoppingRule,
    pub seed: u64,
    /// Cap on loop passes; defaults to 100x the intersection count. Only
    /// the literal mode can spend passes without placing.
    pub max_iterations: Option<u64>,
    /// Draw over all intersections and skip occupied ones instead of
    /// sampling the free set directly.
    pub fig2_literal: bool,
    /// Start the node counter at 1 over an empty board instead of seeding
    /// a first node at the center intersection. With this set the final
    /// deployment holds one node fewer than `n_final`.
    pub no_seed_node: bool,
    pub smoothing: f64,
    /// Metric recorded on the output deployment.
    pub metric: Metric,
}

impl PlacementConfig {
    pub fn new(stopping: StoppingRule, seed: u64) -> Self {
        Self {
            stopping,
            seed,
            max_iterations: None,
            fig2_literal: false,
            no_seed_node: false,
            smoothing: DEFAULT_SMOOTHING,
            metric: Metric::Planar,
        }
    }

    pub fn validate(&self) -> Result<(), PlacementError> {
        self.stopping
            .validate()
            .map_err(|e| PlacementError::InvalidConfig(e.to_string()))?;
        if self.max_iterations == Some(0) {
            return Err(PlacementError::InvalidConfig(
                "max_iterations must be at least 1".into(),
            ));
        }
        if !self.smoothing.is_finite() || self.smoothing < 0.0 {
            return Err(PlacementError::InvalidConfig(format!(
                "smoothing must be finite and non-negative, got {}",
                self.smoothing
            )));
        }
        Ok(())
    }
}

/// One loop pass. `n_nodes`, `lambda` and `p` are the values after the
/// pass; on a skipped pass (occupied draw in literal mode) they are
/// unchanged from the previous entry.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceEntry {
    pub iteration: u64,
    pub n_nodes: u64,
    pub lambda: f64,
    pub p: f64,
    pub row: u32,
    pub col: u32,
    pub skipped: bool,
}

/// Outcome of a placement run.
#[derive(Debug, Clone, PartialEq)]
pub struct PlacementResult {
    pub deployment: Deployment,
    pub n_final: u64,
    pub lambda_final: f64,
    pub p_final: f64,
    /// Loop passes, including skipped occupied draws.
    pub iterations: u64,
    pub trace: Vec<TraceEntry>,
}

fn lambda_and_p(field: &FieldSpec, n: u64) -> (f64, f64) {
    let lambda = density(DensityParams::for_field(field, n));
    let p = connectivity_probability(lambda, n).expect("field dimensions are validated");
    (lambda, p)
}

/// Grow a deployment on the board until the stopping rule is satisfied.
///
/// Every pass draws an intersection via the heuristic-weighted selection;
/// if it is free it is occupied, the node count rises by one, and the
/// density and connectivity probability are recomputed. The rule only
/// depends on the node count, so the final count is seed-independent:
/// heuristics decide where nodes go, never how many.
///
/// A fresh board gets a first node at the center intersection before the
/// loop so that the node counter and the occupied set agree (see
/// [`PlacementConfig::no_seed_node`] for the alternative bookkeeping).
/// Intersections already occupied on entry count as deployed nodes.
pub fn go_heuristics_place(
    board: &GridBoard,
    hs: &HeuristicSet,
    cfg: &PlacementConfig,
) -> Result<PlacementResult, PlacementError> {
    cfg.validate()?;
    let mut board = board.clone();
    let field = *board.field();
    let mut deployment = Deployment::empty(field, cfg.metric);
    for point in board.intersections() {
        if board.is_occupied(point.row, point.col) {
            deployment
                .push(point.position())
                .expect("lattice points lie inside the field");
        }
    }
    if deployment.is_empty() && !cfg.no_seed_node {
        let center = board.center_point();
        board.occupy(&center).expect("fresh board center is free");
        deployment
            .push(center.position())
            .expect("center lies inside the field");
    }
    let mut n = deployment.len() as u64 + u64::from(cfg.no_seed_node);

    let max_iterations = cfg
        .max_iterations
        .unwrap_or(100 * board.intersection_count() as u64);
    let (mut lambda, mut p) = lambda_and_p(&field, n);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut iterations = 0u64;
    let mut trace = Vec::new();

    while !cfg.stopping.is_satisfied(p) {
        if board.is_full() {
            return Err(PlacementError::BoardExhausted);
        }
        if iterations == max_iterations {
            return Err(PlacementError::IterationCapExceeded {
                cap: max_iterations,
            });
        }
        iterations += 1;
        let current = if cfg.fig2_literal {
            random_select_any(&board, &deployment, hs, cfg.smoothing, &mut rng)?
        } else {
            random_select(&board, &deployment, hs, cfg.smoothing, &mut rng)?
        };
        let skipped = board.is_occupied(current.row, current.col);
        if !skipped {
            board.occupy(&current).expect("checked free above");
            deployment
                .push(current.position())
                .expect("lattice points lie inside the field");
            n += 1;
            let (l, q) = lambda_and_p(&field, n);
            lambda = l;
            p = q;
        }
        trace.push(TraceEntry {
            iteration: iterations,
            n_nodes: n,
            lambda,
            p,
            row: current.row,
            col: current.col,
            skipped,
        });
    }

    Ok(PlacementResult {
        deployment,
        n_final: n,
        lambda_final: lambda,
        p_final: p,
        iterations,
        trace,
    })
}

/// Drop `n_nodes` nodes independently and uniformly over the continuous
/// field (not lattice-constrained). The baseline the heuristic placement
/// is judged against.
pub fn uniform_random_place(
    field: &FieldSpec,
    n_nodes: u64,
    seed: u64,
    metric: Metric,
) -> Result<PlacementResult, PlacementError> {
    if n_nodes < 1 {
        return Err(PlacementError::InvalidConfig(
            "n_nodes must be at least 1".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let nodes = sample_uniform_nodes(field, n_nodes, &mut rng);
    let deployment =
        Deployment::new(*field, metric, nodes).expect("sampled positions lie inside the field");
    let (lambda_final, p_final) = lambda_and_p(field, n_nodes);
    Ok(PlacementResult {
        deployment,
        n_final: n_nodes,
        lambda_final,
        p_final,
        iterations: n_nodes,
        trace: Vec::new(),
    })
}

/// Uniform positions over the field, one rng draw per axis.
pub(crate) fn sample_uniform_nodes<R: Rng + ?Sized>(
    field: &FieldSpec,
    n_nodes: u64,
    rng: &mut R,
) -> Vec<[f64; 2]> {
    (0..n_nodes)
        .map(|_| {
            [
                rng.random::<f64>() * field.length_m(),
                rng.random::<f64>() * field.width_m(),
            ]
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytics::stopping_n;
    use crate::heuristics::builtin_catalog;

    fn bench_field() -> FieldSpec {
        FieldSpec::new(100.0, 100.0, 7.0).unwrap()
    }

    fn bench_board() -> GridBoard {
        GridBoard::new(bench_field(), 3.5).unwrap()
    }

    #[test]
    fn rule_satisfied_at_start_leaves_the_board_untouched() {
        let board = bench_board();
        // p(1) is about 0.0153, comfortably above this threshold
        let cfg = PlacementConfig::new(StoppingRule::paper_literal(0.01), 42);
        let result = go_heuristics_place(&board, &builtin_catalog(), &cfg).unwrap();
        assert_eq!(result.n_final, 1);
        assert_eq!(result.deployment.len(), 1);
        assert_eq!(result.deployment.nodes()[0], [49.0, 49.0]); // center of 29x29
        assert!(result.trace.is_empty());
        assert_eq!(result.iterations, 0);
    }

    #[test]
    fn tiny_board_exhausts() {
        let board = GridBoard::new(bench_field(), 50.0).unwrap();
        assert_eq!(board.intersection_count(), 9);
        let cfg = PlacementConfig::new(StoppingRule::error_complement(0.1), 0);
        assert!(matches!(
            go_heuristics_place(&board, &builtin_catalog(), &cfg),
            Err(PlacementError::BoardExhausted)
        ));
    }

    #[test]
    fn final_count_matches_the_deterministic_solver() {
        let board = bench_board();
        let field = bench_field();
        for rule in [
            StoppingRule::paper_literal(0.1),
            StoppingRule::error_complement(0.1),
        ] {
            let expected = stopping_n(&field, rule, None).unwrap();
            let cfg = PlacementConfig::new(rule, 1234);
            let result = go_heuristics_place(&board, &builtin_catalog(), &cfg).unwrap();
            assert_eq!(result.n_final, expected);
            assert_eq!(result.deployment.len() as u64, expected);
            assert!(cfg.stopping.is_satisfied(result.p_final));
        }
    }

    #[test]
    fn trace_replays_from_the_node_count() {
        let board = bench_board();
        let cfg = PlacementConfig::new(StoppingRule::paper_literal(0.1), 7);
        let result = go_heuristics_place(&board, &builtin_catalog(), &cfg).unwrap();
        let field = bench_field();
        assert_eq!(result.iterations, result.trace.len() as u64);
        // non-literal mode never skips, so passes == placements
        assert_eq!(result.iterations, result.n_final - 1);
        let mut prev_n = 1;
        for entry in &result.trace {
            assert!(!entry.skipped);
            assert_eq!(entry.n_nodes, prev_n + 1);
            prev_n = entry.n_nodes;
            let (lambda, p) = lambda_and_p(&field, entry.n_nodes);
            assert!((entry.lambda - lambda).abs() <= 1e-12 * lambda.abs());
            assert!((entry.p - p).abs() <= 1e-12 * p.abs().max(f64::MIN_POSITIVE));
        }
        // every placed node is a distinct intersection
        let mut seen = std::collections::HashSet::new();
        for node in result.deployment.nodes() {
            assert!(seen.insert((node[0].to_bits(), node[1].to_bits())));
        }
    }

    #[test]
    fn literal_mode_reaches_the_same_count_with_skips() {
        let board = bench_board();
        let mut cfg = PlacementConfig::new(StoppingRule::paper_literal(0.1), 99);
        cfg.fig2_literal = true;
        let result = go_heuristics_place(&board, &builtin_catalog(), &cfg).unwrap();
        assert_eq!(result.n_final, 321);
        assert_eq!(result.deployment.len(), 321);
        assert!(result.iterations >= result.n_final - 1);
        let skips = result.trace.iter().filter(|e| e.skipped).count() as u64;
        assert_eq!(result.iterations - skips, result.n_final - 1);
        // a skipped pass leaves the bookkeeping untouched
        for pair in result.trace.windows(2) {
            if pair[1].skipped {
                assert_eq!(pair[1].n_nodes, pair[0].n_nodes);
                assert_eq!(pair[1].p, pair[0].p);
            }
        }
    }

    #[test]
    fn literal_mode_respects_the_iteration_cap() {
        let board = GridBoard::new(bench_field(), 50.0).unwrap();
        let mut cfg = PlacementConfig::new(StoppingRule::error_complement(0.1), 3);
        cfg.fig2_literal = true;
        cfg.max_iterations = Some(40);
        // 9 intersections fill long before p reaches 0.9; after that every
        // draw is a skip until the cap trips. Exhaustion is detected first.
        let err = go_heuristics_place(&board, &builtin_catalog(), &cfg).unwrap_err();
        assert!(matches!(err, PlacementError::BoardExhausted));

        let mut cfg2 = cfg;
        cfg2.max_iterations = Some(2);
        let err = go_heuristics_place(&board, &builtin_catalog(), &cfg2).unwrap_err();
        assert!(matches!(
            err,
            PlacementError::IterationCapExceeded { cap: 2 }
        ));
    }

    #[test]
    fn no_seed_node_keeps_the_literal_bookkeeping() {
        let board = bench_board();
        let mut cfg = PlacementConfig::new(StoppingRule::paper_literal(0.1), 5);
        cfg.no_seed_node = true;
        let result = go_heuristics_place(&board, &builtin_catalog(), &cfg).unwrap();
        assert_eq!(result.n_final, 321);
        // the counter starts at 1 over an empty board, so placements lag by one
        assert_eq!(result.deployment.len(), 320);
    }

    #[test]
    fn same_seed_reproduces_the_same_deployment() {
        let board = bench_board();
        let cfg = PlacementConfig::new(StoppingRule::paper_literal(0.1), 2024);
        let a = go_heuristics_place(&board, &builtin_catalog(), &cfg).unwrap();
        let b = go_heuristics_place(&board, &builtin_catalog(), &cfg).unwrap();
        assert_eq!(a, b);

        let mut other = cfg;
        other.seed = 2025;
        let c = go_heuristics_place(&board, &builtin_catalog(), &other).unwrap();
        assert_eq!(c.n_final, a.n_final);
        assert_ne!(c.deployment, a.deployment);
    }

    #[test]
    fn partially_occupied_board_counts_existing_nodes() {
        let mut board = bench_board();
        for col in 0..5 {
            let p = board.point(0, col).unwrap();
            board.occupy(&p).unwrap();
        }
        let cfg = PlacementConfig::new(StoppingRule::paper_literal(0.1), 11);
        let result = go_heuristics_place(&board, &builtin_catalog(), &cfg).unwrap();
        assert_eq!(result.n_final, 321);
        assert_eq!(result.deployment.len(), 321);
        assert_eq!(result.iterations, 321 - 5);
    }

    #[test]
    fn uniform_baseline_is_deterministic_and_in_bounds() {
        let field = bench_field();
        let a = uniform_random_place(&field, 500, 77, Metric::Planar).unwrap();
        let b = uniform_random_place(&field, 500, 77, Metric::Planar).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.n_final, 500);
        assert!(a.deployment.nodes().iter().all(|&p| field.contains(p)));

        let single = uniform_random_place(&field, 1, 0, Metric::Planar).unwrap();
        assert!(single.deployment.is_isolated(0, 7.0).unwrap());

        assert!(matches!(
            uniform_random_place(&field, 0, 0, Metric::Planar),
            Err(PlacementError::InvalidConfig(_))
        ));
    }
}
