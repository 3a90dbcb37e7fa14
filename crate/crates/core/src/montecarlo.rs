//! Empirical estimators for the closed-form model: isolation/connectivity
//! rates and per-point coverage histograms over many seeded deployments,
//! plus the heuristic-vs-uniform strategy comparison.
//!
//! Every trial draws its rng stream from `(master_seed, purpose, trial)`,
//! and aggregation only ever sums per-trial results in trial order, so
//! estimates are bit-identical regardless of parallel scheduling.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::analytics::{connectivity_probability, density, DensityParams};
use crate::field::{FieldSpec, GridBoard, Metric};
use crate::heuristics::HeuristicSet;
use crate::placement::{
    go_heuristics_place, sample_uniform_nodes, uniform_random_place, PlacementConfig,
    PlacementError,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum McError {
    #[error("invalid Monte Carlo config: {0}")]
    InvalidConfig(String),
    #[error(transparent)]
    Placement(#[from] PlacementError),
}

/// Monte Carlo run parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct McConfig {
    pub trials: u64,
    /// Test points per trial for the coverage histogram.
    pub samples_per_trial: u64,
    pub metric: Metric,
    pub master_seed: u64,
}

impl Default for McConfig {
    fn default() -> Self {
        Self {
            trials: 10_000,
            samples_per_trial: 100,
            metric: Metric::Toroidal,
            master_seed: 0,
        }
    }
}

impl McConfig {
    pub fn validate(&self) -> Result<(), McError> {
        if self.trials < 1 {
            return Err(McError::InvalidConfig("trials must be at least 1".into()));
        }
        if self.samples_per_trial < 1 {
            return Err(McError::InvalidConfig(
                "samples_per_trial must be at least 1".into(),
            ));
        }
        Ok(())
    }
}

/// An estimate with its binomial standard error and the closed-form value
/// it is checked against.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct McReport {
    pub estimate: f64,
    pub std_error: f64,
    pub trials: u64,
    pub analytic_reference: f64,
    pub abs_deviation: f64,
}

impl McReport {
    fn new(successes: u64, trials: u64, analytic_reference: f64) -> Self {
        let estimate = successes as f64 / trials as f64;
        let std_error = (estimate * (1.0 - estimate) / trials as f64).sqrt();
        Self {
            estimate,
            std_error,
            trials,
            analytic_reference,
            abs_deviation: (estimate - analytic_reference).abs(),
        }
    }
}

// stream labels for per-purpose seed derivation
const PURPOSE_NO_ISOLATED: u64 = 1;
const PURPOSE_COVERAGE: u64 = 2;
const PURPOSE_COMPARE_HEURISTIC: u64 = 3;
const PURPOSE_COMPARE_BASELINE: u64 = 4;

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = x;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Deterministic per-trial seed, independent of execution order.
fn derive_seed(master_seed: u64, purpose: u64, trial: u64) -> u64 {
    splitmix64(splitmix64(master_seed ^ splitmix64(purpose)) ^ trial)
}

/// Fraction of seeded uniform deployments in which no node is isolated,
/// against the closed-form connectivity probability.
pub fn mc_no_isolated_probability(
    field: &FieldSpec,
    n_nodes: u64,
    cfg: &McConfig,
) -> Result<McReport, McError> {
    cfg.validate()?;
    if n_nodes < 2 {
        return Err(McError::InvalidConfig(
            "isolation estimates need at least 2 nodes".into(),
        ));
    }
    let radius = field.range_m();
    let successes: u64 = (0..cfg.trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng =
                ChaCha8Rng::seed_from_u64(derive_seed(cfg.master_seed, PURPOSE_NO_ISOLATED, trial));
            let nodes = sample_uniform_nodes(field, n_nodes, &mut rng);
            u64::from(!has_isolated_node(field, cfg.metric, &nodes, radius))
        })
        .sum();
    let lambda = density(DensityParams::for_field(field, n_nodes));
    let analytic =
        connectivity_probability(lambda, n_nodes).expect("field dimensions are validated");
    Ok(McReport::new(successes, cfg.trials, analytic))
}

/// Empirical per-point coverage distribution: per trial, deploy `N - 1`
/// uniform nodes and count how many cover each of `samples_per_trial`
/// uniform test points. Returns a histogram normalized to total mass 1.
pub fn mc_coverage_histogram(
    field: &FieldSpec,
    n_nodes: u64,
    cfg: &McConfig,
) -> Result<Vec<f64>, McError> {
    cfg.validate()?;
    if n_nodes < 2 {
        return Err(McError::InvalidConfig(
            "coverage histograms need at least 2 nodes".into(),
        ));
    }
    let radius = field.range_m();
    let per_trial: Vec<Vec<u64>> = (0..cfg.trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng =
                ChaCha8Rng::seed_from_u64(derive_seed(cfg.master_seed, PURPOSE_COVERAGE, trial));
            let nodes = sample_uniform_nodes(field, n_nodes - 1, &mut rng);
            let counter = CoverageCounter::new(field, cfg.metric, &nodes, radius);
            let mut hist: Vec<u64> = Vec::new();
            for _ in 0..cfg.samples_per_trial {
                let point = [
                    rng.random::<f64>() * field.length_m(),
                    rng.random::<f64>() * field.width_m(),
                ];
                let covered = counter.count_within(point);
                if covered >= hist.len() {
                    hist.resize(covered + 1, 0);
                }
                hist[covered] += 1;
            }
            hist
        })
        .collect();

    let width = per_trial.iter().map(Vec::len).max().unwrap_or(0);
    let mut merged = vec![0u64; width];
    for hist in per_trial {
        for (n, count) in hist.into_iter().enumerate() {
            merged[n] += count;
        }
    }
    let total = (cfg.trials * cfg.samples_per_trial) as f64;
    Ok(merged.into_iter().map(|c| c as f64 / total).collect())
}

/// Per-trial outcome of one strategy.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CompareRow {
    pub strategy: &'static str,
    pub trial: u64,
    pub no_isolated: bool,
    pub min_pairwise_m: f64,
}

/// Paired comparison of heuristic placement against the uniform baseline.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StrategyComparison {
    /// Node count both strategies were run at (set by the stopping rule).
    pub n_final: u64,
    pub trials: u64,
    pub heuristic_no_isolated_rate: f64,
    pub baseline_no_isolated_rate: f64,
    pub heuristic_mean_min_pairwise_m: f64,
    pub baseline_mean_min_pairwise_m: f64,
    /// All heuristic rows, then all baseline rows, each in trial order.
    pub rows: Vec<CompareRow>,
}

pub const STRATEGY_HEURISTIC: &str = "heuristic";
pub const STRATEGY_UNIFORM: &str = "uniform";

/// (no-isolated, min-pairwise) per strategy, plus the node count.
type TrialOutcome = ((bool, f64), (bool, f64), u64);

/// Run both strategies over `trials` derived seeds and measure, with the
/// planar metric (the realistic, edge-affected case), the no-isolated-node
/// rate and the minimum pairwise distance of each deployment. The baseline
/// is paired: it places exactly the `n_final` the heuristic run reached.
pub fn compare_strategies(
    board: &GridBoard,
    hs: &HeuristicSet,
    base_cfg: &PlacementConfig,
    trials: u64,
    master_seed: u64,
) -> Result<StrategyComparison, McError> {
    if trials < 1 {
        return Err(McError::InvalidConfig("trials must be at least 1".into()));
    }
    base_cfg.validate().map_err(McError::Placement)?;
    let field = *board.field();
    let radius = field.range_m();

    let outcomes: Vec<Result<TrialOutcome, McError>> = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let mut cfg = *base_cfg;
            cfg.seed = derive_seed(master_seed, PURPOSE_COMPARE_HEURISTIC, trial);
            let heuristic = go_heuristics_place(board, hs, &cfg)?;
            let n_final = heuristic.n_final;
            let baseline_seed = derive_seed(master_seed, PURPOSE_COMPARE_BASELINE, trial);
            let baseline = uniform_random_place(&field, n_final, baseline_seed, Metric::Planar)?;
            let stats = |nodes: &[[f64; 2]]| {
                (
                    !has_isolated_node(&field, Metric::Planar, nodes, radius),
                    min_pairwise_distance(&field, Metric::Planar, nodes),
                )
            };
            Ok((
                stats(heuristic.deployment.nodes()),
                stats(baseline.deployment.nodes()),
                n_final,
            ))
        })
        .collect();

    let mut rows = Vec::with_capacity(2 * trials as usize);
    let mut baseline_rows = Vec::with_capacity(trials as usize);
    let mut h_ok = 0u64;
    let mut b_ok = 0u64;
    let mut h_dist = 0.0;
    let mut b_dist = 0.0;
    let mut n_final = 0u64;
    for (trial, outcome) in outcomes.into_iter().enumerate() {
        let ((h_iso, h_min), (b_iso, b_min), n) = outcome?;
        n_final = n;
        h_ok += u64::from(h_iso);
        b_ok += u64::from(b_iso);
        h_dist += h_min;
        b_dist += b_min;
        rows.push(CompareRow {
            strategy: STRATEGY_HEURISTIC,
            trial: trial as u64,
            no_isolated: h_iso,
            min_pairwise_m: h_min,
        });
        baseline_rows.push(CompareRow {
            strategy: STRATEGY_UNIFORM,
            trial: trial as u64,
            no_isolated: b_iso,
            min_pairwise_m: b_min,
        });
    }
    rows.extend(baseline_rows);

    Ok(StrategyComparison {
        n_final,
        trials,
        heuristic_no_isolated_rate: h_ok as f64 / trials as f64,
        baseline_no_isolated_rate: b_ok as f64 / trials as f64,
        heuristic_mean_min_pairwise_m: h_dist / trials as f64,
        baseline_mean_min_pairwise_m: b_dist / trials as f64,
        rows,
    })
}

/// Smallest pairwise distance in a deployment; infinite below two nodes.
pub fn min_pairwise_distance(field: &FieldSpec, metric: Metric, nodes: &[[f64; 2]]) -> f64 {
    let mut best = f64::INFINITY;
    for (i, &a) in nodes.iter().enumerate() {
        for &b in &nodes[i + 1..] {
            best = best.min(metric.distance_sq(field, a, b));
        }
    }
    best.sqrt()
}

/// True iff some node has no other node within `radius`.
pub fn has_isolated_node(
    field: &FieldSpec,
    metric: Metric,
    nodes: &[[f64; 2]],
    radius: f64,
) -> bool {
    if nodes.len() < 2 {
        return !nodes.is_empty();
    }
    match CellGrid::build(field, nodes, radius) {
        Some(grid) => (0..nodes.len()).any(|i| !grid.has_neighbor(field, metric, nodes, i, radius)),
        None => {
            let r_sq = radius * radius;
            (0..nodes.len()).any(|i| {
                !nodes
                    .iter()
                    .enumerate()
                    .any(|(j, &other)| j != i && metric.distance_sq(field, nodes[i], other) <= r_sq)
            })
        }
    }
}

/// Counts nodes within a radius of a query point, via the cell grid when
/// the field is large enough for one.
struct CoverageCounter<'a> {
    field: FieldSpec,
    nodes: &'a [[f64; 2]],
    metric: Metric,
    radius_sq: f64,
    grid: Option<CellGrid>,
}

impl<'a> CoverageCounter<'a> {
    fn new(field: &FieldSpec, metric: Metric, nodes: &'a [[f64; 2]], radius: f64) -> Self {
        Self {
            field: *field,
            nodes,
            metric,
            radius_sq: radius * radius,
            grid: CellGrid::build(field, nodes, radius),
        }
    }

    fn count_within(&self, point: [f64; 2]) -> usize {
        match &self.grid {
            Some(grid) => grid.count_within(self.metric, self.nodes, point, self.radius_sq),
            None => self
                .nodes
                .iter()
                .filter(|&&n| self.metric.distance_sq(&self.field, point, n) <= self.radius_sq)
                .count(),
        }
    }
}

/// Uniform bucket grid with cell size >= radius, so any two points within
/// the radius land in the same or adjacent cells (cyclically adjacent on
/// the torus, since the cells tile the field exactly).
struct CellGrid {
    field: FieldSpec,
    ncx: usize,
    ncy: usize,
    inv_w: f64,
    inv_h: f64,
    starts: Vec<u32>,
    items: Vec<u32>,
}

impl CellGrid {
    /// None when the field is too small to split into at least 3 cells per
    /// axis; callers fall back to brute force there.
    fn build(field: &FieldSpec, nodes: &[[f64; 2]], radius: f64) -> Option<Self> {
        let mut ncx_f = (field.length_m() / radius).floor().max(1.0);
        let mut ncy_f = (field.width_m() / radius).floor().max(1.0);
        // growing cells keeps the 3x3 neighborhood valid, so cap the cell
        // count at a small multiple of the node count
        let max_cells = (4 * nodes.len()).max(16) as f64;
        let scale = (ncx_f * ncy_f / max_cells).sqrt();
        if scale > 1.0 {
            ncx_f = (ncx_f / scale).floor().max(1.0);
            ncy_f = (ncy_f / scale).floor().max(1.0);
        }
        let ncx = ncx_f as usize;
        let ncy = ncy_f as usize;
        if ncx < 3 || ncy < 3 || nodes.len() < 16 {
            return None;
        }
        let inv_w = ncx as f64 / field.length_m();
        let inv_h = ncy as f64 / field.width_m();
        let ncells = ncx * ncy;
        let cell_of = |p: [f64; 2]| -> usize {
            let cx = ((p[0] * inv_w) as usize).min(ncx - 1);
            let cy = ((p[1] * inv_h) as usize).min(ncy - 1);
            cy * ncx + cx
        };
        let mut counts = vec![0u32; ncells + 1];
        for &p in nodes {
            counts[cell_of(p) + 1] += 1;
        }
        for i in 0..ncells {
            counts[i + 1] += counts[i];
        }
        let starts = counts;
        let mut cursor = starts.clone();
        let mut items = vec![0u32; nodes.len()];
        for (i, &p) in nodes.iter().enumerate() {
            let c = cell_of(p);
            items[cursor[c] as usize] = i as u32;
            cursor[c] += 1;
        }
        Some(Self {
            field: *field,
            ncx,
            ncy,
            inv_w,
            inv_h,
            starts,
            items,
        })
    }

    fn cell_xy(&self, p: [f64; 2]) -> (usize, usize) {
        (
            ((p[0] * self.inv_w) as usize).min(self.ncx - 1),
            ((p[1] * self.inv_h) as usize).min(self.ncy - 1),
        )
    }

    /// Visit node indices in the 3x3 cell neighborhood of `point`,
    /// wrapping on the torus and clamping on the plane.
    fn for_each_nearby(&self, metric: Metric, point: [f64; 2], mut visit: impl FnMut(u32)) {
        let (cx, cy) = self.cell_xy(point);
        for dy in -1i64..=1 {
            let y = cy as i64 + dy;
            let y = match metric {
                Metric::Toroidal => y.rem_euclid(self.ncy as i64) as usize,
                Metric::Planar => {
                    if y < 0 || y >= self.ncy as i64 {
                        continue;
                    }
                    y as usize
                }
            };
            for dx in -1i64..=1 {
                let x = cx as i64 + dx;
                let x = match metric {
                    Metric::Toroidal => x.rem_euclid(self.ncx as i64) as usize,
                    Metric::Planar => {
                        if x < 0 || x >= self.ncx as i64 {
                            continue;
                        }
                        x as usize
                    }
                };
                let cell = y * self.ncx + x;
                for k in self.starts[cell]..self.starts[cell + 1] {
                    visit(self.items[k as usize]);
                }
            }
        }
    }

    fn has_neighbor(
        &self,
        field: &FieldSpec,
        metric: Metric,
        nodes: &[[f64; 2]],
        index: usize,
        radius: f64,
    ) -> bool {
        let me = nodes[index];
        let r_sq = radius * radius;
        let mut found = false;
        self.for_each_nearby(metric, me, |j| {
            if !found
                && j as usize != index
                && metric.distance_sq(field, me, nodes[j as usize]) <= r_sq
            {
                found = true;
            }
        });
        found
    }

    fn count_within(
        &self,
        metric: Metric,
        nodes: &[[f64; 2]],
        point: [f64; 2],
        radius_sq: f64,
    ) -> usize {
        let mut count = 0;
        self.for_each_nearby(metric, point, |j| {
            if metric.distance_sq(&self.field, point, nodes[j as usize]) <= radius_sq {
                count += 1;
            }
        });
        count
    }
}
