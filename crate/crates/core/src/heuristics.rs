//! The heuristic catalog and the weighted random selection of the next
//! intersection to occupy.
//!
//! A [`Scorer`] maps (board, deployment so far, candidate intersection) to
//! a preference in `[0, 1]`. A [`HeuristicSet`] combines named, weighted
//! scorers by weighted sum; [`random_select`] then draws a free
//! intersection with probability proportional to `composite + smoothing`,
//! falling back to a uniform draw when the total sampling weight is zero.
//!
//! The built-in catalog transplants four pieces of Go opening doctrine to
//! node placement: star points, the third/fourth line, dispersion away
//! from existing stones, and attachment to the connected cluster. It is a
//! stand-in catalog — any [`Scorer`] implementation can be registered
//! alongside or instead of it.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::field::{Deployment, GridBoard, GridPoint};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum HeuristicsError {
    #[error("no free intersection left on the board")]
    BoardExhausted,
    #[error("unknown heuristic {0:?}")]
    UnknownHeuristic(String),
    #[error("duplicate heuristic name {0:?}")]
    DuplicateName(String),
    #[error("heuristic {name:?} has invalid weight {weight}")]
    InvalidWeight { name: String, weight: f64 },
    #[error("smoothing must be finite and non-negative, got {0}")]
    InvalidSmoothing(f64),
}

/// A placement preference. Implementations must be pure functions of
/// their arguments and return scores in `[0, 1]`; outputs are clamped to
/// that interval defensively.
pub trait Scorer: Send + Sync {
    fn score(&self, board: &GridBoard, placed: &Deployment, candidate: &GridPoint) -> f64;
}

/// A named, weighted scorer.
#[derive(Clone)]
pub struct Heuristic {
    name: String,
    weight: f64,
    scorer: Arc<dyn Scorer>,
}

impl Heuristic {
    pub fn new(
        name: impl Into<String>,
        weight: f64,
        scorer: Arc<dyn Scorer>,
    ) -> Result<Self, HeuristicsError> {
        let name = name.into();
        if !weight.is_finite() || weight < 0.0 {
            return Err(HeuristicsError::InvalidWeight { name, weight });
        }
        Ok(Self {
            name,
            weight,
            scorer,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn weight(&self) -> f64 {
        self.weight
    }

    fn clamped_score(&self, board: &GridBoard, placed: &Deployment, candidate: &GridPoint) -> f64 {
        let s = self.scorer.score(board, placed, candidate);
        debug_assert!(
            s.is_finite() && (0.0..=1.0).contains(&s),
            "scorer {} returned {s} outside [0, 1]",
            self.name
        );
        if s.is_finite() {
            s.clamp(0.0, 1.0)
        } else {
            0.0
        }
    }
}

impl fmt::Debug for Heuristic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Heuristic")
            .field("name", &self.name)
            .field("weight", &self.weight)
            .finish()
    }
}

/// How per-heuristic scores combine into a composite.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Combine {
    #[default]
    WeightedSum,
}

/// An ordered set of heuristics with unique names. The empty set is legal
/// and makes selection uniform.
#[derive(Debug, Clone, Default)]
pub struct HeuristicSet {
    heuristics: Vec<Heuristic>,
    combine: Combine,
}

impl HeuristicSet {
    pub fn new(heuristics: Vec<Heuristic>) -> Result<Self, HeuristicsError> {
        let mut seen = std::collections::HashSet::new();
        for h in &heuristics {
            if !seen.insert(h.name.clone()) {
                return Err(HeuristicsError::DuplicateName(h.name.clone()));
            }
        }
        Ok(Self {
            heuristics,
            combine: Combine::WeightedSum,
        })
    }

    pub fn empty() -> Self {
        Self::default()
    }

    /// Build a set from built-in catalog names and weights.
    pub fn from_weights<S: AsRef<str>>(entries: &[(S, f64)]) -> Result<Self, HeuristicsError> {
        let mut heuristics = Vec::with_capacity(entries.len());
        for (name, weight) in entries {
            let name = name.as_ref();
            let scorer = builtin_scorer(name)
                .ok_or_else(|| HeuristicsError::UnknownHeuristic(name.to_string()))?;
            heuristics.push(Heuristic::new(name, *weight, scorer)?);
        }
        Self::new(heuristics)
    }

    pub fn heuristics(&self) -> &[Heuristic] {
        &self.heuristics
    }

    pub fn combine(&self) -> Combine {
        self.combine
    }

    pub fn is_empty(&self) -> bool {
        self.heuristics.is_empty()
    }

    /// Weighted-sum composite for one candidate.
    pub fn composite(&self, board: &GridBoard, placed: &Deployment, candidate: &GridPoint) -> f64 {
        self.heuristics
            .iter()
            .map(|h| h.weight * h.clamped_score(board, placed, candidate))
            .sum()
    }
}

/// A candidate intersection with its composite and per-heuristic scores.
#[derive(Debug, Clone)]
pub struct ScoredCandidate {
    pub point: GridPoint,
    pub composite_score: f64,
    pub per_heuristic: HashMap<String, f64>,
}

/// Score every free intersection, in row-major order.
pub fn score_candidates(
    board: &GridBoard,
    placed: &Deployment,
    hs: &HeuristicSet,
) -> Result<Vec<ScoredCandidate>, HeuristicsError> {
    let free: Vec<GridPoint> = board.free_points().collect();
    if free.is_empty() {
        return Err(HeuristicsError::BoardExhausted);
    }
    Ok(free
        .into_iter()
        .map(|point| {
            let mut per_heuristic = HashMap::with_capacity(hs.heuristics.len());
            let mut composite_score = 0.0;
            for h in &hs.heuristics {
                let s = h.clamped_score(board, placed, &point);
                composite_score += h.weight * s;
                per_heuristic.insert(h.name.clone(), s);
            }
            ScoredCandidate {
                point,
                composite_score,
                per_heuristic,
            }
        })
        .collect())
}

/// Draw one FREE intersection with probability proportional to
/// `composite + smoothing`; uniform when the total weight is zero.
/// Deterministic for a given rng state.
pub fn random_select<R: Rng + ?Sized>(
    board: &GridBoard,
    placed: &Deployment,
    hs: &HeuristicSet,
    smoothing: f64,
    rng: &mut R,
) -> Result<GridPoint, HeuristicsError> {
    let candidates: Vec<GridPoint> = board.free_points().collect();
    select_among(candidates, board, placed, hs, smoothing, rng)
}

/// As [`random_select`], but drawing over ALL intersections, occupied or
/// not. This backs the literal placement loop, whose guard skips occupied
/// draws instead of excluding them from the sample space.
pub fn random_select_any<R: Rng + ?Sized>(
    board: &GridBoard,
    placed: &Deployment,
    hs: &HeuristicSet,
    smoothing: f64,
    rng: &mut R,
) -> Result<GridPoint, HeuristicsError> {
    let candidates: Vec<GridPoint> = board.intersections().collect();
    select_among(candidates, board, placed, hs, smoothing, rng)
}

fn select_among<R: Rng + ?Sized>(
    candidates: Vec<GridPoint>,
    board: &GridBoard,
    placed: &Deployment,
    hs: &HeuristicSet,
    smoothing: f64,
    rng: &mut R,
) -> Result<GridPoint, HeuristicsError> {
    if !smoothing.is_finite() || smoothing < 0.0 {
        return Err(HeuristicsError::InvalidSmoothing(smoothing));
    }
    if candidates.is_empty() {
        return Err(HeuristicsError::BoardExhausted);
    }
    let weights = sampling_weights(&candidates, board, placed, hs, smoothing);
    let total: f64 = weights.iter().sum();
    let index = if total > 0.0 {
        // weights are finite and non-negative with positive total, so the
        // sampler cannot fail
        WeightedIndex::new(&weights)
            .expect("valid sampling weights")
            .sample(rng)
    } else {
        rng.random_range(0..candidates.len())
    };
    Ok(candidates[index])
}

/// `composite + smoothing` per candidate. Scoring is pure per candidate,
/// so it parallelizes; results land in candidate order either way.
fn sampling_weights(
    candidates: &[GridPoint],
    board: &GridBoard,
    placed: &Deployment,
    hs: &HeuristicSet,
    smoothing: f64,
) -> Vec<f64> {
    // below this size the rayon dispatch overhead outweighs the scoring
    const PAR_THRESHOLD: usize = 256;
    if candidates.len() < PAR_THRESHOLD || placed.len() < 64 {
        candidates
            .iter()
            .map(|p| hs.composite(board, placed, p) + smoothing)
            .collect()
    } else {
        candidates
            .par_iter()
            .map(|p| hs.composite(board, placed, p) + smoothing)
            .collect()
    }
}

// ---------------------------------------------------------------------
// built-in catalog
// ---------------------------------------------------------------------

pub const STAR_POINT: &str = "star_point";
pub const EDGE_LINE: &str = "edge_line";
pub const DISPERSION: &str = "dispersion";
pub const ATTACHMENT: &str = "attachment";

/// Names of the built-in heuristics, in catalog order.
pub const BUILTIN_NAMES: [&str; 4] = [STAR_POINT, EDGE_LINE, DISPERSION, ATTACHMENT];

/// Look up a built-in scorer by name.
pub fn builtin_scorer(name: &str) -> Option<Arc<dyn Scorer>> {
    match name {
        STAR_POINT => Some(Arc::new(StarPoint)),
        EDGE_LINE => Some(Arc::new(EdgeLine)),
        DISPERSION => Some(Arc::new(Dispersion)),
        ATTACHMENT => Some(Arc::new(Attachment)),
        _ => None,
    }
}

/// All four built-in heuristics at weight 1.
pub fn builtin_catalog() -> HeuristicSet {
    HeuristicSet::from_weights(&BUILTIN_NAMES.map(|n| (n, 1.0)))
        .expect("builtin catalog is well formed")
}

/// Score 1 at the nine star-point analogs (the classical 19x19 star
/// fractions 1/6, 1/2, 5/6 of each axis, rounded to the lattice), decaying
/// linearly to 0 over a sixth of the longer board span.
pub struct StarPoint;

fn star_indices(count: u32) -> Vec<u32> {
    let span = (count - 1) as f64;
    let mut idx: Vec<u32> = [1.0 / 6.0, 0.5, 5.0 / 6.0]
        .iter()
        .map(|f| (span * f).round() as u32)
        .collect();
    idx.dedup();
    idx
}

impl Scorer for StarPoint {
    fn score(&self, board: &GridBoard, _placed: &Deployment, candidate: &GridPoint) -> f64 {
        let rows = star_indices(board.rows());
        let cols = star_indices(board.cols());
        let mut best = f64::INFINITY;
        for &r in &rows {
            for &c in &cols {
                let dr = r as f64 - candidate.row as f64;
                let dc = c as f64 - candidate.col as f64;
                best = best.min(dr * dr + dc * dc);
            }
        }
        let reach = (board.rows().max(board.cols()) - 1) as f64 / 6.0;
        (1.0 - best.sqrt() / reach).max(0.0)
    }
}

/// Opening-doctrine line preference: nothing on the first line (the
/// border), peak on the third and fourth lines, tapering toward the
/// center.
pub struct EdgeLine;

impl Scorer for EdgeLine {
    fn score(&self, board: &GridBoard, _placed: &Deployment, candidate: &GridPoint) -> f64 {
        let r = candidate.row;
        let c = candidate.col;
        let from_border = r.min(board.rows() - 1 - r).min(c).min(board.cols() - 1 - c);
        match from_border + 1 {
            1 => 0.0,
            2 => 0.5,
            3 | 4 => 1.0,
            5 => 0.5,
            _ => 0.25,
        }
    }
}

/// Distance from the candidate to the nearest placed node, normalized by
/// the field diagonal. Neutral (0.5) while nothing is placed.
pub struct Dispersion;

impl Scorer for Dispersion {
    fn score(&self, board: &GridBoard, placed: &Deployment, candidate: &GridPoint) -> f64 {
        if placed.is_empty() {
            return 0.5;
        }
        let field = board.field();
        let metric = placed.metric();
        let pos = candidate.position();
        let min_sq = placed
            .nodes()
            .iter()
            .map(|&node| metric.distance_sq(field, pos, node))
            .fold(f64::INFINITY, f64::min);
        let diagonal = field.length_m().hypot(field.width_m());
        (min_sq.sqrt() / diagonal).clamp(0.0, 1.0)
    }
}

/// 1 when the candidate can hear an already-placed node (keeps the grown
/// network connected), else 0. Neutral (0.5) while nothing is placed.
pub struct Attachment;

impl Scorer for Attachment {
    fn score(&self, board: &GridBoard, placed: &Deployment, candidate: &GridPoint) -> f64 {
        if placed.is_empty() {
            return 0.5;
        }
        let field = board.field();
        let metric = placed.metric();
        let pos = candidate.position();
        let range_sq = field.range_m() * field.range_m();
        let attached = placed
            .nodes()
            .iter()
            .any(|&node| metric.distance_sq(field, pos, node) <= range_sq);
        if attached {
            1.0
        } else {
            0.0
        }
    }
}
