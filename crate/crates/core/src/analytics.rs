//! Closed-form network quantities: node density, isolation/connectivity
//! probability, per-point coverage distributions with their Poisson limit,
//! the shaping (covered-fraction) curve, and the deterministic stopping-N
//! solver used by the placement loop.
//!
//! All distribution values are evaluated in log space. Binomial
//! coefficients use a compensated sum over the ratio form rather than a
//! log-gamma difference, which keeps the relative error near machine
//! precision even for thousands of trials.

use std::f64::consts::PI;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::FieldSpec;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AnalyticsError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("coverage model requires a square field, got {length_m} x {width_m}")]
    NonSquareField { length_m: f64, width_m: f64 },
    #[error("node disc (range {range_m}) does not fit in a {side_m} x {side_m} field")]
    DiscExceedsField { range_m: f64, side_m: f64 },
    #[error("coverage count {n} out of range, must be <= {max}")]
    NOutOfRange { n: u64, max: u64 },
    #[error("distribution entry {index} is negative or not finite")]
    NegativeMass { index: usize },
    #[error("no node count up to {cap} satisfies the stopping rule")]
    NoSolutionWithinBound { cap: u64 },
}

/// Inputs to the density formula `lambda = N pi R^2 / A`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DensityParams {
    pub n_nodes: u64,
    pub range_m: f64,
    pub area_m2: f64,
}

impl DensityParams {
    pub fn new(n_nodes: u64, range_m: f64, area_m2: f64) -> Result<Self, AnalyticsError> {
        if !range_m.is_finite() || range_m <= 0.0 {
            return Err(AnalyticsError::InvalidParams(format!(
                "range_m must be positive, got {range_m}"
            )));
        }
        if !area_m2.is_finite() || area_m2 <= 0.0 {
            return Err(AnalyticsError::InvalidParams(format!(
                "area_m2 must be positive, got {area_m2}"
            )));
        }
        Ok(Self {
            n_nodes,
            range_m,
            area_m2,
        })
    }

    pub fn for_field(field: &FieldSpec, n_nodes: u64) -> Self {
        Self {
            n_nodes,
            range_m: field.range_m(),
            area_m2: field.area_m2(),
        }
    }
}

/// Average number of neighbors per node, `N pi R^2 / A`.
pub fn density(params: DensityParams) -> f64 {
    params.n_nodes as f64 * PI * params.range_m * params.range_m / params.area_m2
}

/// Probability that no node is isolated, `(1 - e^{-lambda})^N`.
///
/// Evaluated as `exp(N ln(1 - e^{-lambda}))`; the inner logarithm is
/// computed with `ln_1p`/`exp_m1` on whichever side avoids cancellation,
/// so neither small nor large `lambda` loses precision and large `N`
/// cannot underflow prematurely.
pub fn connectivity_probability(lambda: f64, n_nodes: u64) -> Result<f64, AnalyticsError> {
    if !lambda.is_finite() || lambda < 0.0 {
        return Err(AnalyticsError::InvalidParams(format!(
            "lambda must be non-negative, got {lambda}"
        )));
    }
    if n_nodes < 1 {
        return Err(AnalyticsError::InvalidParams(
            "n_nodes must be at least 1".into(),
        ));
    }
    if lambda == 0.0 {
        return Ok(0.0);
    }
    let ln_term = if lambda > 0.5 {
        (-(-lambda).exp()).ln_1p()
    } else {
        (-(-lambda).exp_m1()).ln()
    };
    Ok((n_nodes as f64 * ln_term).exp().clamp(0.0, 1.0))
}

/// Probability that a uniform test point lies within one node's disc on a
/// square field: `pi R^2 / L^2`.
pub fn p_r(range_m: f64, side_m: f64) -> Result<f64, AnalyticsError> {
    if !range_m.is_finite() || !side_m.is_finite() || range_m <= 0.0 || side_m <= 0.0 {
        return Err(AnalyticsError::InvalidParams(format!(
            "range_m and side_m must be positive, got {range_m}, {side_m}"
        )));
    }
    let value = PI * range_m * range_m / (side_m * side_m);
    if value >= 1.0 {
        return Err(AnalyticsError::DiscExceedsField { range_m, side_m });
    }
    Ok(value)
}

/// Same as [`p_r`], taking the side from a field that must be square.
pub fn p_r_for_field(field: &FieldSpec) -> Result<f64, AnalyticsError> {
    if !field.is_square() {
        return Err(AnalyticsError::NonSquareField {
            length_m: field.length_m(),
            width_m: field.width_m(),
        });
    }
    p_r(field.range_m(), field.length_m())
}

/// Parameters of the per-point coverage distribution: with `N` deployed
/// nodes, the number covering a uniform test point is binomial with
/// `N - 1` trials and success probability `p_r`; `lambda_s` is its mean
/// and the rate of the limiting Poisson distribution.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CoverageModel {
    pub n_nodes: u64,
    pub range_m: f64,
    pub side_m: f64,
    pub p_r: f64,
    pub lambda_s: f64,
}

impl CoverageModel {
    pub fn new(n_nodes: u64, range_m: f64, side_m: f64) -> Result<Self, AnalyticsError> {
        if n_nodes < 1 {
            return Err(AnalyticsError::InvalidParams(
                "n_nodes must be at least 1".into(),
            ));
        }
        let p = p_r(range_m, side_m)?;
        Ok(Self {
            n_nodes,
            range_m,
            side_m,
            p_r: p,
            lambda_s: (n_nodes - 1) as f64 * p,
        })
    }

    pub fn for_field(field: &FieldSpec, n_nodes: u64) -> Result<Self, AnalyticsError> {
        if !field.is_square() {
            return Err(AnalyticsError::NonSquareField {
                length_m: field.length_m(),
                width_m: field.width_m(),
            });
        }
        Self::new(n_nodes, field.range_m(), field.length_m())
    }

    /// Model with the per-node success probability given directly, for
    /// studying the distribution family at a fixed mean. The synthesized
    /// geometry is a unit square with the matching disc radius.
    pub fn from_p_r(n_nodes: u64, p_r: f64) -> Result<Self, AnalyticsError> {
        if n_nodes < 1 {
            return Err(AnalyticsError::InvalidParams(
                "n_nodes must be at least 1".into(),
            ));
        }
        if !(p_r > 0.0 && p_r < 1.0) {
            return Err(AnalyticsError::InvalidParams(format!(
                "p_r must be in (0, 1), got {p_r}"
            )));
        }
        Ok(Self {
            n_nodes,
            range_m: (p_r / PI).sqrt(),
            side_m: 1.0,
            p_r,
            lambda_s: (n_nodes - 1) as f64 * p_r,
        })
    }

    /// Number of binomial trials, `N - 1`.
    pub fn trials(&self) -> u64 {
        self.n_nodes - 1
    }
}

/// Probability that a test point is covered by exactly `n` of the other
/// `N - 1` nodes: `C(N-1, n) p_r^n (1 - p_r)^{N-1-n}`.
pub fn coverage_binomial(n: u64, model: &CoverageModel) -> Result<f64, AnalyticsError> {
    let m = model.trials();
    if n > m {
        return Err(AnalyticsError::NOutOfRange { n, max: m });
    }
    let ln_pmf = ln_binomial_coefficient(m, n)
        + n as f64 * model.p_r.ln()
        + (m - n) as f64 * (-model.p_r).ln_1p();
    Ok(ln_pmf.exp().clamp(0.0, 1.0))
}

/// The full binomial coverage pmf over `n = 0..=N-1`.
///
/// Anchored at the mode and extended by the two-sided ratio recurrence,
/// so far tails underflow to zero instead of poisoning the whole vector.
pub fn binomial_distribution(model: &CoverageModel) -> Vec<f64> {
    let m = model.trials();
    let p = model.p_r;
    let q = 1.0 - p;
    let len = m as usize + 1;
    let mode = (((m + 1) as f64 * p).floor() as u64).min(m);
    let mut pmf = vec![0.0; len];
    pmf[mode as usize] = coverage_binomial(mode, model).expect("mode is in range");
    for n in mode..m {
        let (n, v) = (n as usize, pmf[n as usize]);
        pmf[n + 1] = v * ((m as usize - n) as f64 / (n + 1) as f64) * (p / q);
    }
    for n in (1..=mode).rev() {
        let (n, v) = (n as usize, pmf[n as usize]);
        pmf[n - 1] = v * (n as f64 / (m as usize - n + 1) as f64) * (q / p);
    }
    pmf
}

/// Poisson pmf `e^{-lambda_s} lambda_s^n / n!`, the large-N limit of
/// [`coverage_binomial`] at fixed mean.
pub fn coverage_poisson(n: u64, lambda_s: f64) -> Result<f64, AnalyticsError> {
    if !lambda_s.is_finite() || lambda_s < 0.0 {
        return Err(AnalyticsError::InvalidParams(format!(
            "lambda_s must be non-negative, got {lambda_s}"
        )));
    }
    if lambda_s == 0.0 {
        return Ok(if n == 0 { 1.0 } else { 0.0 });
    }
    let ln_pmf = -lambda_s + n as f64 * lambda_s.ln() - ln_factorial(n);
    Ok(ln_pmf.exp().clamp(0.0, 1.0))
}

/// Smallest count that carries all but well under 1e-9 of the Poisson
/// mass; summing the pmf to this bound is the normalization check.
pub fn poisson_truncation_bound(lambda_s: f64) -> u64 {
    (lambda_s + 12.0 * (lambda_s + 1.0).sqrt()).ceil() as u64
}

/// Poisson pmf over `n = 0..len`, mode-anchored like
/// [`binomial_distribution`].
pub fn poisson_distribution(lambda_s: f64, len: usize) -> Result<Vec<f64>, AnalyticsError> {
    if !lambda_s.is_finite() || lambda_s < 0.0 {
        return Err(AnalyticsError::InvalidParams(format!(
            "lambda_s must be non-negative, got {lambda_s}"
        )));
    }
    let mut pmf = vec![0.0; len];
    if len == 0 {
        return Ok(pmf);
    }
    if lambda_s == 0.0 {
        pmf[0] = 1.0;
        return Ok(pmf);
    }
    let mode = (lambda_s.floor() as usize).min(len - 1);
    pmf[mode] = coverage_poisson(mode as u64, lambda_s)?;
    for n in mode..len - 1 {
        pmf[n + 1] = pmf[n] * lambda_s / (n + 1) as f64;
    }
    for n in (1..=mode).rev() {
        pmf[n - 1] = pmf[n] * n as f64 / lambda_s;
    }
    Ok(pmf)
}

/// Total variation distance between two finite distributions, the shorter
/// one implicitly padded with zeros.
pub fn tv_distance(dist_a: &[f64], dist_b: &[f64]) -> Result<f64, AnalyticsError> {
    for (index, &v) in dist_a.iter().chain(dist_b.iter()).enumerate() {
        if !v.is_finite() || v < 0.0 {
            let index = if index < dist_a.len() {
                index
            } else {
                index - dist_a.len()
            };
            return Err(AnalyticsError::NegativeMass { index });
        }
    }
    let len = dist_a.len().max(dist_b.len());
    let mut acc = 0.0;
    for i in 0..len {
        let a = dist_a.get(i).copied().unwrap_or(0.0);
        let b = dist_b.get(i).copied().unwrap_or(0.0);
        acc += (a - b).abs();
    }
    Ok(acc / 2.0)
}

/// Probability that a unit area is covered by at least one node,
/// `1 - e^{-lambda_s}`. Strictly increasing in N with limit 1.
pub fn shaping(n_nodes: u64, range_m: f64, side_m: f64) -> Result<f64, AnalyticsError> {
    let model = CoverageModel::new(n_nodes, range_m, side_m)?;
    Ok(-(-model.lambda_s).exp_m1())
}

/// When the node-adding loop stops.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "rule", rename_all = "snake_case")]
pub enum StoppingRule {
    /// Stop at the smallest N with connectivity probability >= threshold
    /// (the loop guard `p < threshold` read literally).
    PaperLiteral { threshold: f64 },
    /// Stop at the smallest N with connectivity probability >= 1 - epsilon,
    /// reading the threshold as a tolerable failure probability.
    ErrorComplement { epsilon: f64 },
}

impl StoppingRule {
    pub fn paper_literal(threshold: f64) -> Self {
        Self::PaperLiteral { threshold }
    }

    pub fn error_complement(epsilon: f64) -> Self {
        Self::ErrorComplement { epsilon }
    }

    pub fn validate(&self) -> Result<(), AnalyticsError> {
        let v = match *self {
            Self::PaperLiteral { threshold } => threshold,
            Self::ErrorComplement { epsilon } => epsilon,
        };
        if !(v > 0.0 && v < 1.0) {
            return Err(AnalyticsError::InvalidParams(format!(
                "stopping parameter must be in (0, 1), got {v}"
            )));
        }
        Ok(())
    }

    /// The connectivity probability the rule requires.
    pub fn target(&self) -> f64 {
        match *self {
            Self::PaperLiteral { threshold } => threshold,
            Self::ErrorComplement { epsilon } => 1.0 - epsilon,
        }
    }

    pub fn is_satisfied(&self, p: f64) -> bool {
        p >= self.target()
    }
}

/// Default cap for the stopping scan: ten discs' worth of nodes per unit
/// of field area.
pub fn default_stopping_cap(field: &FieldSpec) -> u64 {
    let cap = 10.0 * field.area_m2() / (PI * field.range_m() * field.range_m());
    (cap.ceil() as u64).max(1)
}

/// Smallest N >= 1 whose connectivity probability satisfies the rule.
///
/// Deterministic: p depends only on (N, R, A), never on where nodes land.
/// The scan is linear because p is not monotone in N at small N.
pub fn stopping_n(
    field: &FieldSpec,
    rule: StoppingRule,
    cap: Option<u64>,
) -> Result<u64, AnalyticsError> {
    rule.validate()?;
    let cap = cap.unwrap_or_else(|| default_stopping_cap(field));
    for n in 1..=cap {
        let lambda = density(DensityParams::for_field(field, n));
        let p = connectivity_probability(lambda, n)?;
        if rule.is_satisfied(p) {
            return Ok(n);
        }
    }
    Err(AnalyticsError::NoSolutionWithinBound { cap })
}

// ---------------------------------------------------------------------
// log-space helpers
// ---------------------------------------------------------------------

#[derive(Debug, Clone, Copy, Default)]
struct KahanSum {
    sum: f64,
    c: f64,
}

impl KahanSum {
    fn add(&mut self, x: f64) {
        let y = x - self.c;
        let t = self.sum + y;
        self.c = (t - self.sum) - y;
        self.sum = t;
    }

    fn value(self) -> f64 {
        self.sum
    }
}

const LN_FACTORIAL_TABLE_LEN: usize = 1024;

fn ln_factorial_table() -> &'static [f64; LN_FACTORIAL_TABLE_LEN] {
    static TABLE: OnceLock<[f64; LN_FACTORIAL_TABLE_LEN]> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut table = [0.0; LN_FACTORIAL_TABLE_LEN];
        let mut acc = KahanSum::default();
        for (k, slot) in table.iter_mut().enumerate().skip(1) {
            acc.add((k as f64).ln());
            *slot = acc.value();
        }
        table
    })
}

/// `ln(n!)`: compensated cumulative table for small n, Stirling's series
/// beyond it (truncation error far below one ulp there).
fn ln_factorial(n: u64) -> f64 {
    if (n as usize) < LN_FACTORIAL_TABLE_LEN {
        return ln_factorial_table()[n as usize];
    }
    let x = n as f64;
    let x2 = x * x;
    (x + 0.5) * x.ln() - x + 0.5 * (2.0 * PI).ln() + 1.0 / (12.0 * x) - 1.0 / (360.0 * x * x2)
        + 1.0 / (1260.0 * x2 * x2 * x)
}

/// `ln C(m, k)` via a compensated sum of `ln((m - k' + i) / i)` over the
/// shorter side `k' = min(k, m - k)`. Unlike a log-gamma difference this
/// keeps the error proportional to `ln C` itself.
fn ln_binomial_coefficient(m: u64, k: u64) -> f64 {
    debug_assert!(k <= m);
    let k = k.min(m - k);
    let mut acc = KahanSum::default();
    for i in 1..=k {
        acc.add((((m - k + i) as f64) / (i as f64)).ln());
    }
    acc.value()
}
