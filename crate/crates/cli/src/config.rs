//! Run configuration: a single JSON document whose fields individual CLI
//! flags override. Unknown keys are rejected so typos cannot silently
//! fall back to defaults.

use std::path::PathBuf;

use clap::ValueEnum;
use serde::{Deserialize, Serialize};

use gocover::analytics::StoppingRule;
use gocover::field::{FieldSpec, GridBoard, Metric};
use gocover::heuristics::{HeuristicSet, BUILTIN_NAMES};
use gocover::montecarlo::McConfig;
use gocover::placement::{PlacementConfig, DEFAULT_SMOOTHING};

use crate::CmdError;

/// Which reading of the stopping threshold applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum StoppingKind {
    /// Stop once the connectivity probability reaches the threshold.
    PaperLiteral,
    /// Treat the threshold as a tolerable error: stop once the
    /// connectivity probability reaches one minus the threshold.
    ErrorComplement,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HeuristicEntry {
    pub name: String,
    #[serde(default = "default_weight")]
    pub weight: f64,
}

fn default_weight() -> f64 {
    1.0
}

/// Validation envelopes for the `validate` subcommand.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Envelopes {
    /// Absolute tolerance on the no-isolated-node rate against the closed
    /// form (floored by three standard errors).
    pub eq2: f64,
    /// Total-variation tolerance for the coverage histogram against the
    /// binomial and Poisson models.
    pub tv: f64,
}

impl Default for Envelopes {
    fn default() -> Self {
        Self {
            eq2: 0.05,
            tv: 0.02,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RunConfig {
    pub field: FieldSpec,
    /// Lattice pitch in meters; defaults to half the node range.
    pub pitch_m: Option<f64>,
    /// Metric recorded on placement outputs and used by `compare` stats.
    pub metric: Metric,
    pub heuristics: Vec<HeuristicEntry>,
    pub smoothing: f64,
    pub fig2_literal: bool,
    pub no_seed_node: bool,
    pub stopping: StoppingKind,
    pub threshold: f64,
    pub seed: u64,
    pub max_iterations: Option<u64>,
    pub out: Option<PathBuf>,
    pub trace: Option<PathBuf>,
    pub mc: McConfig,
    pub envelopes: Envelopes,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            field: FieldSpec::new(100.0, 100.0, 7.0).expect("default field is valid"),
            pitch_m: None,
            metric: Metric::Planar,
            heuristics: BUILTIN_NAMES
                .iter()
                .map(|&name| HeuristicEntry {
                    name: name.to_string(),
                    weight: 1.0,
                })
                .collect(),
            smoothing: DEFAULT_SMOOTHING,
            fig2_literal: false,
            no_seed_node: false,
            stopping: StoppingKind::ErrorComplement,
            threshold: 0.1,
            seed: 0,
            max_iterations: None,
            out: None,
            trace: None,
            mc: McConfig::default(),
            envelopes: Envelopes::default(),
        }
    }
}

impl RunConfig {
    pub fn load(path: &std::path::Path) -> Result<Self, CmdError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CmdError::config(format!("cannot read {}: {e}", path.display())))?;
        serde_json::from_str(&text)
            .map_err(|e| CmdError::config(format!("invalid config {}: {e}", path.display())))
    }

    pub fn resolved_pitch(&self) -> f64 {
        self.pitch_m.unwrap_or(self.field.range_m() / 2.0)
    }

    pub fn stopping_rule(&self) -> StoppingRule {
        match self.stopping {
            StoppingKind::PaperLiteral => StoppingRule::paper_literal(self.threshold),
            StoppingKind::ErrorComplement => StoppingRule::error_complement(self.threshold),
        }
    }

    pub fn board(&self) -> Result<GridBoard, CmdError> {
        GridBoard::new(self.field, self.resolved_pitch()).map_err(CmdError::from)
    }

    pub fn heuristic_set(&self) -> Result<HeuristicSet, CmdError> {
        let entries: Vec<(&str, f64)> = self
            .heuristics
            .iter()
            .map(|h| (h.name.as_str(), h.weight))
            .collect();
        HeuristicSet::from_weights(&entries).map_err(CmdError::from)
    }

    pub fn placement_config(&self) -> PlacementConfig {
        PlacementConfig {
            stopping: self.stopping_rule(),
            seed: self.seed,
            max_iterations: self.max_iterations,
            fig2_literal: self.fig2_literal,
            no_seed_node: self.no_seed_node,
            smoothing: self.smoothing,
            metric: self.metric,
        }
    }
}
