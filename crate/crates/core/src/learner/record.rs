use std::path::Path;

use serde::{Deserialize, Serialize};

use super::params::AlgorithmParams;
use super::state::HeavyBallRecord;
use crate::error::{Error, Result};
use crate::stage_two::TournamentResult;

/// One stage-one round.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IterationRow {
    pub iteration: usize,
    pub x: usize,
    pub y: bool,
    pub tau: f64,
    pub support_size: usize,
    pub s_size: usize,
    pub c_size: usize,
    /// Center added this round, if any.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub heavy_ball: Option<usize>,
    /// Heaviest detection-ball mass under the capped posterior used for
    /// the query.
    pub max_capped_ball: f64,
    /// Potential of the tracked hypothesis, when one was given.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phi: Option<f64>,
}

/// Why stage one ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StopReason {
    RoundBudget,
    Threshold,
    MaxRounds,
    /// Every packed hypothesis entered the capped set.
    Saturated,
    /// The posterior outside the capped set vanished, or no point had any
    /// uncertainty left.
    Degenerate,
}

impl StopReason {
    pub fn name(self) -> &'static str {
        match self {
            StopReason::RoundBudget => "round_budget",
            StopReason::Threshold => "threshold",
            StopReason::MaxRounds => "max_rounds",
            StopReason::Saturated => "saturated",
            StopReason::Degenerate => "degenerate",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub params: AlgorithmParams,
    pub packing: Vec<usize>,
    /// Initial weight of each packing member.
    pub initial_weights: Vec<f64>,
    pub stop_reason: StopReason,
    pub final_hypothesis: usize,
    pub stage1_queries: usize,
    pub stage2_queries: usize,
    pub total_queries: usize,
    pub tau_sum: f64,
    /// No center was found; the answer is the posterior mode.
    pub empty_centers: bool,
    pub centers: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tracked: Option<usize>,
    #[serde(default)]
    pub events: Vec<HeavyBallRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stage_two: Option<TournamentResult>,
    #[serde(default)]
    pub iterations: Vec<IterationRow>,
}

impl RunRecord {
    pub fn to_toml(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| Error::Format(e.to_string()))
    }

    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Format(e.to_string()))
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_toml()?)?;
        Ok(())
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        RunRecord::from_toml(&std::fs::read_to_string(path)?)
    }

    /// Queried points and labels of stage one, in order.
    pub fn transcript(&self) -> impl Iterator<Item = (usize, bool)> + '_ {
        self.iterations.iter().map(|row| (row.x, row.y))
    }
}
