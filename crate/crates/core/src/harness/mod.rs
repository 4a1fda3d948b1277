//! Experiment plumbing: config files, sweeps, baselines and reports.

pub mod baselines;
pub mod report;
pub mod source;
pub mod sweep;

use serde::de::DeserializeOwned;

use crate::error::{Error, Result};

pub use baselines::{run_baseline, BaselineKind, BaselineResult};
pub use source::{BuiltInstance, InstanceSpec};
pub use sweep::{run_sweep, RunRow, SummaryRow, SweepConfig, SweepTable};

/// Parses a TOML config, reporting the line of the first error.
pub fn parse_toml<T: DeserializeOwned>(text: &str) -> Result<T> {
    toml::from_str(text).map_err(|e| {
        let line = e.span().map_or(0, |s| text[..s.start].matches('\n').count() + 1);
        Error::Parse {
            line,
            message: e.message().to_string(),
        }
    })
}
