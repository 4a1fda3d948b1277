use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::generators::{
    gen_figure1, gen_random, gen_setcover_reduction, gen_thresholds, gen_unary_binary_with, SetCoverInstance,
    UnaryCode,
};
use crate::instance::Instance;
use crate::space::Marginal;

/// Where a config's instance comes from. Relative paths resolve against
/// the config file's directory.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "source", rename_all = "snake_case")]
pub enum InstanceSpec {
    File {
        path: PathBuf,
    },
    Thresholds {
        n: usize,
        /// Point masses; uniform when absent.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        masses: Option<Vec<f64>>,
    },
    UnaryBinary {
        n: usize,
        #[serde(default)]
        code: UnaryCode,
    },
    Figure1,
    Random {
        n_hypotheses: usize,
        n_points: usize,
        density: f64,
        seed: u64,
    },
    /// Set-cover text file turned into the reduction's class.
    SetCover {
        path: PathBuf,
    },
}

/// A built instance and any starting weights its family suggests.
#[derive(Debug, Clone)]
pub struct BuiltInstance {
    pub instance: Instance,
    pub initial_weights: Option<Vec<f64>>,
}

impl InstanceSpec {
    pub fn build(&self, base: &Path) -> Result<BuiltInstance> {
        let plain = |instance| BuiltInstance {
            instance,
            initial_weights: None,
        };
        Ok(match self {
            InstanceSpec::File { path } => plain(Instance::load(base.join(path))?),
            InstanceSpec::Thresholds { n, masses } => {
                let marginal = match masses {
                    Some(m) => Marginal::new(m.clone())?,
                    None => Marginal::uniform((*n).max(1))?,
                };
                plain(gen_thresholds(*n, marginal)?)
            }
            InstanceSpec::UnaryBinary { n, code } => plain(gen_unary_binary_with(*n, *code)?),
            InstanceSpec::Figure1 => {
                let fig = gen_figure1()?;
                BuiltInstance {
                    instance: fig.instance,
                    initial_weights: Some(fig.initial_weights),
                }
            }
            InstanceSpec::Random {
                n_hypotheses,
                n_points,
                density,
                seed,
            } => plain(gen_random(*n_hypotheses, *n_points, *density, *seed)?),
            InstanceSpec::SetCover { path } => {
                let text = std::fs::read_to_string(base.join(path))?;
                let sc = SetCoverInstance::parse(&text)?;
                plain(gen_setcover_reduction(&sc)?.instance)
            }
        })
    }

    /// The same family at size `n`, for generators that have one.
    pub fn with_size(&self, n: usize) -> Result<InstanceSpec> {
        match self {
            InstanceSpec::Thresholds { masses: None, .. } => Ok(InstanceSpec::Thresholds { n, masses: None }),
            InstanceSpec::UnaryBinary { code, .. } => Ok(InstanceSpec::UnaryBinary { n, code: *code }),
            InstanceSpec::Random {
                n_points, density, seed, ..
            } => Ok(InstanceSpec::Random {
                n_hypotheses: n,
                n_points: *n_points,
                density: *density,
                seed: *seed,
            }),
            _ => Err(Error::invalid("this instance source has no size to vary")),
        }
    }
}
