use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::baselines::{run_baseline, BaselineKind};
use super::source::{BuiltInstance, InstanceSpec};
use super::parse_toml;
use crate::error::{Error, Result};
use crate::learner::{run, AlgorithmParams};
use crate::oracle::{true_error, OracleSpec};

/// Cap on elimination baselines when no budget is given.
pub const DEFAULT_ELIMINATION_CAP: usize = 100_000;

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Grid {
    #[serde(default)]
    pub epsilon: Vec<f64>,
    #[serde(default)]
    pub eta: Vec<f64>,
    /// `eta = ratio * epsilon`; exclusive with `eta`.
    #[serde(default)]
    pub eta_ratio: Vec<f64>,
    /// Generator sizes.
    #[serde(default)]
    pub n: Vec<usize>,
    /// Size threshold domains as `round(1 / epsilon)` points.
    #[serde(default)]
    pub n_from_epsilon: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeedRange {
    pub start: u64,
    pub count: u64,
}

impl Default for SeedRange {
    fn default() -> Self {
        SeedRange { start: 0, count: 10 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub instance: InstanceSpec,
    pub oracle: OracleSpec,
    pub params: AlgorithmParams,
    #[serde(default)]
    pub grid: Grid,
    #[serde(default)]
    pub seeds: SeedRange,
    #[serde(default)]
    pub baselines: Vec<BaselineKind>,
    /// Label budget of every baseline. When absent, passive ERM gets the
    /// main learner's query count on the same seed and the elimination
    /// baselines run until done.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub baseline_budget: Option<usize>,
    /// Draw the target uniformly per seed instead of using the oracle's.
    #[serde(default)]
    pub random_target: bool,
    /// Set the flip rate of noisy oracles to each variant's `eta`.
    #[serde(default = "yes")]
    pub noise_follows_eta: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub workers: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub out: Option<PathBuf>,
}

fn yes() -> bool {
    true
}

impl SweepConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        parse_toml(text)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        SweepConfig::from_toml(&std::fs::read_to_string(path)?)
    }
}

/// One point of the grid.
#[derive(Debug, Clone)]
pub struct Variant {
    pub index: usize,
    pub label: String,
    pub epsilon: f64,
    pub eta: f64,
    pub built: Arc<BuiltInstance>,
    pub params: AlgorithmParams,
    pub oracle: OracleSpec,
}

pub fn expand_variants(config: &SweepConfig, base: &Path) -> Result<Vec<Variant>> {
    let grid = &config.grid;
    if !grid.eta.is_empty() && !grid.eta_ratio.is_empty() {
        return Err(Error::invalid("grid.eta and grid.eta_ratio are exclusive"));
    }
    let epsilons = if grid.epsilon.is_empty() {
        vec![config.params.epsilon]
    } else {
        grid.epsilon.clone()
    };
    let sizes: Vec<Option<usize>> = if grid.n.is_empty() {
        vec![None]
    } else {
        grid.n.iter().map(|&n| Some(n)).collect()
    };
    let mut variants = Vec::new();
    for &epsilon in &epsilons {
        let etas: Vec<f64> = if !grid.eta_ratio.is_empty() {
            grid.eta_ratio.iter().map(|r| r * epsilon).collect()
        } else if !grid.eta.is_empty() {
            grid.eta.clone()
        } else {
            vec![config.params.eta]
        };
        for &eta in &etas {
            for &size in &sizes {
                let size = if grid.n_from_epsilon {
                    Some((1.0 / epsilon).round() as usize)
                } else {
                    size
                };
                let spec = match size {
                    Some(n) => config.instance.with_size(n)?,
                    None => config.instance.clone(),
                };
                let built = spec.build(base)?;
                let mut params = config.params.clone();
                params.epsilon = epsilon;
                params.eta = eta;
                if params.initial_weights.is_none() {
                    params.initial_weights = built.initial_weights.clone();
                }
                params.validate()?;
                let oracle = if config.noise_follows_eta {
                    config.oracle.with_noise(eta)
                } else {
                    config.oracle.clone()
                };
                let n_points = built.instance.n_points();
                variants.push(Variant {
                    index: variants.len(),
                    label: format!("eps={epsilon} eta={eta} points={n_points}"),
                    epsilon,
                    eta,
                    built: Arc::new(built),
                    params,
                    oracle,
                });
            }
        }
    }
    Ok(variants)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRow {
    pub variant: usize,
    pub label: String,
    pub learner: String,
    pub seed: u64,
    pub n_hypotheses: usize,
    pub n_points: usize,
    pub epsilon: f64,
    pub eta: f64,
    pub target: Option<usize>,
    pub hypothesis: usize,
    pub stage1_queries: usize,
    pub stage2_queries: usize,
    pub total_queries: usize,
    pub true_error: f64,
    pub success: bool,
    pub stop_reason: String,
    pub wall_ms: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SummaryRow {
    pub variant: usize,
    pub label: String,
    pub learner: String,
    pub runs: usize,
    pub success_rate: f64,
    pub mean_queries: f64,
    pub median_queries: f64,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct SweepTable {
    pub runs: Vec<RunRow>,
    pub summary: Vec<SummaryRow>,
}

/// Random stream of one learner inside one variant; stream 0 picks the
/// target.
fn stream_rng(seed: u64, variant: usize, slot: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((variant as u64) << 16) | slot);
    rng
}

/// Runs every (variant, seed) pair, the main learner first and then each
/// baseline on its own substream. `base` resolves relative paths.
pub fn run_sweep(config: &SweepConfig, base: &Path) -> Result<SweepTable> {
    let variants = expand_variants(config, base)?;
    let seeds: Vec<u64> = (config.seeds.start..config.seeds.start + config.seeds.count).collect();
    let tasks: Vec<(&Variant, u64)> = variants.iter().flat_map(|v| seeds.iter().map(move |&s| (v, s))).collect();
    let work = || -> Result<Vec<Vec<RunRow>>> {
        tasks.par_iter().map(|&(v, seed)| run_one(config, v, seed)).collect()
    };
    let nested = match config.workers {
        Some(w) => rayon::ThreadPoolBuilder::new()
            .num_threads(w.max(1))
            .build()
            .map_err(|e| Error::invalid(e.to_string()))?
            .install(work)?,
        None => work()?,
    };
    let runs: Vec<RunRow> = nested.into_iter().flatten().collect();
    let summary = summarize(&runs);
    Ok(SweepTable { runs, summary })
}

fn run_one(config: &SweepConfig, variant: &Variant, seed: u64) -> Result<Vec<RunRow>> {
    let instance = &variant.built.instance;
    let spec = if config.random_target {
        let mut pick = stream_rng(seed, variant.index, 0);
        variant.oracle.with_target(pick.random_range(0..instance.n_hypotheses()))
    } else {
        variant.oracle.clone()
    };
    let oracle = spec.build(&instance.class, &instance.marginal)?;
    let judge = |h: usize| -> Result<(f64, bool)> {
        let e = true_error(&oracle, &instance.class, &instance.marginal, h)?;
        Ok((e, e <= variant.eta + variant.epsilon + 1e-12))
    };
    let row = |learner: &str, hypothesis: usize, q: (usize, usize), stop: String, wall: f64| -> Result<RunRow> {
        let (true_error, success) = judge(hypothesis)?;
        Ok(RunRow {
            variant: variant.index,
            label: variant.label.clone(),
            learner: learner.to_string(),
            seed,
            n_hypotheses: instance.n_hypotheses(),
            n_points: instance.n_points(),
            epsilon: variant.epsilon,
            eta: variant.eta,
            target: spec.target(),
            hypothesis,
            stage1_queries: q.0,
            stage2_queries: q.1,
            total_queries: q.0 + q.1,
            true_error,
            success,
            stop_reason: stop,
            wall_ms: wall,
        })
    };

    let mut rows = Vec::with_capacity(1 + config.baselines.len());
    let start = Instant::now();
    let mut rng = stream_rng(seed, variant.index, 1);
    let record = run(instance, &variant.params, &oracle, &mut rng)?;
    let stop = record.stop_reason.name().to_string();
    rows.push(row(
        "main",
        record.final_hypothesis,
        (record.stage1_queries, record.stage2_queries),
        stop,
        start.elapsed().as_secs_f64() * 1e3,
    )?);
    for (k, &kind) in config.baselines.iter().enumerate() {
        let budget = match (config.baseline_budget, kind) {
            (Some(b), _) => b,
            (None, BaselineKind::PassiveErm) => record.total_queries.max(1),
            (None, _) => DEFAULT_ELIMINATION_CAP,
        };
        let start = Instant::now();
        let mut rng = stream_rng(seed, variant.index, 2 + k as u64);
        let res = run_baseline(kind, instance, &oracle, budget, &mut rng)?;
        rows.push(row(
            kind.name(),
            res.hypothesis,
            (res.queries, 0),
            String::new(),
            start.elapsed().as_secs_f64() * 1e3,
        )?);
    }
    Ok(rows)
}

pub fn median(values: &mut [f64]) -> f64 {
    if values.is_empty() {
        return f64::NAN;
    }
    values.sort_by(f64::total_cmp);
    let n = values.len();
    if n % 2 == 1 {
        values[n / 2]
    } else {
        0.5 * (values[n / 2 - 1] + values[n / 2])
    }
}

/// Aggregates by (variant, learner), in order of first appearance.
pub fn summarize(runs: &[RunRow]) -> Vec<SummaryRow> {
    let mut keys: Vec<(usize, String, String)> = Vec::new();
    for r in runs {
        let key = (r.variant, r.label.clone(), r.learner.clone());
        if !keys.contains(&key) {
            keys.push(key);
        }
    }
    keys.into_iter()
        .map(|(variant, label, learner)| {
            let group: Vec<&RunRow> = runs
                .iter()
                .filter(|r| r.variant == variant && r.learner == learner)
                .collect();
            let n = group.len();
            let mut queries: Vec<f64> = group.iter().map(|r| r.total_queries as f64).collect();
            SummaryRow {
                variant,
                label,
                learner,
                runs: n,
                success_rate: group.iter().filter(|r| r.success).count() as f64 / n as f64,
                mean_queries: queries.iter().sum::<f64>() / n as f64,
                median_queries: median(&mut queries),
            }
        })
        .collect()
}

fn write_csv<T: Serialize>(path: &Path, rows: &[T], header: &[&str]) -> Result<()> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_path(path)?;
    w.write_record(header)?;
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

pub const RUN_COLUMNS: [&str; 17] = [
    "variant",
    "label",
    "learner",
    "seed",
    "n_hypotheses",
    "n_points",
    "epsilon",
    "eta",
    "target",
    "hypothesis",
    "stage1_queries",
    "stage2_queries",
    "total_queries",
    "true_error",
    "success",
    "stop_reason",
    "wall_ms",
];

pub const SUMMARY_COLUMNS: [&str; 7] = [
    "variant",
    "label",
    "learner",
    "runs",
    "success_rate",
    "mean_queries",
    "median_queries",
];

impl SweepTable {
    /// Writes `runs.csv` and `summary.csv` into `dir`.
    pub fn write(&self, dir: &Path) -> Result<()> {
        std::fs::create_dir_all(dir)?;
        write_csv(&dir.join("runs.csv"), &self.runs, &RUN_COLUMNS)?;
        write_csv(&dir.join("summary.csv"), &self.summary, &SUMMARY_COLUMNS)?;
        Ok(())
    }
}

pub fn read_runs(path: &Path) -> Result<Vec<RunRow>> {
    let mut r = csv::Reader::from_path(path)?;
    let mut rows = Vec::new();
    for row in r.deserialize() {
        rows.push(row?);
    }
    Ok(rows)
}
