use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use agnostic_al::analysis::{mstar_realizable_exact, potential_trace, solver_crosscheck};
use agnostic_al::harness::report::report_from_runs;
use agnostic_al::harness::{parse_toml, run_sweep, InstanceSpec, SweepConfig};
use agnostic_al::learner::params::{PRACTICAL_C4, PRACTICAL_C5};
use agnostic_al::learner::{run_observed, AlgorithmParams, RunOptions, RunRecord};
use agnostic_al::oracle::{true_error, OracleSpec};
use agnostic_al::stage_two::tournament;
use agnostic_al::{Error, Instance, Marginal};

#[derive(Parser)]
#[command(name = "agal", version, about = "Competitive agnostic active learning simulator")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Config file (TOML).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Output file or directory.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Use c4 = 3, c5 = 0.25 instead of the theory constants.
    #[arg(long, global = true)]
    practical_constants: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Build an instance from a generator spec and write it.
    Generate,
    /// One learner run; writes the run record.
    Run,
    /// Grid sweep with baselines; writes runs.csv and summary.csv.
    Sweep,
    /// Stage-two tournament over an explicit candidate list.
    Duel,
    /// Reference computations.
    Oracle {
        #[command(subcommand)]
        which: OracleCommand,
    },
    /// Summarise a sweep's runs.csv.
    Report {
        /// runs.csv, or a directory holding one.
        path: PathBuf,
    },
}

#[derive(Subcommand)]
enum OracleCommand {
    /// Exact noiseless identification cost of an instance file.
    Mstar { instance: PathBuf },
    /// Compare the query solver with random distributions on random inputs.
    Crosscheck {
        #[arg(long, default_value_t = 100)]
        cases: usize,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
    },
    /// Potential trace of a run record against a hypothesis.
    Trace {
        instance: PathBuf,
        record: PathBuf,
        #[arg(long)]
        target: usize,
    },
}

#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct RunConfig {
    instance: InstanceSpec,
    oracle: OracleSpec,
    params: AlgorithmParams,
    /// Hypothesis whose potential goes into the record.
    #[serde(default)]
    tracked: Option<usize>,
}

#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct DuelConfig {
    instance: InstanceSpec,
    oracle: OracleSpec,
    candidates: Vec<usize>,
    eta_tilde: f64,
    delta: f64,
    #[serde(default = "duel_constant")]
    duel_constant: f64,
}

fn duel_constant() -> f64 {
    agnostic_al::learner::params::DEFAULT_DUEL_CONSTANT
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match execute(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            let invariant = e
                .chain()
                .any(|c| matches!(c.downcast_ref::<Error>(), Some(Error::InvariantViolation { .. })));
            ExitCode::from(if invariant { 2 } else { 1 })
        }
    }
}

fn read_config<T: serde::de::DeserializeOwned>(g: &Global) -> anyhow::Result<(T, PathBuf)> {
    let Some(path) = &g.config else { bail!("--config is required") };
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let value = parse_toml(&text).with_context(|| format!("in {}", path.display()))?;
    let base = path.parent().map(Path::to_path_buf).unwrap_or_default();
    Ok((value, base))
}

fn apply_practical(params: &mut AlgorithmParams, g: &Global) {
    if g.practical_constants {
        params.c4 = PRACTICAL_C4;
        params.c5 = PRACTICAL_C5;
        params.practical = true;
    }
}

fn write_or_print(out: Option<&Path>, text: &str) -> anyhow::Result<()> {
    match out {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn execute(cli: Cli) -> anyhow::Result<()> {
    let g = &cli.global;
    let seed = g.seed.unwrap_or(0);
    match cli.command {
        Command::Generate => {
            let (spec, base): (InstanceSpec, _) = read_config(g)?;
            let built = spec.build(&base)?;
            write_or_print(g.out.as_deref(), &built.instance.to_toml()?)?;
        }
        Command::Run => {
            let (mut cfg, base): (RunConfig, _) = read_config(g)?;
            apply_practical(&mut cfg.params, g);
            let built = cfg.instance.build(&base)?;
            if cfg.params.initial_weights.is_none() {
                cfg.params.initial_weights = built.initial_weights.clone();
            }
            let instance = &built.instance;
            let oracle = cfg.oracle.build(&instance.class, &instance.marginal)?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let options = RunOptions {
                tracked: cfg.tracked.or(cfg.oracle.target()),
                skip_stage_two: false,
            };
            let record = run_observed(instance, &cfg.params, &oracle, &mut rng, &options, |_| {})?;
            let err = true_error(&oracle, &instance.class, &instance.marginal, record.final_hypothesis)?;
            println!(
                "hypothesis {} ({}), true error {err:.6}, queries {} + {} = {}, stop {}",
                record.final_hypothesis,
                instance.hypothesis_name(record.final_hypothesis),
                record.stage1_queries,
                record.stage2_queries,
                record.total_queries,
                record.stop_reason.name()
            );
            if let Some(dir) = &g.out {
                std::fs::create_dir_all(dir)?;
                record.save(dir.join("record.toml"))?;
                instance.save(dir.join("instance.toml"))?;
            }
        }
        Command::Sweep => {
            let (mut cfg, base): (SweepConfig, _) = read_config(g)?;
            apply_practical(&mut cfg.params, g);
            if g.workers.is_some() {
                cfg.workers = g.workers;
            }
            if let Some(s) = g.seed {
                cfg.seeds.start = s;
            }
            let out = g.out.clone().or(cfg.out.clone()).unwrap_or_else(|| PathBuf::from("sweep-out"));
            let table = run_sweep(&cfg, &base)?;
            table.write(&out)?;
            print!("{}", agnostic_al::harness::report::format_summary(&table.summary));
        }
        Command::Duel => {
            let (cfg, base): (DuelConfig, _) = read_config(g)?;
            let instance = cfg.instance.build(&base)?.instance;
            let oracle = cfg.oracle.build(&instance.class, &instance.marginal)?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let result = tournament(
                &instance.class,
                &instance.marginal,
                &oracle,
                &cfg.candidates,
                cfg.eta_tilde,
                cfg.delta,
                cfg.duel_constant,
                &mut rng,
            )?;
            let text = toml::to_string(&result)?;
            write_or_print(g.out.as_deref(), &text)?;
        }
        Command::Oracle { which } => oracle(which, g, seed)?,
        Command::Report { path } => {
            let path = if path.is_dir() { path.join("runs.csv") } else { path };
            let (_, text) = report_from_runs(&path)?;
            write_or_print(g.out.as_deref(), &text)?;
        }
    }
    Ok(())
}

fn oracle(which: OracleCommand, g: &Global, seed: u64) -> anyhow::Result<()> {
    match which {
        OracleCommand::Mstar { instance } => {
            let inst = Instance::load(&instance)?;
            let m = mstar_realizable_exact(&inst.class, &inst.marginal)?;
            write_or_print(g.out.as_deref(), &format!("mstar = {m}\n"))?;
        }
        OracleCommand::Crosscheck { cases, trials } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut worst = f64::INFINITY;
            for _ in 0..cases {
                let n = rng.random_range(1..=8);
                let raw: Vec<f64> = (0..n).map(|_| rng.random::<f64>()).collect();
                let total: f64 = raw.iter().sum();
                let marginal = Marginal::new(raw.iter().map(|v| v / total).collect())?;
                let r: Vec<f64> = (0..n).map(|_| rng.random::<f64>()).collect();
                let kappa = rng.random::<f64>() * 0.5;
                worst = worst.min(solver_crosscheck(&r, &marginal, kappa, trials, &mut rng)?);
            }
            let verdict = if worst >= -1e-9 { "ok" } else { "VIOLATION" };
            write_or_print(
                g.out.as_deref(),
                &format!("cases = {cases}\ntrials = {trials}\nworst_margin = {worst:e}\nverdict = \"{verdict}\"\n"),
            )?;
            if worst < -1e-9 {
                return Err(Error::InvariantViolation {
                    iteration: 0,
                    detail: format!("solver beaten by {}", -worst),
                }
                .into());
            }
        }
        OracleCommand::Trace {
            instance,
            record,
            target,
        } => {
            let inst = Instance::load(&instance)?;
            let rec = RunRecord::load(&record)?;
            let trace = potential_trace(&inst, &rec, target)?;
            let mut w = csv::Writer::from_writer(Vec::new());
            for row in &trace.rows {
                w.serialize(row)?;
            }
            let mut text = String::from_utf8(w.into_inner()?)?;
            if trace.flagged {
                eprintln!(
                    "note: hypothesis {target} is not in the packing; traced member {}",
                    trace.tracked
                );
            }
            if text.is_empty() {
                text = "iteration,in_s,lambda,lambda_after,phi,delta,psi\n".into();
            }
            write_or_print(g.out.as_deref(), &text)?;
        }
    }
    Ok(())
}
