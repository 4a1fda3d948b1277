//! Reference learners: passive ERM, greedy splitting with hard
//! elimination, and uniform sampling over the disagreement region.

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::oracle::{draw, raw_error, LabelModel};
use crate::space::argmax_first;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BaselineKind {
    PassiveErm,
    GreedySplit,
    UniformDisagreement,
}

impl BaselineKind {
    pub fn name(self) -> &'static str {
        match self {
            BaselineKind::PassiveErm => "passive_erm",
            BaselineKind::GreedySplit => "greedy_split",
            BaselineKind::UniformDisagreement => "uniform_disagreement",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BaselineResult {
    pub kind: BaselineKind,
    pub hypothesis: usize,
    pub queries: usize,
    /// The answer is a fixed fallback because there were no samples.
    pub flagged: bool,
}

pub fn run_baseline<R: Rng + ?Sized>(
    kind: BaselineKind,
    instance: &Instance,
    oracle: &LabelModel,
    budget: usize,
    rng: &mut R,
) -> Result<BaselineResult> {
    check_oracle(instance, oracle)?;
    match kind {
        BaselineKind::PassiveErm => passive_erm(instance, oracle, budget, rng),
        BaselineKind::GreedySplit => eliminate(kind, instance, oracle, budget, rng),
        BaselineKind::UniformDisagreement => eliminate(kind, instance, oracle, budget, rng),
    }
}

fn check_oracle(instance: &Instance, oracle: &LabelModel) -> Result<()> {
    if oracle.len() != instance.n_points() {
        return Err(Error::SizeMismatch {
            what: "label table vs domain size",
            expected: instance.n_points(),
            got: oracle.len(),
        });
    }
    Ok(())
}

fn marginal_sampler(instance: &Instance) -> Result<WeightedIndex<f64>> {
    WeightedIndex::new(instance.marginal.masses()).map_err(|e| Error::invalid(e.to_string()))
}

fn charge(instance: &Instance, mistakes: &mut [usize], x: usize, y: bool) {
    for (h, m) in mistakes.iter_mut().enumerate() {
        if instance.class.label(h, x) != y {
            *m += 1;
        }
    }
}

fn fewest_mistakes(mistakes: &[usize]) -> usize {
    let negated: Vec<f64> = mistakes.iter().map(|&m| -(m as f64)).collect();
    argmax_first(&negated).0
}

/// Empirical risk minimiser (lowest index on ties) on `budget` i.i.d.
/// samples from the marginal.
pub fn passive_erm<R: Rng + ?Sized>(
    instance: &Instance,
    oracle: &LabelModel,
    budget: usize,
    rng: &mut R,
) -> Result<BaselineResult> {
    check_oracle(instance, oracle)?;
    if budget == 0 {
        return Ok(BaselineResult {
            kind: BaselineKind::PassiveErm,
            hypothesis: 0,
            queries: 0,
            flagged: true,
        });
    }
    let sampler = marginal_sampler(instance)?;
    let mut mistakes = vec![0usize; instance.n_hypotheses()];
    for _ in 0..budget {
        let x = sampler.sample(rng);
        let y = draw(oracle, x, rng);
        charge(instance, &mut mistakes, x, y);
    }
    Ok(BaselineResult {
        kind: BaselineKind::PassiveErm,
        hypothesis: fewest_mistakes(&mistakes),
        queries: budget,
        flagged: false,
    })
}

/// Smallest sample count at which passive ERM on a growing i.i.d. sample
/// first has true error at most `target`; `None` if `max_samples` is not
/// enough.
pub fn passive_samples_to_reach<R: Rng + ?Sized>(
    instance: &Instance,
    oracle: &LabelModel,
    target: f64,
    max_samples: usize,
    rng: &mut R,
) -> Result<Option<usize>> {
    check_oracle(instance, oracle)?;
    let sampler = marginal_sampler(instance)?;
    let errors: Vec<f64> = (0..instance.n_hypotheses())
        .map(|h| raw_error(oracle, &instance.class, &instance.marginal, h))
        .collect();
    let mut mistakes = vec![0usize; instance.n_hypotheses()];
    for n in 1..=max_samples {
        let x = sampler.sample(rng);
        let y = draw(oracle, x, rng);
        charge(instance, &mut mistakes, x, y);
        if errors[fewest_mistakes(&mistakes)] <= target {
            return Ok(Some(n));
        }
    }
    Ok(None)
}

/// Hard-elimination learners. Greedy split queries the point whose label
/// splits the surviving hypotheses most evenly; uniform disagreement draws
/// from the marginal restricted to where survivors disagree. Both stop
/// when survivors agree everywhere or the budget runs out.
fn eliminate<R: Rng + ?Sized>(
    kind: BaselineKind,
    instance: &Instance,
    oracle: &LabelModel,
    budget: usize,
    rng: &mut R,
) -> Result<BaselineResult> {
    let class = &instance.class;
    let marginal = &instance.marginal;
    let n_points = class.n_points();
    let mut alive: Vec<usize> = (0..class.n_hypotheses()).collect();
    let mut queries = 0;
    while queries < budget {
        let ones: Vec<usize> = (0..n_points)
            .map(|x| alive.iter().filter(|&&h| class.label(h, x)).count())
            .collect();
        let region: Vec<usize> = (0..n_points)
            .filter(|&x| marginal.mass(x) > 0.0 && ones[x] > 0 && ones[x] < alive.len())
            .collect();
        if region.is_empty() {
            break;
        }
        let x = match kind {
            BaselineKind::GreedySplit => {
                let split: Vec<f64> = region
                    .iter()
                    .map(|&x| ones[x].min(alive.len() - ones[x]) as f64)
                    .collect();
                region[argmax_first(&split).0]
            }
            _ => {
                let sampler = WeightedIndex::new(region.iter().map(|&x| marginal.mass(x)))
                    .map_err(|e| Error::invalid(e.to_string()))?;
                region[sampler.sample(rng)]
            }
        };
        let y = draw(oracle, x, rng);
        queries += 1;
        // `x` splits the survivors, so someone always agrees with `y`.
        alive.retain(|&h| class.label(h, x) == y);
    }
    Ok(BaselineResult {
        kind,
        hypothesis: alive[0],
        queries,
        flagged: false,
    })
}
