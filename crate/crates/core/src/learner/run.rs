use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::Rng;

use super::params::AlgorithmParams;
use super::record::{IterationRow, RunRecord, StopReason};
use super::solver::{solve_query_distribution, QueryPlan};
use super::state::{
    capped, heavy_ball_step, uncertainty, update_weights, HeavyBallRecord, LearnerState, ADDED_BALL_MASS,
    HEAVY_BALL_MASS,
};
use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::oracle::{draw, LabelModel};
use crate::space::{argmax_first, greedy_maximal_packing, DistanceTable};
use crate::stage_two::tournament;

/// Slack allowed on the capping and added-mass checks.
pub const INVARIANT_TOLERANCE: f64 = 1e-9;

/// What an observer sees of one round, after the label arrives and before
/// the weights change.
#[derive(Debug)]
pub struct IterationView<'a> {
    pub iteration: usize,
    pub members: &'a [usize],
    pub lambda: &'a [f64],
    pub capped: &'a [f64],
    pub in_s: &'a [bool],
    pub uncertainty: &'a [f64],
    pub plan: &'a QueryPlan,
    pub x: usize,
    pub y: bool,
    pub event: Option<&'a HeavyBallRecord>,
    pub max_capped_ball: f64,
}

#[derive(Debug, Clone, Default)]
pub struct RunOptions {
    /// Hypothesis whose potential is written into each row.
    pub tracked: Option<usize>,
    /// Skip the tournament and answer with the first center.
    pub skip_stage_two: bool,
}

pub fn run<R: Rng + ?Sized>(
    instance: &Instance,
    params: &AlgorithmParams,
    oracle: &LabelModel,
    rng: &mut R,
) -> Result<RunRecord> {
    run_observed(instance, params, oracle, rng, &RunOptions::default(), |_| {})
}

pub fn run_observed<R, F>(
    instance: &Instance,
    params: &AlgorithmParams,
    oracle: &LabelModel,
    rng: &mut R,
    options: &RunOptions,
    mut observer: F,
) -> Result<RunRecord>
where
    R: Rng + ?Sized,
    F: FnMut(&IterationView),
{
    params.validate()?;
    let class = &instance.class;
    let marginal = &instance.marginal;
    if oracle.len() != class.n_points() {
        return Err(Error::SizeMismatch {
            what: "label table vs domain size",
            expected: class.n_points(),
            got: oracle.len(),
        });
    }
    let packing = greedy_maximal_packing(class, marginal, params.packing_radius())?;
    let members = packing.members.clone();
    let initial: Vec<f64> = match &params.initial_weights {
        Some(w) => {
            if w.len() != class.n_hypotheses() {
                return Err(Error::SizeMismatch {
                    what: "initial weights vs class",
                    expected: class.n_hypotheses(),
                    got: w.len(),
                });
            }
            members.iter().map(|&h| w[h]).collect()
        }
        None => vec![1.0; members.len()],
    };
    let tracked_pos = match options.tracked {
        Some(h) => {
            class.check_hypothesis(h)?;
            Some(nearest_member(instance, &members, h))
        }
        None => None,
    };
    let table = DistanceTable::new(class, marginal, &members)?;
    let mut state = LearnerState::new(members.clone(), Some(&initial), params.alpha)?;
    let (r_detect, r_add, kappa) = (params.detect_radius(), params.add_radius(), params.kappa());
    let rounds = params.fixed_rounds(members.len());
    let threshold = params.stop_threshold(members.len());

    let mut rows = Vec::new();
    let mut events = Vec::new();
    let stop_reason = loop {
        match rounds {
            Some(k) if state.iteration >= k => break StopReason::RoundBudget,
            _ => {}
        }
        if let Some(t) = threshold {
            if state.iteration > 0 && state.tau_sum >= t {
                break StopReason::Threshold;
            }
        }
        if state.iteration >= params.max_rounds {
            break StopReason::MaxRounds;
        }
        state.iteration += 1;
        let i = state.iteration;

        let lambda = state.posterior();
        let event = match heavy_ball_step(&mut state, &lambda, &table, r_detect, r_add) {
            Ok(e) => e,
            Err(_) => {
                state.iteration -= 1;
                break StopReason::Degenerate;
            }
        };
        if let Some(e) = &event {
            if e.uncapped_mass < ADDED_BALL_MASS - INVARIANT_TOLERANCE {
                return Err(Error::InvariantViolation {
                    iteration: i,
                    detail: format!("added ball has uncapped mass {} below {ADDED_BALL_MASS}", e.uncapped_mass),
                });
            }
            events.push(e.clone());
        }
        if state.s_is_everything() {
            state.iteration -= 1;
            break StopReason::Saturated;
        }
        let cap = match capped(&lambda, state.in_s()) {
            Ok(c) => c,
            Err(_) => {
                state.iteration -= 1;
                break StopReason::Degenerate;
            }
        };
        let (_, max_capped_ball) = table.heaviest(&cap, r_detect);
        if max_capped_ball > HEAVY_BALL_MASS + INVARIANT_TOLERANCE {
            return Err(Error::InvariantViolation {
                iteration: i,
                detail: format!("capped ball mass {max_capped_ball} exceeds {HEAVY_BALL_MASS}"),
            });
        }
        let r = uncertainty(&cap, class, &members);
        let plan = solve_query_distribution(&r, marginal, kappa)?;
        if plan.degenerate {
            state.iteration -= 1;
            break StopReason::Degenerate;
        }
        let x = sample_plan(&plan, rng)?;
        let y = draw(oracle, x, rng);

        let phi = tracked_pos.map(|p| potential(&lambda, state.in_s(), p));
        observer(&IterationView {
            iteration: i,
            members: &members,
            lambda: &lambda,
            capped: &cap,
            in_s: state.in_s(),
            uncertainty: &r,
            plan: &plan,
            x,
            y,
            event: event.as_ref(),
            max_capped_ball,
        });
        update_weights(&mut state, class, x, y)?;
        state.tau_sum += plan.objective;
        rows.push(IterationRow {
            iteration: i,
            x,
            y,
            tau: plan.objective,
            support_size: plan.support.len(),
            s_size: state.s_size(),
            c_size: state.centers().len(),
            heavy_ball: event.as_ref().map(|e| e.center),
            max_capped_ball,
            phi,
        });
    };

    let stage1_queries = rows.len();
    let centers = state.centers();
    let empty_centers = centers.is_empty();
    let (final_hypothesis, stage_two) = if empty_centers {
        let (p, _) = argmax_first(&state.posterior());
        (members[p], None)
    } else if options.skip_stage_two {
        (centers[0], None)
    } else {
        let result = tournament(
            class,
            marginal,
            oracle,
            &centers,
            params.eta_tilde(),
            params.delta,
            params.duel_constant,
            rng,
        )?;
        (result.winner, Some(result))
    };
    let stage2_queries = stage_two.as_ref().map_or(0, |t| t.queries);
    Ok(RunRecord {
        params: params.clone(),
        packing: members,
        initial_weights: initial,
        stop_reason,
        final_hypothesis,
        stage1_queries,
        stage2_queries,
        total_queries: stage1_queries + stage2_queries,
        tau_sum: state.tau_sum,
        empty_centers,
        centers,
        tracked: options.tracked,
        events,
        stage_two,
        iterations: rows,
    })
}

/// Inverse-CDF draw from the plan's support.
pub fn sample_plan<R: Rng + ?Sized>(plan: &QueryPlan, rng: &mut R) -> Result<usize> {
    if plan.support.len() == 1 {
        return Ok(plan.support[0]);
    }
    let sampler = WeightedIndex::new(&plan.masses).map_err(|e| Error::invalid(e.to_string()))?;
    Ok(plan.support[sampler.sample(rng)])
}

/// `log lambda(h) + log(lambda(h) / lambda(outside S))`, or 0 once `h` is in
/// `S`.
pub fn potential(lambda: &[f64], in_s: &[bool], pos: usize) -> f64 {
    if in_s[pos] {
        return 0.0;
    }
    let outside: f64 = lambda
        .iter()
        .zip(in_s)
        .filter(|(_, &s)| !s)
        .map(|(l, _)| l)
        .sum();
    lambda[pos].ln() + (lambda[pos] / outside).ln()
}

/// Packing position of `h`, or of the closest member (lowest position on
/// ties).
pub(crate) fn nearest_member(instance: &Instance, members: &[usize], h: usize) -> usize {
    if let Some(p) = members.iter().position(|&m| m == h) {
        return p;
    }
    let d: Vec<f64> = members
        .iter()
        .map(|&m| -crate::space::raw_distance(&instance.class, &instance.marginal, m, h))
        .collect();
    argmax_first(&d).0
}
