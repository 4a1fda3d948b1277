use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::learner::{nearest_member, RunRecord};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PotentialRow {
    pub iteration: usize,
    /// The tracked hypothesis is in the capped set this round.
    pub in_s: bool,
    /// Posterior mass of the tracked hypothesis before the update.
    pub lambda: f64,
    pub lambda_after: f64,
    pub phi: f64,
    pub delta: f64,
    /// Sum of the deltas of all earlier rows.
    pub psi: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PotentialTrace {
    /// Hypothesis asked for.
    pub target: usize,
    /// Packing member actually traced.
    pub tracked: usize,
    /// The target is not in the packing, so its nearest member is traced.
    pub flagged: bool,
    /// `phi` under the initial weights with an empty capped set.
    pub initial_phi: f64,
    pub rows: Vec<PotentialRow>,
}

impl PotentialTrace {
    pub fn max_abs_delta(&self) -> f64 {
        self.rows.iter().map(|r| r.delta.abs()).fold(0.0, f64::max)
    }

    /// Tracked posterior mass after the last update.
    pub fn final_lambda(&self) -> Option<f64> {
        self.rows.last().map(|r| r.lambda_after)
    }
}

/// Replays a run's transcript from its initial weights and traces the
/// potential of `target` (a class index).
pub fn potential_trace(instance: &Instance, record: &RunRecord, target: usize) -> Result<PotentialTrace> {
    instance.class.check_hypothesis(target)?;
    let members = &record.packing;
    let n = members.len();
    if record.initial_weights.len() != n {
        return Err(Error::SizeMismatch {
            what: "initial weights vs packing",
            expected: n,
            got: record.initial_weights.len(),
        });
    }
    let pos = nearest_member(instance, members, target);
    let alpha = record.params.alpha;
    let mut log_w: Vec<f64> = record.initial_weights.iter().map(|w| w.ln()).collect();
    let mut in_s = vec![false; n];
    let initial = log_posterior(&log_w, &in_s, pos);
    let initial_phi = initial.0 + initial.1;

    let mut rows = Vec::with_capacity(record.iterations.len());
    let mut psi = 0.0;
    for row in &record.iterations {
        for event in record.events.iter().filter(|e| e.iteration == row.iteration) {
            for h in &event.added {
                let p = members
                    .iter()
                    .position(|m| m == h)
                    .ok_or_else(|| Error::Format(format!("capped hypothesis {h} is not in the packing")))?;
                in_s[p] = true;
            }
        }
        if in_s.iter().all(|&s| s) {
            return Err(Error::Format(format!("capped set is everything at iteration {}", row.iteration)));
        }
        let (log_all, log_outside) = log_posterior(&log_w, &in_s, pos);
        for (p, &h) in members.iter().enumerate() {
            if instance.class.label(h, row.x) != row.y {
                log_w[p] -= alpha;
            }
        }
        let (next_all, next_outside) = log_posterior(&log_w, &in_s, pos);
        let (phi, delta) = if in_s[pos] {
            (0.0, 0.0)
        } else {
            (log_all + log_outside, (next_all - log_all) + (next_outside - log_outside))
        };
        rows.push(PotentialRow {
            iteration: row.iteration,
            in_s: in_s[pos],
            lambda: log_all.exp(),
            lambda_after: next_all.exp(),
            phi,
            delta,
            psi,
        });
        psi += delta;
    }
    Ok(PotentialTrace {
        target,
        tracked: members[pos],
        flagged: members[pos] != target,
        initial_phi,
        rows,
    })
}

/// `(log lambda(pos), log lambda restricted outside S (pos))`.
fn log_posterior(log_w: &[f64], in_s: &[bool], pos: usize) -> (f64, f64) {
    let top = log_w.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let all: f64 = log_w.iter().map(|l| (l - top).exp()).sum();
    let outside: f64 = log_w
        .iter()
        .zip(in_s)
        .filter(|(_, &s)| !s)
        .map(|(l, _)| (l - top).exp())
        .sum();
    let own = log_w[pos] - top;
    (own - all.ln(), own - outside.ln())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::gen_thresholds_uniform;
    use crate::learner::{run_observed, AlgorithmParams, RunOptions, StopRule};
    use crate::oracle::make_iid_flip;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn replay_matches_learner() {
        let inst = gen_thresholds_uniform(40).unwrap();
        let oracle = make_iid_flip(&inst.class, 13, 0.05).unwrap();
        let params = AlgorithmParams::practical(0.01, 0.05, 0.1).with_stop(StopRule::Rounds { k: 150 });
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let options = RunOptions {
            tracked: Some(13),
            skip_stage_two: true,
        };
        let record = run_observed(&inst, &params, &oracle, &mut rng, &options, |_| {}).unwrap();
        let trace = potential_trace(&inst, &record, 13).unwrap();
        assert_eq!(trace.rows.len(), record.iterations.len());
        let n = record.packing.len() as f64;
        assert!((trace.initial_phi + 2.0 * n.ln()).abs() < 1e-12);
        let mut psi = 0.0;
        let mut entered = false;
        for (t, r) in trace.rows.iter().zip(&record.iterations) {
            assert!((t.phi - r.phi.unwrap()).abs() < 1e-9);
            assert!((t.psi - psi).abs() < 1e-12);
            assert!(t.delta.abs() <= 2.0 * params.alpha + 1e-12);
            entered |= t.in_s;
            if entered {
                assert_eq!(t.phi, 0.0);
            }
            psi += t.delta;
        }
    }

    #[test]
    fn unchanged_weights_give_zero_delta() {
        let inst = gen_thresholds_uniform(4).unwrap();
        let oracle = make_iid_flip(&inst.class, 2, 0.0).unwrap();
        let params = AlgorithmParams::practical(0.0, 0.1, 0.1).with_stop(StopRule::Rounds { k: 1 });
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let mut record = crate::learner::run(&inst, &params, &oracle, &mut rng).unwrap();
        // A label every hypothesis predicts moves nothing: point 3 is 1
        // for every threshold except t4.
        record.iterations[0].x = 3;
        record.iterations[0].y = true;
        record.packing = vec![0, 1, 2, 3];
        record.initial_weights = vec![1.0; 4];
        record.events.clear();
        let trace = potential_trace(&inst, &record, 2).unwrap();
        assert_eq!(trace.rows[0].delta, 0.0);
    }
}
