//! Replays a noisy run and checks each round's expected change of the
//! target's log posterior against its lower bound.

use agnostic_al::analysis::{potential_trace, GrowthSetting};
use agnostic_al::generators::gen_thresholds_uniform;
use agnostic_al::learner::{run_observed, AlgorithmParams, RunOptions, StopRule};
use agnostic_al::oracle::make_iid_flip;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> agnostic_al::Result<()> {
    let inst = gen_thresholds_uniform(64)?;
    let target = 21;
    let oracle = make_iid_flip(&inst.class, target, 0.02)?;
    let params = AlgorithmParams::practical(0.02, 0.05, 0.1).with_stop(StopRule::Rounds { k: 120 });
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let options = RunOptions {
        tracked: Some(target),
        skip_stage_two: true,
    };
    let mut worst_slack = f64::INFINITY;
    let record = run_observed(&inst, &params, &oracle, &mut rng, &options, |v| {
        let Some(pos) = v.members.iter().position(|&h| h == target) else { return };
        if v.in_s[pos] {
            return;
        }
        let q = v.plan.dense(inst.n_points());
        let outside: Vec<bool> = v.in_s.iter().map(|s| !s).collect();
        let g = GrowthSetting {
            class: &inst.class,
            members: v.members,
            lambda: v.lambda,
            within: &outside,
            target: pos,
            q: &q,
            oracle: &oracle,
            alpha: params.alpha,
        };
        let slack = g.expected_exact().unwrap() - g.lower_bound().unwrap();
        worst_slack = worst_slack.min(slack);
    })?;
    let trace = potential_trace(&inst, &record, target)?;
    for row in trace.rows.iter().step_by(15) {
        println!(
            "round {:>3}: phi {:>8.3}  delta {:>7.4}  psi {:>7.3}  in S {}",
            row.iteration, row.phi, row.delta, row.psi, row.in_s
        );
    }
    println!("largest |delta| {:.4} (alpha {})", trace.max_abs_delta(), params.alpha);
    println!("smallest slack of the growth bound {worst_slack:.3e}");
    Ok(())
}
