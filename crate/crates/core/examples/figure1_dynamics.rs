//! The three-hypothesis illustration: the true hypothesis starts with
//! weight 1e-6 and its posterior first dips under adversarial labels, then
//! climbs once the competing heavy hypotheses have been capped.

use agnostic_al::analysis::potential_trace;
use agnostic_al::generators::gen_figure1;
use agnostic_al::learner::{run_observed, AlgorithmParams, RunOptions, StopRule};
use agnostic_al::oracle::make_figure1_adversary;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> agnostic_al::Result<()> {
    let fig = gen_figure1()?;
    let inst = &fig.instance;
    let eta = 0.05;
    let oracle = make_figure1_adversary(&inst.class, &inst.marginal, 2, eta)?;
    println!("p(y=1|x) = {:?}", oracle.p1());
    let params = AlgorithmParams::practical(eta, 0.02, 0.1)
        .with_stop(StopRule::Rounds { k: 300 })
        .with_initial_weights(fig.initial_weights.clone());
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let options = RunOptions {
        tracked: Some(2),
        skip_stage_two: true,
    };
    let record = run_observed(inst, &params, &oracle, &mut rng, &options, |_| {})?;
    for e in &record.events {
        println!(
            "round {:>3}: heavy ball at {} (mass {:.3}), capped {:?}",
            e.iteration,
            inst.hypothesis_name(e.center),
            e.uncapped_mass,
            e.added
        );
    }
    let trace = potential_trace(inst, &record, 2)?;
    for row in trace.rows.iter().filter(|r| r.iteration <= 20 || r.iteration % 30 == 0) {
        let arrow = if row.lambda_after < row.lambda { "down" } else { "up" };
        println!("round {:>3}: lambda(h3) = {:.3e} {arrow}", row.iteration, row.lambda);
    }
    println!("final lambda(h3) = {:.4}", trace.final_lambda().unwrap_or(f64::NAN));
    Ok(())
}
