//! Thresholds on a line with random label flips: the learner's label
//! count grows slowly as the target accuracy tightens, passive learning's
//! grows like 1/epsilon.

use agnostic_al::generators::gen_thresholds_uniform;
use agnostic_al::harness::baselines::passive_samples_to_reach;
use agnostic_al::learner::{run, AlgorithmParams};
use agnostic_al::oracle::{make_iid_flip, true_error};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() -> agnostic_al::Result<()> {
    println!("{:>7} {:>8} {:>9} {:>14} {:>14}", "eps", "eta", "success", "median labels", "passive q90");
    for eps in [0.02, 0.01, 0.005] {
        let inst = gen_thresholds_uniform((1.0 / eps) as usize)?;
        let eta = eps / 20.0;
        let params = AlgorithmParams::practical(eta, eps, 0.1);
        let mut labels = Vec::new();
        let mut passive = Vec::new();
        let mut wins = 0;
        for seed in 0..40 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let target = rng.random_range(0..inst.n_hypotheses());
            let oracle = make_iid_flip(&inst.class, target, eta)?;
            let rec = run(&inst, &params, &oracle, &mut rng)?;
            if true_error(&oracle, &inst.class, &inst.marginal, rec.final_hypothesis)? <= eta + eps {
                wins += 1;
            }
            labels.push(rec.total_queries);
            let n = passive_samples_to_reach(&inst, &oracle, eta + eps, 100_000, &mut rng)?;
            passive.push(n.unwrap_or(100_000));
        }
        labels.sort_unstable();
        passive.sort_unstable();
        println!(
            "{eps:>7} {eta:>8} {:>9} {:>14} {:>14}",
            format!("{wins}/40"),
            labels[labels.len() / 2],
            passive[passive.len() * 9 / 10]
        );
    }
    Ok(())
}
