//! N hypotheses written in unary on N points and in binary on log N more.
//! Uniform sampling over the disagreement region mostly hits the unary
//! block; the learner concentrates on the binary block.

use agnostic_al::generators::{gen_unary_binary_with, UnaryCode};
use agnostic_al::harness::{run_baseline, BaselineKind};
use agnostic_al::learner::{run, AlgorithmParams};
use agnostic_al::oracle::make_realizable;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn median(mut v: Vec<usize>) -> usize {
    v.sort_unstable();
    v[v.len() / 2]
}

fn main() -> agnostic_al::Result<()> {
    let n = 256;
    for code in [UnaryCode::OneHot, UnaryCode::Thermometer] {
        let inst = gen_unary_binary_with(n, code)?;
        let params = AlgorithmParams::practical(0.0, 0.0, 0.1);
        let (mut main, mut uniform, mut greedy, mut binary_share) = (vec![], vec![], vec![], 0.0);
        for seed in 0..20 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let target = rng.random_range(0..n);
            let oracle = make_realizable(&inst.class, target)?;
            let rec = run(&inst, &params, &oracle, &mut rng)?;
            assert_eq!(rec.final_hypothesis, target);
            let hits = rec.iterations.iter().filter(|r| r.x >= n).count();
            binary_share += hits as f64 / rec.iterations.len().max(1) as f64 / 20.0;
            main.push(rec.total_queries);
            for (kind, out) in [
                (BaselineKind::UniformDisagreement, &mut uniform),
                (BaselineKind::GreedySplit, &mut greedy),
            ] {
                out.push(run_baseline(kind, &inst, &oracle, 100_000, &mut rng)?.queries);
            }
        }
        println!(
            "{code:?}: learner median {} (binary-block share {:.2}), uniform disagreement {}, greedy split {}",
            median(main),
            binary_share,
            median(uniform),
            median(greedy)
        );
    }
    Ok(())
}
