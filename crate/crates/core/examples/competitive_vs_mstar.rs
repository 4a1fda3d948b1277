//! Label counts on small random classes next to the exact optimal
//! worst-case identification cost.

use agnostic_al::analysis::mstar_realizable_exact;
use agnostic_al::generators::gen_random;
use agnostic_al::learner::{run, AlgorithmParams};
use agnostic_al::oracle::make_realizable;
use agnostic_al::space::greedy_maximal_packing;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() -> agnostic_al::Result<()> {
    let delta = 0.1;
    for i in 0..8 {
        let (nh, nx) = (6 + i % 7, 6 + (i * 5) % 7);
        let inst = gen_random(nh, nx, 0.5, 77 + i as u64)?;
        let m = mstar_realizable_exact(&inst.class, &inst.marginal)?;
        let packed = greedy_maximal_packing(&inst.class, &inst.marginal, 0.0)?.len();
        let params = AlgorithmParams::practical(0.0, 0.5 / nx as f64, delta);
        let mut queries = Vec::new();
        for seed in 0..10 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let oracle = make_realizable(&inst.class, rng.random_range(0..nh))?;
            queries.push(run(&inst, &params, &oracle, &mut rng)?.total_queries);
        }
        queries.sort_unstable();
        let scale = m as f64 * (packed as f64 / delta).ln();
        println!(
            "{nh:>2}x{nx:<2} m* = {m}, distinct {packed:>2}: median {:>3} labels = {:.2} m* ln(|H'|/delta)",
            queries[5],
            queries[5] as f64 / scale
        );
    }
    Ok(())
}
