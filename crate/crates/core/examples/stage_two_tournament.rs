//! Duels between candidate hypotheses on their disagreement region.

use agnostic_al::generators::gen_thresholds_uniform;
use agnostic_al::oracle::make_iid_flip;
use agnostic_al::stage_two::tournament;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> agnostic_al::Result<()> {
    let inst = gen_thresholds_uniform(20)?;
    let oracle = make_iid_flip(&inst.class, 8, 0.1)?;
    let candidates = [2, 8, 15, 20];
    let mut wins = 0;
    for seed in 0..200 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t = tournament(&inst.class, &inst.marginal, &oracle, &candidates, 0.02, 0.1, 48.0, &mut rng)?;
        if seed == 0 {
            for d in &t.duels {
                println!(
                    "{} vs {}: {} / {} mistakes, out {}",
                    d.first, d.second, d.mistakes_first, d.mistakes_second, d.eliminated
                );
            }
            println!("{} samples per duel, {} labels in total", t.samples_per_duel, t.queries);
        }
        wins += usize::from(t.winner == 8);
    }
    println!("target kept in {wins}/200 tournaments");
    Ok(())
}
