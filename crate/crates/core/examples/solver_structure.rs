//! The query distribution is the marginal conditioned on the points with
//! the largest uncertainty; the penalty decides how many levels to keep.

use agnostic_al::analysis::solver_crosscheck;
use agnostic_al::learner::solve_query_distribution;
use agnostic_al::Marginal;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> agnostic_al::Result<()> {
    let marginal = Marginal::new(vec![0.1, 0.2, 0.3, 0.15, 0.25])?;
    let r = [0.5, 0.9, 0.2, 0.9, 0.4];
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for kappa in [0.0, 0.01, 0.05, 0.1, 0.3, 1.0] {
        let plan = solve_query_distribution(&r, &marginal, kappa)?;
        let margin = solver_crosscheck(&r, &marginal, kappa, 2000, &mut rng)?;
        println!(
            "kappa {kappa:<4}: support {:?}, threshold {}, objective {:.4}, margin over random {:.2e}",
            plan.support, plan.threshold, plan.objective, margin
        );
    }
    Ok(())
}
