use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::learner::{plan_objective, solve_query_distribution};
use crate::space::Marginal;

pub const MAX_CROSSCHECK_POINTS: usize = 8;

/// A random query distribution over the points the marginal can draw.
/// Cycles through four shapes by `kind`: dense random weights, the
/// marginal on a random subset, random weights on a random subset, and a
/// point mass.
pub fn random_query_distribution<R: Rng + ?Sized>(marginal: &Marginal, kind: usize, rng: &mut R) -> Vec<f64> {
    let mut live: Vec<usize> = (0..marginal.len()).filter(|&x| marginal.mass(x) > 0.0).collect();
    live.shuffle(rng);
    let keep = match kind % 4 {
        0 => live.len(),
        3 => 1,
        _ => rng.random_range(1..=live.len()),
    };
    let mut q = vec![0.0; marginal.len()];
    for &x in &live[..keep] {
        q[x] = match kind % 4 {
            1 => marginal.mass(x),
            // Exponential draws give a flat Dirichlet.
            0 | 2 => -(1.0 - rng.random::<f64>()).ln(),
            _ => 1.0,
        };
    }
    let total: f64 = q.iter().sum();
    if total > 0.0 {
        q.iter_mut().for_each(|v| *v /= total);
    } else {
        q[live[0]] = 1.0;
    }
    q
}

/// Solver objective minus the best objective among `trials` random query
/// distributions.
pub fn solver_crosscheck<R: Rng + ?Sized>(
    r: &[f64],
    marginal: &Marginal,
    kappa: f64,
    trials: usize,
    rng: &mut R,
) -> Result<f64> {
    if marginal.len() > MAX_CROSSCHECK_POINTS {
        return Err(Error::SizeGuard(format!(
            "crosscheck needs at most {MAX_CROSSCHECK_POINTS} points, got {}",
            marginal.len()
        )));
    }
    let plan = solve_query_distribution(r, marginal, kappa)?;
    let solved = plan_objective(&plan.dense(marginal.len()), r, marginal, kappa);
    let mut best = f64::NEG_INFINITY;
    for t in 0..trials {
        let q = random_query_distribution(marginal, t, rng);
        best = best.max(plan_objective(&q, r, marginal, kappa));
    }
    Ok(solved - best)
}
