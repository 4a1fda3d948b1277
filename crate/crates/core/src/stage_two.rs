//! Elimination tournament over a short candidate list: duel any two
//! candidates that are far apart on points drawn from their disagreement
//! region and drop the one that errs more.

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::oracle::{draw, LabelModel};
use crate::space::{raw_distance, HypothesisClass, Marginal};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DuelOutcome {
    pub first: usize,
    pub second: usize,
    pub samples: usize,
    pub mistakes_first: usize,
    pub mistakes_second: usize,
    pub eliminated: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TournamentResult {
    pub winner: usize,
    /// Distinct candidates, in the order given.
    pub candidates: Vec<usize>,
    pub samples_per_duel: usize,
    pub queries: usize,
    pub duels: Vec<DuelOutcome>,
}

/// `ceil(c_d ln(2 |C| / delta))` samples per duel.
pub fn duel_samples(duel_constant: f64, n_candidates: usize, delta: f64) -> usize {
    let n = duel_constant * (2.0 * n_candidates as f64 / delta).ln();
    (n.ceil() as usize).max(1)
}

/// Draws `n` points from the marginal restricted to where `first` and
/// `second` disagree and removes the one with more mistakes; ties remove
/// `second`.
pub fn duel<R: Rng + ?Sized>(
    class: &HypothesisClass,
    marginal: &Marginal,
    oracle: &LabelModel,
    first: usize,
    second: usize,
    n: usize,
    rng: &mut R,
) -> Result<DuelOutcome> {
    class.check_marginal(marginal)?;
    class.check_hypothesis(first)?;
    class.check_hypothesis(second)?;
    if oracle.len() != class.n_points() {
        return Err(Error::SizeMismatch {
            what: "label table vs domain size",
            expected: class.n_points(),
            got: oracle.len(),
        });
    }
    if n == 0 {
        return Err(Error::invalid("a duel needs at least one sample"));
    }
    let (a, b) = (class.row(first), class.row(second));
    let region: Vec<usize> = (0..class.n_points())
        .filter(|&x| a[x] != b[x] && marginal.mass(x) > 0.0)
        .collect();
    if region.is_empty() {
        return Err(Error::EmptyDisagreement(first, second));
    }
    let sampler = WeightedIndex::new(region.iter().map(|&x| marginal.mass(x)))
        .map_err(|e| Error::invalid(e.to_string()))?;
    let mut mistakes_first = 0;
    for _ in 0..n {
        let x = region[sampler.sample(rng)];
        let y = draw(oracle, x, rng);
        if a[x] != y {
            mistakes_first += 1;
        }
    }
    let mistakes_second = n - mistakes_first;
    let eliminated = if mistakes_first > mistakes_second { first } else { second };
    Ok(DuelOutcome {
        first,
        second,
        samples: n,
        mistakes_first,
        mistakes_second,
        eliminated,
    })
}

/// Duels the lowest-index pair at distance at least `3 eta_tilde` until no
/// such pair is left, then returns the lowest-index survivor.
#[allow(clippy::too_many_arguments)]
pub fn tournament<R: Rng + ?Sized>(
    class: &HypothesisClass,
    marginal: &Marginal,
    oracle: &LabelModel,
    candidates: &[usize],
    eta_tilde: f64,
    delta: f64,
    duel_constant: f64,
    rng: &mut R,
) -> Result<TournamentResult> {
    class.check_marginal(marginal)?;
    if candidates.is_empty() {
        return Err(Error::invalid("no candidates"));
    }
    let mut distinct: Vec<usize> = Vec::with_capacity(candidates.len());
    for &h in candidates {
        class.check_hypothesis(h)?;
        if !distinct.contains(&h) {
            distinct.push(h);
        }
    }
    let n = duel_samples(duel_constant, distinct.len(), delta);
    let mut alive = distinct.clone();
    alive.sort_unstable();
    let gap = 3.0 * eta_tilde;
    let mut duels = Vec::new();
    loop {
        let pair = (0..alive.len())
            .flat_map(|i| ((i + 1)..alive.len()).map(move |j| (i, j)))
            .find(|&(i, j)| {
                let d = raw_distance(class, marginal, alive[i], alive[j]);
                d > 0.0 && d >= gap
            });
        let Some((i, j)) = pair else { break };
        let outcome = duel(class, marginal, oracle, alive[i], alive[j], n, rng)?;
        alive.retain(|&h| h != outcome.eliminated);
        duels.push(outcome);
    }
    Ok(TournamentResult {
        winner: alive[0],
        candidates: distinct,
        samples_per_duel: n,
        queries: duels.len() * n,
        duels,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{make_iid_flip, make_realizable};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn pair() -> (HypothesisClass, Marginal) {
        (
            HypothesisClass::from_bit_strings(&["0011", "0110", "1100", "0011"]).unwrap(),
            Marginal::uniform(4).unwrap(),
        )
    }

    #[test]
    fn duel_examples() {
        let (class, m) = pair();
        let oracle = make_realizable(&class, 1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let out = duel(&class, &m, &oracle, 0, 1, 20, &mut rng).unwrap();
        assert_eq!(out.eliminated, 0);
        assert_eq!(out.mistakes_first + out.mistakes_second, 20);
        assert_eq!(out.mistakes_second, 0);
        let single = duel(&class, &m, &oracle, 1, 2, 1, &mut rng).unwrap();
        assert_eq!(single.eliminated, 2);
        assert!(matches!(
            duel(&class, &m, &oracle, 0, 3, 5, &mut rng),
            Err(Error::EmptyDisagreement(0, 3))
        ));
    }

    #[test]
    fn noisy_duel_keeps_target() {
        // Distance 0.5, flip rate 0.1: the target errs on a sample with
        // probability 0.1, so losing needs 25 of 50 flips.
        let class = HypothesisClass::from_bit_strings(&["0011", "0000"]).unwrap();
        let m = Marginal::uniform(4).unwrap();
        let oracle = make_iid_flip(&class, 0, 0.1).unwrap();
        let mut survived = 0;
        for seed in 0..1000 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            if duel(&class, &m, &oracle, 0, 1, 50, &mut rng).unwrap().eliminated == 1 {
                survived += 1;
            }
        }
        assert!(survived >= 990, "survived {survived}");
    }

    #[test]
    fn tournament_trivial_cases() {
        let (class, m) = pair();
        let oracle = make_realizable(&class, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let one = tournament(&class, &m, &oracle, &[2], 0.0, 0.1, 48.0, &mut rng).unwrap();
        assert_eq!((one.winner, one.queries), (2, 0));
        let close = tournament(&class, &m, &oracle, &[2, 1, 0], 0.5, 0.1, 48.0, &mut rng).unwrap();
        assert_eq!((close.winner, close.queries), (0, 0));
        let full = tournament(&class, &m, &oracle, &[0, 1, 2], 0.0, 0.1, 48.0, &mut rng).unwrap();
        assert_eq!(full.winner, 2);
        assert!(full.queries <= 2 * full.samples_per_duel);
    }

    #[test]
    fn sample_count_formula() {
        // 48 ln(2 * 3 / 0.1) = 196.53
        assert_eq!(duel_samples(48.0, 3, 0.1), 197);
    }
}
