use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::space::{HypothesisClass, Marginal};

pub const MAX_MSTAR_HYPOTHESES: usize = 12;
pub const MAX_MSTAR_POINTS: usize = 12;

/// Worst-case number of noiseless queries an optimal adaptive strategy
/// needs to pin down the target exactly. Hypotheses that agree on every
/// point of positive mass count as one.
pub fn mstar_realizable_exact(class: &HypothesisClass, marginal: &Marginal) -> Result<usize> {
    class.check_marginal(marginal)?;
    if class.n_hypotheses() > MAX_MSTAR_HYPOTHESES || class.n_points() > MAX_MSTAR_POINTS {
        return Err(Error::SizeGuard(format!(
            "exact m* needs at most {MAX_MSTAR_HYPOTHESES} hypotheses and {MAX_MSTAR_POINTS} points, got {} x {}",
            class.n_hypotheses(),
            class.n_points()
        )));
    }
    // Column masks: bit h set when hypothesis h labels x with 1.
    let columns: Vec<u32> = (0..class.n_points())
        .filter(|&x| marginal.mass(x) > 0.0)
        .map(|x| {
            (0..class.n_hypotheses())
                .filter(|&h| class.label(h, x))
                .fold(0u32, |acc, h| acc | (1 << h))
        })
        .collect();
    let all = (1u32 << class.n_hypotheses()) - 1;
    let mut memo = HashMap::new();
    Ok(solve(all, &columns, &mut memo))
}

fn solve(alive: u32, columns: &[u32], memo: &mut HashMap<u32, usize>) -> usize {
    if let Some(&v) = memo.get(&alive) {
        return v;
    }
    let mut best = None;
    for &col in columns {
        let ones = alive & col;
        if ones == 0 || ones == alive {
            continue;
        }
        let worst = solve(ones, columns, memo).max(solve(alive & !col, columns, memo));
        if best.is_none_or(|b| worst + 1 < b) {
            best = Some(worst + 1);
        }
    }
    // No point splits the survivors: they are indistinguishable.
    let value = best.unwrap_or(0);
    memo.insert(alive, value);
    value
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{gen_setcover_reduction, gen_thresholds_uniform, SetCoverInstance};

    #[test]
    fn small_cases() {
        let two = HypothesisClass::from_bit_strings(&["010", "011"]).unwrap();
        assert_eq!(mstar_realizable_exact(&two, &Marginal::uniform(3).unwrap()).unwrap(), 1);
        // 4 threshold hypotheses need 3 points.
        let thr = gen_thresholds_uniform(3).unwrap();
        assert_eq!(thr.n_hypotheses(), 4);
        assert_eq!(mstar_realizable_exact(&thr.class, &thr.marginal).unwrap(), 2);
    }

    #[test]
    fn binary_search_on_grids() {
        for k in 0..=3 {
            let n = 1usize << k;
            let inst = gen_thresholds_uniform(n).unwrap();
            // n + 1 thresholds on n points need ceil(log2(n + 1)) queries.
            let expected = (usize::BITS - n.leading_zeros()) as usize;
            assert_eq!(mstar_realizable_exact(&inst.class, &inst.marginal).unwrap(), expected);
            if n > 1 {
                // 2^k thresholds need exactly k.
                let inst = gen_thresholds_uniform(n - 1).unwrap();
                assert_eq!(mstar_realizable_exact(&inst.class, &inst.marginal).unwrap(), k);
            }
        }
    }

    #[test]
    fn duplicates_and_null_points_do_not_count() {
        let class = HypothesisClass::from_bit_strings(&["01", "01", "11"]).unwrap();
        assert_eq!(mstar_realizable_exact(&class, &Marginal::uniform(2).unwrap()).unwrap(), 1);
        let hidden = Marginal::new(vec![0.0, 1.0]).unwrap();
        assert_eq!(mstar_realizable_exact(&class, &hidden).unwrap(), 0);
    }

    #[test]
    fn setcover_example() {
        let sc = SetCoverInstance::new(2, vec![vec![0], vec![1], vec![0, 1]]).unwrap();
        let red = gen_setcover_reduction(&sc).unwrap();
        let inst = &red.instance;
        let m = mstar_realizable_exact(&inst.class, &inst.marginal).unwrap();
        assert!(m <= red.bound(1));
    }

    #[test]
    fn size_guard() {
        let rows: Vec<String> = (0..13).map(|_| "0".to_string()).collect();
        let class = HypothesisClass::from_bit_strings(&rows).unwrap();
        assert!(matches!(
            mstar_realizable_exact(&class, &Marginal::uniform(1).unwrap()),
            Err(Error::SizeGuard(_))
        ));
    }
}
