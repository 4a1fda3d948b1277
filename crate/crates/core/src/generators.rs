//! Instance families: 1d thresholds, the unary/binary class, the
//! three-hypothesis illustration, the set-cover reduction and random
//! classes.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::space::{HypothesisClass, Marginal};

/// `n` ordered points and the `n + 1` thresholds `h_t(x_j) = [j >= t]`.
pub fn gen_thresholds(n: usize, marginal: Marginal) -> Result<Instance> {
    if n == 0 {
        return Err(Error::invalid("threshold domain needs at least one point"));
    }
    let rows = (0..=n).map(|t| (0..n).map(|j| j >= t).collect()).collect();
    let class = HypothesisClass::from_rows(rows)?;
    let names = (0..=n).map(|t| format!("t{t}")).collect();
    Instance::new(class, marginal)?.with_hypothesis_names(names)
}

pub fn gen_thresholds_uniform(n: usize) -> Result<Instance> {
    gen_thresholds(n, Marginal::uniform(n.max(1))?)
}

/// Number of bits needed to write `0..n`, i.e. `ceil(log2 n)`.
pub fn ceil_log2(n: usize) -> usize {
    if n <= 1 {
        0
    } else {
        (usize::BITS - (n - 1).leading_zeros()) as usize
    }
}

/// How the first block of the unary/binary class writes `j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum UnaryCode {
    /// Points `1..=j` carry label 1.
    #[default]
    Thermometer,
    /// Only point `j` carries label 1.
    OneHot,
}

/// `N` hypotheses over `N + log2 N` uniform points; `h_j` writes `j` in
/// unary on the first `N` points and `j - 1` in big-endian binary on the
/// rest.
pub fn gen_unary_binary(n: usize) -> Result<Instance> {
    gen_unary_binary_with(n, UnaryCode::Thermometer)
}

pub fn gen_unary_binary_with(n: usize, code: UnaryCode) -> Result<Instance> {
    if n == 0 || !n.is_power_of_two() {
        return Err(Error::invalid(format!("N = {n} is not a power of two")));
    }
    let bits = n.trailing_zeros() as usize;
    let rows = (1..=n)
        .map(|j| {
            let unary = (1..=n).map(|i| match code {
                UnaryCode::Thermometer => i <= j,
                UnaryCode::OneHot => i == j,
            });
            let binary = (0..bits).map(|b| ((j - 1) >> (bits - 1 - b)) & 1 == 1);
            unary.chain(binary).collect()
        })
        .collect();
    let class = HypothesisClass::from_rows(rows)?;
    let names = (1..=n).map(|j| format!("h{j}")).collect();
    Instance::new(class, Marginal::uniform(n + bits)?)?.with_hypothesis_names(names)
}

/// The three-hypothesis, eight-point illustration, with its suggested
/// starting weights (heavy on row 0, almost nothing on row 2).
#[derive(Debug, Clone)]
pub struct Figure1 {
    pub instance: Instance,
    pub initial_weights: Vec<f64>,
}

pub const FIGURE1_ROWS: [&str; 3] = ["11111111", "11110000", "00001110"];
pub const FIGURE1_WEIGHTS: [f64; 3] = [0.9, 0.099999, 1e-6];

pub fn gen_figure1() -> Result<Figure1> {
    let class = HypothesisClass::from_bit_strings(&FIGURE1_ROWS)?;
    let instance = Instance::new(class, Marginal::uniform(8)?)?
        .with_hypothesis_names(vec!["h1".into(), "h2".into(), "h3".into()])?;
    Ok(Figure1 {
        instance,
        initial_weights: FIGURE1_WEIGHTS.to_vec(),
    })
}

/// Hypotheses with i.i.d. Bernoulli(`density`) labels over a uniform
/// domain; the matrix depends only on the arguments.
pub fn gen_random(n_hypotheses: usize, n_points: usize, density: f64, seed: u64) -> Result<Instance> {
    if n_hypotheses == 0 || n_points == 0 {
        return Err(Error::invalid("random class needs at least one row and one point"));
    }
    if !(0.0..=1.0).contains(&density) {
        return Err(Error::invalid(format!("density {density} outside [0, 1]")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rows = (0..n_hypotheses)
        .map(|_| (0..n_points).map(|_| rng.random_bool(density)).collect())
        .collect();
    Instance::new(HypothesisClass::from_rows(rows)?, Marginal::uniform(n_points)?)
}

/// A ground set `0..n_elements` and a family of subsets of it.
#[derive(Debug, Clone, PartialEq)]
pub struct SetCoverInstance {
    pub n_elements: usize,
    pub subsets: Vec<Vec<usize>>,
    /// Original ids of the elements, when parsed from text.
    pub element_ids: Vec<String>,
    pub known_cover: Option<Vec<usize>>,
}

impl SetCoverInstance {
    /// Subsets are sorted and deduplicated.
    pub fn new(n_elements: usize, subsets: Vec<Vec<usize>>) -> Result<Self> {
        let mut clean = Vec::with_capacity(subsets.len());
        for (i, s) in subsets.into_iter().enumerate() {
            let set: BTreeSet<usize> = s.into_iter().collect();
            if set.is_empty() {
                return Err(Error::invalid(format!("subset {i} is empty")));
            }
            if let Some(&u) = set.iter().find(|&&u| u >= n_elements) {
                return Err(Error::invalid(format!("subset {i} names element {u} outside the ground set")));
            }
            clean.push(set.into_iter().collect::<Vec<_>>());
        }
        let mut covered = vec![false; n_elements];
        for s in &clean {
            for &u in s {
                covered[u] = true;
            }
        }
        if n_elements == 0 {
            return Err(Error::invalid("empty ground set"));
        }
        if let Some(u) = covered.iter().position(|c| !c) {
            return Err(Error::invalid(format!("element {u} is in no subset")));
        }
        Ok(SetCoverInstance {
            n_elements,
            subsets: clean,
            element_ids: (0..n_elements).map(|u| u.to_string()).collect(),
            known_cover: None,
        })
    }

    /// Parses one subset per line of whitespace-separated element ids. A
    /// line `universe a b c` fixes the ground set (otherwise it is the union
    /// of the subsets); `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut universe: Option<Vec<String>> = None;
        let mut lines: Vec<(usize, Vec<String>)> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let mut tokens: Vec<String> = line.split_whitespace().map(str::to_owned).collect();
            if tokens[0] == "universe" {
                if universe.is_some() {
                    return Err(Error::Parse {
                        line: i + 1,
                        message: "second universe line".into(),
                    });
                }
                tokens.remove(0);
                universe = Some(tokens);
            } else {
                lines.push((i + 1, tokens));
            }
        }
        let ids: Vec<String> = match universe {
            Some(u) => {
                let mut seen = BTreeSet::new();
                u.into_iter().filter(|t| seen.insert(t.clone())).collect()
            }
            None => {
                let mut seen = BTreeSet::new();
                let mut ids = Vec::new();
                for (_, tokens) in &lines {
                    for t in tokens {
                        if seen.insert(t.clone()) {
                            ids.push(t.clone());
                        }
                    }
                }
                ids
            }
        };
        let mut subsets = Vec::with_capacity(lines.len());
        for (line, tokens) in lines {
            let mut s = Vec::with_capacity(tokens.len());
            for t in tokens {
                match ids.iter().position(|id| *id == t) {
                    Some(u) => s.push(u),
                    None => {
                        return Err(Error::Parse {
                            line,
                            message: format!("element {t} is not in the universe"),
                        })
                    }
                }
            }
            subsets.push(s);
        }
        let mut sc = SetCoverInstance::new(ids.len(), subsets).map_err(|e| Error::Parse {
            line: 0,
            message: e.to_string(),
        })?;
        sc.element_ids = ids;
        Ok(sc)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("universe {}\n", self.element_ids.join(" "));
        for s in &self.subsets {
            let ids: Vec<&str> = s.iter().map(|&u| self.element_ids[u].as_str()).collect();
            out.push_str(&ids.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn is_cover(&self, chosen: &[usize]) -> bool {
        let mut covered = vec![false; self.n_elements];
        for &s in chosen {
            if let Some(set) = self.subsets.get(s) {
                for &u in set {
                    covered[u] = true;
                }
            } else {
                return false;
            }
        }
        covered.into_iter().all(|c| c)
    }

    /// A minimum cover, by exhaustive search over subfamilies (at most 20
    /// subsets).
    pub fn min_cover(&self) -> Result<Vec<usize>> {
        let m = self.subsets.len();
        if m > 20 {
            return Err(Error::SizeGuard(format!("{m} subsets exceeds the exhaustive limit of 20")));
        }
        let masks: Vec<u64> = self
            .subsets
            .iter()
            .map(|s| s.iter().fold(0u64, |acc, &u| acc | (1 << u)))
            .collect();
        if self.n_elements > 64 {
            return Err(Error::SizeGuard("more than 64 elements".into()));
        }
        let full = if self.n_elements == 64 {
            u64::MAX
        } else {
            (1u64 << self.n_elements) - 1
        };
        let mut best: Option<u32> = None;
        let mut union = vec![0u64; 1 << m];
        for pick in 1usize..(1 << m) {
            let low = pick.trailing_zeros() as usize;
            union[pick] = union[pick & (pick - 1)] | masks[low];
            if union[pick] == full && best.is_none_or(|b| (pick as u32).count_ones() < (b).count_ones()) {
                best = Some(pick as u32);
            }
        }
        let best = best.expect("validated instances are coverable");
        Ok((0..m).filter(|s| best >> s & 1 == 1).collect())
    }
}

/// The hypothesis class built from a set-cover instance, with the point
/// layout needed to replay cover-based strategies.
#[derive(Debug, Clone)]
pub struct SetCoverReduction {
    pub instance: Instance,
    pub set_cover: SetCoverInstance,
    /// First point of each subset's coordinate block, and its width.
    pub subset_blocks: Vec<(usize, usize)>,
    /// First point of the `D` block.
    pub d_offset: usize,
    pub d_len: usize,
    /// Suggested accuracy and confidence for the learning problem.
    pub eta: f64,
    pub epsilon: f64,
    pub delta: f64,
}

/// Who the class rows are.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReductionRow {
    Element(usize),
    Dummy(usize),
    Zero,
}

impl SetCoverReduction {
    pub fn row_kind(&self, h: usize) -> ReductionRow {
        let n = self.set_cover.n_elements;
        if h < n {
            ReductionRow::Element(h)
        } else if h < n + self.d_len {
            ReductionRow::Dummy(h - n)
        } else {
            ReductionRow::Zero
        }
    }

    pub fn bound(&self, cover_size: usize) -> usize {
        cover_size + self.d_len
    }

    /// Runs the cover-based identification strategy against `target`.
    /// Returns the queried points and the decoded hypothesis.
    pub fn replay_cover_strategy(&self, cover: &[usize], target: usize) -> Result<(Vec<usize>, usize)> {
        if !self.set_cover.is_cover(cover) {
            return Err(Error::invalid("the given subsets do not cover the ground set"));
        }
        let class = &self.instance.class;
        class.check_hypothesis(target)?;
        let mut queries = Vec::new();
        let ask = |x: usize, queries: &mut Vec<usize>| {
            queries.push(x);
            class.label(target, x)
        };
        for &s in cover {
            let (start, width) = self.subset_blocks[s];
            if ask(start, &mut queries) {
                let mut index = 0usize;
                for j in 1..width {
                    if ask(start + j, &mut queries) {
                        index |= 1 << (j - 1);
                    }
                }
                let u = *self.set_cover.subsets[s]
                    .get(index)
                    .ok_or_else(|| Error::invalid("decoded position outside the subset"))?;
                return Ok((queries, u));
            }
        }
        let n = self.set_cover.n_elements;
        for d in 0..self.d_len {
            if ask(self.d_offset + d, &mut queries) {
                return Ok((queries, n + d));
            }
        }
        Ok((queries, n + self.d_len))
    }
}

/// Domain `U + V + D`: element points, then for each subset `s` a block
/// of `1 + ceil(log2 |s|)` coordinates, then `ceil(log2 |U|)` dummy
/// points. `h_u` is 1 on `u` and on coordinate `j` of block `s` when
/// `u` is in `s` and bit `j` of `2 f(s, u) + 1` is set, `f` being `u`'s
/// position in `s`. Dummy rows are one-hot on `D`; the last row is zero.
pub fn gen_setcover_reduction(sc: &SetCoverInstance) -> Result<SetCoverReduction> {
    let checked = SetCoverInstance::new(sc.n_elements, sc.subsets.clone())?;
    let n = checked.n_elements;
    let mut subset_blocks = Vec::with_capacity(checked.subsets.len());
    let mut offset = n;
    for s in &checked.subsets {
        let width = 1 + ceil_log2(s.len());
        subset_blocks.push((offset, width));
        offset += width;
    }
    let d_offset = offset;
    let d_len = ceil_log2(n);
    let n_points = d_offset + d_len;

    let mut rows = Vec::with_capacity(n + d_len + 1);
    for u in 0..n {
        let mut row = vec![false; n_points];
        row[u] = true;
        for (s, &(start, width)) in checked.subsets.iter().zip(&subset_blocks) {
            if let Ok(f) = s.binary_search(&u) {
                let code = 2 * f + 1;
                for j in 0..width {
                    row[start + j] = (code >> j) & 1 == 1;
                }
            }
        }
        rows.push(row);
    }
    for d in 0..d_len {
        let mut row = vec![false; n_points];
        row[d_offset + d] = true;
        rows.push(row);
    }
    rows.push(vec![false; n_points]);

    let n_hyp = rows.len();
    let mut names: Vec<String> = sc.element_ids.iter().map(|id| format!("u{id}")).collect();
    names.truncate(n);
    while names.len() < n {
        names.push(format!("u{}", names.len()));
    }
    names.extend((0..d_len).map(|d| format!("d{d}")));
    names.push("zero".into());
    let instance =
        Instance::new(HypothesisClass::from_rows(rows)?, Marginal::uniform(n_points)?)?.with_hypothesis_names(names)?;
    let mut set_cover = checked;
    set_cover.element_ids = sc.element_ids.clone();
    set_cover.known_cover = sc.known_cover.clone();
    Ok(SetCoverReduction {
        instance,
        set_cover,
        subset_blocks,
        d_offset,
        d_len,
        eta: 1.0 / (3.0 * n_points as f64),
        epsilon: 1.0 / (3.0 * n_points as f64),
        delta: 1.0 / (4.0 * n_hyp as f64),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::{distance, greedy_maximal_packing};

    #[test]
    fn thresholds_examples() {
        let one = gen_thresholds_uniform(1).unwrap();
        assert_eq!(one.class.row_string(0), "1");
        assert_eq!(one.class.row_string(1), "0");
        let four = gen_thresholds_uniform(4).unwrap();
        assert_eq!(four.distance(0, 4).unwrap(), 1.0);
        let ten = gen_thresholds_uniform(10).unwrap();
        assert!((ten.distance(2, 5).unwrap() - 0.3).abs() < 1e-12);
        for a in 0..=10 {
            for b in a..10 {
                assert!(ten.distance(a, b).unwrap() <= ten.distance(a, b + 1).unwrap());
            }
        }
    }

    #[test]
    fn unary_binary_layout() {
        let two = gen_unary_binary(2).unwrap();
        assert_eq!(two.class.row_string(0), "100");
        assert_eq!(two.class.row_string(1), "111");
        assert!(gen_unary_binary(6).is_err());
        let big = gen_unary_binary(256).unwrap();
        assert_eq!(big.n_points(), 264);
        let mut codes = BTreeSet::new();
        for h in 0..256 {
            codes.insert(big.class.row(h)[256..].to_vec());
        }
        assert_eq!(codes.len(), 256);
        let hot = gen_unary_binary_with(4, UnaryCode::OneHot).unwrap();
        assert_eq!(hot.class.row_string(2), "001010");
    }

    #[test]
    fn figure1_distances() {
        let f = gen_figure1().unwrap();
        let i = &f.instance;
        assert_eq!(i.distance(0, 1).unwrap(), 0.5);
        assert_eq!(i.distance(0, 2).unwrap(), 0.625);
        assert_eq!(i.distance(1, 2).unwrap(), 0.875);
        assert_eq!(f.initial_weights, vec![0.9, 0.099999, 1e-6]);
    }

    #[test]
    fn random_is_deterministic() {
        let a = gen_random(6, 9, 0.5, 11).unwrap();
        let b = gen_random(6, 9, 0.5, 11).unwrap();
        assert_eq!(a, b);
        for density in [0.0, 1.0] {
            let flat = gen_random(5, 7, density, 3).unwrap();
            let p = greedy_maximal_packing(&flat.class, &flat.marginal, 0.0).unwrap();
            assert_eq!(p.len(), 1);
        }
    }

    #[test]
    fn ceil_log2_values() {
        let got: Vec<usize> = [1, 2, 3, 4, 5, 8, 9].iter().map(|&n| ceil_log2(n)).collect();
        assert_eq!(got, vec![0, 1, 2, 2, 3, 3, 4]);
    }

    #[test]
    fn reduction_small_example() {
        let sc = SetCoverInstance::new(2, vec![vec![0], vec![1], vec![0, 1]]).unwrap();
        let red = gen_setcover_reduction(&sc).unwrap();
        assert_eq!(red.instance.n_points(), 7);
        assert_eq!(red.instance.n_hypotheses(), 4);
        let zero = red.instance.n_hypotheses() - 1;
        assert!(red.instance.class.row(zero).iter().all(|&b| !b));
        let n_x = red.instance.n_points() as f64;
        for a in 0..4 {
            for b in (a + 1)..4 {
                assert!(distance(&red.instance.class, &red.instance.marginal, a, b).unwrap() >= 1.0 / n_x - 1e-12);
            }
        }
        let cover = sc.min_cover().unwrap();
        assert_eq!(cover, vec![2]);
        for h in 0..4 {
            let (queries, decoded) = red.replay_cover_strategy(&cover, h).unwrap();
            assert_eq!(decoded, h);
            assert!(queries.len() <= red.bound(cover.len()));
        }
    }

    #[test]
    fn parse_round_trip() {
        let text = "# demo\nuniverse a b c\na b\nc  # trailing\nb c\n";
        let sc = SetCoverInstance::parse(text).unwrap();
        assert_eq!(sc.n_elements, 3);
        assert_eq!(sc.subsets, vec![vec![0, 1], vec![2], vec![1, 2]]);
        assert_eq!(SetCoverInstance::parse(&sc.to_text()).unwrap(), sc);
        assert!(SetCoverInstance::parse("universe a b\na\n").is_err());
        assert!(SetCoverInstance::parse("universe a\na z\n").is_err());
    }
}
