//! Finite hypothesis classes, the marginal over the domain, and the
//! disagreement pseudometric with its balls, packings and covers.
//!
//! Hypotheses are identified by their row index in a [`HypothesisClass`].
//! Distances are `Pr_{x ~ D_X}[h(x) != h'(x)]`. Balls are closed
//! (`distance <= radius`).

use crate::error::{check_index, Error, Result};

/// Tolerance for a marginal's total mass.
pub const MASS_TOLERANCE: f64 = 1e-12;
/// Tolerance for a weight vector being a distribution.
pub const WEIGHT_TOLERANCE: f64 = 1e-9;

/// Probability mass per domain point.
#[derive(Debug, Clone, PartialEq)]
pub struct Marginal {
    masses: Vec<f64>,
}

impl Marginal {
    pub fn new(masses: Vec<f64>) -> Result<Self> {
        if masses.is_empty() {
            return Err(Error::invalid("marginal needs at least one point"));
        }
        if let Some((x, m)) = masses
            .iter()
            .enumerate()
            .find(|(_, m)| !m.is_finite() || **m < 0.0)
        {
            return Err(Error::invalid(format!("mass {m} at point {x} is not a probability")));
        }
        let total: f64 = masses.iter().sum();
        if (total - 1.0).abs() > MASS_TOLERANCE {
            return Err(Error::invalid(format!("marginal sums to {total}, not 1")));
        }
        Ok(Marginal { masses })
    }

    pub fn uniform(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("marginal needs at least one point"));
        }
        Marginal::new(vec![1.0 / n as f64; n])
    }

    pub fn len(&self) -> usize {
        self.masses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.masses.is_empty()
    }

    pub fn mass(&self, x: usize) -> f64 {
        self.masses[x]
    }

    pub fn masses(&self) -> &[f64] {
        &self.masses
    }

    /// Total mass of the points selected by `pred`.
    pub fn mass_where(&self, mut pred: impl FnMut(usize) -> bool) -> f64 {
        self.masses
            .iter()
            .enumerate()
            .filter(|(x, _)| pred(*x))
            .map(|(_, m)| m)
            .sum()
    }
}

/// Dense binary label matrix, one row per hypothesis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HypothesisClass {
    labels: Vec<bool>,
    n_hypotheses: usize,
    n_points: usize,
}

impl HypothesisClass {
    pub fn from_rows(rows: Vec<Vec<bool>>) -> Result<Self> {
        let n_hypotheses = rows.len();
        if n_hypotheses == 0 {
            return Err(Error::invalid("class needs at least one hypothesis"));
        }
        let n_points = rows[0].len();
        if n_points == 0 {
            return Err(Error::invalid("class needs a nonempty domain"));
        }
        let mut labels = Vec::with_capacity(n_hypotheses * n_points);
        for row in rows {
            if row.len() != n_points {
                return Err(Error::SizeMismatch {
                    what: "hypothesis row length",
                    expected: n_points,
                    got: row.len(),
                });
            }
            labels.extend(row);
        }
        Ok(HypothesisClass {
            labels,
            n_hypotheses,
            n_points,
        })
    }

    /// Parses rows written as strings of `0` and `1`.
    pub fn from_bit_strings<S: AsRef<str>>(rows: &[S]) -> Result<Self> {
        let parsed = rows
            .iter()
            .map(|s| {
                s.as_ref()
                    .chars()
                    .map(|c| match c {
                        '0' => Ok(false),
                        '1' => Ok(true),
                        other => Err(Error::Format(format!("label '{other}' is not 0 or 1"))),
                    })
                    .collect::<Result<Vec<bool>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        HypothesisClass::from_rows(parsed)
    }

    pub fn n_hypotheses(&self) -> usize {
        self.n_hypotheses
    }

    pub fn n_points(&self) -> usize {
        self.n_points
    }

    #[inline]
    pub fn label(&self, h: usize, x: usize) -> bool {
        self.labels[h * self.n_points + x]
    }

    pub fn row(&self, h: usize) -> &[bool] {
        &self.labels[h * self.n_points..(h + 1) * self.n_points]
    }

    pub fn row_string(&self, h: usize) -> String {
        self.row(h).iter().map(|&b| if b { '1' } else { '0' }).collect()
    }

    pub fn check_hypothesis(&self, h: usize) -> Result<()> {
        check_index("hypothesis class", h, self.n_hypotheses)
    }

    pub fn check_point(&self, x: usize) -> Result<()> {
        check_index("domain", x, self.n_points)
    }

    pub fn check_marginal(&self, marginal: &Marginal) -> Result<()> {
        if marginal.len() != self.n_points {
            return Err(Error::SizeMismatch {
                what: "marginal vs domain size",
                expected: self.n_points,
                got: marginal.len(),
            });
        }
        Ok(())
    }
}

/// `Pr_{x ~ D_X}[h(x) != h'(x)]`.
pub fn distance(class: &HypothesisClass, marginal: &Marginal, h: usize, other: usize) -> Result<f64> {
    class.check_marginal(marginal)?;
    class.check_hypothesis(h)?;
    class.check_hypothesis(other)?;
    Ok(raw_distance(class, marginal, h, other))
}

#[inline]
pub(crate) fn raw_distance(class: &HypothesisClass, marginal: &Marginal, h: usize, other: usize) -> f64 {
    let (a, b) = (class.row(h), class.row(other));
    let mut d = 0.0;
    for x in 0..a.len() {
        if a[x] != b[x] {
            d += marginal.mass(x);
        }
    }
    d
}

/// Pairwise distances over a fixed list of class members, addressed by
/// position in that list.
#[derive(Debug, Clone)]
pub struct DistanceTable {
    members: Vec<usize>,
    dist: Vec<f64>,
}

impl DistanceTable {
    pub fn new(class: &HypothesisClass, marginal: &Marginal, members: &[usize]) -> Result<Self> {
        class.check_marginal(marginal)?;
        for &h in members {
            class.check_hypothesis(h)?;
        }
        let n = members.len();
        let mut dist = vec![0.0; n * n];
        for i in 0..n {
            for j in (i + 1)..n {
                let d = raw_distance(class, marginal, members[i], members[j]);
                dist[i * n + j] = d;
                dist[j * n + i] = d;
            }
        }
        Ok(DistanceTable {
            members: members.to_vec(),
            dist,
        })
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.dist[i * self.members.len() + j]
    }

    /// Positions of members within `radius` of member `center`.
    pub fn ball(&self, center: usize, radius: f64) -> Vec<usize> {
        (0..self.len()).filter(|&j| self.get(center, j) <= radius).collect()
    }

    pub fn ball_mass(&self, weights: &[f64], center: usize, radius: f64) -> f64 {
        let n = self.len();
        let row = &self.dist[center * n..(center + 1) * n];
        row.iter()
            .zip(weights)
            .filter(|(d, _)| **d <= radius)
            .map(|(_, w)| w)
            .sum()
    }

    /// Ball mass around every member.
    pub fn ball_masses(&self, weights: &[f64], radius: f64) -> Vec<f64> {
        (0..self.len()).map(|c| self.ball_mass(weights, c, radius)).collect()
    }

    /// Heaviest ball, ties going to the lowest position.
    pub fn heaviest(&self, weights: &[f64], radius: f64) -> (usize, f64) {
        argmax_first(&self.ball_masses(weights, radius))
    }
}

/// First index attaining the maximum.
pub(crate) fn argmax_first(values: &[f64]) -> (usize, f64) {
    let mut best = (0, f64::NEG_INFINITY);
    for (i, &v) in values.iter().enumerate() {
        if v > best.1 {
            best = (i, v);
        }
    }
    best
}

fn check_distribution(members: &[usize], weights: &[f64]) -> Result<()> {
    if members.len() != weights.len() {
        return Err(Error::SizeMismatch {
            what: "weights vs members",
            expected: members.len(),
            got: weights.len(),
        });
    }
    if members.is_empty() {
        return Err(Error::invalid("empty weight support"));
    }
    if weights.iter().any(|w| !w.is_finite() || *w < 0.0) {
        return Err(Error::invalid("weights must be nonnegative"));
    }
    let total: f64 = weights.iter().sum();
    if (total - 1.0).abs() > WEIGHT_TOLERANCE {
        return Err(Error::invalid(format!("weights sum to {total}, not 1")));
    }
    Ok(())
}

/// Weight of the closed ball of `radius` around `center`, for a
/// distribution given as parallel `members`/`weights` lists.
pub fn ball_mass(
    class: &HypothesisClass,
    marginal: &Marginal,
    members: &[usize],
    weights: &[f64],
    center: usize,
    radius: f64,
) -> Result<f64> {
    check_distribution(members, weights)?;
    class.check_marginal(marginal)?;
    class.check_hypothesis(center)?;
    if !(radius >= 0.0) {
        return Err(Error::invalid(format!("negative radius {radius}")));
    }
    let mut mass = 0.0;
    for (&h, &w) in members.iter().zip(weights) {
        class.check_hypothesis(h)?;
        if h == center || raw_distance(class, marginal, center, h) <= radius {
            mass += w;
        }
    }
    Ok(mass)
}

/// Heaviest radius-`radius` ball centred on a member; returns the class
/// index of the centre and its mass.
pub fn heaviest_ball(
    class: &HypothesisClass,
    marginal: &Marginal,
    members: &[usize],
    weights: &[f64],
    radius: f64,
) -> Result<(usize, f64)> {
    check_distribution(members, weights)?;
    if !(radius >= 0.0) {
        return Err(Error::invalid(format!("negative radius {radius}")));
    }
    let table = DistanceTable::new(class, marginal, members)?;
    let (pos, mass) = table.heaviest(weights, radius);
    Ok((members[pos], mass))
}

/// Members of a maximal packing: pairwise distances exceed `radius`.
#[derive(Debug, Clone, PartialEq)]
pub struct Packing {
    pub members: Vec<usize>,
    pub radius: f64,
}

impl Packing {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn position(&self, h: usize) -> Option<usize> {
        self.members.iter().position(|&m| m == h)
    }
}

/// Greedy packing in index order: `h` is admitted iff it is farther than
/// `radius` from every member admitted so far.
pub fn greedy_maximal_packing(class: &HypothesisClass, marginal: &Marginal, radius: f64) -> Result<Packing> {
    class.check_marginal(marginal)?;
    if !(radius >= 0.0) {
        return Err(Error::invalid(format!("negative packing radius {radius}")));
    }
    let mut members: Vec<usize> = Vec::new();
    for h in 0..class.n_hypotheses() {
        if members
            .iter()
            .all(|&m| raw_distance(class, marginal, m, h) > radius)
        {
            members.push(h);
        }
    }
    Ok(Packing { members, radius })
}

/// Largest class size accepted by [`min_cover_bruteforce`].
pub const MAX_COVER_SEARCH: usize = 20;

/// Size of the smallest `alpha`-cover, by exhaustive subset search.
pub fn min_cover_bruteforce(class: &HypothesisClass, marginal: &Marginal, alpha: f64) -> Result<usize> {
    class.check_marginal(marginal)?;
    let n = class.n_hypotheses();
    if n > MAX_COVER_SEARCH {
        return Err(Error::SizeGuard(format!(
            "{n} hypotheses exceeds the cover search limit of {MAX_COVER_SEARCH}"
        )));
    }
    let covers: Vec<u32> = (0..n)
        .map(|h| {
            (0..n)
                .filter(|&g| raw_distance(class, marginal, h, g) <= alpha)
                .fold(0u32, |acc, g| acc | (1 << g))
        })
        .collect();
    let full: u32 = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    let mut union = vec![0u32; 1usize << n];
    let mut best = n;
    for mask in 1usize..(1 << n) {
        let low = mask.trailing_zeros() as usize;
        union[mask] = union[mask & (mask - 1)] | covers[low];
        if union[mask] == full {
            best = best.min(mask.count_ones() as usize);
        }
    }
    Ok(best)
}
