use serde::{Deserialize, Serialize};

use crate::error::{check_index, Error, Result};
use crate::space::{DistanceTable, HypothesisClass};

/// Heavy-ball mass that triggers capping.
pub const HEAVY_BALL_MASS: f64 = 0.8;
/// Least uncapped mass of a ball when it is added.
pub const ADDED_BALL_MASS: f64 = 0.6;

/// Weights over the packing, the capped set and the centers found so far.
/// Everything is addressed by position in the packing.
///
/// Weights are held as `ln w0 - alpha * mistakes`, so they never underflow.
#[derive(Debug, Clone)]
pub struct LearnerState {
    members: Vec<usize>,
    log_w0: Vec<f64>,
    mistakes: Vec<u32>,
    alpha: f64,
    in_s: Vec<bool>,
    s_size: usize,
    centers: Vec<usize>,
    pub iteration: usize,
    pub tau_sum: f64,
}

/// A ball moved into the capped set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HeavyBallRecord {
    pub iteration: usize,
    /// Class index of the heaviest ball's center under the uncapped
    /// posterior.
    pub center: usize,
    /// Largest detection-ball mass under the previous capped posterior.
    pub detect_mass: f64,
    /// Uncapped posterior mass of the chosen ball.
    pub uncapped_mass: f64,
    /// Class indices newly placed in the capped set.
    pub added: Vec<usize>,
}

impl LearnerState {
    /// `initial` holds one positive weight per packing member.
    pub fn new(members: Vec<usize>, initial: Option<&[f64]>, alpha: f64) -> Result<Self> {
        if members.is_empty() {
            return Err(Error::invalid("empty packing"));
        }
        let log_w0 = match initial {
            Some(w) => {
                if w.len() != members.len() {
                    return Err(Error::SizeMismatch {
                        what: "initial weights vs packing",
                        expected: members.len(),
                        got: w.len(),
                    });
                }
                if w.iter().any(|v| !(v.is_finite() && *v > 0.0)) {
                    return Err(Error::invalid("initial weights must be positive"));
                }
                w.iter().map(|v| v.ln()).collect()
            }
            None => vec![0.0; members.len()],
        };
        let n = members.len();
        Ok(LearnerState {
            members,
            log_w0,
            mistakes: vec![0; n],
            alpha,
            in_s: vec![false; n],
            s_size: 0,
            centers: Vec::new(),
            iteration: 0,
            tau_sum: 0.0,
        })
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn mistakes(&self) -> &[u32] {
        &self.mistakes
    }

    pub fn log_weights(&self) -> Vec<f64> {
        self.log_w0
            .iter()
            .zip(&self.mistakes)
            .map(|(l, &m)| l - self.alpha * m as f64)
            .collect()
    }

    pub fn weights(&self) -> Vec<f64> {
        self.log_weights().into_iter().map(f64::exp).collect()
    }

    pub fn in_s(&self) -> &[bool] {
        &self.in_s
    }

    pub fn s_size(&self) -> usize {
        self.s_size
    }

    pub fn s_is_everything(&self) -> bool {
        self.s_size == self.members.len()
    }

    /// Class indices of the capped set.
    pub fn s_members(&self) -> Vec<usize> {
        self.members
            .iter()
            .zip(&self.in_s)
            .filter(|(_, &s)| s)
            .map(|(&h, _)| h)
            .collect()
    }

    /// Class indices of the centers, in the order found.
    pub fn centers(&self) -> Vec<usize> {
        self.centers.iter().map(|&p| self.members[p]).collect()
    }

    /// The normalised posterior `lambda = w / sum w`.
    pub fn posterior(&self) -> Vec<f64> {
        normalise_log(&self.log_weights())
    }
}

fn normalise_log(log_w: &[f64]) -> Vec<f64> {
    let top = log_w.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let shifted: Vec<f64> = log_w.iter().map(|l| (l - top).exp()).collect();
    let total: f64 = shifted.iter().sum();
    shifted.into_iter().map(|v| v / total).collect()
}

/// `lambda(h) = w(h) / sum w`.
pub fn posterior(weights: &[f64]) -> Result<Vec<f64>> {
    if weights.iter().any(|w| !(w.is_finite() && *w >= 0.0)) {
        return Err(Error::invalid("weights must be finite and nonnegative"));
    }
    let total: f64 = weights.iter().sum();
    if !(total > 0.0) {
        return Err(Error::invalid("all weights are zero"));
    }
    Ok(weights.iter().map(|w| w / total).collect())
}

/// Halves the mass inside `S` and spreads the freed half over the rest in
/// proportion to `lambda`: `lambda_bar = lambda/2 + lambda_{outside S}/2`.
pub fn capped(lambda: &[f64], in_s: &[bool]) -> Result<Vec<f64>> {
    if lambda.len() != in_s.len() {
        return Err(Error::SizeMismatch {
            what: "capped set vs posterior",
            expected: lambda.len(),
            got: in_s.len(),
        });
    }
    if !in_s.iter().any(|&s| s) {
        return Ok(lambda.to_vec());
    }
    let outside: f64 = lambda
        .iter()
        .zip(in_s)
        .filter(|(_, &s)| !s)
        .map(|(l, _)| l)
        .sum();
    if !(outside > 0.0) {
        return Err(Error::invalid("the capped set carries all posterior mass"));
    }
    Ok(lambda
        .iter()
        .zip(in_s)
        .map(|(&l, &s)| if s { 0.5 * l } else { 0.5 * l + 0.5 * l / outside })
        .collect())
}

/// `r(x) = min(E[h(x)], 1 - E[h(x)])` under `dist` over `members`.
pub fn uncertainty(dist: &[f64], class: &HypothesisClass, members: &[usize]) -> Vec<f64> {
    let mut ones = vec![0.0; class.n_points()];
    for (&h, &p) in members.iter().zip(dist) {
        if p == 0.0 {
            continue;
        }
        for (acc, &b) in ones.iter_mut().zip(class.row(h)) {
            if b {
                *acc += p;
            }
        }
    }
    ones.into_iter().map(|p| p.min(1.0 - p).max(0.0)).collect()
}

/// Tests the previous capped posterior for a ball heavier than 0.8 and, if
/// one exists, moves the `radius_add` ball around the heaviest uncapped
/// `radius_detect` ball into `S`.
pub fn heavy_ball_step(
    state: &mut LearnerState,
    lambda: &[f64],
    table: &DistanceTable,
    radius_detect: f64,
    radius_add: f64,
) -> Result<Option<HeavyBallRecord>> {
    let previous = capped(lambda, &state.in_s)?;
    let (_, detect_mass) = table.heaviest(&previous, radius_detect);
    if detect_mass <= HEAVY_BALL_MASS {
        return Ok(None);
    }
    let (center, uncapped_mass) = table.heaviest(lambda, radius_detect);
    let mut added = Vec::new();
    for p in table.ball(center, radius_add) {
        if !state.in_s[p] {
            state.in_s[p] = true;
            state.s_size += 1;
            added.push(state.members[p]);
        }
    }
    state.centers.push(center);
    Ok(Some(HeavyBallRecord {
        iteration: state.iteration,
        center: state.members[center],
        detect_mass,
        uncapped_mass,
        added,
    }))
}

/// Charges one mistake to every member whose label at `x` differs from `y`.
pub fn update_weights(state: &mut LearnerState, class: &HypothesisClass, x: usize, y: bool) -> Result<()> {
    check_index("domain", x, class.n_points())?;
    for (p, &h) in state.members.iter().enumerate() {
        if class.label(h, x) != y {
            state.mistakes[p] += 1;
        }
    }
    Ok(())
}
