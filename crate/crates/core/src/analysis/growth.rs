use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::Rng;

use crate::error::{Error, Result};
use crate::oracle::{draw, LabelModel};
use crate::space::HypothesisClass;

/// One round of the weight update seen from the target's side: the
/// posterior over packing members, the restriction set the ratio is taken
/// in, the query distribution and the label model.
#[derive(Debug, Clone, Copy)]
pub struct GrowthSetting<'a> {
    pub class: &'a HypothesisClass,
    /// Class index of each packing position.
    pub members: &'a [usize],
    pub lambda: &'a [f64],
    /// Positions the restricted posterior keeps; must contain `target`.
    pub within: &'a [bool],
    /// Packing position of the target.
    pub target: usize,
    /// Dense query distribution over the domain.
    pub q: &'a [f64],
    pub oracle: &'a LabelModel,
    pub alpha: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MonteCarloEstimate {
    pub mean: f64,
    pub std_error: f64,
    pub samples: usize,
}

impl GrowthSetting<'_> {
    fn check(&self) -> Result<()> {
        let n = self.members.len();
        if self.lambda.len() != n || self.within.len() != n {
            return Err(Error::SizeMismatch {
                what: "posterior or restriction vs packing",
                expected: n,
                got: self.lambda.len().min(self.within.len()),
            });
        }
        if self.target >= n {
            return Err(Error::IndexOutOfRange {
                what: "packing position",
                index: self.target,
                len: n,
            });
        }
        if self.q.len() != self.class.n_points() || self.oracle.len() != self.class.n_points() {
            return Err(Error::SizeMismatch {
                what: "query distribution or label table vs domain size",
                expected: self.class.n_points(),
                got: self.q.len().min(self.oracle.len()),
            });
        }
        if !self.within[self.target] {
            return Err(Error::invalid("the restriction set must contain the target"));
        }
        if !(self.lambda[self.target] > 0.0) {
            return Err(Error::invalid("the target has no posterior mass"));
        }
        Ok(())
    }

    /// Restricted posterior mass that disagrees with the target at `x`.
    pub fn disagreement(&self, x: usize) -> f64 {
        let star = self.class.label(self.members[self.target], x);
        let mut total = 0.0;
        let mut off = 0.0;
        for (pos, &h) in self.members.iter().enumerate() {
            if !self.within[pos] {
                continue;
            }
            total += self.lambda[pos];
            if self.class.label(h, x) != star {
                off += self.lambda[pos];
            }
        }
        off / total
    }

    /// Probability that the label at `x` disagrees with the target.
    pub fn noise(&self, x: usize) -> f64 {
        self.oracle.flip_probability(x, self.class.label(self.members[self.target], x))
    }

    /// `E_q[r~]` and `E_q[p]`.
    pub fn means(&self) -> Result<(f64, f64)> {
        self.check()?;
        let mut r = 0.0;
        let mut p = 0.0;
        for (x, &qx) in self.q.iter().enumerate() {
            if qx > 0.0 {
                r += qx * self.disagreement(x);
                p += qx * self.noise(x);
            }
        }
        Ok((r, p))
    }

    /// Expected change of the target's log restricted posterior after one
    /// query, summed in closed form over points and labels.
    pub fn expected_exact(&self) -> Result<f64> {
        self.check()?;
        let shrink = 1.0 - (-self.alpha).exp();
        let grow = self.alpha.exp() - 1.0;
        let mut total = 0.0;
        for (x, &qx) in self.q.iter().enumerate() {
            if qx <= 0.0 {
                continue;
            }
            let r = self.disagreement(x);
            let p = self.noise(x);
            let mut value = 0.0;
            if p < 1.0 {
                let arg = 1.0 - shrink * r;
                if !(arg > 0.0) {
                    return Err(Error::invalid(format!("log of nonpositive argument at point {x}")));
                }
                value -= (1.0 - p) * arg.ln();
            }
            if p > 0.0 {
                value -= p * (1.0 + grow * r).ln();
            }
            total += qx * value;
        }
        Ok(total)
    }

    /// `0.9 alpha (E_q[r~] - 2.3 E_q[p])`.
    pub fn lower_bound(&self) -> Result<f64> {
        let (r, p) = self.means()?;
        Ok(0.9 * self.alpha * (r - 2.3 * p))
    }

    /// Simulates `samples` independent rounds: draw `x` from `q` and a label,
    /// apply the multiplicative update and measure the target's log
    /// restricted posterior change directly.
    pub fn expected_monte_carlo<R: Rng + ?Sized>(&self, samples: usize, rng: &mut R) -> Result<MonteCarloEstimate> {
        self.check()?;
        if samples < 2 {
            return Err(Error::invalid("need at least two samples"));
        }
        let sampler = WeightedIndex::new(self.q).map_err(|e| Error::invalid(e.to_string()))?;
        let kept: Vec<usize> = (0..self.members.len()).filter(|&p| self.within[p]).collect();
        let before: f64 = kept.iter().map(|&p| self.lambda[p]).sum();
        let log_before = (self.lambda[self.target] / before).ln();
        let mut sum = 0.0;
        let mut sum_sq = 0.0;
        for _ in 0..samples {
            let x = sampler.sample(rng);
            let y = draw(self.oracle, x, rng);
            let factor = |pos: usize| {
                if self.class.label(self.members[pos], x) != y {
                    (-self.alpha).exp()
                } else {
                    1.0
                }
            };
            let after: f64 = kept.iter().map(|&p| self.lambda[p] * factor(p)).sum();
            let change = (self.lambda[self.target] * factor(self.target) / after).ln() - log_before;
            sum += change;
            sum_sq += change * change;
        }
        let n = samples as f64;
        let mean = sum / n;
        let var = ((sum_sq - n * mean * mean) / (n - 1.0)).max(0.0);
        Ok(MonteCarloEstimate {
            mean,
            std_error: (var / n).sqrt(),
            samples,
        })
    }
}
