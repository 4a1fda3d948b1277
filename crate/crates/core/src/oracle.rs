//! Label distributions over the finite domain. A [`LabelModel`] is the
//! conditional table `Pr[y = 1 | x]`; together with the marginal it fixes
//! the joint distribution, so errors are computed exactly and labels are
//! drawn independently per query.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{check_index, Error, Result};
use crate::space::{HypothesisClass, Marginal};

#[derive(Debug, Clone, PartialEq)]
pub struct LabelModel {
    p1: Vec<f64>,
}

/// The best hypothesis of a class under a label model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseBudgetReport {
    pub best: usize,
    pub error: f64,
}

impl LabelModel {
    pub fn from_table(p1: Vec<f64>) -> Result<Self> {
        if p1.is_empty() {
            return Err(Error::invalid("label table is empty"));
        }
        if let Some((x, p)) = p1
            .iter()
            .enumerate()
            .find(|(_, p)| !(0.0..=1.0).contains(*p))
        {
            return Err(Error::invalid(format!("Pr[y=1] = {p} at point {x} is outside [0, 1]")));
        }
        Ok(LabelModel { p1 })
    }

    pub fn len(&self) -> usize {
        self.p1.len()
    }

    pub fn is_empty(&self) -> bool {
        self.p1.is_empty()
    }

    pub fn p1(&self) -> &[f64] {
        &self.p1
    }

    /// Probability that a label drawn at `x` disagrees with `label`.
    #[inline]
    pub fn flip_probability(&self, x: usize, label: bool) -> f64 {
        if label {
            1.0 - self.p1[x]
        } else {
            self.p1[x]
        }
    }

    fn check_sizes(&self, class: &HypothesisClass, marginal: &Marginal) -> Result<()> {
        class.check_marginal(marginal)?;
        if self.p1.len() != class.n_points() {
            return Err(Error::SizeMismatch {
                what: "label table vs domain size",
                expected: class.n_points(),
                got: self.p1.len(),
            });
        }
        Ok(())
    }
}

/// `err(h) = Pr_{(x,y)}[h(x) != y]`, computed exactly.
pub fn true_error(model: &LabelModel, class: &HypothesisClass, marginal: &Marginal, h: usize) -> Result<f64> {
    model.check_sizes(class, marginal)?;
    class.check_hypothesis(h)?;
    Ok(raw_error(model, class, marginal, h))
}

pub(crate) fn raw_error(model: &LabelModel, class: &HypothesisClass, marginal: &Marginal, h: usize) -> f64 {
    class
        .row(h)
        .iter()
        .enumerate()
        .map(|(x, &label)| marginal.mass(x) * model.flip_probability(x, label))
        .sum()
}

/// Lowest-error hypothesis (lowest index on ties) and its error.
pub fn best_hypothesis(model: &LabelModel, class: &HypothesisClass, marginal: &Marginal) -> Result<NoiseBudgetReport> {
    model.check_sizes(class, marginal)?;
    let mut best = NoiseBudgetReport {
        best: 0,
        error: f64::INFINITY,
    };
    for h in 0..class.n_hypotheses() {
        let e = raw_error(model, class, marginal, h);
        if e < best.error {
            best = NoiseBudgetReport { best: h, error: e };
        }
    }
    Ok(best)
}

/// Draws `y ~ Bernoulli(Pr[y = 1 | x])`.
pub fn sample_label<R: Rng + ?Sized>(model: &LabelModel, x: usize, rng: &mut R) -> Result<bool> {
    check_index("label table", x, model.len())?;
    Ok(draw(model, x, rng))
}

#[inline]
pub(crate) fn draw<R: Rng + ?Sized>(model: &LabelModel, x: usize, rng: &mut R) -> bool {
    let p = model.p1[x];
    // Degenerate entries consume no randomness, so realizable runs are
    // insensitive to the stream position.
    if p <= 0.0 {
        false
    } else if p >= 1.0 {
        true
    } else {
        rng.random::<f64>() < p
    }
}

fn indicator(b: bool) -> f64 {
    if b {
        1.0
    } else {
        0.0
    }
}

pub fn make_realizable(class: &HypothesisClass, target: usize) -> Result<LabelModel> {
    class.check_hypothesis(target)?;
    LabelModel::from_table(class.row(target).iter().map(|&b| indicator(b)).collect())
}

/// Every label independently disagrees with `target` with probability `rho`.
pub fn make_iid_flip(class: &HypothesisClass, target: usize, rho: f64) -> Result<LabelModel> {
    class.check_hypothesis(target)?;
    if !(0.0..0.5).contains(&rho) {
        return Err(Error::invalid(format!("flip rate {rho} outside [0, 0.5)")));
    }
    LabelModel::from_table(
        class
            .row(target)
            .iter()
            .map(|&b| if b { 1.0 - rho } else { rho })
            .collect(),
    )
}

/// One-sided corruption: where `target` says 1 the label is 0 with
/// probability `g(x)`; where it says 0 the label is always 0.
///
/// The corruption budget `E[g(x) target(x)]` is the caller's to check; it
/// equals the resulting `err(target)`.
pub fn make_g_adversary(class: &HypothesisClass, marginal: &Marginal, target: usize, g: &[f64]) -> Result<LabelModel> {
    class.check_marginal(marginal)?;
    class.check_hypothesis(target)?;
    if g.len() != class.n_points() {
        return Err(Error::SizeMismatch {
            what: "adversary function vs domain size",
            expected: class.n_points(),
            got: g.len(),
        });
    }
    if let Some((x, v)) = g.iter().enumerate().find(|(_, v)| !(0.0..=1.0).contains(*v)) {
        return Err(Error::invalid(format!("g({x}) = {v} outside [0, 1]")));
    }
    LabelModel::from_table(
        class
            .row(target)
            .iter()
            .zip(g)
            .map(|(&b, &gx)| indicator(b) * (1.0 - gx))
            .collect(),
    )
}

/// Labels follow `target` except on an `eta`-mass region, chosen lowest
/// index first, where rows 0 and 1 disagree and `target` disagrees with
/// row 0; there the label follows row 0. A point only partly inside the
/// budget is flipped with the matching probability.
pub fn make_figure1_adversary(
    class: &HypothesisClass,
    marginal: &Marginal,
    target: usize,
    eta: f64,
) -> Result<LabelModel> {
    class.check_marginal(marginal)?;
    class.check_hypothesis(target)?;
    if class.n_hypotheses() < 2 {
        return Err(Error::invalid("figure-1 adversary needs rows 0 and 1"));
    }
    if !(eta >= 0.0) {
        return Err(Error::invalid(format!("negative budget {eta}")));
    }
    let (lead, rival, truth) = (class.row(0), class.row(1), class.row(target));
    let region: Vec<usize> = (0..class.n_points())
        .filter(|&x| lead[x] != rival[x] && lead[x] != truth[x])
        .collect();
    let available: f64 = region.iter().map(|&x| marginal.mass(x)).sum();
    if eta > available + 1e-12 {
        return Err(Error::invalid(format!(
            "budget {eta} exceeds the {available} mass where the leader can be made right"
        )));
    }
    let mut p1: Vec<f64> = truth.iter().map(|&b| indicator(b)).collect();
    let mut remaining = eta;
    for x in region {
        if remaining <= 0.0 {
            break;
        }
        let m = marginal.mass(x);
        if m <= 0.0 {
            continue;
        }
        let share = (remaining / m).min(1.0);
        // Move Pr[y = lead(x)] from 0 up to `share`.
        p1[x] = if lead[x] { share } else { 1.0 - share };
        remaining -= share * m;
    }
    LabelModel::from_table(p1)
}

/// Oracle description as it appears in config files.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum OracleSpec {
    Realizable { target: usize },
    IidFlip { target: usize, rho: f64 },
    GAdversary { target: usize, g: Vec<f64> },
    Figure1 { target: usize, eta: f64 },
    ExplicitTable { p1: Vec<f64> },
}

impl OracleSpec {
    pub fn build(&self, class: &HypothesisClass, marginal: &Marginal) -> Result<LabelModel> {
        let model = match self {
            OracleSpec::Realizable { target } => make_realizable(class, *target)?,
            OracleSpec::IidFlip { target, rho } => make_iid_flip(class, *target, *rho)?,
            OracleSpec::GAdversary { target, g } => make_g_adversary(class, marginal, *target, g)?,
            OracleSpec::Figure1 { target, eta } => make_figure1_adversary(class, marginal, *target, *eta)?,
            OracleSpec::ExplicitTable { p1 } => LabelModel::from_table(p1.clone())?,
        };
        model.check_sizes(class, marginal)?;
        Ok(model)
    }

    /// The hypothesis the labels were built around, if any.
    pub fn target(&self) -> Option<usize> {
        match self {
            OracleSpec::Realizable { target }
            | OracleSpec::IidFlip { target, .. }
            | OracleSpec::GAdversary { target, .. }
            | OracleSpec::Figure1 { target, .. } => Some(*target),
            OracleSpec::ExplicitTable { .. } => None,
        }
    }

    /// Sets the noise level of the flip and Figure 1 oracles to `eta`.
    pub fn with_noise(&self, eta: f64) -> OracleSpec {
        let mut spec = self.clone();
        match &mut spec {
            OracleSpec::IidFlip { rho, .. } => *rho = eta,
            OracleSpec::Figure1 { eta: e, .. } => *e = eta,
            _ => {}
        }
        spec
    }

    pub fn with_target(&self, new_target: usize) -> OracleSpec {
        let mut spec = self.clone();
        match &mut spec {
            OracleSpec::Realizable { target }
            | OracleSpec::IidFlip { target, .. }
            | OracleSpec::GAdversary { target, .. }
            | OracleSpec::Figure1 { target, .. } => *target = new_target,
            OracleSpec::ExplicitTable { .. } => {}
        }
        spec
    }
}
