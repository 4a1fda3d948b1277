use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const THEORY_C1: f64 = 27000.0;
pub const THEORY_C4: f64 = 300.0;
pub const THEORY_C5: f64 = 0.1;
pub const PRACTICAL_C4: f64 = 3.0;
pub const PRACTICAL_C5: f64 = 0.25;
pub const DEFAULT_ALPHA: f64 = 0.2;
pub const DEFAULT_C_K: f64 = 8.0;
pub const DEFAULT_DUEL_CONSTANT: f64 = 48.0;
pub const DEFAULT_MAX_ROUNDS: usize = 20_000;

/// When stage one stops.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum StopRule {
    /// `ceil(c_k * m_hat * ln(|H'| / delta))` rounds.
    Fixed { m_hat: f64, c_k: f64 },
    /// Exactly `k` rounds.
    Rounds { k: usize },
    /// Stop once the summed objective reaches `theta`, which defaults to
    /// `scale * (2 ln|H'| + ln(1/delta)) / (2 alpha)`.
    Adaptive {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        theta: Option<f64>,
        #[serde(default = "one")]
        scale: f64,
    },
}

fn one() -> f64 {
    1.0
}

impl StopRule {
    pub fn adaptive() -> Self {
        StopRule::Adaptive { theta: None, scale: 1.0 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlgorithmParams {
    pub eta: f64,
    pub epsilon: f64,
    pub delta: f64,
    #[serde(default = "default_alpha")]
    pub alpha: f64,
    pub c1: f64,
    pub c4: f64,
    pub c5: f64,
    /// Allows constants below the theory minimums.
    #[serde(default)]
    pub practical: bool,
    pub stop: StopRule,
    #[serde(default = "default_max_rounds")]
    pub max_rounds: usize,
    #[serde(default = "default_duel_constant")]
    pub duel_constant: f64,
    /// Starting weights, one per class row; rows outside the packing are
    /// ignored. Uniform when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub initial_weights: Option<Vec<f64>>,
}

fn default_alpha() -> f64 {
    DEFAULT_ALPHA
}

fn default_max_rounds() -> usize {
    DEFAULT_MAX_ROUNDS
}

fn default_duel_constant() -> f64 {
    DEFAULT_DUEL_CONSTANT
}

impl AlgorithmParams {
    /// Theory constants with the adaptive stop.
    pub fn theory(eta: f64, epsilon: f64, delta: f64) -> Self {
        AlgorithmParams {
            eta,
            epsilon,
            delta,
            alpha: DEFAULT_ALPHA,
            c1: THEORY_C1,
            c4: THEORY_C4,
            c5: THEORY_C5,
            practical: false,
            stop: StopRule::adaptive(),
            max_rounds: DEFAULT_MAX_ROUNDS,
            duel_constant: DEFAULT_DUEL_CONSTANT,
            initial_weights: None,
        }
    }

    /// Desk-scale constants `c4 = 3`, `c5 = 0.25`.
    pub fn practical(eta: f64, epsilon: f64, delta: f64) -> Self {
        AlgorithmParams {
            c4: PRACTICAL_C4,
            c5: PRACTICAL_C5,
            practical: true,
            ..AlgorithmParams::theory(eta, epsilon, delta)
        }
    }

    pub fn with_stop(mut self, stop: StopRule) -> Self {
        self.stop = stop;
        self
    }

    pub fn with_initial_weights(mut self, weights: Vec<f64>) -> Self {
        self.initial_weights = Some(weights);
        self
    }

    pub fn validate(&self) -> Result<()> {
        let unit = |name: &str, v: f64| {
            if (0.0..=1.0).contains(&v) {
                Ok(())
            } else {
                Err(Error::invalid(format!("{name} = {v} outside [0, 1]")))
            }
        };
        unit("eta", self.eta)?;
        unit("epsilon", self.epsilon)?;
        if !(self.delta > 0.0 && self.delta < 1.0) {
            return Err(Error::invalid(format!("delta = {} outside (0, 1)", self.delta)));
        }
        if !(self.alpha > 0.0 && self.alpha <= 0.2) {
            return Err(Error::invalid(format!("alpha = {} outside (0, 0.2]", self.alpha)));
        }
        if !(self.c4 >= 0.0 && self.c5 >= 0.0 && self.c1 >= 0.0) {
            return Err(Error::invalid("constants must be nonnegative"));
        }
        if !self.practical {
            if self.c4 < THEORY_C4 {
                return Err(Error::invalid(format!("c4 = {} below {THEORY_C4}", self.c4)));
            }
            if (self.c5 - THEORY_C5).abs() > 1e-15 {
                return Err(Error::invalid(format!("c5 = {} must equal {THEORY_C5}", self.c5)));
            }
            if self.c1 < 90.0 * self.c4 {
                return Err(Error::invalid(format!("c1 = {} below 90 c4", self.c1)));
            }
        }
        if !(self.duel_constant > 0.0) {
            return Err(Error::invalid("duel constant must be positive"));
        }
        match &self.stop {
            StopRule::Fixed { m_hat, c_k } if !(*m_hat > 0.0 && *c_k > 0.0) => {
                return Err(Error::invalid("fixed stop needs positive m_hat and c_k"));
            }
            StopRule::Adaptive { theta: Some(t), .. } if !(*t >= 0.0) => {
                return Err(Error::invalid("adaptive threshold must be nonnegative"));
            }
            StopRule::Adaptive { scale, .. } if !(*scale > 0.0) => {
                return Err(Error::invalid("adaptive scale must be positive"));
            }
            _ => {}
        }
        if let Some(w) = &self.initial_weights {
            if w.iter().any(|v| !(v.is_finite() && *v > 0.0)) {
                return Err(Error::invalid("initial weights must be positive and finite"));
            }
        }
        Ok(())
    }

    /// Radius of the heavy-ball test, `c4 eta + c5 epsilon`.
    pub fn detect_radius(&self) -> f64 {
        self.c4 * self.eta + self.c5 * self.epsilon
    }

    /// Radius of the ball moved into the capped set.
    pub fn add_radius(&self) -> f64 {
        3.0 * self.detect_radius()
    }

    /// Penalty weight on `max q / D_X`.
    pub fn kappa(&self) -> f64 {
        self.c4 / 20.0 * self.eta
    }

    /// Error bound of the best center handed to the tournament.
    pub fn eta_tilde(&self) -> f64 {
        (3.0 + 3.0 * self.c4) * self.eta + 3.0 * self.c5 * self.epsilon
    }

    pub fn packing_radius(&self) -> f64 {
        2.0 * self.eta
    }

    /// Round budget under a fixed rule; `None` for the adaptive rule.
    pub fn fixed_rounds(&self, packing_size: usize) -> Option<usize> {
        match self.stop {
            StopRule::Fixed { m_hat, c_k } => {
                let k = c_k * m_hat * (packing_size as f64 / self.delta).ln();
                Some(k.ceil().max(0.0) as usize)
            }
            StopRule::Rounds { k } => Some(k),
            StopRule::Adaptive { .. } => None,
        }
    }

    pub fn stop_threshold(&self, packing_size: usize) -> Option<f64> {
        match self.stop {
            StopRule::Adaptive { theta: Some(t), .. } => Some(t),
            StopRule::Adaptive { theta: None, scale } => {
                let base = 2.0 * (packing_size as f64).ln() + (1.0 / self.delta).ln();
                Some(scale * base / (2.0 * self.alpha))
            }
            _ => None,
        }
    }
}
