//! Exact maximisation of `E_{x~q}[r(x)] - kappa * max_x q(x) / D_X(x)`.
//!
//! For a fixed value `M` of the ratio `max q / D_X`, the best `q` fills
//! points in decreasing order of `r`, each up to `M * D_X(x)`, so the
//! objective is piecewise linear in `1/M` with breakpoints where a whole
//! block of equal-`r` points has been filled. The maximum therefore sits
//! at one of those breakpoints, i.e. at `D_X` conditioned on a top block
//! set.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::space::Marginal;

/// Objective gap treated as a tie between candidate plans.
const TIE_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QueryPlan {
    /// Points with positive query mass, in decreasing `r` order.
    pub support: Vec<usize>,
    /// Query mass of each support point.
    pub masses: Vec<f64>,
    /// Smallest `r` value admitted.
    pub threshold: f64,
    /// `max_x q(x) / D_X(x)`.
    pub ratio: f64,
    pub expected_r: f64,
    pub objective: f64,
    /// Every `r` was zero, so no plan has positive value.
    pub degenerate: bool,
}

impl QueryPlan {
    /// The plan as a dense vector over the domain.
    pub fn dense(&self, n_points: usize) -> Vec<f64> {
        let mut q = vec![0.0; n_points];
        for (&x, &m) in self.support.iter().zip(&self.masses) {
            q[x] = m;
        }
        q
    }

    /// Recomputes the objective from the stored masses.
    pub fn recompute_objective(&self, r: &[f64], marginal: &Marginal, kappa: f64) -> f64 {
        plan_objective(&self.dense(marginal.len()), r, marginal, kappa)
    }
}

/// Objective of an arbitrary query distribution `q`; `-inf` when `q`
/// puts mass on a point the marginal never draws.
pub fn plan_objective(q: &[f64], r: &[f64], marginal: &Marginal, kappa: f64) -> f64 {
    let mut value = 0.0;
    let mut ratio: f64 = 0.0;
    for (x, (&qx, &rx)) in q.iter().zip(r).enumerate() {
        if qx <= 0.0 {
            continue;
        }
        let d = marginal.mass(x);
        if d <= 0.0 {
            return f64::NEG_INFINITY;
        }
        value += qx * rx;
        ratio = ratio.max(qx / d);
    }
    value - kappa * ratio
}

pub fn solve_query_distribution(r: &[f64], marginal: &Marginal, kappa: f64) -> Result<QueryPlan> {
    if r.len() != marginal.len() {
        return Err(Error::SizeMismatch {
            what: "uncertainty vector vs marginal",
            expected: marginal.len(),
            got: r.len(),
        });
    }
    if !(kappa >= 0.0) {
        return Err(Error::invalid(format!("negative penalty weight {kappa}")));
    }
    let mut order: Vec<usize> = (0..r.len()).filter(|&x| marginal.mass(x) > 0.0).collect();
    if order.is_empty() {
        return Err(Error::invalid("marginal has no positive mass"));
    }
    // Stable, so equal values keep index order.
    order.sort_by(|&a, &b| r[b].total_cmp(&r[a]));
    let degenerate = order.iter().all(|&x| r[x] <= 0.0);

    if kappa == 0.0 {
        let x = order[0];
        return Ok(QueryPlan {
            support: vec![x],
            masses: vec![1.0],
            threshold: r[x],
            ratio: 1.0 / marginal.mass(x),
            expected_r: r[x],
            objective: r[x],
            degenerate,
        });
    }

    let mut mass = 0.0;
    let mut weighted = 0.0;
    let mut best_len = 0;
    let mut best_seen = f64::NEG_INFINITY;
    let mut k = 0;
    while k < order.len() {
        let level = r[order[k]];
        while k < order.len() && r[order[k]] == level {
            let x = order[k];
            mass += marginal.mass(x);
            weighted += marginal.mass(x) * r[x];
            k += 1;
        }
        let objective = weighted / mass - kappa / mass;
        // Near-ties go to the larger support.
        if objective >= best_seen - TIE_TOLERANCE {
            best_len = k;
        }
        best_seen = best_seen.max(objective);
    }
    let support: Vec<usize> = order[..best_len].to_vec();
    let total: f64 = support.iter().map(|&x| marginal.mass(x)).sum();
    let masses: Vec<f64> = support.iter().map(|&x| marginal.mass(x) / total).collect();
    let expected_r: f64 = support.iter().zip(&masses).map(|(&x, &q)| q * r[x]).sum();
    let ratio = 1.0 / total;
    Ok(QueryPlan {
        threshold: r[*support.last().unwrap()],
        support,
        masses,
        ratio,
        expected_r,
        objective: expected_r - kappa * ratio,
        degenerate,
    })
}
