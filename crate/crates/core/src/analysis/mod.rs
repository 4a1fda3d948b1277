//! Exact and brute-force reference quantities used to check the learner.

mod crosscheck;
mod growth;
mod mstar;
mod potential;

pub use crosscheck::{random_query_distribution, solver_crosscheck, MAX_CROSSCHECK_POINTS};
pub use growth::{GrowthSetting, MonteCarloEstimate};
pub use mstar::{mstar_realizable_exact, MAX_MSTAR_HYPOTHESES, MAX_MSTAR_POINTS};
pub use potential::{potential_trace, PotentialRow, PotentialTrace};
