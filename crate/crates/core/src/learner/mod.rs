//! The stage-one learner: multiplicative weights over a packing, capped
//! heavy balls, and queries drawn from the solution of a penalised
//! uncertainty objective.

pub mod params;
pub mod record;
pub mod run;
pub mod solver;
pub mod state;

pub use params::{AlgorithmParams, StopRule};
pub use record::{IterationRow, RunRecord, StopReason};
pub use run::{run, run_observed, sample_plan, IterationView, RunOptions};
pub(crate) use run::nearest_member;
pub use solver::{plan_objective, solve_query_distribution, QueryPlan};
pub use state::{capped, heavy_ball_step, posterior, uncertainty, update_weights, HeavyBallRecord, LearnerState};
