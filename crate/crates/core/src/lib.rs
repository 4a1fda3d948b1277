//! Competitive agnostic active learning over finite hypothesis classes.

// `!(x > 0.0)` is used on purpose so NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
pub mod error;
pub mod generators;
pub mod harness;
pub mod instance;
pub mod learner;
pub mod oracle;
pub mod space;
pub mod stage_two;

pub use error::{Error, Result};
pub use instance::Instance;
pub use space::{HypothesisClass, Marginal};
