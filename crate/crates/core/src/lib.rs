//! Age-of-information scheduling for energy-harvesting two-hop links.
//!
//! * [`model`]: instances, schedules, feasibility and exact age areas.
//! * [`offline`]: the exact offline optimizer and a greedy baseline.
//! * [`oracle`]: an independent numeric minimizer for cross-checking.
//! * [`online`]: Monte Carlo simulation of online policies under Poisson energy.
//! * [`gen`]: random instance generators.

pub mod error;
pub mod gen;
pub mod model;
pub mod offline;
pub mod online;
pub mod oracle;
pub mod tolerance;

pub use error::{Error, Result};
