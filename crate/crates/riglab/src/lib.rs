//! riglab: a random-interval-graph laboratory.
//!
//! Seeded generators for six random-graph models, exact polynomial
//! algorithms for interval-graph invariants, closed-form limit laws,
//! brute-force enumeration oracles, and a reproducible Monte Carlo harness
//! that checks the quantitative claims at desk scale.

pub mod algorithms;
pub mod cli;
pub mod core;
pub mod error;
pub mod generators;
pub mod montecarlo;
pub mod oracle;
pub mod rng;
pub mod theory;

pub use error::{Error, Result};
