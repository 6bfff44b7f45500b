//! Exact finite-level Galois descent: group extensions and their sections,
//! twisted models and specialization counts, and the cohomology behind them.

pub mod budget;
pub mod cohomology;
pub mod error;
pub mod extensions;
pub mod group;
mod lattice;
pub mod scenario;
pub mod twisting;
pub mod verify;

pub use budget::Budget;
pub use error::{Error, ErrorCategory, Result};
