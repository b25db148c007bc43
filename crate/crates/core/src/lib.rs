//! Solver library for the min-max multiple traveling salesman problem.
//!
//! Solutions are encoded as giant-tour chromosomes (a permutation of the
//! customer cities, depot excluded). A dynamic program ([`split::split`])
//! turns any chromosome into an optimal set of `m` depot-anchored tours
//! minimizing the longest tour, and the hybrid GA ([`ga::run`]) searches
//! the permutation space with a similarity-based crossover, geometric
//! intersection removal, and layered local search.

pub mod crossover;
pub mod education;
pub mod ga;
pub mod instance;
pub mod population;
pub mod split;

/// Crate-wide error type.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Malformed instance file; `line` is 1-based.
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    /// Caller violated an argument contract.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    /// The problem admits no solution (e.g. fewer cities than salesmen).
    #[error("infeasible: {0}")]
    Infeasible(String),
    /// Internal consistency check failed; indicates a bug.
    #[error("internal consistency error: {0}")]
    Internal(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
