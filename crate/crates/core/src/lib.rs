//! Simulator and verification workbench for the quantum query model and
//! adversary-style lower bounds.
//!
//! The crate is organized in layers:
//!
//! 1. [`linalg`]: dense complex vectors, matrices, bipartite states, and the
//!    density-matrix plumbing (tensor products, partial trace, unitarity and
//!    PSD checks, restricted off-diagonal sums).
//! 2. [`query`]: the query model itself. Register layouts, XOR and phase
//!    oracles, query algorithms as unitary stage lists, single-input
//!    simulation, answer distributions, and oracle-convention conversion.
//! 3. [`algorithms`]: concrete algorithm families (amplitude-amplification
//!    search, exact classical lookup, constant answers, seeded random
//!    algorithms for property testing).
//! 4. [`adversary`]: bipartite runs against input superpositions, progress
//!    traces of off-diagonal density sums, per-query decrease checks,
//!    end-state distinguishability bounds, and distance-sum traces.
//! 5. [`relation`] / [`blocksens`]: input relations, their exact integer
//!    parameters, the lower-bound formulas derived from them, built-in
//!    problem families, and block sensitivity.
//!
//! Conventions: input positions are indexed `0..n`, alphabet values are
//! `0..alphabet_size`, and a "search" input is a 0/1 string with exactly one
//! position set to 1. All tolerances live in [`tolerances`].

pub mod adversary;
pub mod algorithms;
pub mod blocksens;
pub mod error;
pub mod linalg;
pub mod query;
pub mod relation;
pub mod tolerances;
pub mod truth_table;

pub use error::{Error, Result};
pub use linalg::{BipartiteState, ComplexMatrix, StateVector};
pub use query::{InputAssignment, OracleConvention, QueryAlgorithm, RegisterLayout};
pub use truth_table::TruthTable;

/// Complex scalar used throughout the crate.
pub type C64 = num_complex::Complex64;
