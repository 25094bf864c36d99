//! Numeric tolerances and size caps used across the crate.
//!
//! Everything here is additive slack on top of exact arithmetic. The values
//! are chosen for double precision at desk-scale dimensions (a few thousand):
//! accumulated rounding stays orders of magnitude below each constant, so a
//! violation always means a real defect rather than float noise.

/// Norm, trace, and state-equality checks. Roundoff for dimensions up to a
/// few thousand stays below 1e-12, leaving two orders of headroom.
pub const NORM_TOL: f64 = 1e-10;

/// Minimum-eigenvalue slack for positive-semidefiniteness checks. Eigensolver
/// backward error is looser than plain norm arithmetic, hence the looser tol.
pub const PSD_TOL: f64 = 1e-9;

/// Additive slack for every analytic inequality check (per-query decrease
/// bounds, end-state bounds, distance growth bounds).
pub const INEQUALITY_SLACK: f64 = 1e-9;

/// Per-operation total-norm drift allowed during simulation runs.
pub const NORM_DRIFT_TOL: f64 = 1e-12;

/// Allowed deviation when the reduced density matrix is reconstructed from
/// single-input runs (Gram identity) or when bipartite columns are compared
/// against scaled single-input states.
pub const GRAM_IDENTITY_TOL: f64 = 1e-10;

/// Unitarity requirement on every algorithm stage.
pub const UNITARY_TOL: f64 = 1e-10;

/// Squared-overlap floor for oracle-convention conversion round trips.
pub const FIDELITY_SLACK: f64 = 1e-9;

/// Superposition amplitudes must be normalized this tightly.
pub const SUPERPOSITION_NORM_TOL: f64 = 1e-12;

/// Hard cap on bipartite runs: (algorithm dimension) x (number of inputs).
/// Dense column storage at this size is 16 MiB of complex doubles.
pub const MAX_BIPARTITE_AMPLITUDES: usize = 1 << 20;

/// Hard cap on dense matrix entries (64 MiB of complex doubles).
pub const MAX_DENSE_ENTRIES: usize = 1 << 22;
