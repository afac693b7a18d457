//! Numerical tolerance ladder.
//!
//! Scenario coordinates live in a box of side ~3, so double precision leaves
//! six or more digits of headroom under each of these thresholds. All
//! comparisons are made after scaling inputs to unit diameter, which makes
//! the thresholds relative.

/// Relative pivot threshold for rank and affine-independence decisions.
pub const RANK: f64 = 1e-9;

/// Residual allowed when deciding convex-combination feasibility.
pub const FEAS: f64 = 1e-9;

/// Minimum certified margin for a point to count as strictly interior.
pub const INTERIOR: f64 = 1e-7;

/// Magnitude of the deterministic degeneracy jitter, relative to the
/// bounding-box diameter of the perturbed set.
pub const JITTER: f64 = 1e-7;
