//! Numerical tolerances used across the crate.
//!
//! Everything in this crate is closed-form qubit algebra, so the slack only
//! absorbs floating-point rounding, never method error.

/// Slack for validity predicates (effect positivity, normalization,
/// compatibility boundary). Constructors reject anything beyond this.
pub const TOL_POS: f64 = 1e-12;

/// Tolerance for numerical equalities in residual checks and tests.
pub const TOL_NUM: f64 = 1e-9;

/// Gate half-width on ‖r ∓ a‖ for eigenstate detection in the local uniform
/// error. Kept tight so the discontinuity of that quantity stays visible.
pub const TOL_EIG: f64 = 1e-10;

/// Guard on outcome probabilities appearing in post-selection denominators.
pub const TOL_PROB: f64 = 1e-12;
