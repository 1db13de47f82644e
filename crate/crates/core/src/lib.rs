//! Approximate joint measurements of incompatible qubit observables.
//!
//! Two incompatible sharp targets A and B can only be measured together
//! through compatible approximators C and D; the residual inaccuracy is then
//! quantified by an error measure, and the interesting question is the lower
//! boundary of the achievable error pairs. This crate implements the two
//! competing quantifications side by side, entirely in closed Bloch-sphere
//! form:
//!
//! * the metric (probabilistic-distance) error D with its exact boundary
//!   curve and optimal approximator vectors ([`bounds`]);
//! * the noise measure ε with its tradeoff bound, the sharp approximators
//!   saturating it, and the λ-family of optimal pairs at maximal
//!   incompatibility ([`bounds`], [`measures`]);
//! * joint-measurability tests, joint observables, and outcome
//!   post-processing ([`compat`]);
//! * conditional minimizers over the compatibility region, alternating
//!   minimization, a seeded admissible-region sampler, and a brute-force
//!   grid oracle ([`optimize`]);
//! * executable reports of the scenarios where the noise measure signals a
//!   perfect approximation that is nothing of the sort ([`counterexamples`]).
//!
//! ```
//! use qmeas::bloch::BlochVector;
//! use qmeas::bounds::{branciard_lhs, yu_oh_point};
//!
//! // orthogonal targets: the metric boundary is a quarter circle …
//! let p = yu_oh_point(std::f64::consts::FRAC_PI_2, 0.6).unwrap();
//! assert!(((p.d_a - 1.0).powi(2) + (p.d_b - 1.0).powi(2) - 1.0).abs() < 1e-12);
//!
//! // … and the matching noise values saturate the noise bound
//! let eps_a = (2.0 * (1.0 - (0.6_f64).sin())).sqrt();
//! let eps_b = (2.0 * (1.0 - (0.6_f64).cos())).sqrt();
//! assert!((branciard_lhs(eps_a, eps_b, std::f64::consts::FRAC_PI_2) - 1.0).abs() < 1e-12);
//! ```

pub mod bloch;
pub mod bounds;
pub mod compat;
pub mod counterexamples;
mod error;
pub(crate) mod mat2;
pub mod measures;
pub mod operator;
pub mod optimize;
pub mod povm;
pub mod serial;
pub mod tol;

#[cfg(test)]
pub(crate) mod testutil;

pub use bloch::BlochVector;
pub use error::{Error, Result};
pub use measures::{ErrorPoint, Measure};
pub use operator::{DensityOperator, Effect, QubitOperator};
pub use povm::{DichotomicPovm, DiscretePovm, Sign};
