//! Error type shared across the crate.

use thiserror::Error;

use crate::optimize::IterationTrace;

/// Errors raised by constructors and operations.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// A constructor received NaN or an infinity.
    #[error("non-finite component in {0}")]
    NonFinite(&'static str),

    /// The operator fails the effect condition ‖v‖ ≤ min(α, 2−α).
    #[error("not an effect: alpha = {alpha}, ‖vec‖ = {vec_norm}")]
    NotAnEffect { alpha: f64, vec_norm: f64 },

    /// A state vector left the Bloch ball.
    #[error("invalid state: ‖r‖ = {norm} exceeds 1")]
    InvalidState { norm: f64 },

    /// Dichotomic positivity |γ| + ‖c‖ ≤ 1 violated.
    #[error("invalid dichotomic observable: |gamma| + ‖c‖ = {excess} exceeds 1")]
    InvalidDichotomic { excess: f64 },

    /// Effects of a discrete POVM do not sum to the identity.
    #[error("effects do not sum to identity: alpha sum = {alpha_sum}, ‖vec sum‖ = {vec_norm}")]
    NotNormalized { alpha_sum: f64, vec_norm: f64 },

    /// Outcome labels of a POVM must be distinct.
    #[error("duplicate outcome label {0}")]
    DuplicateOutcome(f64),

    /// Outcome and effect lists differ in length.
    #[error("length mismatch: {outcomes} outcomes vs {effects} effects")]
    LengthMismatch { outcomes: usize, effects: usize },

    /// A queried outcome label is not part of the POVM.
    #[error("unknown outcome label {0}")]
    UnknownOutcome(f64),

    /// A direction that must be a unit vector is not.
    #[error("{what} must be a unit vector, got norm {norm}")]
    NotUnit { what: &'static str, norm: f64 },

    /// Joint observable requested for an incompatible pair; carries the
    /// violation ‖c+d‖ + ‖c−d‖ − 2.
    #[error("incompatible pair: compatibility violated by {violation}")]
    Incompatible { violation: f64 },

    /// Two POVMs compared outcome-wise must share their outcome set.
    #[error("outcome sets do not match")]
    OutcomeMismatch,

    /// Subset enumeration is limited to small outcome sets.
    #[error("too many outcomes: {n} exceeds supported maximum {max}")]
    TooManyOutcomes { n: usize, max: usize },

    /// An outcome map does not cover every outcome of the POVM.
    #[error("outcome map does not cover outcome {0}")]
    IncompleteOutcomeMap(f64),

    /// Parameter outside its mathematical domain.
    #[error("domain error: {0}")]
    Domain(&'static str),

    /// An outcome probability fell below the post-selection guard.
    #[error("outcome {outcome} has probability {prob} below the guard")]
    LowProbabilityOutcome { outcome: f64, prob: f64 },

    /// Alternating minimization ran out of iterations; the partial trace is
    /// attached for inspection.
    #[error("no convergence within {iterations} iterations")]
    NoConvergence {
        iterations: usize,
        trace: Box<IterationTrace>,
    },

    /// Invalid optimizer configuration.
    #[error("invalid optimizer config: {0}")]
    InvalidConfig(&'static str),

    /// Malformed POVM or state JSON.
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
