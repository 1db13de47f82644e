//! Discrete qubit POVMs.
//!
//! The central object is the ±1-valued [`DichotomicPovm`] with effects
//! C± = ½((1±γ)I ± c·σ); positivity is |γ| + ‖c‖ ≤ 1 and the observable is
//! called symmetric (unbiased) when γ = 0. [`DiscretePovm`] covers n-outcome
//! observables with real outcome labels, as needed for post-processing
//! constructions.

use serde::{Deserialize, Serialize};

use crate::bloch::BlochVector;
use crate::error::{Error, Result};
use crate::operator::{DensityOperator, Effect, QubitOperator};
use crate::tol::TOL_POS;

/// One of the two outcomes of a dichotomic observable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(&self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    pub const BOTH: [Sign; 2] = [Sign::Plus, Sign::Minus];
}

/// A ±1-valued qubit POVM with bias γ and direction c.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DichotomicPovm {
    gamma: f64,
    c: BlochVector,
}

impl DichotomicPovm {
    pub fn new(gamma: f64, c: BlochVector) -> Result<Self> {
        if !gamma.is_finite() {
            return Err(Error::NonFinite("DichotomicPovm gamma"));
        }
        let excess = gamma.abs() + c.norm();
        if excess > 1.0 + TOL_POS {
            return Err(Error::InvalidDichotomic { excess });
        }
        Ok(DichotomicPovm { gamma: gamma + 0.0, c })
    }

    /// Unbiased observable with direction c.
    pub fn symmetric(c: BlochVector) -> Result<Self> {
        DichotomicPovm::new(0.0, c)
    }

    /// Sharp observable along a unit vector.
    pub fn sharp(direction: BlochVector) -> Result<Self> {
        if !direction.is_unit(TOL_POS) {
            return Err(Error::NotUnit { what: "sharp direction", norm: direction.norm() });
        }
        DichotomicPovm::new(0.0, direction)
    }

    /// The coin-flip observable with both effects ½I.
    pub fn trivial() -> Self {
        DichotomicPovm { gamma: 0.0, c: BlochVector::ZERO }
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn direction(&self) -> BlochVector {
        self.c
    }

    pub fn is_symmetric(&self) -> bool {
        self.gamma == 0.0
    }

    /// C± = ½((1±γ)I ± c·σ).
    pub fn effect(&self, sign: Sign) -> Effect {
        let s = sign.value();
        let op = QubitOperator::raw(1.0 + s * self.gamma, self.c * s);
        Effect::new(op).expect("effects of a valid dichotomic POVM are valid")
    }

    pub fn probability(&self, sign: Sign, state: &DensityOperator) -> f64 {
        self.effect(sign).probability(state)
    }

    /// C[1] = γI + c·σ.
    pub fn first_moment(&self) -> QubitOperator {
        QubitOperator::raw(2.0 * self.gamma, self.c * 2.0)
    }

    /// C[k]: the identity for even k (outcomes are ±1), C[1] for odd k.
    pub fn moment(&self, k: u32) -> QubitOperator {
        if k.is_multiple_of(2) {
            QubitOperator::identity()
        } else {
            self.first_moment()
        }
    }

    pub fn to_discrete(&self) -> DiscretePovm {
        DiscretePovm::new(
            vec![1.0, -1.0],
            vec![self.effect(Sign::Plus), self.effect(Sign::Minus)],
        )
        .expect("a valid dichotomic POVM is a valid discrete POVM")
    }
}

/// An n-outcome qubit POVM with real outcome labels.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiscretePovm {
    outcomes: Vec<f64>,
    effects: Vec<Effect>,
}

impl DiscretePovm {
    /// Builds a POVM, checking label distinctness and Σᵢ Eᵢ = I.
    pub fn new(outcomes: Vec<f64>, effects: Vec<Effect>) -> Result<Self> {
        if outcomes.len() != effects.len() {
            return Err(Error::LengthMismatch {
                outcomes: outcomes.len(),
                effects: effects.len(),
            });
        }
        if outcomes.is_empty() {
            return Err(Error::Domain("a POVM needs at least one outcome"));
        }
        for &m in &outcomes {
            if !m.is_finite() {
                return Err(Error::NonFinite("outcome label"));
            }
        }
        let mut sorted = outcomes.clone();
        sorted.sort_by(f64::total_cmp);
        for w in sorted.windows(2) {
            if w[0] == w[1] {
                return Err(Error::DuplicateOutcome(w[0]));
            }
        }
        let alpha_sum: f64 = effects.iter().map(|e| e.alpha()).sum();
        let vec_sum = effects
            .iter()
            .fold(BlochVector::ZERO, |acc, e| acc + e.vec());
        if (alpha_sum - 2.0).abs() > TOL_POS || vec_sum.norm() > TOL_POS {
            return Err(Error::NotNormalized { alpha_sum, vec_norm: vec_sum.norm() });
        }
        Ok(DiscretePovm { outcomes, effects })
    }

    /// Sharp ±1 observable along a unit vector, as a two-outcome POVM.
    pub fn sharp(direction: BlochVector) -> Result<Self> {
        Ok(DichotomicPovm::sharp(direction)?.to_discrete())
    }

    /// Sharp observable with projectors along ±`direction` and arbitrary
    /// distinct labels (`plus_label` on the +direction projector).
    pub fn sharp_labeled(direction: BlochVector, plus_label: f64, minus_label: f64) -> Result<Self> {
        let p = Effect::projector(direction)?;
        DiscretePovm::new(vec![plus_label, minus_label], vec![p, p.complement()])
    }

    pub fn n_outcomes(&self) -> usize {
        self.outcomes.len()
    }

    pub fn outcomes(&self) -> &[f64] {
        &self.outcomes
    }

    pub fn effects(&self) -> &[Effect] {
        &self.effects
    }

    pub fn index_of(&self, outcome: f64) -> Option<usize> {
        self.outcomes.iter().position(|&m| m == outcome)
    }

    /// Born probability tr[ρ E_outcome]; unknown labels are an error.
    pub fn probability(&self, outcome: f64, state: &DensityOperator) -> Result<f64> {
        let i = self
            .index_of(outcome)
            .ok_or(Error::UnknownOutcome(outcome))?;
        Ok(self.effects[i].probability(state))
    }

    pub fn probabilities(&self, state: &DensityOperator) -> Vec<f64> {
        self.effects.iter().map(|e| e.probability(state)).collect()
    }

    /// k-th moment operator Σᵢ mᵢᵏ Eᵢ.
    pub fn moment(&self, k: u32) -> QubitOperator {
        self.outcomes
            .iter()
            .zip(&self.effects)
            .fold(QubitOperator::zero(), |acc, (&m, e)| {
                acc + e.op() * m.powi(k as i32)
            })
    }

    pub fn first_moment(&self) -> QubitOperator {
        self.moment(1)
    }
}
