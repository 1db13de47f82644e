//! Qubit operators, effects, and states in Bloch form.
//!
//! Every selfadjoint qubit operator is written A = ½(αI + a·σ), stored as the
//! pair (α, a). Eigenvalues are ½(α ± ‖a‖), so positivity and the effect
//! condition are one comparison each; no matrix backend is needed for the
//! Hermitian algebra used throughout.

use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::bloch::BlochVector;
use crate::error::{Error, Result};
use crate::tol::TOL_POS;

/// A selfadjoint operator ½(αI + vec·σ).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QubitOperator {
    alpha: f64,
    vec: BlochVector,
}

impl QubitOperator {
    pub fn new(alpha: f64, vec: BlochVector) -> Result<Self> {
        if !alpha.is_finite() {
            return Err(Error::NonFinite("QubitOperator alpha"));
        }
        Ok(QubitOperator { alpha: alpha + 0.0, vec })
    }

    pub(crate) fn raw(alpha: f64, vec: BlochVector) -> Self {
        debug_assert!(alpha.is_finite());
        QubitOperator { alpha: alpha + 0.0, vec }
    }

    pub fn zero() -> Self {
        QubitOperator::raw(0.0, BlochVector::ZERO)
    }

    pub fn identity() -> Self {
        QubitOperator::raw(2.0, BlochVector::ZERO)
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn vec(&self) -> BlochVector {
        self.vec
    }

    /// tr A = α.
    pub fn trace(&self) -> f64 {
        self.alpha
    }

    /// Eigenvalues ½(α ∓ ‖vec‖), returned (low, high).
    pub fn eigenvalues(&self) -> (f64, f64) {
        let n = self.vec.norm();
        (0.5 * (self.alpha - n), 0.5 * (self.alpha + n))
    }

    /// Operator norm ½(|α| + ‖vec‖): the largest absolute eigenvalue.
    pub fn operator_norm(&self) -> f64 {
        0.5 * (self.alpha.abs() + self.vec.norm())
    }

    /// A², again selfadjoint: ½(½(α² + ‖v‖²)I + α v·σ).
    pub fn squared(&self) -> QubitOperator {
        QubitOperator::raw(
            0.5 * (self.alpha * self.alpha + self.vec.norm_sq()),
            self.vec * self.alpha,
        )
    }

    /// tr[ρA] = ½(α + vec·r).
    pub fn expectation(&self, state: &DensityOperator) -> f64 {
        0.5 * (self.alpha + self.vec.dot(&state.bloch()))
    }
}

impl Add for QubitOperator {
    type Output = QubitOperator;
    fn add(self, rhs: QubitOperator) -> QubitOperator {
        QubitOperator::raw(self.alpha + rhs.alpha, self.vec + rhs.vec)
    }
}

impl Sub for QubitOperator {
    type Output = QubitOperator;
    fn sub(self, rhs: QubitOperator) -> QubitOperator {
        QubitOperator::raw(self.alpha - rhs.alpha, self.vec - rhs.vec)
    }
}

impl Mul<f64> for QubitOperator {
    type Output = QubitOperator;
    fn mul(self, s: f64) -> QubitOperator {
        QubitOperator::raw(self.alpha * s, self.vec * s)
    }
}

impl Neg for QubitOperator {
    type Output = QubitOperator;
    fn neg(self) -> QubitOperator {
        self * -1.0
    }
}

/// Re tr[P Q ρ] for selfadjoint P = ½(pI + p⃗·σ), Q = ½(qI + q⃗·σ) and the
/// state with Bloch vector r: ¼(pq + p⃗·q⃗ + (p q⃗ + q p⃗)·r). The imaginary
/// cross-product part of PQ drops out under the real part.
pub(crate) fn re_tr_product_state(p: &QubitOperator, q: &QubitOperator, r: &BlochVector) -> f64 {
    0.25 * (p.alpha * q.alpha
        + p.vec.dot(&q.vec)
        + (q.vec * p.alpha + p.vec * q.alpha).dot(r))
}

/// An operator with 0 ≤ E ≤ I, i.e. ‖vec‖ ≤ min(α, 2−α).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "QubitOperator", into = "QubitOperator")]
pub struct Effect(QubitOperator);

impl Effect {
    pub fn new(op: QubitOperator) -> Result<Self> {
        let n = op.vec.norm();
        if n > op.alpha.min(2.0 - op.alpha) + TOL_POS {
            return Err(Error::NotAnEffect { alpha: op.alpha, vec_norm: n });
        }
        Ok(Effect(op))
    }

    pub fn from_parts(alpha: f64, vec: BlochVector) -> Result<Self> {
        Effect::new(QubitOperator::new(alpha, vec)?)
    }

    pub fn zero() -> Self {
        Effect(QubitOperator::zero())
    }

    pub fn identity() -> Self {
        Effect(QubitOperator::identity())
    }

    /// Sharp projector ½(I + n·σ) onto the +1 eigenspace along unit `n`.
    pub fn projector(direction: BlochVector) -> Result<Self> {
        if !direction.is_unit(TOL_POS) {
            return Err(Error::NotUnit { what: "projector direction", norm: direction.norm() });
        }
        Ok(Effect(QubitOperator::raw(1.0, direction)))
    }

    pub fn op(&self) -> QubitOperator {
        self.0
    }

    pub fn alpha(&self) -> f64 {
        self.0.alpha
    }

    pub fn vec(&self) -> BlochVector {
        self.0.vec
    }

    /// I − E, an effect whenever E is.
    pub fn complement(&self) -> Effect {
        Effect(QubitOperator::identity() - self.0)
    }

    /// Outcome probability tr[ρE] in the given state.
    pub fn probability(&self, state: &DensityOperator) -> f64 {
        self.0.expectation(state)
    }
}

impl TryFrom<QubitOperator> for Effect {
    type Error = Error;
    fn try_from(op: QubitOperator) -> Result<Self> {
        Effect::new(op)
    }
}

impl From<Effect> for QubitOperator {
    fn from(e: Effect) -> QubitOperator {
        e.0
    }
}

/// A density operator ½(I + r·σ) with 0 ≤ ‖r‖ ≤ 1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "BlochVector", into = "BlochVector")]
pub struct DensityOperator {
    r: BlochVector,
}

impl DensityOperator {
    pub fn new(r: BlochVector) -> Result<Self> {
        let n = r.norm();
        if n > 1.0 + TOL_POS {
            return Err(Error::InvalidState { norm: n });
        }
        Ok(DensityOperator { r })
    }

    /// Pure state along a unit Bloch vector.
    pub fn pure(direction: BlochVector) -> Result<Self> {
        if !direction.is_unit(TOL_POS) {
            return Err(Error::NotUnit { what: "pure state direction", norm: direction.norm() });
        }
        Ok(DensityOperator { r: direction })
    }

    pub fn maximally_mixed() -> Self {
        DensityOperator { r: BlochVector::ZERO }
    }

    pub fn bloch(&self) -> BlochVector {
        self.r
    }

    pub fn as_operator(&self) -> QubitOperator {
        QubitOperator::raw(1.0, self.r)
    }
}

impl TryFrom<BlochVector> for DensityOperator {
    type Error = Error;
    fn try_from(r: BlochVector) -> Result<Self> {
        DensityOperator::new(r)
    }
}

impl From<DensityOperator> for BlochVector {
    fn from(d: DensityOperator) -> BlochVector {
        d.r
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn operator_norm_examples() {
        let a = QubitOperator::raw(0.0, BlochVector::X);
        assert_eq!(a.operator_norm(), 0.5);
        assert_eq!(QubitOperator::identity().operator_norm(), 1.0);
        let p = QubitOperator::raw(1.0, BlochVector::Z);
        assert_eq!(p.operator_norm(), 1.0);
    }

    #[test]
    fn effect_condition_boundary() {
        assert!(Effect::from_parts(1.0, BlochVector::X).is_ok());
        assert!(Effect::from_parts(0.5, BlochVector::X).is_err());
        assert!(Effect::from_parts(1.5, BlochVector::X * 0.5).is_ok());
        assert!(Effect::from_parts(1.9, BlochVector::X * 0.2).is_err());
        assert!(Effect::from_parts(-0.1, BlochVector::ZERO).is_err());
        assert!(Effect::from_parts(2.1, BlochVector::ZERO).is_err());
    }

    #[test]
    fn squared_matches_expansion() {
        let h = QubitOperator::raw(0.7, BlochVector::raw(0.2, -0.4, 0.1));
        let sq = h.squared();
        // eigenvalues of H² are the squared eigenvalues of H
        let (lo, hi) = h.eigenvalues();
        let (slo, shi) = sq.eigenvalues();
        let mut want = [lo * lo, hi * hi];
        want.sort_by(f64::total_cmp);
        assert!((slo - want[0]).abs() < 1e-15);
        assert!((shi - want[1]).abs() < 1e-15);
    }

    #[test]
    fn state_ball_enforced() {
        assert!(DensityOperator::new(BlochVector::raw(0.6, 0.6, 0.6)).is_err());
        assert!(DensityOperator::new(BlochVector::Z).is_ok());
    }
}
