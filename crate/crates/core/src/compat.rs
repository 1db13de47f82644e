//! Joint measurability of symmetric dichotomic observables, explicit joint
//! observables, and post-processing of a measured POVM.
//!
//! For unbiased qubit pairs, joint measurability is the closed-form criterion
//! ‖c+d‖ + ‖c−d‖ ≤ 2 on the effect directions. On the saturated boundary the
//! equivalent algebraic forms ‖c‖² + ‖d‖² = 1 + (c·d)² and ‖c±d‖ = 1 ± c·d
//! hold; these drive the tradeoff bounds elsewhere in the crate.

use serde::{Deserialize, Serialize};

use crate::bloch::BlochVector;
use crate::error::{Error, Result};
use crate::operator::{Effect, QubitOperator};
use crate::povm::{DichotomicPovm, DiscretePovm, Sign};
use crate::tol::TOL_POS;

/// ‖c+d‖ + ‖c−d‖ − 2: positive iff the pair is incompatible.
pub fn compat_violation(c: &BlochVector, d: &BlochVector) -> f64 {
    (*c + *d).norm() + (*c - *d).norm() - 2.0
}

/// Joint measurability of the symmetric dichotomic observables with effect
/// directions `c` and `d` (both inside the unit ball).
pub fn compatible(c: &BlochVector, d: &BlochVector) -> bool {
    compat_violation(c, d) <= TOL_POS
}

/// ‖c‖² + ‖d‖² − 1 − (c·d)².
///
/// Vanishes exactly on the saturated boundary ‖c+d‖ + ‖c−d‖ = 2, and for
/// directions inside the unit ball it is ≤ 0 precisely on compatible pairs.
pub fn compat_boundary_residual(c: &BlochVector, d: &BlochVector) -> f64 {
    let m = c.dot(d);
    c.norm_sq() + d.norm_sq() - 1.0 - m * m
}

/// Unsharpness U(C) = √(1 − ‖c‖²) of a symmetric dichotomic observable.
pub fn unsharpness(c: &BlochVector) -> f64 {
    (1.0 - c.norm_sq()).max(0.0).sqrt()
}

/// ‖[C₊, D₊]‖ = ½‖c×d‖ for symmetric dichotomic effects.
pub fn commutator_norm(c: &BlochVector, d: &BlochVector) -> f64 {
    0.5 * c.cross(d).norm()
}

/// The four-effect joint observable of a compatible symmetric pair, with
/// J(k,ℓ) = ¼(1 + kℓM)I + ¼(kc + ℓd)·σ and M = c·d.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct JointObservable {
    c: BlochVector,
    d: BlochVector,
    m: f64,
    effects: [Effect; 4],
}

impl JointObservable {
    pub fn mixing(&self) -> f64 {
        self.m
    }

    pub fn effect(&self, k: Sign, l: Sign) -> Effect {
        let idx = match (k, l) {
            (Sign::Plus, Sign::Plus) => 0,
            (Sign::Plus, Sign::Minus) => 1,
            (Sign::Minus, Sign::Plus) => 2,
            (Sign::Minus, Sign::Minus) => 3,
        };
        self.effects[idx]
    }

    /// Marginal over the second outcome: the observable with direction c.
    pub fn marginal_first(&self) -> DichotomicPovm {
        DichotomicPovm::symmetric(self.c).expect("marginal of a valid joint observable")
    }

    /// Marginal over the first outcome: the observable with direction d.
    pub fn marginal_second(&self) -> DichotomicPovm {
        DichotomicPovm::symmetric(self.d).expect("marginal of a valid joint observable")
    }
}

/// Builds the joint observable of a compatible pair; an incompatible pair is
/// rejected with the violation amount attached.
pub fn joint_observable(c: &BlochVector, d: &BlochVector) -> Result<JointObservable> {
    let violation = compat_violation(c, d);
    if violation > TOL_POS {
        return Err(Error::Incompatible { violation });
    }
    let m = c.dot(d);
    let mut effects = [Effect::zero(); 4];
    for (idx, (k, l)) in [(1.0, 1.0), (1.0, -1.0), (-1.0, 1.0), (-1.0, -1.0)]
        .into_iter()
        .enumerate()
    {
        let op = QubitOperator::raw(0.5 * (1.0 + k * l * m), (*c * k + *d * l) * 0.5);
        effects[idx] = Effect::new(op)?;
    }
    Ok(JointObservable { c: *c, d: *d, m, effects })
}

/// A total map from the outcome labels of a POVM to new real values.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutcomeMap {
    entries: Vec<(f64, f64)>,
}

impl OutcomeMap {
    pub fn from_pairs(entries: Vec<(f64, f64)>) -> Result<Self> {
        for &(m, v) in &entries {
            if !m.is_finite() || !v.is_finite() {
                return Err(Error::NonFinite("OutcomeMap entry"));
            }
        }
        let mut inputs: Vec<f64> = entries.iter().map(|e| e.0).collect();
        inputs.sort_by(f64::total_cmp);
        for w in inputs.windows(2) {
            if w[0] == w[1] {
                return Err(Error::DuplicateOutcome(w[0]));
            }
        }
        Ok(OutcomeMap { entries })
    }

    /// Tabulates `f` on the given outcome labels.
    pub fn tabulate(outcomes: &[f64], mut f: impl FnMut(f64) -> f64) -> Result<Self> {
        OutcomeMap::from_pairs(outcomes.iter().map(|&m| (m, f(m))).collect())
    }

    pub fn identity(outcomes: &[f64]) -> Self {
        OutcomeMap::tabulate(outcomes, |m| m).expect("identity map over valid labels")
    }

    pub fn constant(outcomes: &[f64], value: f64) -> Result<Self> {
        OutcomeMap::tabulate(outcomes, |_| value)
    }

    pub fn value(&self, outcome: f64) -> Option<f64> {
        self.entries
            .iter()
            .find(|&&(m, _)| m == outcome)
            .map(|&(_, v)| v)
    }

    pub fn entries(&self) -> &[(f64, f64)] {
        &self.entries
    }

    /// The composition g∘self, defined on self's inputs.
    pub fn then(&self, g: &OutcomeMap) -> Result<OutcomeMap> {
        let entries = self
            .entries
            .iter()
            .map(|&(m, v)| {
                g.value(v)
                    .map(|w| (m, w))
                    .ok_or(Error::IncompleteOutcomeMap(v))
            })
            .collect::<Result<Vec<_>>>()?;
        OutcomeMap::from_pairs(entries)
    }
}

/// Relabels/coarse-grains a POVM through `f`: the new outcome set is the image
/// f(Ω) (ordered by first occurrence) and each new effect is the sum over the
/// preimage bin.
pub fn post_process(e: &DiscretePovm, f: &OutcomeMap) -> Result<DiscretePovm> {
    let mut outcomes: Vec<f64> = Vec::new();
    let mut ops: Vec<QubitOperator> = Vec::new();
    for (&m, effect) in e.outcomes().iter().zip(e.effects()) {
        let v = f.value(m).ok_or(Error::IncompleteOutcomeMap(m))?;
        match outcomes.iter().position(|&c| c == v) {
            Some(i) => ops[i] = ops[i] + effect.op(),
            None => {
                outcomes.push(v);
                ops.push(effect.op());
            }
        }
    }
    let effects = ops.into_iter().map(Effect::new).collect::<Result<Vec<_>>>()?;
    DiscretePovm::new(outcomes, effects)
}

/// Joint POVM on the product grid f(Ω) × g(Ω), with zero effects on bins whose
/// preimages do not intersect.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProductPovm {
    row_outcomes: Vec<f64>,
    col_outcomes: Vec<f64>,
    /// Row-major: effect of (row i, col j) at index i * n_cols + j.
    effects: Vec<Effect>,
}

impl ProductPovm {
    pub fn row_outcomes(&self) -> &[f64] {
        &self.row_outcomes
    }

    pub fn col_outcomes(&self) -> &[f64] {
        &self.col_outcomes
    }

    pub fn effect(&self, row: usize, col: usize) -> Effect {
        self.effects[row * self.col_outcomes.len() + col]
    }

    /// Marginal over columns; equals `post_process(e, f)`.
    pub fn marginal_rows(&self) -> Result<DiscretePovm> {
        let n = self.col_outcomes.len();
        let effects = self
            .row_outcomes
            .iter()
            .enumerate()
            .map(|(i, _)| {
                let op = (0..n).fold(QubitOperator::zero(), |acc, j| {
                    acc + self.effects[i * n + j].op()
                });
                Effect::new(op)
            })
            .collect::<Result<Vec<_>>>()?;
        DiscretePovm::new(self.row_outcomes.clone(), effects)
    }

    /// Marginal over rows; equals `post_process(e, g)`.
    pub fn marginal_cols(&self) -> Result<DiscretePovm> {
        let n = self.col_outcomes.len();
        let effects = self
            .col_outcomes
            .iter()
            .enumerate()
            .map(|(j, _)| {
                let op = (0..self.row_outcomes.len()).fold(QubitOperator::zero(), |acc, i| {
                    acc + self.effects[i * n + j].op()
                });
                Effect::new(op)
            })
            .collect::<Result<Vec<_>>>()?;
        DiscretePovm::new(self.col_outcomes.clone(), effects)
    }
}

/// Builds the joint POVM J(cₖ, dₗ) = Σ_m χ_{f⁻¹(cₖ) ∩ g⁻¹(dₗ)}(m) E(m) whose
/// marginals are the two post-processed observables.
pub fn joint_from_functions(
    e: &DiscretePovm,
    f: &OutcomeMap,
    g: &OutcomeMap,
) -> Result<ProductPovm> {
    let rows = image_in_order(e, f)?;
    let cols = image_in_order(e, g)?;
    let n_cols = cols.len();
    let mut ops = vec![QubitOperator::zero(); rows.len() * n_cols];
    for (&m, effect) in e.outcomes().iter().zip(e.effects()) {
        let fv = f.value(m).ok_or(Error::IncompleteOutcomeMap(m))?;
        let gv = g.value(m).ok_or(Error::IncompleteOutcomeMap(m))?;
        let i = rows.iter().position(|&c| c == fv).expect("fv is in the image");
        let j = cols.iter().position(|&c| c == gv).expect("gv is in the image");
        ops[i * n_cols + j] = ops[i * n_cols + j] + effect.op();
    }
    let effects = ops.into_iter().map(Effect::new).collect::<Result<Vec<_>>>()?;
    Ok(ProductPovm { row_outcomes: rows, col_outcomes: cols, effects })
}

fn image_in_order(e: &DiscretePovm, f: &OutcomeMap) -> Result<Vec<f64>> {
    let mut image: Vec<f64> = Vec::new();
    for &m in e.outcomes() {
        let v = f.value(m).ok_or(Error::IncompleteOutcomeMap(m))?;
        if !image.contains(&v) {
            image.push(v);
        }
    }
    Ok(image)
}
