//! JSON wire schema for POVMs and states.
//!
//! Two interchangeable spellings are accepted:
//!
//! * general: `{"outcomes": [...], "effects": [{"alpha": ..., "vec": [x, y, z]}, ...]}`
//! * dichotomic shorthand: `{"gamma": ..., "c": [x, y, z]}`
//!
//! States are bare Bloch vectors `[x, y, z]`.

use serde::{Deserialize, Serialize};

use crate::bloch::BlochVector;
use crate::error::{Error, Result};
use crate::operator::{DensityOperator, Effect};
use crate::povm::{DichotomicPovm, DiscretePovm};

/// A POVM as it appears on the wire.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PovmSpec {
    Dichotomic { gamma: f64, c: BlochVector },
    General { outcomes: Vec<f64>, effects: Vec<EffectSpec> },
}

/// An effect as `{"alpha": ..., "vec": [x, y, z]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EffectSpec {
    pub alpha: f64,
    pub vec: BlochVector,
}

impl PovmSpec {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    /// Validated n-outcome form (the shorthand expands to outcomes ±1).
    pub fn to_discrete(&self) -> Result<DiscretePovm> {
        match self {
            PovmSpec::Dichotomic { gamma, c } => Ok(DichotomicPovm::new(*gamma, *c)?.to_discrete()),
            PovmSpec::General { outcomes, effects } => {
                let effects = effects
                    .iter()
                    .map(|e| Effect::from_parts(e.alpha, e.vec))
                    .collect::<Result<Vec<_>>>()?;
                DiscretePovm::new(outcomes.clone(), effects)
            }
        }
    }

    /// Validated dichotomic form. A general spec qualifies when its outcome
    /// set is exactly {+1, −1}.
    pub fn to_dichotomic(&self) -> Result<DichotomicPovm> {
        match self {
            PovmSpec::Dichotomic { gamma, c } => DichotomicPovm::new(*gamma, *c),
            PovmSpec::General { .. } => {
                let povm = self.to_discrete()?;
                if povm.n_outcomes() != 2 {
                    return Err(Error::Parse("expected a two-outcome observable".into()));
                }
                let plus = povm.index_of(1.0).ok_or(Error::UnknownOutcome(1.0))?;
                if povm.index_of(-1.0).is_none() {
                    return Err(Error::UnknownOutcome(-1.0));
                }
                let e = povm.effects()[plus];
                DichotomicPovm::new(e.alpha() - 1.0, e.vec())
            }
        }
    }

    pub fn from_dichotomic(povm: &DichotomicPovm) -> Self {
        PovmSpec::Dichotomic { gamma: povm.gamma(), c: povm.direction() }
    }

    pub fn from_discrete(povm: &DiscretePovm) -> Self {
        PovmSpec::General {
            outcomes: povm.outcomes().to_vec(),
            effects: povm
                .effects()
                .iter()
                .map(|e| EffectSpec { alpha: e.alpha(), vec: e.vec() })
                .collect(),
        }
    }
}

/// Parses a state from `[x, y, z]`.
pub fn parse_state(text: &str) -> Result<DensityOperator> {
    let r: BlochVector = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    DensityOperator::new(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shorthand_parses() {
        let spec = PovmSpec::parse(r#"{"gamma": 0.25, "c": [0.5, 0.0, 0.0]}"#).unwrap();
        let povm = spec.to_dichotomic().unwrap();
        assert_eq!(povm.gamma(), 0.25);
        assert_eq!(povm.direction(), BlochVector::X * 0.5);
    }

    #[test]
    fn general_form_parses_and_roundtrips() {
        let text = r#"{"outcomes": [1.0, -1.0], "effects": [
            {"alpha": 1.0, "vec": [0.0, 0.0, 1.0]},
            {"alpha": 1.0, "vec": [0.0, 0.0, -1.0]}
        ]}"#;
        let spec = PovmSpec::parse(text).unwrap();
        let povm = spec.to_discrete().unwrap();
        assert_eq!(povm.n_outcomes(), 2);
        let back = PovmSpec::from_discrete(&povm);
        let reparsed = PovmSpec::parse(&serde_json::to_string(&back).unwrap()).unwrap();
        assert_eq!(back, reparsed);
        // ±1 outcomes also qualify as a dichotomic observable
        let dich = spec.to_dichotomic().unwrap();
        assert_eq!(dich.gamma(), 0.0);
        assert_eq!(dich.direction(), BlochVector::Z);
    }

    #[test]
    fn invalid_inputs_rejected() {
        assert!(PovmSpec::parse("not json").is_err());
        // positivity violated
        let spec = PovmSpec::parse(r#"{"gamma": 0.9, "c": [0.5, 0.0, 0.0]}"#).unwrap();
        assert!(spec.to_dichotomic().is_err());
        // effects must sum to identity
        let bad = PovmSpec::parse(
            r#"{"outcomes": [0.0, 1.0], "effects": [
                {"alpha": 1.0, "vec": [0.0, 0.0, 1.0]},
                {"alpha": 0.5, "vec": [0.0, 0.0, -0.5]}
            ]}"#,
        )
        .unwrap();
        assert!(bad.to_discrete().is_err());
    }

    #[test]
    fn state_parses() {
        let s = parse_state("[0.0, 0.5, 0.0]").unwrap();
        assert_eq!(s.bloch(), BlochVector::Y * 0.5);
        assert!(parse_state("[1.0, 1.0, 1.0]").is_err());
    }
}
