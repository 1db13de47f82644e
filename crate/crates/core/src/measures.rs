//! Error quantifications for approximate measurements.
//!
//! Two families are implemented and deliberately kept side by side:
//!
//! * the metric (probabilistic-distance) error D, a state-independent
//!   distance between observables: D(C,A) = 2 maxₓ ‖Σ_{i∈X}(Aᵢ − Cᵢ)‖,
//!   which reduces to 2‖A₊ − C₊‖ for dichotomic pairs and to ‖a − c‖ for
//!   symmetric ones;
//! * the noise measure ε, a state-dependent first/second-moment quantity:
//!   ε² = ⟨(C[1] − A)²⟩_ρ + ⟨C[2] − C[1]²⟩_ρ, with value-comparison form
//!   ε² = Σᵢⱼ (aᵢ − aⱼ)² Re tr[Aᵢ Cⱼ ρ] on a shared outcome set and the
//!   closed qubit forms ε² = ‖a−c‖² + 1 − ‖c‖² (symmetric) and
//!   ε² = 2(1 − a·(c + γr)) (biased).
//!
//! All functions return the error itself; `_sq` variants return its square
//! for use in bound formulas.

use serde::{Deserialize, Serialize};

use crate::bloch::BlochVector;
use crate::error::{Error, Result};
use crate::mat2::Mat2;
use crate::operator::{re_tr_product_state, DensityOperator, QubitOperator};
use crate::povm::{DichotomicPovm, DiscretePovm};
use crate::tol::TOL_EIG;

/// Which error quantification a value was computed with.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Measure {
    /// Probabilistic-distance (metric) error D.
    MetricD,
    /// Noise measure ε.
    NoiseEps,
}

impl Measure {
    pub fn label(&self) -> &'static str {
        match self {
            Measure::MetricD => "metric",
            Measure::NoiseEps => "noise",
        }
    }
}

impl std::str::FromStr for Measure {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "metric" => Ok(Measure::MetricD),
            "noise" => Ok(Measure::NoiseEps),
            _ => Err(Error::Parse(format!("unknown measure `{s}`"))),
        }
    }
}

/// A pair of error values against the two targets, tagged with the measure.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ErrorPoint {
    pub e_a: f64,
    pub e_b: f64,
    pub measure: Measure,
}

impl ErrorPoint {
    pub fn new(measure: Measure, e_a: f64, e_b: f64) -> Result<Self> {
        if !(e_a.is_finite() && e_b.is_finite()) {
            return Err(Error::NonFinite("ErrorPoint"));
        }
        if e_a < 0.0 || e_b < 0.0 {
            return Err(Error::Domain("error values must be nonnegative"));
        }
        Ok(ErrorPoint { e_a, e_b, measure })
    }
}

/// D(C,A) = 2‖A₊ − C₊‖ for dichotomic observables; evaluates to
/// |γ_A − γ_C| + ‖a − c‖ in Bloch form.
pub fn metric_error_dichotomic(a: &DichotomicPovm, c: &DichotomicPovm) -> f64 {
    let diff = a.effect(crate::povm::Sign::Plus).op() - c.effect(crate::povm::Sign::Plus).op();
    2.0 * diff.operator_norm()
}

/// D for symmetric pairs: ‖a − c‖.
pub fn metric_error_symmetric(a: &BlochVector, c: &BlochVector) -> f64 {
    (*a - *c).norm()
}

const MAX_METRIC_OUTCOMES: usize = 16;

/// D(C,A) = 2 maxₓ ‖Σ_{aᵢ∈X}(Aᵢ − Cᵢ)‖ over nonempty proper subsets X of a
/// shared outcome set (at most 16 outcomes).
pub fn metric_error_general(a: &DiscretePovm, c: &DiscretePovm) -> Result<f64> {
    let n = a.n_outcomes();
    if n > MAX_METRIC_OUTCOMES {
        return Err(Error::TooManyOutcomes { n, max: MAX_METRIC_OUTCOMES });
    }
    // align C's effects with A's outcome order
    let diffs: Vec<QubitOperator> = a
        .outcomes()
        .iter()
        .zip(a.effects())
        .map(|(&m, ea)| {
            let j = c.index_of(m).ok_or(Error::OutcomeMismatch)?;
            Ok(ea.op() - c.effects()[j].op())
        })
        .collect::<Result<Vec<_>>>()?;
    if c.n_outcomes() != n {
        return Err(Error::OutcomeMismatch);
    }
    let full: u32 = (1u32 << n) - 1;
    let mut best = 0.0_f64;
    for mask in 1..full {
        let mut acc = QubitOperator::zero();
        for (i, d) in diffs.iter().enumerate() {
            if mask & (1 << i) != 0 {
                acc = acc + *d;
            }
        }
        best = best.max(acc.operator_norm());
    }
    Ok(2.0 * best)
}

/// Noise ε(C,A,ρ) for a shared outcome set, via the value-comparison form
/// Σᵢⱼ (aᵢ − aⱼ)² Re tr[Aᵢ Cⱼ ρ]. Errors if the outcome sets differ.
pub fn noise_value_form(
    a: &DiscretePovm,
    c: &DiscretePovm,
    state: &DensityOperator,
) -> Result<f64> {
    if !same_outcome_set(a, c) {
        return Err(Error::OutcomeMismatch);
    }
    let r = state.bloch();
    let mut sq = 0.0;
    for (&ai, ea) in a.outcomes().iter().zip(a.effects()) {
        for (&cj, ec) in c.outcomes().iter().zip(c.effects()) {
            let w = (ai - cj) * (ai - cj);
            if w == 0.0 {
                continue;
            }
            sq += w * re_tr_product_state(&ea.op(), &ec.op(), &r);
        }
    }
    Ok(sq.max(0.0).sqrt())
}

/// Noise ε in the moment form ⟨(C[1] − A)²⟩_ρ + ⟨C[2] − C[1]²⟩_ρ, where `target`
/// is the first moment operator of the (sharp) target observable. Works for
/// any outcome labeling of C; evaluated through the complex matrix backend.
pub fn noise_moment_form(
    target: &QubitOperator,
    c: &DiscretePovm,
    state: &DensityOperator,
) -> f64 {
    let c1 = Mat2::from_operator(&c.first_moment());
    let c2 = Mat2::from_operator(&c.moment(2));
    let a = Mat2::from_operator(target);
    let diff = c1 - a;
    let sq = (diff * diff + c2 - c1 * c1).re_expectation(state);
    sq.max(0.0).sqrt()
}

/// Noise ε(C,A,ρ). Uses the value-comparison form when the outcome sets
/// match, otherwise the moment form with A's first moment operator (the two
/// agree whenever both apply and the target is sharp).
pub fn noise_general(a: &DiscretePovm, c: &DiscretePovm, state: &DensityOperator) -> f64 {
    if same_outcome_set(a, c) {
        noise_value_form(a, c, state).expect("outcome sets match")
    } else {
        noise_moment_form(&a.first_moment(), c, state)
    }
}

fn same_outcome_set(a: &DiscretePovm, c: &DiscretePovm) -> bool {
    if a.n_outcomes() != c.n_outcomes() {
        return false;
    }
    a.outcomes().iter().all(|&m| c.index_of(m).is_some())
}

/// ε² = ‖a − c‖² + 1 − ‖c‖² for a symmetric approximator c of a sharp target
/// along unit `a`; state-independent.
pub fn noise_symmetric_sq(a: &BlochVector, c: &BlochVector) -> f64 {
    debug_assert!(a.is_unit(1e-9), "target direction must be unit");
    ((*a - *c).norm_sq() + 1.0 - c.norm_sq()).max(0.0)
}

pub fn noise_symmetric(a: &BlochVector, c: &BlochVector) -> f64 {
    noise_symmetric_sq(a, c).sqrt()
}

/// ε² = 2(1 − a·(c + γr)) for a biased dichotomic approximator of the sharp
/// ±1 target along unit `a`.
pub fn noise_biased_sq(a: &BlochVector, c: &DichotomicPovm, state: &DensityOperator) -> f64 {
    debug_assert!(a.is_unit(1e-9), "target direction must be unit");
    let reach = c.direction() + state.bloch() * c.gamma();
    (2.0 * (1.0 - a.dot(&reach))).max(0.0)
}

pub fn noise_biased(a: &BlochVector, c: &DichotomicPovm, state: &DensityOperator) -> f64 {
    noise_biased_sq(a, c, state).sqrt()
}

/// Local uniform error ε̄: equals ε on eigenstates of the target (‖r ∓ a‖
/// within the eigenstate gate) and the state-independent maximum
/// √(2(1 − a·c + |γ|)) everywhere else. Discontinuous in the state by
/// construction.
pub fn local_uniform_error_sq(
    a: &BlochVector,
    c: &DichotomicPovm,
    state: &DensityOperator,
) -> f64 {
    debug_assert!(a.is_unit(1e-9), "target direction must be unit");
    let r = state.bloch();
    let eigen = (r - *a).norm() <= TOL_EIG || (r + *a).norm() <= TOL_EIG;
    if eigen {
        noise_biased_sq(a, c, state)
    } else {
        (2.0 * (1.0 - a.dot(&c.direction()) + c.gamma().abs())).max(0.0)
    }
}

pub fn local_uniform_error(a: &BlochVector, c: &DichotomicPovm, state: &DensityOperator) -> f64 {
    local_uniform_error_sq(a, c, state).sqrt()
}
