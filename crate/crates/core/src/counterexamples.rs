//! Executable demonstrations that the noise measure can report zero for bad
//! approximations: optimal post-selection of a measured POVM, a three-outcome
//! relabeling with zero noise but visibly different statistics, zero-noise
//! biased approximators on target eigenstates, the commuting n-outcome
//! characterization, and the state discontinuity of the local uniform error.
//!
//! Each scenario is packaged as a [`CounterexampleReport`]: plain data with
//! named inputs, computed quantities, and pass/fail assertions, so failures
//! surface as data rather than panics.

use std::collections::BTreeMap;
use std::f64::consts::SQRT_2;

use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::bloch::BlochVector;
use crate::compat::{post_process, OutcomeMap};
use crate::error::{Error, Result};
use crate::measures::{local_uniform_error_sq, metric_error_general, noise_biased_sq, noise_general};
use crate::operator::{re_tr_product_state, DensityOperator, Effect, QubitOperator};
use crate::povm::{DichotomicPovm, DiscretePovm, Sign};
use crate::tol::TOL_PROB;

/// One checked claim inside a report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Assertion {
    pub label: String,
    pub expected: f64,
    pub actual: f64,
    pub pass: bool,
    /// The property being checked, in words.
    pub claim: String,
}

/// A named scenario with its inputs, derived quantities, and assertions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CounterexampleReport {
    pub name: String,
    pub inputs: serde_json::Value,
    pub computed: BTreeMap<String, f64>,
    pub assertions: Vec<Assertion>,
}

impl CounterexampleReport {
    fn new(name: &str, inputs: serde_json::Value) -> Self {
        CounterexampleReport {
            name: name.to_owned(),
            inputs,
            computed: BTreeMap::new(),
            assertions: Vec::new(),
        }
    }

    fn record(&mut self, key: &str, value: f64) {
        self.computed.insert(key.to_owned(), value);
    }

    fn check(&mut self, label: &str, claim: &str, expected: f64, actual: f64, tol: f64) {
        self.assertions.push(Assertion {
            label: label.to_owned(),
            expected,
            actual,
            pass: (expected - actual).abs() <= tol,
            claim: claim.to_owned(),
        });
    }

    pub fn passed(&self) -> bool {
        self.assertions.iter().all(|a| a.pass)
    }
}

/// The post-selection map minimizing the noise of `post_process(e, f)` as an
/// approximation of the selfadjoint `target` in the given state:
/// f(m) = Re tr[E(m) A ρ] / tr[E(m) ρ].
///
/// Every outcome must carry probability above the guard, otherwise the
/// offending outcome is reported.
pub fn hall_optimal_f(
    e: &DiscretePovm,
    target: &QubitOperator,
    state: &DensityOperator,
) -> Result<OutcomeMap> {
    let r = state.bloch();
    let entries = e
        .outcomes()
        .iter()
        .zip(e.effects())
        .map(|(&m, effect)| {
            let prob = effect.probability(state);
            if prob <= TOL_PROB {
                return Err(Error::LowProbabilityOutcome { outcome: m, prob });
            }
            Ok((m, re_tr_product_state(&effect.op(), target, &r) / prob))
        })
        .collect::<Result<Vec<_>>>()?;
    OutcomeMap::from_pairs(entries)
}

/// The three-outcome measurement, target, and probe state of the zero-noise
/// relabeling scenario, with γ = 2 − √2 (so that γ = √2(1 − γ)).
pub fn three_outcome_inputs() -> (DiscretePovm, DiscretePovm, QubitOperator, DensityOperator) {
    let gamma = 2.0 - SQRT_2;
    let e = DiscretePovm::new(
        vec![1.0, 2.0, 3.0],
        vec![
            Effect::from_parts(gamma, BlochVector::raw(gamma, 0.0, 0.0)).expect("rank-one effect"),
            Effect::from_parts(gamma, BlochVector::raw(0.0, gamma, 0.0)).expect("rank-one effect"),
            // vec is −√2(1−γ)(1,1,0) = −γ(1,1,0) by the defining identity
            Effect::from_parts(2.0 * (1.0 - gamma), BlochVector::raw(-gamma, -gamma, 0.0))
                .expect("rank-one effect"),
        ],
    )
    .expect("the three effects sum to the identity");

    let axis = BlochVector::raw(1.0 / SQRT_2, -1.0 / SQRT_2, 0.0);
    let eigenvalue = SQRT_2 - 1.0; // = γ/√2
    let target_pvm = DiscretePovm::sharp_labeled(axis, eigenvalue, -eigenvalue)
        .expect("sharp target along a unit axis");
    let target_op = QubitOperator::raw(0.0, BlochVector::raw(gamma, -gamma, 0.0));

    let state = DensityOperator::new(BlochVector::raw(-1.0 / SQRT_2, -1.0 / SQRT_2, 0.0))
        .expect("probe state inside the Bloch ball");
    (e, target_pvm, target_op, state)
}

/// Post-selecting a rank-one three-outcome measurement onto outcomes
/// (1, −1, 0) reproduces the target first moment exactly and zeroes the noise
/// measure in the probe state, yet every outcome probability disagrees with
/// the target statistics and the metric error stays far from zero.
pub fn run_three_outcome_example() -> CounterexampleReport {
    let gamma = 2.0 - SQRT_2;
    let (e, target_pvm, target_op, state) = three_outcome_inputs();
    let mut report = CounterexampleReport::new(
        "three-outcome",
        json!({"E": e, "A": target_pvm, "rho": state.bloch()}),
    );
    report.record("gamma", gamma);

    let rank_one_defect = e
        .effects()
        .iter()
        .map(|eff| (eff.alpha() - eff.vec().norm()).abs())
        .fold(0.0_f64, f64::max);
    report.check(
        "rank-one effects",
        "every effect of the measured observable is a positive rank-one operator",
        0.0,
        rank_one_defect,
        1e-12,
    );

    let alpha_sum: f64 = e.effects().iter().map(Effect::alpha).sum();
    let vec_sum = e
        .effects()
        .iter()
        .fold(BlochVector::ZERO, |acc, eff| acc + eff.vec());
    report.check(
        "normalization",
        "the three effects sum to the identity",
        0.0,
        (alpha_sum - 2.0).abs() + vec_sum.norm(),
        1e-12,
    );

    let f = hall_optimal_f(&e, &target_op, &state).expect("all outcome probabilities positive");
    for (&m, want) in e.outcomes().iter().zip([1.0, -1.0, 0.0]) {
        report.record(&format!("f({m})"), f.value(m).unwrap());
        report.check(
            &format!("optimal relabeling of outcome {m}"),
            "the noise-minimizing post-selection sends the outcomes to (1, -1, 0)",
            want,
            f.value(m).unwrap(),
            1e-12,
        );
    }
    // relabel with the exact values the optimal map was just checked against
    let f_exact = OutcomeMap::from_pairs(vec![(1.0, 1.0), (2.0, -1.0), (3.0, 0.0)])
        .expect("distinct labels");
    let c = post_process(&e, &f_exact).expect("total relabeling map");

    let moment_defect = (c.first_moment() - target_op).operator_norm();
    report.check(
        "first moment",
        "the relabeled observable has exactly the target first moment",
        0.0,
        moment_defect,
        1e-12,
    );

    let noise = noise_general(&target_pvm, &c, &state);
    report.record("noise_sq", noise * noise);
    report.check(
        "zero noise",
        "the noise measure of the relabeled observable vanishes in the probe state",
        0.0,
        noise * noise,
        1e-12,
    );

    let p_plus = target_pvm
        .probability(SQRT_2 - 1.0, &state)
        .expect("known outcome");
    let p_minus = target_pvm
        .probability(-(SQRT_2 - 1.0), &state)
        .expect("known outcome");
    report.record("p_target_plus", p_plus);
    report.record("p_target_minus", p_minus);
    report.check(
        "target statistics (+)",
        "the target observable is an even coin in the probe state",
        0.5,
        p_plus,
        1e-12,
    );
    report.check(
        "target statistics (-)",
        "the target observable is an even coin in the probe state",
        0.5,
        p_minus,
        1e-12,
    );
    for (outcome, want) in [(1.0, gamma * gamma / 4.0), (-1.0, gamma * gamma / 4.0), (0.0, 2.0 * (1.0 - gamma))] {
        let p = c.probability(outcome, &state).expect("known outcome");
        report.record(&format!("p_approx({outcome})"), p);
        report.check(
            &format!("approximator statistics ({outcome})"),
            "the relabeled observable produces a visibly different distribution",
            want,
            p,
            1e-12,
        );
    }

    // embed the target on the outcome set {1, −1, 0} with a null effect at 0
    let plus = Effect::projector(BlochVector::raw(1.0 / SQRT_2, -1.0 / SQRT_2, 0.0))
        .expect("unit axis");
    let embedded = DiscretePovm::new(vec![1.0, -1.0, 0.0], vec![plus, plus.complement(), Effect::zero()])
        .expect("embedded sharp target");
    let metric = metric_error_general(&embedded, &c).expect("shared outcome set");
    report.record("metric_error", metric);
    report.check(
        "metric error stays positive",
        "despite zero noise, the probabilistic distance to the target is large",
        4.0 * SQRT_2 - 4.0,
        metric,
        1e-12,
    );
    report
}

/// Biased dichotomic approximators with c = (1 − γ)a report zero noise in the
/// aligned eigenstate for every bias γ ∈ (0, 1], collapse to C₋ = ‖c‖A₋, and
/// turn strictly positive under any perturbation of state or direction.
pub fn run_biased_zero_noise() -> CounterexampleReport {
    let a = BlochVector::Z;
    let delta = 1e-3;
    let gammas: Vec<f64> = (1..=10).map(|i| i as f64 / 10.0).collect();
    let mut report = CounterexampleReport::new(
        "biased",
        json!({"target_direction": a, "gamma_grid": gammas, "perturbation_angle": delta}),
    );

    let aligned = DensityOperator::pure(a).expect("unit direction");
    let a_minus = DichotomicPovm::sharp(a).expect("unit direction").effect(Sign::Minus);

    let mut max_aligned_noise = 0.0_f64;
    let mut max_effect_defect = 0.0_f64;
    let mut max_state_mismatch = 0.0_f64;
    let mut min_state_noise = f64::INFINITY;
    let mut max_dir_mismatch = 0.0_f64;
    let mut min_dir_noise = f64::INFINITY;
    for &gamma in &gammas {
        let c_norm = 1.0 - gamma;
        let c = DichotomicPovm::new(gamma, a * c_norm).expect("boundary bias is valid");
        max_aligned_noise = max_aligned_noise.max(noise_biased_sq(&a, &c, &aligned));

        let defect = (c.effect(Sign::Minus).op() - a_minus.op() * c_norm).operator_norm();
        max_effect_defect = max_effect_defect.max(defect);

        // tilt the state off the eigenstate
        let r = a.rotated(&BlochVector::X, delta).expect("unit axis");
        let tilted = DensityOperator::new(r).expect("rotated pure state");
        let eps_sq = noise_biased_sq(&a, &c, &tilted);
        min_state_noise = min_state_noise.min(eps_sq);
        max_state_mismatch = max_state_mismatch.max((eps_sq - 2.0 * gamma * (1.0 - delta.cos())).abs());

        // tilt the approximator direction (no direction to tilt at γ = 1)
        if c_norm > 0.0 {
            let c_dir = (a * c_norm).rotated(&BlochVector::X, delta).expect("unit axis");
            let tilted_c = DichotomicPovm::new(gamma, c_dir).expect("rotation preserves norm");
            let eps_sq = noise_biased_sq(&a, &tilted_c, &aligned);
            min_dir_noise = min_dir_noise.min(eps_sq);
            max_dir_mismatch = max_dir_mismatch.max((eps_sq - 2.0 * c_norm * (1.0 - delta.cos())).abs());
        }
    }
    report.record("max_aligned_noise_sq", max_aligned_noise);
    report.record("min_perturbed_state_noise_sq", min_state_noise);
    report.record("min_perturbed_direction_noise_sq", min_dir_noise);

    report.check(
        "zero noise on the aligned eigenstate",
        "every bias with c = (1-gamma)a reports exactly zero noise at r = a",
        0.0,
        max_aligned_noise,
        1e-12,
    );
    report.check(
        "minus effect collapses onto the target effect",
        "C- equals ||c|| A- across the whole family",
        0.0,
        max_effect_defect,
        1e-12,
    );
    report.check(
        "perturbed state noise follows the closed form",
        "tilting the state by delta gives noise^2 = 2 gamma (1 - cos delta)",
        0.0,
        max_state_mismatch,
        1e-12,
    );
    report.check(
        "perturbed state noise is strictly positive",
        "the zero-noise report is confined to the exact eigenstate",
        2.0 * 0.1 * (1.0 - delta.cos()),
        min_state_noise,
        1e-12,
    );
    report.check(
        "perturbed direction noise follows the closed form",
        "tilting c by delta gives noise^2 = 2 ||c|| (1 - cos delta)",
        0.0,
        max_dir_mismatch,
        1e-12,
    );
    report.check(
        "perturbed direction noise is strictly positive",
        "the collapse direction c || a is necessary for zero noise",
        2.0 * 0.1 * (1.0 - delta.cos()),
        min_dir_noise,
        1e-12,
    );
    report
}

/// Commuting n-outcome approximators with one effect I − cA₋ at outcome 1 and
/// the rest cₖA₋ report zero noise exactly on the +1 target eigenstate, with
/// arbitrary labels on the remainder bins.
pub fn run_n_outcome_commuting() -> CounterexampleReport {
    let a = BlochVector::Z;
    let plus = DensityOperator::pure(a).expect("unit direction");
    let minus = DensityOperator::pure(-a).expect("unit direction");
    let target = DichotomicPovm::sharp(a).expect("unit direction").to_discrete();
    let a_minus = DichotomicPovm::sharp(a).expect("unit direction").effect(Sign::Minus);

    // (total weight c, bins, labels)
    let configs: [(f64, &[f64], &[f64]); 5] = [
        (0.0, &[], &[]),
        (0.25, &[0.25], &[-1.0]),
        (0.5, &[0.25, 0.25], &[7.0, -3.0]),
        (0.5, &[0.25, 0.25], &[2.0, 5.0]),
        (0.9, &[0.3, 0.3, 0.3], &[1.5, -2.0, 0.25]),
    ];
    let mut report = CounterexampleReport::new(
        "n-outcome",
        json!({
            "target_direction": a,
            "configs": configs
                .iter()
                .map(|(c, bins, labels)| json!({"c": c, "bins": bins, "labels": labels}))
                .collect::<Vec<_>>(),
        }),
    );

    let mut max_plus_noise = 0.0_f64;
    let mut min_minus_noise = f64::INFINITY;
    let mut max_minus_mismatch = 0.0_f64;
    let mut eps_by_config = Vec::new();
    for (idx, (c_total, bins, labels)) in configs.iter().enumerate() {
        let mut outcomes = vec![1.0];
        let mut effects = vec![
            Effect::new(QubitOperator::identity() - a_minus.op() * *c_total)
                .expect("I - cA- is an effect for c < 1"),
        ];
        for (&weight, &label) in bins.iter().zip(labels.iter()) {
            outcomes.push(label);
            effects.push(Effect::new(a_minus.op() * weight).expect("scaled projector"));
        }
        let povm = DiscretePovm::new(outcomes, effects).expect("bins sum to cA-");

        let eps_plus = noise_general(&target, &povm, &plus);
        eps_by_config.push(eps_plus);
        report.record(&format!("noise_sq_plus_config{idx}"), eps_plus * eps_plus);
        max_plus_noise = max_plus_noise.max(eps_plus * eps_plus);

        let eps_minus_sq = {
            let e = noise_general(&target, &povm, &minus);
            e * e
        };
        // independent closed form on the −1 eigenstate
        let s1: f64 = bins.iter().zip(labels.iter()).map(|(w, l)| w * l).sum();
        let s2: f64 = bins.iter().zip(labels.iter()).map(|(w, l)| w * l * l).sum();
        let want = (2.0 - c_total + s1).powi(2) + (1.0 - c_total + s2) - (1.0 - c_total + s1).powi(2);
        report.record(&format!("noise_sq_minus_config{idx}"), eps_minus_sq);
        max_minus_mismatch = max_minus_mismatch.max((eps_minus_sq - want).abs());
        min_minus_noise = min_minus_noise.min(eps_minus_sq);
    }

    report.check(
        "zero noise on the tuned eigenstate",
        "every member of the commuting family reports zero noise at r = a",
        0.0,
        max_plus_noise,
        1e-12,
    );
    report.check(
        "label invariance on the tuned eigenstate",
        "the remainder-bin outcome values do not affect the zero-noise report",
        0.0,
        (eps_by_config[2] - eps_by_config[3]).abs(),
        1e-12,
    );
    report.check(
        "noise on the opposite eigenstate follows the closed form",
        "away from the tuned eigenstate the noise is set by the bin weights and labels",
        0.0,
        max_minus_mismatch,
        1e-12,
    );
    report.check(
        "noise strictly positive on the opposite eigenstate",
        "zero noise is exclusive to the tuned eigenstate",
        3.0,
        min_minus_noise,
        1e-12,
    );
    report
}

/// The local uniform error of the trivial observable jumps from 0 to 4 under
/// an arbitrarily small tilt of the state away from the target eigenstate.
pub fn run_ebar_discontinuity() -> CounterexampleReport {
    let a = BlochVector::X;
    let trivial = DichotomicPovm::new(1.0, BlochVector::ZERO).expect("trivial observable");
    let tilt = 1e-6;
    let mut report = CounterexampleReport::new(
        "ebar",
        json!({"target_direction": a, "gamma": 1.0, "tilt_angle": tilt}),
    );

    let aligned = DensityOperator::pure(a).expect("unit direction");
    let at_eigenstate = local_uniform_error_sq(&a, &trivial, &aligned);
    report.record("ebar_sq_at_eigenstate", at_eigenstate);
    report.check(
        "zero at the eigenstate",
        "the trivial observable is perfectly correlated with the known outcome",
        0.0,
        at_eigenstate,
        1e-12,
    );

    let tilted = DensityOperator::new(a.rotated(&BlochVector::Z, tilt).expect("unit axis"))
        .expect("rotated pure state");
    let perturbed = local_uniform_error_sq(&a, &trivial, &tilted);
    report.record("ebar_sq_perturbed", perturbed);
    report.check(
        "jump under an infinitesimal tilt",
        "one micro-radian away the local uniform error squared is already 4",
        4.0,
        perturbed,
        1e-12,
    );

    // sanity: for the exact sharp measurement the quantity vanishes everywhere
    let exact = DichotomicPovm::sharp(a).expect("unit direction");
    let worst = [aligned, tilted, DensityOperator::maximally_mixed()]
        .iter()
        .map(|s| local_uniform_error_sq(&a, &exact, s))
        .fold(0.0_f64, f64::max);
    report.check(
        "exact measurement stays at zero",
        "the jump is a property of the error quantity, not of the states used",
        0.0,
        worst,
        1e-12,
    );
    report
}

/// All four reports in a stable order.
pub fn all_reports() -> Vec<CounterexampleReport> {
    vec![
        run_three_outcome_example(),
        run_biased_zero_noise(),
        run_n_outcome_commuting(),
        run_ebar_discontinuity(),
    ]
}
