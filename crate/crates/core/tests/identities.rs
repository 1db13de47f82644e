//! Cross-module identities: probability structure, boundary-form
//! equivalences, alternating-minimization behavior, and trace invariants.

use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, FRAC_PI_6, TAU};

use qmeas::bloch::BlochVector;
use qmeas::compat::{
    commutator_norm, compat_boundary_residual, compat_violation, compatible, joint_observable,
    unsharpness,
};
use qmeas::measures::{metric_error_symmetric, noise_symmetric, noise_symmetric_sq};
use qmeas::operator::DensityOperator;
use qmeas::optimize::{
    alternate_minimize, min_metric_error_given, min_noise_given, sample_admissible_region,
    targets_at_angle, OptimizerConfig,
};
use qmeas::povm::{DichotomicPovm, DiscretePovm, Sign};
use qmeas::{ErrorPoint, Measure};

fn random_unit(rng: &mut impl Rng) -> BlochVector {
    let z: f64 = rng.gen_range(-1.0..=1.0);
    let phi: f64 = rng.gen_range(0.0..TAU);
    let s = (1.0 - z * z).max(0.0).sqrt();
    BlochVector::new(s * phi.cos(), s * phi.sin(), z).unwrap()
}

fn random_in_ball(rng: &mut impl Rng) -> BlochVector {
    loop {
        let v = BlochVector::new(
            rng.gen_range(-1.0..=1.0),
            rng.gen_range(-1.0..=1.0),
            rng.gen_range(-1.0..=1.0),
        )
        .unwrap();
        if v.norm_sq() <= 1.0 {
            return v;
        }
    }
}

/// A random symmetric pair scaled onto the compatibility boundary.
fn random_saturated_pair(rng: &mut impl Rng) -> (BlochVector, BlochVector) {
    let c = random_in_ball(rng);
    let d = random_in_ball(rng);
    let s = 2.0 / (compat_violation(&c, &d) + 2.0);
    (c * s, d * s)
}

#[test]
fn probabilities_are_affine_and_normalized() {
    let mut rng = StdRng::seed_from_u64(2024);
    for _ in 0..10_000 {
        let gamma: f64 = rng.gen_range(-1.0..1.0);
        let scale = (1.0 - gamma.abs()) * rng.gen_range(0.0..1.0);
        let povm = DichotomicPovm::new(gamma, random_unit(&mut rng) * scale)
            .unwrap()
            .to_discrete();
        let r1 = random_in_ball(&mut rng);
        let r2 = random_in_ball(&mut rng);
        let w: f64 = rng.gen_range(0.0..1.0);
        let mixed = DensityOperator::new(r1 * w + r2 * (1.0 - w)).unwrap();
        let s1 = DensityOperator::new(r1).unwrap();
        let s2 = DensityOperator::new(r2).unwrap();

        let total: f64 = povm.probabilities(&mixed).iter().sum();
        assert!((total - 1.0).abs() < 1e-12);
        for &m in povm.outcomes() {
            let p_mix = povm.probability(m, &mixed).unwrap();
            let p_lin =
                w * povm.probability(m, &s1).unwrap() + (1.0 - w) * povm.probability(m, &s2).unwrap();
            assert!((p_mix - p_lin).abs() < 1e-12);
            assert!((-1e-12..=1.0 + 1e-12).contains(&p_mix));
        }
    }
}

#[test]
fn saturated_pairs_satisfy_all_boundary_forms() {
    let mut rng = StdRng::seed_from_u64(7177);
    for _ in 0..1000 {
        let (c, d) = random_saturated_pair(&mut rng);
        let m = c.dot(&d);
        // primal form
        assert!(compat_violation(&c, &d).abs() < 1e-12);
        // quadratic form
        assert!(compat_boundary_residual(&c, &d).abs() < 1e-9);
        // split form ‖c ± d‖ = 1 ± c·d
        assert!(((c + d).norm() - (1.0 + m)).abs() < 1e-9);
        assert!(((c - d).norm() - (1.0 - m)).abs() < 1e-9);
        // unsharpness product equals the commutator norm on the boundary
        let uu = unsharpness(&c) * unsharpness(&d);
        assert!((uu * uu - c.cross(&d).norm_sq()).abs() < 1e-9);
        assert!((c.cross(&d).norm_sq() - 4.0 * commutator_norm(&c, &d).powi(2)).abs() < 1e-12);
    }
}

#[test]
fn conditional_minimizer_outputs_saturate_and_trace_pairs_stay_compatible() {
    let mut rng = StdRng::seed_from_u64(515);
    let cfg = OptimizerConfig::default();
    for _ in 0..25 {
        let theta = rng.gen_range(0.1..FRAC_PI_2);
        let (a, b) = targets_at_angle(theta);
        let c0 = random_in_ball(&mut rng);
        for measure in [Measure::MetricD, Measure::NoiseEps] {
            let trace = alternate_minimize(measure, &a, &b, &c0, &cfg).unwrap();
            assert!(trace.converged);
            for (c, d) in &trace.steps {
                assert!(
                    compat_violation(c, d).abs() < 1e-9,
                    "trace pair left the saturated boundary"
                );
            }
        }
    }
}

#[test]
fn noise_alternation_decreases_worst_error_and_ends_on_sphere() {
    let mut rng = StdRng::seed_from_u64(8211);
    let cfg = OptimizerConfig::default();
    for _ in 0..20 {
        let theta = rng.gen_range(0.2..(FRAC_PI_2 - 0.05));
        let (a, b) = targets_at_angle(theta);
        let c0 = random_in_ball(&mut rng) * 0.9;
        let trace = alternate_minimize(Measure::NoiseEps, &a, &b, &c0, &cfg).unwrap();
        let worst: Vec<f64> = trace
            .steps
            .iter()
            .map(|(c, d)| noise_symmetric(&a, c).max(noise_symmetric(&b, d)))
            .collect();
        for w in worst.windows(2) {
            assert!(w[1] <= w[0] + 1e-12, "worst-case noise increased");
        }
        let final_w = *worst.last().unwrap();
        if worst[0] > final_w + 1e-9 {
            // strict decrease somewhere along the way
            assert!(worst.iter().any(|&w| w < worst[0] - 1e-12));
        }
        // no interior stall: once movement drops below tolerance the iterate
        // is a unit vector
        assert!(trace.limit.norm() >= 1.0 - 1e-6);
    }
}

#[test]
fn metric_alternation_lands_on_the_boundary_curve() {
    let mut rng = StdRng::seed_from_u64(4242);
    let cfg = OptimizerConfig::default();
    for _ in 0..40 {
        let theta = rng.gen_range(0.15..FRAC_PI_2);
        let (a, b) = targets_at_angle(theta);
        let c0 = random_in_ball(&mut rng);
        let trace = alternate_minimize(Measure::MetricD, &a, &b, &c0, &cfg).unwrap();
        assert!(trace.converged);
        let (c, d) = trace.last_pair();
        let e_a = metric_error_symmetric(&a, &c);
        let e_b = metric_error_symmetric(&b, &d);
        let margin = qmeas::bounds::yu_oh_margin(theta, e_a, e_b).unwrap();
        assert!(margin.abs() < 1e-6, "limit errors off the boundary by {margin}");
    }
}

#[test]
fn sampled_points_dominate_optimal_vectors_at_matched_parameter() {
    // attainability: the optimal vectors reproduce their boundary point
    for theta in [FRAC_PI_6, FRAC_PI_3, FRAC_PI_2] {
        let (a, b) = targets_at_angle(theta);
        for j in 0..=40 {
            let phi = FRAC_PI_2 * j as f64 / 40.0;
            let (c, d) = qmeas::bounds::yu_oh_optimal_vectors(&a, &b, phi).unwrap();
            let p = qmeas::bounds::yu_oh_point(theta, phi).unwrap();
            assert!((metric_error_symmetric(&a, &c) - p.d_a).abs() < 1e-9);
            assert!((metric_error_symmetric(&b, &d) - p.d_b).abs() < 1e-9);
            let margin = qmeas::bounds::yu_oh_margin(theta, p.d_a, p.d_b).unwrap();
            assert!(margin.abs() < 1e-6);
        }
    }
}

#[test]
fn sampler_output_is_reproducible_and_tagged() {
    let cfg = OptimizerConfig { seed: 99, ..Default::default() };
    let pts = sample_admissible_region(Measure::NoiseEps, FRAC_PI_3, 2000, &cfg).unwrap();
    let again = sample_admissible_region(Measure::NoiseEps, FRAC_PI_3, 2000, &cfg).unwrap();
    assert_eq!(pts, again);
    assert!(pts.iter().all(|p| p.measure == Measure::NoiseEps));
    assert!(pts.iter().all(|p| p.e_a >= 0.0 && p.e_b >= 0.0));
    let other = sample_admissible_region(
        Measure::NoiseEps,
        FRAC_PI_3,
        2000,
        &OptimizerConfig { seed: 100, ..Default::default() },
    )
    .unwrap();
    assert_ne!(pts, other);
}

#[test]
fn error_point_rejects_bad_values() {
    assert!(ErrorPoint::new(Measure::MetricD, -0.1, 0.0).is_err());
    assert!(ErrorPoint::new(Measure::MetricD, f64::NAN, 0.0).is_err());
    assert!(ErrorPoint::new(Measure::MetricD, 0.3, 0.1).is_ok());
}

#[test]
fn discrete_povm_moments_match_dichotomic_closed_forms() {
    let mut rng = StdRng::seed_from_u64(3141);
    for _ in 0..500 {
        let gamma: f64 = rng.gen_range(-1.0..1.0);
        let scale = (1.0 - gamma.abs()) * rng.gen_range(0.0..1.0);
        let povm = DichotomicPovm::new(gamma, random_unit(&mut rng) * scale).unwrap();
        let d = povm.to_discrete();
        for k in 1..=4u32 {
            let diff = d.moment(k) - povm.moment(k);
            assert!(diff.operator_norm() < 1e-12);
        }
    }
}

#[test]
fn sharp_two_outcome_povm_roundtrips_through_discrete_form() {
    let mut rng = StdRng::seed_from_u64(2718);
    for _ in 0..200 {
        let a = random_unit(&mut rng);
        let povm = DiscretePovm::sharp(a).unwrap();
        assert_eq!(povm.n_outcomes(), 2);
        let plus = povm.effects()[povm.index_of(1.0).unwrap()];
        assert!((plus.vec() - a).norm() < 1e-12);
        assert!((plus.alpha() - 1.0).abs() < 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn compatibility_is_symmetric_and_rotation_invariant(
        cx in -1.0..1.0f64, cy in -1.0..1.0f64, cz in -1.0..1.0f64,
        dx in -1.0..1.0f64, dy in -1.0..1.0f64, dz in -1.0..1.0f64,
        ax in -1.0..1.0f64, ay in -1.0..1.0f64, az in -1.0..1.0f64,
        angle in 0.0..TAU,
    ) {
        let c = BlochVector::new(cx, cy, cz).unwrap();
        let d = BlochVector::new(dx, dy, dz).unwrap();
        prop_assume!(c.norm() <= 1.0 && d.norm() <= 1.0);
        let axis = BlochVector::new(ax, ay, az).unwrap();
        prop_assume!(axis.norm() > 1e-6);
        prop_assert_eq!(compatible(&c, &d), compatible(&d, &c));
        let rc = c.rotated(&axis, angle).unwrap();
        let rd = d.rotated(&axis, angle).unwrap();
        prop_assert!((compat_violation(&c, &d) - compat_violation(&rc, &rd)).abs() < 1e-9);
        prop_assert_eq!(compatible(&c, &d), compatible(&rc, &rd));
    }

    #[test]
    fn joint_observable_exists_exactly_on_compatible_pairs(
        cx in -1.0..1.0f64, cy in -1.0..1.0f64, cz in -1.0..1.0f64,
        dx in -1.0..1.0f64, dy in -1.0..1.0f64, dz in -1.0..1.0f64,
    ) {
        let c = BlochVector::new(cx, cy, cz).unwrap();
        let d = BlochVector::new(dx, dy, dz).unwrap();
        prop_assume!(c.norm() <= 1.0 && d.norm() <= 1.0);
        match joint_observable(&c, &d) {
            Ok(j) => {
                prop_assert!(compatible(&c, &d));
                let row = j.effect(Sign::Plus, Sign::Plus).op() + j.effect(Sign::Plus, Sign::Minus).op();
                prop_assert!((row.vec() - c).norm() < 1e-12);
                prop_assert!((j.marginal_second().direction() - d).norm() < 1e-12);
            }
            Err(_) => prop_assert!(!compatible(&c, &d)),
        }
    }

    #[test]
    fn noise_decomposition_holds_everywhere(
        az in -1.0..1.0f64, aphi in 0.0..TAU,
        cx in -1.0..1.0f64, cy in -1.0..1.0f64, cz in -1.0..1.0f64,
    ) {
        let s = (1.0 - az * az).max(0.0).sqrt();
        let a = BlochVector::new(s * aphi.cos(), s * aphi.sin(), az).unwrap();
        let c = BlochVector::new(cx, cy, cz).unwrap();
        prop_assume!(c.norm() <= 1.0);
        let lhs = noise_symmetric_sq(&a, &c);
        let d = metric_error_symmetric(&a, &c);
        let u = unsharpness(&c);
        prop_assert!((lhs - (d * d + u * u)).abs() < 1e-10);
    }

    #[test]
    fn conditional_minimizers_never_beat_the_boundary(
        theta in 0.05..FRAC_PI_2,
        cx in -1.0..1.0f64, cy in -1.0..1.0f64, cz in -1.0..1.0f64,
    ) {
        let c = BlochVector::new(cx, cy, cz).unwrap();
        prop_assume!(c.norm() <= 1.0);
        let (a, b) = targets_at_angle(theta);
        let d = min_metric_error_given(&c, &b).unwrap();
        let e_a = metric_error_symmetric(&a, &c);
        let e_b = metric_error_symmetric(&b, &d);
        let margin = qmeas::bounds::yu_oh_margin(theta, e_a, e_b).unwrap();
        prop_assert!(margin >= -1e-6, "metric margin {}", margin);
        let d = min_noise_given(&c, &b).unwrap();
        let lhs = qmeas::bounds::branciard_lhs(
            noise_symmetric(&a, &c),
            noise_symmetric(&b, &d),
            theta,
        );
        prop_assert!(lhs >= theta.sin().powi(2) - 1e-9);
    }
}
