//! Shared helpers for in-crate tests: seeded generators for states, effects,
//! and random POVMs.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::bloch::BlochVector;
use crate::mat2::Mat2;
use crate::operator::{DensityOperator, Effect};
use crate::povm::{DichotomicPovm, DiscretePovm};

pub(crate) fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub(crate) fn random_unit(rng: &mut impl Rng) -> BlochVector {
    let z: f64 = rng.gen_range(-1.0..=1.0);
    let phi: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
    let s = (1.0 - z * z).max(0.0).sqrt();
    BlochVector::raw(s * phi.cos(), s * phi.sin(), z)
}

pub(crate) fn random_in_ball(rng: &mut impl Rng) -> BlochVector {
    loop {
        let v = BlochVector::raw(
            rng.gen_range(-1.0..=1.0),
            rng.gen_range(-1.0..=1.0),
            rng.gen_range(-1.0..=1.0),
        );
        if v.norm_sq() <= 1.0 {
            return v;
        }
    }
}

pub(crate) fn random_state(rng: &mut impl Rng) -> DensityOperator {
    DensityOperator::new(random_in_ball(rng)).unwrap()
}

pub(crate) fn random_dichotomic(rng: &mut impl Rng) -> DichotomicPovm {
    let gamma: f64 = rng.gen_range(-1.0..1.0);
    let scale = (1.0 - gamma.abs()) * rng.gen_range(0.0..1.0);
    DichotomicPovm::new(gamma, random_unit(rng) * scale).unwrap()
}

pub(crate) fn random_symmetric(rng: &mut impl Rng) -> DichotomicPovm {
    DichotomicPovm::symmetric(random_in_ball(rng)).unwrap()
}

/// Random n-outcome POVM with distinct integer-ish labels, built by
/// conjugating random positive operators G_i with (Σ G_i)^{-1/2}.
pub(crate) fn random_povm(rng: &mut impl Rng, n: usize) -> DiscretePovm {
    assert!(n >= 1);
    loop {
        let gs: Vec<Mat2> = (0..n)
            .map(|_| {
                let alpha: f64 = rng.gen_range(0.05..1.0);
                let v = random_unit(rng) * (alpha * rng.gen_range(0.0..1.0));
                Mat2::from_bloch(alpha, v)
            })
            .collect();
        let total = gs.iter().fold(Mat2::zero(), |acc, g| acc + *g);
        let (_, tv) = total.to_bloch();
        let (tlo, _) = total.eigenvalues_hermitian();
        if tlo < 0.05 || tv.norm() < 1e-12 && n == 1 {
            continue; // nearly singular sum; resample
        }
        let t = total.hermitian_fn(|x| 1.0 / x.sqrt());
        let effects: Vec<Effect> = gs
            .iter()
            .map(|g| {
                let (alpha, v) = (t * *g * t).to_bloch();
                Effect::from_parts(alpha, v).expect("conjugated effect is valid")
            })
            .collect();
        let outcomes: Vec<f64> = (0..n).map(|i| i as f64 - 1.0).collect();
        match DiscretePovm::new(outcomes, effects) {
            Ok(p) => return p,
            Err(_) => continue,
        }
    }
}

/// Sharp two-projector POVM along a random axis with ±1 labels, padded with
/// zero effects up to `n` outcomes so the label set can match a random POVM.
pub(crate) fn random_sharp_padded(rng: &mut impl Rng, n: usize) -> DiscretePovm {
    assert!(n >= 2);
    let axis = random_unit(rng);
    let p = Effect::projector(axis).unwrap();
    let mut outcomes = vec![1.0, -1.0];
    let mut effects = vec![p, p.complement()];
    for i in 2..n {
        outcomes.push(i as f64);
        effects.push(Effect::zero());
    }
    DiscretePovm::new(outcomes, effects).unwrap()
}
