//! Closed-form lower boundaries of the admissible error region and the
//! approximators that attain them.
//!
//! For sharp targets at angle θ (cosθ = a·b, θ ∈ [0, π/2]):
//!
//! * the metric-error boundary of Yu and Oh, parameterized by φ ∈ [0, π/2]
//!   with M² = cos²θ / (1 + sinθ sin2φ) and
//!   D(C,A) = (sinφ + sinθ cosφ)/√(1 + sinθ sin2φ) − sinφ (and symmetrically
//!   for D(D,B)); at θ = π/2 this is the quarter circle
//!   (D(C,A) − 1)² + (D(D,B) − 1)² = 1;
//!
//! * the Branciard bound for the noise measure, ε_A²(1 − ε_A²/4) +
//!   ε_B²(1 − ε_B²/4) + 2 ε_A ε_B cosθ √((1 − ε_A²/4)(1 − ε_B²/4)) ≥ sin²θ,
//!   saturated by every sharp approximator whose Bloch vector lies between
//!   the targets in their common plane.

use serde::{Deserialize, Serialize};

use crate::bloch::BlochVector;
use crate::error::{Error, Result};
use crate::povm::Sign;
use crate::tol::TOL_POS;

/// A point on the metric-error boundary: parameter φ, mixing M = c·d, the two
/// metric errors, and the unsharpness of both optimal approximators.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundaryPoint {
    pub phi: f64,
    pub m: f64,
    pub d_a: f64,
    pub d_b: f64,
    pub u_c: f64,
    pub u_d: f64,
}

fn check_angle(value: f64, what: &'static str) -> Result<f64> {
    if !value.is_finite() {
        return Err(Error::NonFinite(what));
    }
    if !(-TOL_POS..=std::f64::consts::FRAC_PI_2 + TOL_POS).contains(&value) {
        return Err(Error::Domain("angle outside [0, pi/2]"));
    }
    Ok(value.clamp(0.0, std::f64::consts::FRAC_PI_2))
}

/// M² = cos²θ / (1 + sinθ sin2φ): the squared mixing of the optimal pair.
pub fn yu_oh_m_sq(theta: f64, phi: f64) -> Result<f64> {
    let theta = check_angle(theta, "theta")?;
    let phi = check_angle(phi, "phi")?;
    let c = theta.cos();
    Ok(c * c / (1.0 + theta.sin() * (2.0 * phi).sin()))
}

/// Minimum-branch boundary point of the metric error at (θ, φ).
pub fn yu_oh_point(theta: f64, phi: f64) -> Result<BoundaryPoint> {
    let theta = check_angle(theta, "theta")?;
    let phi = check_angle(phi, "phi")?;
    let (sin_t, sin_p, cos_p) = (theta.sin(), phi.sin(), phi.cos());
    let root = (1.0 + sin_t * (2.0 * phi).sin()).sqrt();
    let d_a = (sin_p + sin_t * cos_p) / root - sin_p;
    let d_b = (cos_p + sin_t * sin_p) / root - cos_p;
    let m = theta.cos() / root;
    let spread = (1.0 - m * m).max(0.0).sqrt();
    Ok(BoundaryPoint {
        phi,
        m,
        d_a: d_a.max(0.0),
        d_b: d_b.max(0.0),
        u_c: cos_p * spread,
        u_d: sin_p * spread,
    })
}

/// Extremum-branch point at (θ, φ) with signs (μ, ν):
/// D(C,A) = √(1 − M²cos²φ) − μ sinφ, D(D,B) = √(1 − M²sin²φ) − ν cosφ.
/// (μ, ν) = (+, +) is the minimum branch, (−, −) the maximum, mixed signs the
/// two saddle branches.
pub fn yu_oh_point_branch(theta: f64, phi: f64, mu: Sign, nu: Sign) -> Result<BoundaryPoint> {
    let theta = check_angle(theta, "theta")?;
    let phi = check_angle(phi, "phi")?;
    let m_sq = yu_oh_m_sq(theta, phi)?;
    let (sin_p, cos_p) = (phi.sin(), phi.cos());
    let d_a = (1.0 - m_sq * cos_p * cos_p).max(0.0).sqrt() - mu.value() * sin_p;
    let d_b = (1.0 - m_sq * sin_p * sin_p).max(0.0).sqrt() - nu.value() * cos_p;
    let spread = (1.0 - m_sq).max(0.0).sqrt();
    Ok(BoundaryPoint {
        phi,
        m: m_sq.sqrt(),
        d_a,
        d_b,
        u_c: cos_p * spread,
        u_d: sin_p * spread,
    })
}

/// Metric-error bounds expressed through the unsharpness of the two
/// approximators (only the ratio u_d : u_c matters; it fixes φ).
pub fn yu_oh_from_unsharpness(u_c: f64, u_d: f64, theta: f64) -> Result<(f64, f64)> {
    let theta = check_angle(theta, "theta")?;
    if !(u_c.is_finite() && u_d.is_finite()) {
        return Err(Error::NonFinite("unsharpness"));
    }
    if u_c < 0.0 || u_d < 0.0 {
        return Err(Error::Domain("unsharpness must be nonnegative"));
    }
    let hypot = (u_c * u_c + u_d * u_d).sqrt();
    if hypot < 1e-15 {
        if theta.sin() <= TOL_POS {
            // equal targets are approximated exactly by two sharp copies
            return Ok((0.0, 0.0));
        }
        return Err(Error::Domain(
            "two sharp approximators cannot be compatible for incompatible targets",
        ));
    }
    let (sin_t, cos_t) = (theta.sin(), theta.cos());
    let na = u_d + u_c * sin_t;
    let d_a = na / (na * na + u_c * u_c * cos_t * cos_t).sqrt() - u_d / hypot;
    let nb = u_c + u_d * sin_t;
    let d_b = nb / (nb * nb + u_d * u_d * cos_t * cos_t).sqrt() - u_c / hypot;
    Ok((d_a.max(0.0), d_b.max(0.0)))
}

/// Residual of the implicit unsharpness tradeoff
/// sinθ = −½M²sin2φ + √(¼M⁴sin²2φ + 1 − M²); zero on every boundary point.
pub fn unsharpness_tradeoff_residual(theta: f64, phi: f64) -> Result<f64> {
    let theta = check_angle(theta, "theta")?;
    let phi = check_angle(phi, "phi")?;
    let m_sq = yu_oh_m_sq(theta, phi)?;
    let s2 = (2.0 * phi).sin();
    let half = 0.5 * m_sq * s2;
    Ok(theta.sin() - (-half + (half * half + 1.0 - m_sq).max(0.0).sqrt()))
}

/// Residual of the tangent-line identity
/// D(C,A) sinφ + D(D,B) cosφ = cosθ/M − 1 on the minimum branch.
/// Undefined at θ = π/2 where M = 0.
pub fn linear_tradeoff_residual(theta: f64, phi: f64) -> Result<f64> {
    let theta = check_angle(theta, "theta")?;
    let phi = check_angle(phi, "phi")?;
    let p = yu_oh_point(theta, phi)?;
    if p.m <= TOL_POS {
        return Err(Error::Domain("tangent line undefined at maximal incompatibility"));
    }
    Ok(p.d_a * phi.sin() + p.d_b * phi.cos() - (theta.cos() / p.m - 1.0))
}

fn target_angle(a: &BlochVector, b: &BlochVector) -> Result<f64> {
    if !a.is_unit(1e-9) {
        return Err(Error::NotUnit { what: "target a", norm: a.norm() });
    }
    if !b.is_unit(1e-9) {
        return Err(Error::NotUnit { what: "target b", norm: b.norm() });
    }
    let dot = a.dot(b);
    if dot < -TOL_POS {
        return Err(Error::Domain("targets must subtend an angle in [0, pi/2]"));
    }
    Ok(dot.clamp(0.0, 1.0).acos())
}

/// Bloch vectors (c, d) of the optimal metric-error approximators at φ:
///
/// c = [(D(D,B) + (1−M²)cosφ) sinφ a + M D(C,A) cosφ b] / sinθ
///
/// and symmetrically for d. The pair saturates the compatibility boundary and
/// realizes the errors of [`yu_oh_point`]; at θ = π/2 it reduces to the
/// smeared targets c = sinφ a, d = cosφ b.
pub fn yu_oh_optimal_vectors(
    a: &BlochVector,
    b: &BlochVector,
    phi: f64,
) -> Result<(BlochVector, BlochVector)> {
    let theta = target_angle(a, b)?;
    let phi = check_angle(phi, "phi")?;
    let sin_t = theta.sin();
    if sin_t <= TOL_POS {
        return Ok((*a, *a));
    }
    let p = yu_oh_point(theta, phi)?;
    let (sin_p, cos_p) = (phi.sin(), phi.cos());
    let spread_sq = 1.0 - p.m * p.m;
    let c = (*a * ((p.d_b + spread_sq * cos_p) * sin_p) + *b * (p.m * p.d_a * cos_p)) * (1.0 / sin_t);
    let d = (*b * ((p.d_a + spread_sq * sin_p) * cos_p) + *a * (p.m * p.d_b * sin_p)) * (1.0 / sin_t);
    Ok((c, d))
}

/// Left-hand side of the noise tradeoff bound; the bound holds when this is
/// at least sin²θ.
pub fn branciard_lhs(eps_a: f64, eps_b: f64, theta: f64) -> f64 {
    let ta = (1.0 - 0.25 * eps_a * eps_a).max(0.0);
    let tb = (1.0 - 0.25 * eps_b * eps_b).max(0.0);
    eps_a * eps_a * ta + eps_b * eps_b * tb
        + 2.0 * eps_a * eps_b * theta.cos() * (ta * tb).sqrt()
}

/// The sharp approximator m at angle `phi` from `a` toward `b` in their
/// common plane (φ ∈ [0, θ]); the noise-optimal measurement for both targets.
pub fn branciard_sharp(a: &BlochVector, b: &BlochVector, phi: f64) -> Result<BlochVector> {
    let theta = target_angle(a, b)?;
    if !phi.is_finite() {
        return Err(Error::NonFinite("phi"));
    }
    if phi < -TOL_POS || phi > theta + TOL_POS {
        return Err(Error::Domain("phi outside [0, theta]"));
    }
    let phi = phi.clamp(0.0, theta);
    if theta <= 1e-12 {
        return Ok(*a);
    }
    let perp = (*b - *a * a.dot(b)).normalized()?;
    Ok(*a * phi.cos() + perp * phi.sin())
}

fn sharp_approximator_gaps(theta: f64, offset: f64) -> Result<(f64, f64)> {
    let theta = check_angle(theta, "theta")?;
    if !offset.is_finite() {
        return Err(Error::NonFinite("offset"));
    }
    if offset < -TOL_POS || offset > theta + TOL_POS {
        return Err(Error::Domain("offset outside [0, theta]"));
    }
    let offset = offset.clamp(0.0, theta);
    Ok((2.0 * (0.5 * offset).sin(), 2.0 * (0.5 * (theta - offset)).sin()))
}

/// Noise values (ε_A, ε_B) = (2 sin(φ/2), 2 sin((θ−φ)/2)) of the sharp
/// approximator at angle offset φ from the first target. These saturate the
/// noise bound identically in φ.
pub fn branciard_noise_errors(theta: f64, offset: f64) -> Result<(f64, f64)> {
    sharp_approximator_gaps(theta, offset)
}

/// Metric errors of the same sharp scheme. For a sharp approximator the
/// metric error coincides with the noise value, D(M,A) = ‖a − m‖ = ε_A, so
/// these are the same chord lengths; as a metric-error strategy the scheme is
/// dominated by the optimal boundary everywhere except θ = 0.
pub fn branciard_metric_errors(theta: f64, offset: f64) -> Result<(f64, f64)> {
    sharp_approximator_gaps(theta, offset)
}

/// The λ-family (c_λ, d_λ) = (a* + λb*, b* + λa*) of noise-optimal pairs for
/// orthogonal targets, where a* = (a·m)a and b* = (b·m)b are the smeared
/// targets. Every member is compatible (the boundary is saturated for all λ),
/// and the noise values do not depend on λ.
pub fn branciard_family(
    a: &BlochVector,
    b: &BlochVector,
    m: &BlochVector,
    lambda: f64,
) -> Result<(BlochVector, BlochVector)> {
    if !a.is_unit(1e-9) {
        return Err(Error::NotUnit { what: "target a", norm: a.norm() });
    }
    if !b.is_unit(1e-9) {
        return Err(Error::NotUnit { what: "target b", norm: b.norm() });
    }
    if a.dot(b).abs() > 1e-9 {
        return Err(Error::Domain("the lambda family needs orthogonal targets"));
    }
    if !m.is_unit(1e-9) {
        return Err(Error::NotUnit { what: "approximator m", norm: m.norm() });
    }
    let (am, bm) = (a.dot(m), b.dot(m));
    if (*m - (*a * am + *b * bm)).norm() > 1e-9 {
        return Err(Error::Domain("approximator m must lie in the target plane"));
    }
    if !lambda.is_finite() || !(-TOL_POS..=1.0 + TOL_POS).contains(&lambda) {
        return Err(Error::Domain("lambda outside [0, 1]"));
    }
    let a_star = *a * am;
    let b_star = *b * bm;
    Ok((a_star + b_star * lambda, b_star + a_star * lambda))
}

/// Margin of a point above the metric-error boundary: e_b − f_θ(e_a), where
/// f_θ is the boundary as a function of the first error (zero to the right of
/// e_a = sinθ). Nonnegative for every admissible pair; resolved by bisection
/// in φ.
pub fn yu_oh_margin(theta: f64, e_a: f64, e_b: f64) -> Result<f64> {
    let theta = check_angle(theta, "theta")?;
    if !(e_a.is_finite() && e_b.is_finite()) {
        return Err(Error::NonFinite("error pair"));
    }
    if e_a >= theta.sin() {
        return Ok(e_b);
    }
    // d_a(φ) decreases from sinθ at φ=0 to 0 at φ=π/2
    let mut lo = 0.0_f64;
    let mut hi = std::f64::consts::FRAC_PI_2;
    for _ in 0..80 {
        let mid = 0.5 * (lo + hi);
        if yu_oh_point(theta, mid)?.d_a > e_a {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let at = yu_oh_point(theta, 0.5 * (lo + hi))?;
    Ok(e_b - at.d_b)
}

/// Tabulated metric-error boundary for fast repeated margin queries.
#[derive(Debug, Clone)]
pub struct MetricBoundary {
    theta: f64,
    /// d_a values, ascending (φ descending).
    xs: Vec<f64>,
    ys: Vec<f64>,
}

impl MetricBoundary {
    pub fn tabulate(theta: f64, n: usize) -> Result<Self> {
        let theta = check_angle(theta, "theta")?;
        if n < 2 {
            return Err(Error::Domain("boundary table needs at least 2 points"));
        }
        let mut xs = Vec::with_capacity(n);
        let mut ys = Vec::with_capacity(n);
        for i in (0..n).rev() {
            let phi = std::f64::consts::FRAC_PI_2 * i as f64 / (n - 1) as f64;
            let p = yu_oh_point(theta, phi)?;
            xs.push(p.d_a);
            ys.push(p.d_b);
        }
        Ok(MetricBoundary { theta, xs, ys })
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    /// e_b − f_θ(e_a) with linear interpolation between table nodes.
    pub fn margin(&self, e_a: f64, e_b: f64) -> f64 {
        let last = *self.xs.last().expect("table is nonempty");
        if e_a >= last {
            return e_b;
        }
        if e_a <= self.xs[0] {
            return e_b - self.ys[0];
        }
        let hi = self.xs.partition_point(|&x| x < e_a);
        let (x0, x1) = (self.xs[hi - 1], self.xs[hi]);
        let (y0, y1) = (self.ys[hi - 1], self.ys[hi]);
        let t = if x1 > x0 { (e_a - x0) / (x1 - x0) } else { 0.0 };
        e_b - (y0 + t * (y1 - y0))
    }
}

/// Smallest margin of a set of sampled error pairs above the relevant lower
/// bound: the tabulated metric boundary for [`Measure::MetricD`], the noise
/// tradeoff excess for [`Measure::NoiseEps`]. Nonnegative (up to tolerance)
/// for admissible samples.
pub fn region_min_margin(
    measure: crate::measures::Measure,
    theta: f64,
    points: &[crate::measures::ErrorPoint],
) -> Result<f64> {
    let theta = check_angle(theta, "theta")?;
    match measure {
        crate::measures::Measure::MetricD => {
            let table = MetricBoundary::tabulate(theta, 8193)?;
            Ok(points
                .iter()
                .map(|p| table.margin(p.e_a, p.e_b))
                .fold(f64::INFINITY, f64::min))
        }
        crate::measures::Measure::NoiseEps => {
            let rhs = theta.sin().powi(2);
            Ok(points
                .iter()
                .map(|p| branciard_lhs(p.e_a, p.e_b, theta) - rhs)
                .fold(f64::INFINITY, f64::min))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, FRAC_PI_4, FRAC_PI_6, PI};

    #[test]
    fn quarter_circle_at_maximal_incompatibility() {
        for i in 0..=1000 {
            let phi = FRAC_PI_2 * i as f64 / 1000.0;
            let p = yu_oh_point(FRAC_PI_2, phi).unwrap();
            assert!((p.d_a - (1.0 - phi.sin())).abs() < 1e-12);
            assert!((p.d_b - (1.0 - phi.cos())).abs() < 1e-12);
            let circle = (p.d_a - 1.0).powi(2) + (p.d_b - 1.0).powi(2);
            assert!((circle - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn endpoints_pin_single_sided_error() {
        for theta in [FRAC_PI_6, FRAC_PI_4, FRAC_PI_3] {
            let p0 = yu_oh_point(theta, 0.0).unwrap();
            assert!((p0.d_a - theta.sin()).abs() < 1e-14);
            assert!(p0.d_b.abs() < 1e-14);
            let p1 = yu_oh_point(theta, FRAC_PI_2).unwrap();
            assert!(p1.d_a.abs() < 1e-14);
            assert!((p1.d_b - theta.sin()).abs() < 1e-14);
        }
    }

    #[test]
    fn branch_form_agrees_with_minimum_form() {
        for i in 0..50 {
            for j in 0..50 {
                let theta = FRAC_PI_2 * i as f64 / 49.0;
                let phi = FRAC_PI_2 * j as f64 / 49.0;
                let min = yu_oh_point(theta, phi).unwrap();
                let branch = yu_oh_point_branch(theta, phi, Sign::Plus, Sign::Plus).unwrap();
                assert!((min.d_a - branch.d_a).abs() < 1e-10, "theta={theta} phi={phi}");
                assert!((min.d_b - branch.d_b).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn errors_nonnegative_on_grid_all_branches() {
        for i in 0..100 {
            for j in 0..100 {
                let theta = FRAC_PI_2 * i as f64 / 99.0;
                let phi = FRAC_PI_2 * j as f64 / 99.0;
                for mu in Sign::BOTH {
                    for nu in Sign::BOTH {
                        let p = yu_oh_point_branch(theta, phi, mu, nu).unwrap();
                        assert!(p.d_a >= -1e-12 && p.d_b >= -1e-12);
                    }
                }
            }
        }
    }

    #[test]
    fn mixing_solution_value() {
        let m_sq = yu_oh_m_sq(FRAC_PI_3, FRAC_PI_4).unwrap();
        assert!((m_sq - 0.25 / (1.0 + 3.0_f64.sqrt() / 2.0)).abs() < 1e-15);
    }

    #[test]
    fn symmetric_interior_point_value() {
        // at (θ=π/3, φ=π/4) both errors equal sin(π/12)
        let p = yu_oh_point(FRAC_PI_3, FRAC_PI_4).unwrap();
        let want = (PI / 12.0).sin();
        assert!((p.d_a - want).abs() < 1e-14);
        assert!((p.d_b - want).abs() < 1e-14);
    }

    #[test]
    fn unsharpness_identities_on_boundary() {
        for i in 0..=100 {
            for j in 0..=100 {
                let theta = FRAC_PI_2 * i as f64 / 100.0;
                let phi = FRAC_PI_2 * j as f64 / 100.0;
                let p = yu_oh_point(theta, phi).unwrap();
                assert!((p.u_c * p.u_c + p.u_d * p.u_d - (1.0 - p.m * p.m)).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn from_unsharpness_matches_point_form() {
        for i in 1..20 {
            for j in 1..50 {
                let theta = FRAC_PI_2 * i as f64 / 19.0;
                let phi = FRAC_PI_2 * j as f64 / 50.0;
                let p = yu_oh_point(theta, phi).unwrap();
                let (d_a, d_b) = yu_oh_from_unsharpness(p.u_c, p.u_d, theta).unwrap();
                assert!((d_a - p.d_a).abs() < 1e-10, "theta={theta} phi={phi}");
                assert!((d_b - p.d_b).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn from_unsharpness_examples() {
        let (d_a, d_b) = yu_oh_from_unsharpness(0.0, 1.0, FRAC_PI_2).unwrap();
        assert!(d_a.abs() < 1e-14);
        assert!((d_b - 1.0).abs() < 1e-14);
        let (d_a, d_b) = yu_oh_from_unsharpness(0.5, 0.5, FRAC_PI_2).unwrap();
        let want = 1.0 - std::f64::consts::FRAC_1_SQRT_2;
        assert!((d_a - want).abs() < 1e-14);
        assert!((d_b - want).abs() < 1e-14);
        assert_eq!(yu_oh_from_unsharpness(0.0, 0.0, 0.0).unwrap(), (0.0, 0.0));
        assert!(yu_oh_from_unsharpness(0.0, 0.0, FRAC_PI_3).is_err());
    }

    #[test]
    fn unsharpness_tradeoff_vanishes() {
        for (theta, phi) in [
            (FRAC_PI_2, 0.7),
            (0.0, 0.3),
            (FRAC_PI_3, std::f64::consts::FRAC_PI_6),
            (FRAC_PI_3, FRAC_PI_6),
        ] {
            let r = unsharpness_tradeoff_residual(theta, phi).unwrap();
            assert!(r.abs() < 1e-12, "residual {r} at theta={theta} phi={phi}");
        }
    }

    #[test]
    fn linear_tradeoff_vanishes_below_max_incompatibility() {
        for (theta, phi) in [(FRAC_PI_4, FRAC_PI_4), (0.0, 0.9), (FRAC_PI_3, 0.2)] {
            let r = linear_tradeoff_residual(theta, phi).unwrap();
            assert!(r.abs() < 1e-12);
        }
        assert!(linear_tradeoff_residual(FRAC_PI_2, 0.3).is_err());
    }

    #[test]
    fn optimal_vectors_reduce_to_smeared_targets_at_right_angle() {
        let (c, d) = yu_oh_optimal_vectors(&BlochVector::X, &BlochVector::Y, FRAC_PI_3).unwrap();
        assert!((c - BlochVector::X * FRAC_PI_3.sin()).norm() < 1e-12);
        assert!((d - BlochVector::Y * FRAC_PI_3.cos()).norm() < 1e-12);
    }

    #[test]
    fn optimal_vectors_for_equal_targets() {
        let (c, d) = yu_oh_optimal_vectors(&BlochVector::Z, &BlochVector::Z, 0.4).unwrap();
        assert_eq!(c, BlochVector::Z);
        assert_eq!(d, BlochVector::Z);
    }

    #[test]
    fn optimal_vectors_attain_boundary_errors_and_saturate() {
        use crate::compat::compat_violation;
        for i in 1..=20 {
            for j in 0..=20 {
                let theta = FRAC_PI_2 * i as f64 / 20.0;
                let phi = FRAC_PI_2 * j as f64 / 20.0;
                let a = BlochVector::X;
                let b = BlochVector::raw(theta.cos(), theta.sin(), 0.0);
                let (c, d) = yu_oh_optimal_vectors(&a, &b, phi).unwrap();
                let p = yu_oh_point(theta, phi).unwrap();
                assert!(((a - c).norm() - p.d_a).abs() < 1e-9, "theta={theta} phi={phi}");
                assert!(((b - d).norm() - p.d_b).abs() < 1e-9);
                assert!(compat_violation(&c, &d).abs() < 1e-9);
                // residual vectors are mutually orthogonal
                assert!((a - c).dot(&(b - d)).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn obtuse_targets_rejected() {
        let b = BlochVector::raw(-0.5, 3.0_f64.sqrt() / 2.0, 0.0);
        assert!(yu_oh_optimal_vectors(&BlochVector::X, &b, 0.3).is_err());
    }

    #[test]
    fn noise_bound_trivia() {
        assert_eq!(branciard_lhs(0.0, 0.0, 0.0), 0.0);
        // smeared targets at θ=π/2 sit exactly on the bound
        for phi in [0.0, 0.4, 1.2, FRAC_PI_2] {
            let ea = (2.0 * (1.0 - phi.sin())).sqrt();
            let eb = (2.0 * (1.0 - phi.cos())).sqrt();
            assert!((branciard_lhs(ea, eb, FRAC_PI_2) - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn sharp_family_saturates_bound() {
        for i in 0..=30 {
            let theta = FRAC_PI_2 * i as f64 / 30.0;
            for j in 0..=30 {
                let offset = theta * j as f64 / 30.0;
                let (ea, eb) = branciard_noise_errors(theta, offset).unwrap();
                let lhs = branciard_lhs(ea, eb, theta);
                assert!(
                    (lhs - theta.sin().powi(2)).abs() < 1e-12,
                    "theta={theta} offset={offset}"
                );
            }
        }
    }

    #[test]
    fn sharp_approximator_endpoints() {
        let a = BlochVector::X;
        let b = BlochVector::raw(FRAC_PI_3.cos(), FRAC_PI_3.sin(), 0.0);
        let m0 = branciard_sharp(&a, &b, 0.0).unwrap();
        assert!((m0 - a).norm() < 1e-12);
        let m1 = branciard_sharp(&a, &b, FRAC_PI_3).unwrap();
        assert!((m1 - b).norm() < 1e-12);
        assert!(branciard_sharp(&a, &b, FRAC_PI_3 + 0.01).is_err());
        let (ea, eb) = branciard_noise_errors(FRAC_PI_3, 0.0).unwrap();
        assert_eq!(ea, 0.0);
        assert!((eb - 2.0 * (FRAC_PI_3 / 2.0).sin()).abs() < 1e-15);
        // midpoint of orthogonal targets
        let (ea, eb) = branciard_noise_errors(FRAC_PI_2, FRAC_PI_4).unwrap();
        let want = 2.0 * (PI / 8.0).sin();
        assert!((ea - want).abs() < 1e-15);
        assert!((eb - want).abs() < 1e-15);
    }

    #[test]
    fn lambda_family_members() {
        let a = BlochVector::X;
        let b = BlochVector::Y;
        let m = BlochVector::raw(FRAC_PI_4.cos(), FRAC_PI_4.sin(), 0.0);
        let (c1, d1) = branciard_family(&a, &b, &m, 1.0).unwrap();
        assert!((c1 - m).norm() < 1e-14);
        assert!((d1 - m).norm() < 1e-14);
        let (c0, d0) = branciard_family(&a, &b, &m, 0.0).unwrap();
        assert!((c0.norm_sq() + d0.norm_sq() - 1.0).abs() < 1e-14);
        // non-orthogonal targets rejected
        let b_bad = BlochVector::raw(0.6, 0.8, 0.0);
        assert!(branciard_family(&a, &b_bad, &m, 0.5).is_err());
    }

    #[test]
    fn lambda_family_compatible_with_constant_noise() {
        use crate::compat::{compat_boundary_residual, compatible};
        use crate::measures::noise_symmetric_sq;
        let a = BlochVector::X;
        let b = BlochVector::Y;
        for beta in [0.2_f64, FRAC_PI_4, 1.1] {
            let m = BlochVector::raw(beta.cos(), beta.sin(), 0.0);
            let base_a = noise_symmetric_sq(&a, &(a * a.dot(&m)));
            let base_b = noise_symmetric_sq(&b, &(b * b.dot(&m)));
            for k in 0..=10 {
                let lambda = k as f64 / 10.0;
                let (c, d) = branciard_family(&a, &b, &m, lambda).unwrap();
                assert!(compatible(&c, &d));
                assert!(compat_boundary_residual(&c, &d).abs() < 1e-12);
                assert!((noise_symmetric_sq(&a, &c) - base_a).abs() < 1e-12);
                assert!((noise_symmetric_sq(&b, &d) - base_b).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn constant_noise_line_toward_smeared_target() {
        use crate::measures::noise_symmetric_sq;
        let a = BlochVector::X;
        for beta in [0.3_f64, 0.9, 1.4] {
            let m = BlochVector::raw(beta.cos(), beta.sin(), 0.0);
            let c = a * a.dot(&m);
            let want = 2.0 * (1.0 - a.dot(&m));
            for k in 0..=20 {
                let lambda = 2.0 * k as f64 / 20.0;
                let v = c * lambda + m * (1.0 - lambda);
                assert!(v.norm() <= 1.0 + 1e-12);
                assert!((noise_symmetric_sq(&a, &v) - want).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn metric_gaps_of_sharp_scheme() {
        let theta = FRAC_PI_3;
        let (d_a, d_b) = branciard_metric_errors(theta, 0.0).unwrap();
        assert_eq!(d_a, 0.0);
        assert!((d_b - 2.0 * (theta / 2.0).sin()).abs() < 1e-15);
        let (d_a, d_b) = branciard_metric_errors(theta, theta).unwrap();
        assert!((d_a - 2.0 * (theta / 2.0).sin()).abs() < 1e-15);
        assert_eq!(d_b, 0.0);
    }

    #[test]
    fn boundary_x_coordinate_monotone_in_phi() {
        for i in 1..=90 {
            let theta = FRAC_PI_2 * i as f64 / 90.0;
            let mut prev = f64::INFINITY;
            for j in 0..=2000 {
                let phi = FRAC_PI_2 * j as f64 / 2000.0;
                let p = yu_oh_point(theta, phi).unwrap();
                assert!(p.d_a <= prev + 1e-12, "d_a not decreasing at theta={theta} phi={phi}");
                prev = p.d_a;
            }
        }
    }

    #[test]
    fn margin_zero_on_boundary_positive_inside() {
        for theta in [FRAC_PI_6, FRAC_PI_3, FRAC_PI_2] {
            let table = MetricBoundary::tabulate(theta, 4097).unwrap();
            for j in 0..=50 {
                let phi = FRAC_PI_2 * j as f64 / 50.0;
                let p = yu_oh_point(theta, phi).unwrap();
                // inverting the flat end of the curve costs ~√eps accuracy
                assert!(yu_oh_margin(theta, p.d_a, p.d_b).unwrap().abs() < 1e-6);
                assert!(table.margin(p.d_a, p.d_b).abs() < 1e-6);
                assert!(yu_oh_margin(theta, p.d_a, p.d_b + 0.05).unwrap() > 0.049);
            }
            // far right of the curve there is no constraint
            assert!(yu_oh_margin(theta, 1.9, 0.0).unwrap() >= 0.0);
        }
    }
}
