//! Constrained minimization over the compatibility region.
//!
//! Fixing one approximator direction c, the compatible partners d form a
//! spheroid: foci ±c, semi-axis 1 along c and √(1 − ‖c‖²) across it. The
//! conditional minimizers reduce to plane geometry against that spheroid
//! (point projection for the metric error, a supporting hyperplane for the
//! noise measure), and alternating them reproduces the fixed-point structure
//! of both tradeoff bounds. A seeded sampler and a brute-force grid oracle
//! back the analytic solutions.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::bloch::BlochVector;
use crate::compat::compat_violation;
use crate::error::{Error, Result};
use crate::measures::{metric_error_symmetric, noise_symmetric, ErrorPoint, Measure};
use crate::tol::TOL_POS;

/// Knobs for the iterative and randomized operations.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OptimizerConfig {
    /// Resolution of the brute-force oracle grid.
    pub grid_n: usize,
    /// Cycle limit for alternating minimization.
    pub max_iter: usize,
    /// Stopping threshold on iterate movement.
    pub conv_tol: f64,
    /// Seed for the admissible-region sampler.
    pub seed: u64,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        OptimizerConfig { grid_n: 256, max_iter: 200_000, conv_tol: 1e-10, seed: 0 }
    }
}

impl OptimizerConfig {
    pub fn validate(&self) -> Result<()> {
        if self.grid_n < 32 {
            return Err(Error::InvalidConfig("grid_n must be at least 32"));
        }
        if !self.conv_tol.is_finite() || self.conv_tol <= 0.0 {
            return Err(Error::InvalidConfig("conv_tol must be positive"));
        }
        if self.max_iter == 0 {
            return Err(Error::InvalidConfig("max_iter must be positive"));
        }
        Ok(())
    }
}

/// Record of an alternating-minimization run. Every listed pair saturates the
/// compatibility boundary: each d is chosen on the surface of the spheroid
/// of its c (and vice versa).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IterationTrace {
    pub steps: Vec<(BlochVector, BlochVector)>,
    pub converged: bool,
    /// Final c iterate; for the noise measure below maximal incompatibility
    /// this is the common limit vector of both sequences.
    pub limit: BlochVector,
}

impl IterationTrace {
    pub fn iterations(&self) -> usize {
        self.steps.len()
    }

    pub fn last_pair(&self) -> (BlochVector, BlochVector) {
        *self.steps.last().expect("trace has at least one step")
    }
}

/// Sharp targets at angle θ in the x–y plane: a = x̂, b = (cosθ, sinθ, 0).
pub fn targets_at_angle(theta: f64) -> (BlochVector, BlochVector) {
    (BlochVector::X, BlochVector::raw(theta.cos(), theta.sin(), 0.0))
}

/// The compatibility spheroid of `c`, reduced to the plane spanned by c and b.
struct EllipseFrame {
    chat: BlochVector,
    ehat: BlochVector,
    /// Cross-axis semi-axis √(1 − ‖c‖²).
    k: f64,
    /// Components of b in the (chat, ehat) frame; q ≥ 0.
    p: f64,
    q: f64,
}

impl EllipseFrame {
    /// Returns None when c ≈ 0 and the region is the whole unit ball.
    fn build(c: &BlochVector, b: &BlochVector) -> Option<EllipseFrame> {
        let norm = c.norm();
        if norm < 1e-14 {
            return None;
        }
        let chat = *c * (1.0 / norm);
        let p = b.dot(&chat);
        let perp = *b - chat * p;
        let q = perp.norm();
        let ehat = if q > 1e-13 {
            perp * (1.0 / q)
        } else {
            chat.any_orthogonal().expect("chat is unit")
        };
        let k = (1.0 - norm * norm).max(0.0).sqrt();
        Some(EllipseFrame { chat, ehat, k, p, q })
    }

    fn embed(&self, u: f64, v: f64) -> BlochVector {
        self.chat * u + self.ehat * v
    }

    fn contains(&self, u: f64, v: f64) -> bool {
        if self.k < 1e-14 {
            v.abs() < 1e-14 && u.abs() <= 1.0
        } else {
            u * u + (v / self.k) * (v / self.k) <= 1.0
        }
    }
}

fn check_inputs(c: &BlochVector, b: &BlochVector) -> Result<()> {
    if c.norm() > 1.0 + TOL_POS {
        return Err(Error::Domain("approximator direction outside the unit ball"));
    }
    if !b.is_unit(1e-9) {
        return Err(Error::NotUnit { what: "target", norm: b.norm() });
    }
    Ok(())
}

/// d minimizing the metric error ‖b − d‖ subject to compatibility with `c`:
/// the projection of b onto the compatibility spheroid of c.
pub fn min_metric_error_given(c: &BlochVector, b: &BlochVector) -> Result<BlochVector> {
    check_inputs(c, b)?;
    let frame = match EllipseFrame::build(c, b) {
        None => return Ok(*b),
        Some(f) => f,
    };
    if frame.contains(frame.p, frame.q) {
        return Ok(*b);
    }
    if frame.k < 1e-14 {
        // degenerate segment along c
        return Ok(frame.chat * frame.p.clamp(-1.0, 1.0));
    }
    if frame.q < 1e-14 {
        // b on the symmetry axis beyond the vertex
        return Ok(frame.chat * frame.p.signum());
    }
    let (u, v) = project_to_ellipse(frame.p, frame.q, frame.k);
    Ok(frame.embed(u, v))
}

/// Nearest point of the ellipse u² + (v/k)² = 1 to the external point (p, q),
/// with q > 0. The stationarity equation g(t) = 0 for the parameterization
/// (cos t, k sin t) has g(0) < 0 < g(π), so a minimizing root is bracketed.
fn project_to_ellipse(p: f64, q: f64, k: f64) -> (f64, f64) {
    let dist_sq = |t: f64| {
        let du = t.cos() - p;
        let dv = k * t.sin() - q;
        du * du + dv * dv
    };
    let g = |t: f64| {
        let (s, c) = t.sin_cos();
        (k * k - 1.0) * s * c + p * s - k * q * c
    };
    const SCAN: usize = 256;
    let mut best: Option<(f64, f64)> = None;
    let mut prev_t = 0.0_f64;
    let mut prev_g = g(prev_t);
    for i in 1..=SCAN {
        let t = std::f64::consts::PI * i as f64 / SCAN as f64;
        let gt = g(t);
        if prev_g <= 0.0 && gt >= 0.0 {
            // bisect the bracketed stationary point
            let (mut lo, mut hi) = (prev_t, t);
            for _ in 0..70 {
                let mid = 0.5 * (lo + hi);
                if g(mid) <= 0.0 {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            let root = 0.5 * (lo + hi);
            let f = dist_sq(root);
            if best.is_none_or(|(_, fb)| f < fb) {
                best = Some((root, f));
            }
        }
        prev_t = t;
        prev_g = gt;
    }
    let t = best.expect("sign change exists for q > 0").0;
    (t.cos(), k * t.sin())
}

/// d minimizing the noise ε_B² = 2(1 − b·d) subject to compatibility with
/// `c`: the point of the spheroid where the outward normal is parallel to b.
pub fn min_noise_given(c: &BlochVector, b: &BlochVector) -> Result<BlochVector> {
    check_inputs(c, b)?;
    let frame = match EllipseFrame::build(c, b) {
        None => return Ok(*b),
        Some(f) => f,
    };
    let denom = (frame.p * frame.p + frame.q * frame.q * frame.k * frame.k).sqrt();
    if denom < 1e-14 {
        // b orthogonal to a sharp c: every point of the segment scores zero
        return Ok(BlochVector::ZERO);
    }
    let u = frame.p / denom;
    let v = frame.q * frame.k * frame.k / denom;
    Ok(frame.embed(u, v))
}

fn pair_errors(measure: Measure, a: &BlochVector, b: &BlochVector, c: &BlochVector, d: &BlochVector) -> (f64, f64) {
    match measure {
        Measure::MetricD => (metric_error_symmetric(a, c), metric_error_symmetric(b, d)),
        Measure::NoiseEps => (noise_symmetric(a, c), noise_symmetric(b, d)),
    }
}

/// Alternately minimizes the chosen measure of each approximator given the
/// other, starting from `c0`, until the iterates stall.
///
/// The problem is planar: both objectives and the compatibility region are
/// invariant under reflection through the plane of the targets, and every
/// conditional optimum lies in the span of the current direction and its
/// target. The start is therefore projected into span{a, b} and the whole
/// trace stays there.
///
/// For the noise measure the movement of both Bloch vectors must fall below
/// `conv_tol`; below maximal incompatibility the only fixed points are unit
/// vectors, so the trace climbs to the sphere (from a start inside the wedge
/// of the targets the limit lies angularly between them). For the metric
/// error every boundary point of the admissible region is stationary, so
/// convergence is judged on the movement of the error pair (within
/// 10 × `conv_tol`) and the limit lands somewhere on the optimal boundary
/// curve.
pub fn alternate_minimize(
    measure: Measure,
    a: &BlochVector,
    b: &BlochVector,
    c0: &BlochVector,
    cfg: &OptimizerConfig,
) -> Result<IterationTrace> {
    cfg.validate()?;
    if !a.is_unit(1e-9) {
        return Err(Error::NotUnit { what: "target a", norm: a.norm() });
    }
    if !b.is_unit(1e-9) {
        return Err(Error::NotUnit { what: "target b", norm: b.norm() });
    }
    if a.dot(b) < -TOL_POS {
        return Err(Error::Domain("targets must subtend an angle in [0, pi/2]"));
    }
    if c0.norm() > 1.0 + TOL_POS {
        return Err(Error::Domain("starting direction outside the unit ball"));
    }
    let b_perp = *b - *a * a.dot(b);
    let c0 = if b_perp.norm() > 1e-12 {
        let e2 = b_perp.normalized()?;
        *a * c0.dot(a) + e2 * c0.dot(&e2)
    } else {
        *a * c0.dot(a)
    };
    let step_d = |c: &BlochVector| match measure {
        Measure::MetricD => min_metric_error_given(c, b),
        Measure::NoiseEps => min_noise_given(c, b),
    };
    let step_c = |d: &BlochVector| match measure {
        Measure::MetricD => min_metric_error_given(d, a),
        Measure::NoiseEps => min_noise_given(d, a),
    };

    let mut c = c0;
    let mut d = step_d(&c)?;
    let mut steps = vec![(c, d)];
    for _ in 0..cfg.max_iter {
        let c_next = step_c(&d)?;
        let d_next = step_d(&c_next)?;
        let done = match measure {
            Measure::NoiseEps => {
                (c_next - c).norm() < cfg.conv_tol && (d_next - d).norm() < cfg.conv_tol
            }
            Measure::MetricD => {
                let (ea, eb) = pair_errors(measure, a, b, &c, &d);
                let (ea2, eb2) = pair_errors(measure, a, b, &c_next, &d_next);
                ((ea2 - ea).powi(2) + (eb2 - eb).powi(2)).sqrt() < 10.0 * cfg.conv_tol
            }
        };
        steps.push((c_next, d_next));
        c = c_next;
        d = d_next;
        if done {
            return Ok(IterationTrace { steps, converged: true, limit: c });
        }
    }
    let iterations = steps.len();
    Err(Error::NoConvergence {
        iterations,
        trace: Box::new(IterationTrace { steps, converged: false, limit: c }),
    })
}

/// Stationarity residuals of a saturated pair: the sines of the angles
/// between a − c and c − (c·d)d, and between b − d and d − (c·d)c. Both
/// vanish exactly on simultaneously optimal pairs.
pub fn lagrange_residual(
    a: &BlochVector,
    b: &BlochVector,
    c: &BlochVector,
    d: &BlochVector,
) -> Result<(f64, f64)> {
    let m = c.dot(d);
    let sine = |v: BlochVector, w: BlochVector| -> Result<f64> {
        let (nv, nw) = (v.norm(), w.norm());
        if nv < 1e-13 || nw < 1e-13 {
            return Err(Error::Domain("degenerate vector in stationarity residual"));
        }
        Ok(v.cross(&w).norm() / (nv * nw))
    };
    let r1 = sine(*a - *c, *c - *d * m)?;
    let r2 = sine(*b - *d, *d - *c * m)?;
    Ok((r1, r2))
}

fn random_in_ball(rng: &mut impl Rng) -> BlochVector {
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

/// Draws `n_samples` compatible symmetric pairs against targets at angle θ
/// and evaluates the chosen error measure. Incompatible draws are scaled back
/// onto the compatibility boundary along the line to the origin, so the
/// boundary region is well represented. Deterministic for a fixed seed.
pub fn sample_admissible_region(
    measure: Measure,
    theta: f64,
    n_samples: usize,
    cfg: &OptimizerConfig,
) -> Result<Vec<ErrorPoint>> {
    cfg.validate()?;
    if !(0.0 - TOL_POS..=std::f64::consts::FRAC_PI_2 + TOL_POS).contains(&theta) {
        return Err(Error::Domain("angle outside [0, pi/2]"));
    }
    if n_samples == 0 {
        return Err(Error::Domain("need at least one sample"));
    }
    let (a, b) = targets_at_angle(theta);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut out = Vec::with_capacity(n_samples);
    for _ in 0..n_samples {
        let mut c = random_in_ball(&mut rng);
        let mut d = random_in_ball(&mut rng);
        let violation = compat_violation(&c, &d);
        if violation > 0.0 {
            let s = 2.0 / (violation + 2.0);
            c = c * s;
            d = d * s;
        }
        let (e_a, e_b) = pair_errors(measure, &a, &b, &c, &d);
        out.push(ErrorPoint::new(measure, e_a, e_b)?);
    }
    Ok(out)
}

/// Brute-force minimizer over an (angle × shell) grid of the compatibility
/// spheroid of `c`, restricted to the plane spanned by c and b (the region is
/// rotationally symmetric about c and both objectives are planar).
///
/// Both objectives attain their optimum on the outermost shell whenever b is
/// outside the region, so the angle is the binding resolution: the grid uses
/// 4·`grid_n` angles by `grid_n` shells. Refining `grid_n` along powers of
/// two never increases the returned value.
pub fn grid_oracle_min(
    c: &BlochVector,
    b: &BlochVector,
    objective: Measure,
    grid_n: usize,
) -> Result<(BlochVector, f64)> {
    if grid_n < 32 {
        return Err(Error::InvalidConfig("grid_n must be at least 32"));
    }
    check_inputs(c, b)?;
    let eval = |d: &BlochVector| match objective {
        Measure::MetricD => (*b - *d).norm(),
        Measure::NoiseEps => (2.0 * (1.0 - b.dot(d))).max(0.0).sqrt(),
    };
    let (chat, ehat, k) = match EllipseFrame::build(c, b) {
        Some(f) => (f.chat, f.ehat, f.k),
        None => (*b, b.any_orthogonal()?, 1.0),
    };
    let n_angles = 4 * grid_n;
    let mut best_d = BlochVector::ZERO;
    let mut best = eval(&best_d);
    for j in 1..=grid_n {
        let s = j as f64 / grid_n as f64;
        for i in 0..n_angles {
            let t = std::f64::consts::TAU * i as f64 / n_angles as f64;
            let (sin_t, cos_t) = t.sin_cos();
            let d = chat * (s * cos_t) + ehat * (s * k * sin_t);
            let val = eval(&d);
            if val < best {
                best = val;
                best_d = d;
            }
        }
    }
    Ok((best_d, best))
}
