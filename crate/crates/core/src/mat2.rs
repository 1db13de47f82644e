//! Internal 2×2 complex matrix backend.
//!
//! Bloch form covers all Hermitian algebra in this crate; products of
//! non-commuting operators are not Hermitian, so moment-form noise values and
//! the eigenvalue cross-checks in tests go through this module instead. Not
//! part of the public API.

use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;

use crate::bloch::BlochVector;
use crate::operator::{DensityOperator, QubitOperator};

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Mat2(pub [[Complex64; 2]; 2]);

// several helpers back the eigenvalue cross-checks in tests only
#[cfg_attr(not(test), allow(dead_code))]
impl Mat2 {
    pub fn zero() -> Self {
        Mat2([[Complex64::ZERO; 2]; 2])
    }

    pub fn identity() -> Self {
        let one = Complex64::new(1.0, 0.0);
        Mat2([[one, Complex64::ZERO], [Complex64::ZERO, one]])
    }

    /// ½(αI + v·σ) as an explicit matrix.
    pub fn from_bloch(alpha: f64, v: BlochVector) -> Self {
        let h = 0.5;
        Mat2([
            [
                Complex64::new(h * (alpha + v.z), 0.0),
                Complex64::new(h * v.x, -h * v.y),
            ],
            [
                Complex64::new(h * v.x, h * v.y),
                Complex64::new(h * (alpha - v.z), 0.0),
            ],
        ])
    }

    pub fn from_operator(op: &QubitOperator) -> Self {
        Mat2::from_bloch(op.alpha(), op.vec())
    }

    pub fn from_state(rho: &DensityOperator) -> Self {
        Mat2::from_bloch(1.0, rho.bloch())
    }

    /// Recover (α, v) assuming the matrix is Hermitian.
    pub fn to_bloch(self) -> (f64, BlochVector) {
        let m = self.0;
        let alpha = m[0][0].re + m[1][1].re;
        let v = BlochVector::raw(
            m[1][0].re + m[0][1].re,
            m[1][0].im - m[0][1].im,
            m[0][0].re - m[1][1].re,
        );
        (alpha, v)
    }

    pub fn trace(&self) -> Complex64 {
        self.0[0][0] + self.0[1][1]
    }

    pub fn adjoint(&self) -> Mat2 {
        Mat2([
            [self.0[0][0].conj(), self.0[1][0].conj()],
            [self.0[0][1].conj(), self.0[1][1].conj()],
        ])
    }

    pub fn scale(&self, s: f64) -> Mat2 {
        let mut out = *self;
        for row in &mut out.0 {
            for x in row.iter_mut() {
                *x *= s;
            }
        }
        out
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        let d = *self - self.adjoint();
        d.0.iter().flatten().all(|x| x.norm() <= tol)
    }

    /// Eigenvalues of a Hermitian matrix, (low, high).
    pub fn eigenvalues_hermitian(&self) -> (f64, f64) {
        debug_assert!(self.is_hermitian(1e-10));
        let t = self.trace().re;
        let det = (self.0[0][0] * self.0[1][1] - self.0[0][1] * self.0[1][0]).re;
        let disc = (0.25 * t * t - det).max(0.0).sqrt();
        (0.5 * t - disc, 0.5 * t + disc)
    }

    pub fn operator_norm_hermitian(&self) -> f64 {
        let (lo, hi) = self.eigenvalues_hermitian();
        lo.abs().max(hi.abs())
    }

    /// Apply `f` to the eigenvalues of a Hermitian matrix.
    pub fn hermitian_fn(&self, f: impl Fn(f64) -> f64) -> Mat2 {
        let (alpha, v) = self.to_bloch();
        let n = v.norm();
        let (lo, hi) = (0.5 * (alpha - n), 0.5 * (alpha + n));
        let (flo, fhi) = (f(lo), f(hi));
        if n < 1e-15 {
            return Mat2::identity().scale(0.5 * (flo + fhi));
        }
        // f(H) = ½(α'I + v'·σ) with α' = f(hi)+f(lo), v' = (f(hi)−f(lo)) v̂
        Mat2::from_bloch(fhi + flo, v * ((fhi - flo) / n))
    }

    /// Re tr[ρ M].
    pub fn re_expectation(&self, rho: &DensityOperator) -> f64 {
        (Mat2::from_state(rho) * *self).trace().re
    }
}

impl Add for Mat2 {
    type Output = Mat2;
    fn add(self, rhs: Mat2) -> Mat2 {
        let mut out = Mat2::zero();
        for i in 0..2 {
            for j in 0..2 {
                out.0[i][j] = self.0[i][j] + rhs.0[i][j];
            }
        }
        out
    }
}

impl Sub for Mat2 {
    type Output = Mat2;
    fn sub(self, rhs: Mat2) -> Mat2 {
        let mut out = Mat2::zero();
        for i in 0..2 {
            for j in 0..2 {
                out.0[i][j] = self.0[i][j] - rhs.0[i][j];
            }
        }
        out
    }
}

impl Mul for Mat2 {
    type Output = Mat2;
    fn mul(self, rhs: Mat2) -> Mat2 {
        let mut out = Mat2::zero();
        for i in 0..2 {
            for j in 0..2 {
                out.0[i][j] = self.0[i][0] * rhs.0[0][j] + self.0[i][1] * rhs.0[1][j];
            }
        }
        out
    }
}
