//! Vectors in the Bloch picture.
//!
//! A [`BlochVector`] is a plain point of ℝ³. Depending on context it holds a
//! state vector r, a sharp target direction, or the direction of a dichotomic
//! effect. Constructors reject non-finite components; arithmetic on finite
//! domain values stays finite.

use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A vector in ℝ³, serialized as `[x, y, z]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochVector {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl BlochVector {
    pub const ZERO: BlochVector = BlochVector { x: 0.0, y: 0.0, z: 0.0 };
    pub const X: BlochVector = BlochVector { x: 1.0, y: 0.0, z: 0.0 };
    pub const Y: BlochVector = BlochVector { x: 0.0, y: 1.0, z: 0.0 };
    pub const Z: BlochVector = BlochVector { x: 0.0, y: 0.0, z: 1.0 };

    /// Builds a vector, rejecting NaN/Inf and normalizing −0.0 away.
    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        if !(x.is_finite() && y.is_finite() && z.is_finite()) {
            return Err(Error::NonFinite("BlochVector"));
        }
        Ok(Self::raw(x, y, z))
    }

    /// Internal constructor for values already known to be finite.
    pub(crate) fn raw(x: f64, y: f64, z: f64) -> Self {
        debug_assert!(x.is_finite() && y.is_finite() && z.is_finite());
        // adding 0.0 maps −0.0 to +0.0
        BlochVector { x: x + 0.0, y: y + 0.0, z: z + 0.0 }
    }

    pub fn dot(&self, other: &BlochVector) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    pub fn cross(&self, other: &BlochVector) -> BlochVector {
        BlochVector::raw(
            self.y * other.z - self.z * other.y,
            self.z * other.x - self.x * other.z,
            self.x * other.y - self.y * other.x,
        )
    }

    pub fn norm_sq(&self) -> f64 {
        self.dot(self)
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    /// Unit vector in the same direction; errors on (near-)zero input.
    pub fn normalized(&self) -> Result<BlochVector> {
        let n = self.norm();
        if n < 1e-14 {
            return Err(Error::Domain("cannot normalize a zero vector"));
        }
        Ok(*self * (1.0 / n))
    }

    pub fn distance(&self, other: &BlochVector) -> f64 {
        (*self - *other).norm()
    }

    pub fn is_unit(&self, tol: f64) -> bool {
        (self.norm() - 1.0).abs() <= tol
    }

    /// Rotation by `angle` (radians) about `axis` (Rodrigues' formula).
    pub fn rotated(&self, axis: &BlochVector, angle: f64) -> Result<BlochVector> {
        let k = axis.normalized()?;
        let (s, c) = angle.sin_cos();
        Ok(*self * c + k.cross(self) * s + k * (k.dot(self) * (1.0 - c)))
    }

    /// Some unit vector orthogonal to `self` (which must be nonzero).
    pub fn any_orthogonal(&self) -> Result<BlochVector> {
        let u = self.normalized()?;
        // cross with the axis least aligned with u
        let seed = if u.x.abs() <= u.y.abs() && u.x.abs() <= u.z.abs() {
            BlochVector::X
        } else if u.y.abs() <= u.z.abs() {
            BlochVector::Y
        } else {
            BlochVector::Z
        };
        u.cross(&seed).normalized()
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }
}

impl TryFrom<[f64; 3]> for BlochVector {
    type Error = Error;

    fn try_from(v: [f64; 3]) -> Result<Self> {
        BlochVector::new(v[0], v[1], v[2])
    }
}

impl Add for BlochVector {
    type Output = BlochVector;
    fn add(self, rhs: BlochVector) -> BlochVector {
        BlochVector::raw(self.x + rhs.x, self.y + rhs.y, self.z + rhs.z)
    }
}

impl Sub for BlochVector {
    type Output = BlochVector;
    fn sub(self, rhs: BlochVector) -> BlochVector {
        BlochVector::raw(self.x - rhs.x, self.y - rhs.y, self.z - rhs.z)
    }
}

impl Mul<f64> for BlochVector {
    type Output = BlochVector;
    fn mul(self, s: f64) -> BlochVector {
        BlochVector::raw(self.x * s, self.y * s, self.z * s)
    }
}

impl Neg for BlochVector {
    type Output = BlochVector;
    fn neg(self) -> BlochVector {
        BlochVector::raw(-self.x, -self.y, -self.z)
    }
}

impl Serialize for BlochVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.as_array().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for BlochVector {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let v = <[f64; 3]>::deserialize(deserializer)?;
        BlochVector::try_from(v).map_err(serde::de::Error::custom)
    }
}
