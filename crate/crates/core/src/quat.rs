//! Quaternions and pure quaternions.
//!
//! Components are stored in the basis order `{1, i, j, k}`. Pure quaternions
//! are identified with vectors in R^3 and carry the Euclidean dot and cross
//! products.

use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// An element `w + x i + y j + z k` of the quaternions.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Quaternion {
    pub w: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

/// A purely imaginary quaternion `x i + y j + z k`, i.e. a vector in R^3.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct PureQuaternion {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Quaternion {
    pub const ONE: Quaternion = Quaternion::new(1.0, 0.0, 0.0, 0.0);
    pub const I: Quaternion = Quaternion::new(0.0, 1.0, 0.0, 0.0);
    pub const J: Quaternion = Quaternion::new(0.0, 0.0, 1.0, 0.0);
    pub const K: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 1.0);
    pub const ZERO: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 0.0);

    pub const fn new(w: f64, x: f64, y: f64, z: f64) -> Self {
        Self { w, x, y, z }
    }

    pub const fn from_array(c: [f64; 4]) -> Self {
        Self::new(c[0], c[1], c[2], c[3])
    }

    pub const fn to_array(self) -> [f64; 4] {
        [self.w, self.x, self.y, self.z]
    }

    pub const fn from_parts(w: f64, v: PureQuaternion) -> Self {
        Self::new(w, v.x, v.y, v.z)
    }

    /// The basis element with index 0..4 in the order `1, i, j, k`.
    pub fn basis(index: usize) -> Self {
        match index {
            0 => Self::ONE,
            1 => Self::I,
            2 => Self::J,
            3 => Self::K,
            _ => panic!("quaternion basis index {index} out of range"),
        }
    }

    pub fn real(self) -> f64 {
        self.w
    }

    pub fn imag(self) -> PureQuaternion {
        PureQuaternion::new(self.x, self.y, self.z)
    }

    pub fn conj(self) -> Self {
        Self::new(self.w, -self.x, -self.y, -self.z)
    }

    pub fn norm_sqr(self) -> f64 {
        self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z
    }

    pub fn norm(self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn max_abs(self) -> f64 {
        self.to_array().iter().fold(0.0_f64, |m, c| m.max(c.abs()))
    }

    pub fn scale(self, s: f64) -> Self {
        Self::new(self.w * s, self.x * s, self.y * s, self.z * s)
    }

    /// Unit quaternion parallel to `self`.
    ///
    /// Fails with [`Error::ZeroQuaternion`] when the norm is below
    /// `1e-14 * (1 + max|component|)`.
    pub fn normalize(self) -> Result<Self> {
        let norm = self.norm();
        if !(norm > 1e-14 * (1.0 + self.max_abs())) {
            return Err(Error::ZeroQuaternion { norm });
        }
        Ok(self.scale(1.0 / norm))
    }
}

impl Mul for Quaternion {
    type Output = Quaternion;

    fn mul(self, b: Quaternion) -> Quaternion {
        let a = self;
        Quaternion::new(
            a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
            a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
            a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
            a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w,
        )
    }
}

impl Mul<f64> for Quaternion {
    type Output = Quaternion;

    fn mul(self, s: f64) -> Quaternion {
        self.scale(s)
    }
}

impl Add for Quaternion {
    type Output = Quaternion;

    fn add(self, b: Quaternion) -> Quaternion {
        Quaternion::new(self.w + b.w, self.x + b.x, self.y + b.y, self.z + b.z)
    }
}

impl Sub for Quaternion {
    type Output = Quaternion;

    fn sub(self, b: Quaternion) -> Quaternion {
        Quaternion::new(self.w - b.w, self.x - b.x, self.y - b.y, self.z - b.z)
    }
}

impl Neg for Quaternion {
    type Output = Quaternion;

    fn neg(self) -> Quaternion {
        self.scale(-1.0)
    }
}

impl From<PureQuaternion> for Quaternion {
    fn from(v: PureQuaternion) -> Self {
        Quaternion::from_parts(0.0, v)
    }
}

impl PureQuaternion {
    pub const ZERO: PureQuaternion = PureQuaternion::new(0.0, 0.0, 0.0);

    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    pub const fn from_array(c: [f64; 3]) -> Self {
        Self::new(c[0], c[1], c[2])
    }

    pub const fn to_array(self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    pub fn dot(self, b: PureQuaternion) -> f64 {
        self.x * b.x + self.y * b.y + self.z * b.z
    }

    pub fn cross(self, b: PureQuaternion) -> PureQuaternion {
        PureQuaternion::new(
            self.y * b.z - self.z * b.y,
            self.z * b.x - self.x * b.z,
            self.x * b.y - self.y * b.x,
        )
    }

    pub fn norm_sqr(self) -> f64 {
        self.dot(self)
    }

    pub fn norm(self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn max_abs(self) -> f64 {
        self.x.abs().max(self.y.abs()).max(self.z.abs())
    }

    pub fn scale(self, s: f64) -> Self {
        Self::new(self.x * s, self.y * s, self.z * s)
    }
}

impl Add for PureQuaternion {
    type Output = PureQuaternion;

    fn add(self, b: PureQuaternion) -> PureQuaternion {
        PureQuaternion::new(self.x + b.x, self.y + b.y, self.z + b.z)
    }
}

impl AddAssign for PureQuaternion {
    fn add_assign(&mut self, b: PureQuaternion) {
        *self = *self + b;
    }
}

impl Sub for PureQuaternion {
    type Output = PureQuaternion;

    fn sub(self, b: PureQuaternion) -> PureQuaternion {
        PureQuaternion::new(self.x - b.x, self.y - b.y, self.z - b.z)
    }
}

impl Neg for PureQuaternion {
    type Output = PureQuaternion;

    fn neg(self) -> PureQuaternion {
        self.scale(-1.0)
    }
}

impl Mul<f64> for PureQuaternion {
    type Output = PureQuaternion;

    fn mul(self, s: f64) -> PureQuaternion {
        self.scale(s)
    }
}
