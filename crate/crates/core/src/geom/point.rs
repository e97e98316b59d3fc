//! Points, vectors and affine maps of the plane.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::ops::{Add, Mul, Neg, Sub};

/// A point (or vector) in the plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub const ZERO: Point2 = Point2 { x: 0.0, y: 0.0 };

    pub fn new(x: f64, y: f64) -> Self {
        Point2 { x, y }
    }

    /// Unit vector at angle `theta` from the positive x-axis.
    pub fn unit(theta: f64) -> Self {
        let (s, c) = theta.sin_cos();
        Point2 { x: c, y: s }
    }

    pub fn dot(self, other: Point2) -> f64 {
        self.x * other.x + self.y * other.y
    }

    /// z-component of the cross product, positive when `other` is
    /// counterclockwise from `self`.
    pub fn cross(self, other: Point2) -> f64 {
        self.x * other.y - self.y * other.x
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn norm_sq(self) -> f64 {
        self.x * self.x + self.y * self.y
    }

    pub fn angle(self) -> f64 {
        self.y.atan2(self.x)
    }

    /// Counterclockwise rotation by 90 degrees.
    pub fn perp(self) -> Point2 {
        Point2 { x: -self.y, y: self.x }
    }

    pub fn scale(self, s: f64) -> Point2 {
        Point2 { x: self.x * s, y: self.y * s }
    }

    pub fn normalized(self) -> Point2 {
        let n = self.norm();
        Point2 { x: self.x / n, y: self.y / n }
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

impl Add for Point2 {
    type Output = Point2;
    fn add(self, o: Point2) -> Point2 {
        Point2::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Point2 {
    type Output = Point2;
    fn sub(self, o: Point2) -> Point2 {
        Point2::new(self.x - o.x, self.y - o.y)
    }
}

impl Neg for Point2 {
    type Output = Point2;
    fn neg(self) -> Point2 {
        Point2::new(-self.x, -self.y)
    }
}

impl Mul<f64> for Point2 {
    type Output = Point2;
    fn mul(self, s: f64) -> Point2 {
        self.scale(s)
    }
}

/// An invertible affine map `p -> linear * p + shift`.
///
/// The determinant is cached at construction and checked against the
/// matrix to 1e-12 relative.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AffineMap2 {
    /// Row-major 2x2 matrix [[a, b], [c, d]].
    pub linear: [[f64; 2]; 2],
    pub shift: Point2,
    pub det: f64,
}

impl AffineMap2 {
    pub fn new(linear: [[f64; 2]; 2], shift: Point2) -> Result<Self> {
        let det = linear[0][0] * linear[1][1] - linear[0][1] * linear[1][0];
        if det.abs() < 1e-12 {
            return Err(Error::SingularMap(det.abs()));
        }
        Ok(AffineMap2 { linear, shift, det })
    }

    pub fn identity() -> Self {
        AffineMap2 { linear: [[1.0, 0.0], [0.0, 1.0]], shift: Point2::ZERO, det: 1.0 }
    }

    pub fn linear_only(linear: [[f64; 2]; 2]) -> Result<Self> {
        AffineMap2::new(linear, Point2::ZERO)
    }

    pub fn scaling(sx: f64, sy: f64) -> Result<Self> {
        AffineMap2::new([[sx, 0.0], [0.0, sy]], Point2::ZERO)
    }

    pub fn rotation(angle: f64) -> Self {
        let (s, c) = angle.sin_cos();
        AffineMap2 { linear: [[c, -s], [s, c]], shift: Point2::ZERO, det: 1.0 }
    }

    pub fn apply(&self, p: Point2) -> Point2 {
        Point2::new(
            self.linear[0][0] * p.x + self.linear[0][1] * p.y + self.shift.x,
            self.linear[1][0] * p.x + self.linear[1][1] * p.y + self.shift.y,
        )
    }

    /// Transpose of the linear part applied to a vector (no shift).
    pub fn apply_transpose(&self, p: Point2) -> Point2 {
        Point2::new(
            self.linear[0][0] * p.x + self.linear[1][0] * p.y,
            self.linear[0][1] * p.x + self.linear[1][1] * p.y,
        )
    }

    pub fn compose(&self, inner: &AffineMap2) -> Result<Self> {
        let a = self.linear;
        let b = inner.linear;
        let linear = [
            [a[0][0] * b[0][0] + a[0][1] * b[1][0], a[0][0] * b[0][1] + a[0][1] * b[1][1]],
            [a[1][0] * b[0][0] + a[1][1] * b[1][0], a[1][0] * b[0][1] + a[1][1] * b[1][1]],
        ];
        let shift = self.apply(inner.shift);
        AffineMap2::new(linear, shift)
    }

    /// Checks the cached determinant invariant.
    pub fn det_consistent(&self) -> bool {
        let d = self.linear[0][0] * self.linear[1][1] - self.linear[0][1] * self.linear[1][0];
        (d - self.det).abs() <= 1e-12 * d.abs().max(1.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_vectors() {
        assert!((Point2::unit(0.0) - Point2::new(1.0, 0.0)).norm() < 1e-15);
        let u = Point2::unit(std::f64::consts::FRAC_PI_2);
        assert!((u - Point2::new(0.0, 1.0)).norm() < 1e-15);
    }

    #[test]
    fn singular_map_rejected() {
        assert!(matches!(
            AffineMap2::linear_only([[1.0, 2.0], [2.0, 4.0]]),
            Err(Error::SingularMap(_))
        ));
    }

    #[test]
    fn compose_matches_sequential_apply() {
        let a = AffineMap2::new([[2.0, 1.0], [0.0, 0.5]], Point2::new(1.0, -1.0)).unwrap();
        let b = AffineMap2::rotation(0.7);
        let ab = a.compose(&b).unwrap();
        let p = Point2::new(0.3, -2.0);
        assert!((ab.apply(p) - a.apply(b.apply(p))).norm() < 1e-14);
    }
}
