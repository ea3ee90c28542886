//! Poincaré disc kernel.
//!
//! Points are Euclidean coordinates inside the unit circle, geodesics are
//! diameters or circular arcs orthogonal to it, and isometries are stored in
//! `SU(1,1)` form `z ↦ (αz+β)/(β̄z+ᾱ)`, optionally precomposed with complex
//! conjugation so that reflections can be composed with everything else.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::tol::TOL;

mod geodesic;
mod isometry;

pub use geodesic::{
    angle_between, common_perpendicular, foot_of_perpendicular, geodesic_from_ideal,
    geodesic_through, intersect, segments_cross, Geodesic,
};
pub use isometry::{isometry_from_segment_pair, rotation, translation_to_origin, Isometry};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DiscError {
    #[error("point ({x}, {y}) is not strictly inside the unit disc")]
    OutsideDisc { x: f64, y: f64 },
    #[error("points coincide, no unique geodesic")]
    Coincident,
    #[error("no common perpendicular: geodesics are {0}")]
    NoCommonPerpendicular(&'static str),
    #[error("segment lengths differ ({0} vs {1})")]
    LengthMismatch(f64, f64),
    #[error("length must be finite and non-negative, got {0}")]
    InvalidLength(f64),
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiscPoint {
    pub x: f64,
    pub y: f64,
}

impl DiscPoint {
    pub const ORIGIN: DiscPoint = DiscPoint { x: 0.0, y: 0.0 };

    pub fn new(x: f64, y: f64) -> Result<Self, DiscError> {
        if !(x.is_finite() && y.is_finite()) || x * x + y * y >= 1.0 - TOL.construction {
            return Err(DiscError::OutsideDisc { x, y });
        }
        Ok(DiscPoint { x, y })
    }

    /// Polar form `r·e^{iφ}`.
    pub fn polar(r: f64, phi: f64) -> Result<Self, DiscError> {
        DiscPoint::new(r * phi.cos(), r * phi.sin())
    }

    pub fn z(self) -> Complex64 {
        Complex64::new(self.x, self.y)
    }

    pub(crate) fn from_z(z: Complex64) -> Self {
        DiscPoint { x: z.re, y: z.im }
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn arg(self) -> f64 {
        self.y.atan2(self.x)
    }

    pub fn conj(self) -> Self {
        DiscPoint {
            x: self.x,
            y: -self.y,
        }
    }

    pub fn euclidean_distance(self, other: DiscPoint) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }
}

/// A hyperbolic length. Always finite and non-negative.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Length(f64);

impl Length {
    pub const ZERO: Length = Length(0.0);

    pub fn new(value: f64) -> Result<Self, DiscError> {
        if value.is_finite() && value >= 0.0 {
            Ok(Length(value))
        } else {
            Err(DiscError::InvalidLength(value))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

impl From<Length> for f64 {
    fn from(l: Length) -> f64 {
        l.0
    }
}

/// `T_p(q) = (q − p)/(1 − p̄q)`, the image of `q` when `p` is moved to the origin.
pub(crate) fn to_origin(p: Complex64, q: Complex64) -> Complex64 {
    (q - p) / (Complex64::new(1.0, 0.0) - p.conj() * q)
}

pub(crate) fn from_origin(p: Complex64, w: Complex64) -> Complex64 {
    (w + p) / (Complex64::new(1.0, 0.0) + p.conj() * w)
}

/// `2·artanh |p − q| / |1 − p̄q|`, written symmetrically via
/// `|1 − p̄q|² = |p − q|² + (1 − |p|²)(1 − |q|²)`.
pub fn hyperbolic_distance(p: DiscPoint, q: DiscPoint) -> Length {
    let num = (p.x - q.x).hypot(p.y - q.y);
    if num == 0.0 {
        return Length::ZERO;
    }
    let wp = 1.0 - (p.x * p.x + p.y * p.y);
    let wq = 1.0 - (q.x * q.x + q.y * q.y);
    let r = num / (num * num + wp * wq).sqrt();
    Length(2.0 * r.min(1.0).atanh())
}

/// Unit tangent at `p` of the geodesic from `p` toward `q`.
pub fn direction(p: DiscPoint, q: DiscPoint) -> Complex64 {
    let w = to_origin(p.z(), q.z());
    w / w.norm()
}

/// The point at hyperbolic distance `t` from `p` along the ray toward `q`.
pub fn point_along(p: DiscPoint, q: DiscPoint, t: f64) -> DiscPoint {
    let w = to_origin(p.z(), q.z());
    let n = w.norm();
    if n == 0.0 {
        return p;
    }
    let r = (t / 2.0).tanh();
    DiscPoint::from_z(from_origin(p.z(), w / n * r))
}

pub fn hyperbolic_midpoint(p: DiscPoint, q: DiscPoint) -> DiscPoint {
    let w = to_origin(p.z(), q.z());
    let n = w.norm();
    if n == 0.0 {
        return p;
    }
    // tanh(d/4) with d = 2·artanh(n)
    let r = (n.atanh() / 2.0).tanh();
    DiscPoint::from_z(from_origin(p.z(), w / n * r))
}

/// Counter-clockwise angle from direction `u` to direction `v`, in `[0, 2π)`.
pub fn ccw_angle(u: Complex64, v: Complex64) -> f64 {
    let a = (v / u).arg();
    if a < 0.0 {
        a + std::f64::consts::TAU
    } else {
        a
    }
}

pub(crate) fn cross(u: Complex64, v: Complex64) -> f64 {
    u.re * v.im - u.im * v.re
}
