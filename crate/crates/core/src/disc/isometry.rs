use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{hyperbolic_distance, to_origin, DiscError, DiscPoint};
use crate::tol::TOL;

/// A disc isometry `z ↦ (αw + β)/(β̄w + ᾱ)` with `w = z̄` when `reflect` is
/// set and `w = z` otherwise; `|α|² − |β|² = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Isometry {
    alpha: Complex64,
    beta: Complex64,
    reflect: bool,
}

impl Isometry {
    pub const IDENTITY: Isometry = Isometry {
        alpha: Complex64::new(1.0, 0.0),
        beta: Complex64::new(0.0, 0.0),
        reflect: false,
    };

    /// Normalises `(α, β)` so that `|α|² − |β|² = 1`.
    ///
    /// # Panics
    /// If `|α|² ≤ |β|²` (the map would not preserve the disc).
    pub fn from_parts(alpha: Complex64, beta: Complex64, reflect: bool) -> Self {
        let det = alpha.norm_sqr() - beta.norm_sqr();
        assert!(det > 0.0, "not a disc automorphism: |α|² − |β|² = {det}");
        let k = det.sqrt();
        Isometry {
            alpha: alpha / k,
            beta: beta / k,
            reflect,
        }
    }

    pub fn alpha(&self) -> Complex64 {
        self.alpha
    }

    pub fn beta(&self) -> Complex64 {
        self.beta
    }

    pub fn is_orientation_preserving(&self) -> bool {
        !self.reflect
    }

    /// `|α|² − |β|² − 1`.
    pub fn normalization_residual(&self) -> f64 {
        (self.alpha.norm_sqr() - self.beta.norm_sqr() - 1.0).abs()
    }

    /// Action on the closed disc, including points of the unit circle.
    pub fn apply_z(&self, z: Complex64) -> Complex64 {
        let w = if self.reflect { z.conj() } else { z };
        (self.alpha * w + self.beta) / (self.beta.conj() * w + self.alpha.conj())
    }

    pub fn apply(&self, p: DiscPoint) -> DiscPoint {
        DiscPoint::from_z(self.apply_z(p.z()))
    }

    /// Pushes a tangent vector at `p` forward to the image point.
    pub fn push_tangent(&self, p: DiscPoint, v: Complex64) -> Complex64 {
        let (w, v) = if self.reflect {
            (p.z().conj(), v.conj())
        } else {
            (p.z(), v)
        };
        let d = self.beta.conj() * w + self.alpha.conj();
        v / (d * d)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Isometry) -> Isometry {
        let (a, b) = if self.reflect {
            (other.alpha.conj(), other.beta.conj())
        } else {
            (other.alpha, other.beta)
        };
        Isometry::from_parts(
            self.alpha * a + self.beta * b.conj(),
            self.alpha * b + self.beta * a.conj(),
            self.reflect ^ other.reflect,
        )
    }

    pub fn inverse(&self) -> Isometry {
        if self.reflect {
            Isometry {
                alpha: self.alpha,
                beta: -self.beta.conj(),
                reflect: true,
            }
        } else {
            Isometry {
                alpha: self.alpha.conj(),
                beta: -self.beta,
                reflect: false,
            }
        }
    }

    /// `self^k` for `k ≥ 0`.
    pub fn pow(&self, k: usize) -> Isometry {
        (0..k).fold(Isometry::IDENTITY, |acc, _| acc.compose(self))
    }
}

/// The isometry `z ↦ (z − p)/(1 − p̄z)` moving `p` to the origin.
pub fn translation_to_origin(p: DiscPoint) -> Isometry {
    let z = p.z();
    Isometry::from_parts(Complex64::new(1.0, 0.0), -z, false)
}

/// Rotation by `angle` (counter-clockwise) about `center`.
pub fn rotation(center: DiscPoint, angle: f64) -> Isometry {
    let spin = Isometry {
        alpha: Complex64::from_polar(1.0, angle / 2.0),
        beta: Complex64::new(0.0, 0.0),
        reflect: false,
    };
    if center == DiscPoint::ORIGIN {
        return spin;
    }
    let t = translation_to_origin(center);
    t.inverse().compose(&spin).compose(&t)
}

/// The orientation-preserving isometry with `p1 ↦ p2` and `q1 ↦ q2`.
pub fn isometry_from_segment_pair(
    p1: DiscPoint,
    q1: DiscPoint,
    p2: DiscPoint,
    q2: DiscPoint,
) -> Result<Isometry, DiscError> {
    let d1 = hyperbolic_distance(p1, q1).value();
    let d2 = hyperbolic_distance(p2, q2).value();
    if (d1 - d2).abs() > TOL.oracle * (1.0 + d1) {
        return Err(DiscError::LengthMismatch(d1, d2));
    }
    let w1 = to_origin(p1.z(), q1.z());
    let w2 = to_origin(p2.z(), q2.z());
    let angle = if w1.norm() == 0.0 || w2.norm() == 0.0 {
        0.0
    } else {
        w2.arg() - w1.arg()
    };
    let t1 = translation_to_origin(p1);
    let t2 = translation_to_origin(p2);
    Ok(t2
        .inverse()
        .compose(&rotation(DiscPoint::ORIGIN, angle))
        .compose(&t1))
}
