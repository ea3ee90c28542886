use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::{FRAC_PI_2, PI};

use super::{CanonicalPolygon, PolygonError};
use crate::disc::{
    ccw_angle, direction, geodesic_through, hyperbolic_midpoint, isometry_from_segment_pair,
    rotation, DiscPoint, Geodesic, Isometry,
};

/// A canonical polygon placed in the disc: center at the origin, vertices
/// counter-clockwise, midpoint of side 0 at polar angle `−π/2`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EmbeddedPolygon {
    pub vertices: Vec<DiscPoint>,
    /// `midpoints[j]` is the midpoint of side `j`.
    pub midpoints: Vec<DiscPoint>,
    pub center: DiscPoint,
    pub source: CanonicalPolygon,
}

pub fn embed(p: &CanonicalPolygon) -> EmbeddedPolygon {
    let k = p.k;
    let step = p.central_angle();
    let vertex_at = |i: usize, offset: f64| {
        let r = (p.vertex_radius(i) / 2.0).tanh();
        DiscPoint::from_z(Complex64::from_polar(
            r,
            -FRAC_PI_2 + (i as f64 - 0.5) * step + offset,
        ))
    };
    let (vertices, midpoints) = if p.is_regular() {
        let rm = (p.inradius.value() / 2.0).tanh();
        let vertices: Vec<_> = (0..k).map(|i| vertex_at(i, 0.0)).collect();
        let midpoints = (0..k)
            .map(|j| DiscPoint::from_z(Complex64::from_polar(rm, -FRAC_PI_2 + j as f64 * step)))
            .collect();
        (vertices, midpoints)
    } else {
        let m0 = hyperbolic_midpoint(vertex_at(0, 0.0), vertex_at(1, 0.0));
        let offset = -FRAC_PI_2 - m0.arg();
        let vertices: Vec<_> = (0..k).map(|i| vertex_at(i, offset)).collect();
        let midpoints = (0..k)
            .map(|j| hyperbolic_midpoint(vertices[j], vertices[(j + 1) % k]))
            .collect();
        (vertices, midpoints)
    };
    EmbeddedPolygon {
        vertices,
        midpoints,
        center: DiscPoint::ORIGIN,
        source: p.clone(),
    }
}

impl EmbeddedPolygon {
    pub fn k(&self) -> usize {
        self.vertices.len()
    }

    /// Endpoints of side `i`, in counter-clockwise order.
    pub fn side(&self, i: usize) -> (DiscPoint, DiscPoint) {
        let k = self.k();
        (self.vertices[i % k], self.vertices[(i + 1) % k])
    }

    pub fn side_geodesic(&self, i: usize) -> Geodesic {
        let (a, b) = self.side(i);
        geodesic_through(a, b).expect("polygon vertices are distinct")
    }

    /// Interior angle at vertex `i`, measured from the embedding.
    pub fn interior_angle(&self, i: usize) -> f64 {
        let k = self.k();
        let v = self.vertices[i % k];
        ccw_angle(
            direction(v, self.vertices[(i + 1) % k]),
            direction(v, self.vertices[(i + k - 1) % k]),
        )
    }

    /// `(k − 2)π − Σ` measured angles.
    pub fn area(&self) -> f64 {
        let k = self.k();
        (k as f64 - 2.0) * PI - (0..k).map(|i| self.interior_angle(i)).sum::<f64>()
    }

    pub fn partner(&self, side: usize) -> usize {
        self.source.pairing[side % self.k()]
    }

    /// The rotation about the center realizing the action.
    pub fn rotation(&self) -> Isometry {
        rotation(self.center, self.source.rotation_angle)
    }

    pub fn pairing_isometry(&self, m: usize) -> Result<Isometry, PolygonError> {
        pairing_isometry(self, m)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("embedded polygon serializes")
    }
}

/// The orientation-preserving isometry gluing side `m` onto its partner
/// `z`, sending vertex `m` to vertex `z + 1` and vertex `m + 1` to `z`. It
/// carries the polygon across side `z`.
pub fn pairing_isometry(e: &EmbeddedPolygon, m: usize) -> Result<Isometry, PolygonError> {
    let k = e.k();
    if m >= k {
        return Err(PolygonError::InvalidSide { index: m, k });
    }
    let z = e.source.pairing[m];
    let (p1, q1) = e.side(m);
    let (q2, p2) = e.side(z);
    Ok(isometry_from_segment_pair(p1, q1, p2, q2)?)
}
