//! Fenchel-Nielsen coordinates of fixed points.
//!
//! Pants curves are itineraries of marked points on an embedded polygon.
//! Each segment is a geodesic chord of the polygon; consecutive segments
//! meet at identified points of paired sides (or of a vertex cycle). A
//! curve is accepted as a closed geodesic when it is smooth across every
//! identification.
//!
//! Twists are signed lengths. At the foot of the first seam perpendicular,
//! the twist is positive when the perpendicular arrives from the left of the
//! direction of travel (itinerary order), and its magnitude is the distance
//! travelled forward along the curve to the second foot.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::disc::{DiscError, Length};
use crate::polygon::PolygonError;

mod locus;
mod pants;
mod templates;

pub use locus::{
    branch_locus_point, family_length, gamma2_two_route_residual, irregular_lengths,
    min_length_family,
};
pub use pants::{
    curve_length, orbit_of_curve, twist_at, twist_with, verify_pants, Anchor, CurveSegment,
    Handedness, PantsCurve, PantsDecomposition, Seam, SeamFoot, SeamTarget,
};
pub use templates::{fn_fixed_point, pants_template, solve_fixed_point, Family, FixedPoint};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FnError {
    #[error(transparent)]
    Polygon(#[from] PolygonError),
    #[error(transparent)]
    Disc(#[from] DiscError),
    #[error("curve {curve} is not a closed geodesic: {detail}")]
    NotGeodesic { curve: usize, detail: String },
    #[error("no seam defined for curve {0}")]
    NoSeam(usize),
    #[error("index {index} out of range ({what})")]
    InvalidIndex { index: usize, what: &'static str },
    #[error("unsupported data set {0}: only the order-10 and order-8 genus-2 families have built-in pants templates; build a decomposition by hand with the polygon module, orbit_of_curve and verify_pants")]
    Unsupported(String),
    #[error("constraint violated: {0}")]
    Constraint(String),
}

/// Lengths and signed twist lengths of a pants decomposition.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FNCoordinates {
    pub lengths: Vec<Length>,
    pub twists: Vec<f64>,
    pub convention: String,
}

pub const TWIST_CONVENTION: &str = "twist-as-signed-length";

impl FNCoordinates {
    pub fn new(lengths: Vec<Length>, twists: Vec<f64>) -> Self {
        FNCoordinates {
            lengths,
            twists,
            convention: TWIST_CONVENTION.to_string(),
        }
    }

    /// `(ℓ1, …, ℓm, t1, …, tm)`.
    pub fn as_vec(&self) -> Vec<f64> {
        self.lengths
            .iter()
            .map(|l| l.value())
            .chain(self.twists.iter().copied())
            .collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("coordinates serialize")
    }
}

/// A point of the compatible-pair branch locus.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LocusPoint {
    pub alpha: f64,
    pub s: Length,
    /// Pattern `(γ1, γ2, γ1, t, 0, −t)`.
    pub coords: FNCoordinates,
}

impl LocusPoint {
    pub fn gamma1(&self) -> f64 {
        self.coords.lengths[0].value()
    }

    pub fn gamma2(&self) -> f64 {
        self.coords.lengths[1].value()
    }

    pub fn t(&self) -> f64 {
        self.coords.twists[0]
    }
}
