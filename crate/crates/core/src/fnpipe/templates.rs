use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use super::pants::lengths_of;
use super::{
    twist_at, Anchor, FNCoordinates, FnError, PantsCurve, PantsDecomposition, Seam, SeamFoot,
    SeamTarget,
};
use crate::dataset::DataSet;
use crate::polygon::{embed, realize_type1, EmbeddedPolygon};

/// The genus-2 families with built-in pants templates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Family {
    /// Regular 10-gon with angles `2π/5`, opposite sides paired.
    Order10,
    /// Regular 8-gon with angles `π/4`, opposite sides paired.
    Order8,
}

impl Family {
    pub fn of(e: &EmbeddedPolygon) -> Option<Family> {
        let p = &e.source;
        let k = p.k;
        let opposite = (0..k).all(|m| p.pairing[m] == (m + k / 2) % k);
        let all_angles = |a: f64| p.angles.iter().all(|&x| (x - a).abs() < 1e-12);
        match k {
            10 if opposite && all_angles(2.0 * PI / 5.0) => Some(Family::Order10),
            8 if opposite && all_angles(PI / 4.0) => Some(Family::Order8),
            _ => None,
        }
    }
}

fn seam(curve: usize, target: SeamTarget) -> Seam {
    Seam {
        curve,
        feet: [
            SeamFoot { segment: 0, target },
            SeamFoot { segment: 1, target },
        ],
    }
}

fn split_seam(curve: usize, other: usize) -> Seam {
    Seam {
        curve,
        feet: [
            SeamFoot {
                segment: 0,
                target: SeamTarget::Segment {
                    curve: other,
                    segment: 0,
                },
            },
            SeamFoot {
                segment: 0,
                target: SeamTarget::Segment {
                    curve: other,
                    segment: 1,
                },
            },
        ],
    }
}

/// The built-in decomposition and seam system for a supported polygon.
///
/// Order 10 uses the images `c_i = F(γ_i)`: `M2M3M8M7`, `M4M5M10M9` and the
/// diameter `M1M6`. Order 8 uses `M1M2M6M5`, `M3M4M8M7` and the diagonal
/// `V0V4`.
pub fn pants_template(e: &EmbeddedPolygon) -> Result<PantsDecomposition, FnError> {
    let family =
        Family::of(e).ok_or_else(|| FnError::Unsupported(e.source.data_set.to_string()))?;
    Ok(match family {
        Family::Order10 => PantsDecomposition {
            curves: vec![
                PantsCurve::through_midpoints(&[(1, 2), (7, 6)]),
                PantsCurve::through_midpoints(&[(3, 4), (9, 8)]),
                PantsCurve::through_midpoints(&[(0, 5)]),
            ],
            seams: vec![
                seam(
                    0,
                    SeamTarget::Segment {
                        curve: 2,
                        segment: 0,
                    },
                ),
                seam(
                    1,
                    SeamTarget::Through {
                        from: Anchor::Midpoint(2),
                        to: Anchor::Midpoint(7),
                    },
                ),
                split_seam(2, 0),
            ],
        },
        Family::Order8 => PantsDecomposition {
            curves: vec![
                PantsCurve::through_midpoints(&[(0, 1), (5, 4)]),
                PantsCurve::through_midpoints(&[(2, 3), (7, 6)]),
                PantsCurve::new(vec![(Anchor::Vertex(0), Anchor::Vertex(4))]),
            ],
            seams: vec![
                seam(
                    0,
                    SeamTarget::Segment {
                        curve: 2,
                        segment: 0,
                    },
                ),
                seam(
                    1,
                    SeamTarget::Through {
                        from: Anchor::Vertex(2),
                        to: Anchor::Vertex(6),
                    },
                ),
                split_seam(2, 0),
            ],
        },
    })
}

/// Everything computed on the way to the coordinates of a fixed point.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FixedPoint {
    pub polygon: EmbeddedPolygon,
    pub pants: PantsDecomposition,
    pub coords: FNCoordinates,
}

pub fn solve_fixed_point(d: &DataSet) -> Result<FixedPoint, FnError> {
    let polygon = embed(&realize_type1(d)?);
    let pants = pants_template(&polygon).map_err(|err| match err {
        FnError::Unsupported(_) => FnError::Unsupported(d.to_string()),
        other => other,
    })?;
    let lengths = lengths_of(&polygon, &pants)?;
    let twists = (0..pants.curves.len())
        .map(|i| twist_at(&polygon, &pants, i))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(FixedPoint {
        polygon,
        pants,
        coords: FNCoordinates::new(lengths, twists),
    })
}

/// `(ℓ1, ℓ2, ℓ3, t1, t2, t3)` of the fixed point of `d`.
pub fn fn_fixed_point(d: &DataSet) -> Result<FNCoordinates, FnError> {
    Ok(solve_fixed_point(d)?.coords)
}
