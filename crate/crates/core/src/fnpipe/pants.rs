use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::f64::consts::PI;

use super::FnError;
use crate::dataset::{ValidationReport, Violation};
use crate::disc::{
    ccw_angle, common_perpendicular, cross, direction, geodesic_through, hyperbolic_distance,
    segments_cross, DiscPoint, Geodesic, Isometry, Length,
};
use crate::polygon::{pairing_isometry, EmbeddedPolygon};

/// Smoothness budget at identifications, in radians.
const SMOOTHNESS: f64 = 1e-8;

/// A marked point of an embedded polygon.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "at")]
pub enum Anchor {
    /// Midpoint of a side (sides from 0).
    Midpoint(usize),
    Vertex(usize),
    Point(DiscPoint),
}

impl Anchor {
    pub fn point(&self, e: &EmbeddedPolygon) -> DiscPoint {
        match *self {
            Anchor::Midpoint(j) => e.midpoints[j % e.k()],
            Anchor::Vertex(v) => e.vertices[v % e.k()],
            Anchor::Point(p) => p,
        }
    }

    /// Class of the anchor on the glued surface, when it is a marked point.
    fn class(&self, e: &EmbeddedPolygon, vertex_class: &[usize]) -> Option<(u8, usize)> {
        match *self {
            Anchor::Midpoint(j) => Some((0, j.min(e.partner(j)))),
            Anchor::Vertex(v) => Some((1, vertex_class[v % e.k()])),
            Anchor::Point(_) => None,
        }
    }

    fn label(&self) -> String {
        match *self {
            Anchor::Midpoint(j) => format!("M{}", j + 1),
            Anchor::Vertex(v) => format!("V{v}"),
            Anchor::Point(p) => format!("({:.6}, {:.6})", p.x, p.y),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CurveSegment {
    pub from: Anchor,
    pub to: Anchor,
}

/// A closed curve drawn as geodesic chords of the polygon.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PantsCurve {
    pub segments: Vec<CurveSegment>,
}

impl PantsCurve {
    pub fn new(segments: Vec<(Anchor, Anchor)>) -> Self {
        PantsCurve {
            segments: segments
                .into_iter()
                .map(|(from, to)| CurveSegment { from, to })
                .collect(),
        }
    }

    /// Chords between side midpoints, given as side indices.
    pub fn through_midpoints(chords: &[(usize, usize)]) -> Self {
        PantsCurve::new(
            chords
                .iter()
                .map(|&(a, b)| (Anchor::Midpoint(a), Anchor::Midpoint(b)))
                .collect(),
        )
    }

    /// The marked points visited, in order.
    pub fn itinerary(&self) -> Vec<Anchor> {
        self.segments.iter().flat_map(|s| [s.from, s.to]).collect()
    }

    pub fn points(&self, e: &EmbeddedPolygon) -> Vec<(DiscPoint, DiscPoint)> {
        self.segments
            .iter()
            .map(|s| (s.from.point(e), s.to.point(e)))
            .collect()
    }

    pub fn label(&self) -> String {
        self.segments
            .iter()
            .map(|s| format!("{}{}", s.from.label(), s.to.label()))
            .collect::<Vec<_>>()
            .join(" ")
    }

    fn class_key(&self, e: &EmbeddedPolygon, vertex_class: &[usize]) -> Vec<(u8, usize, i64, i64)> {
        let mut key: Vec<_> = self
            .itinerary()
            .iter()
            .map(|a| match a.class(e, vertex_class) {
                Some((t, c)) => (t, c, 0, 0),
                None => {
                    let p = a.point(e);
                    (2, 0, (p.x * 1e9).round() as i64, (p.y * 1e9).round() as i64)
                }
            })
            .collect();
        key.sort_unstable();
        key.dedup();
        key
    }

    fn mapped(&self, e: &EmbeddedPolygon, f: &Isometry, shift: Option<usize>) -> PantsCurve {
        let k = e.k();
        let map = |a: Anchor| match (a, shift) {
            (Anchor::Midpoint(j), Some(s)) => Anchor::Midpoint((j + s) % k),
            (Anchor::Vertex(v), Some(s)) => Anchor::Vertex((v + s) % k),
            (a, _) => Anchor::Point(f.apply(a.point(e))),
        };
        PantsCurve {
            segments: self
                .segments
                .iter()
                .map(|s| CurveSegment {
                    from: map(s.from),
                    to: map(s.to),
                })
                .collect(),
        }
    }
}

/// The geodesic a seam perpendicular ends on.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum SeamTarget {
    /// The geodesic carrying a segment of another pants curve.
    Segment { curve: usize, segment: usize },
    /// The geodesic through two marked points.
    Through { from: Anchor, to: Anchor },
}

/// One common perpendicular: from `target` to the given segment of the curve.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeamFoot {
    pub segment: usize,
    pub target: SeamTarget,
}

/// The two perpendiculars measuring the twist of `curve`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Seam {
    pub curve: usize,
    pub feet: [SeamFoot; 2],
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PantsDecomposition {
    pub curves: Vec<PantsCurve>,
    pub seams: Vec<Seam>,
}

/// Distinct curves in the orbit of `seed` under powers of `rot`.
///
/// When `rot` permutes the marked points of `e`, anchors are carried along
/// by index; otherwise they become free points.
pub fn orbit_of_curve(e: &EmbeddedPolygon, seed: &PantsCurve, rot: &Isometry) -> Vec<PantsCurve> {
    let k = e.k();
    let image = rot.apply(e.midpoints[0]);
    let shift = (0..k).find(|&j| image.euclidean_distance(e.midpoints[j]) < 1e-9);
    let classes = e.source.vertex_classes();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let mut cur = seed.clone();
    for _ in 0..=2 * k {
        if !seen.insert(cur.class_key(e, &classes)) {
            break;
        }
        let next = cur.mapped(e, rot, shift);
        out.push(cur);
        cur = next;
    }
    out
}

/// Chooses how the sign of a twist is read off.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Handedness {
    /// Positive when the first perpendicular arrives from the left.
    Standard,
    /// The seam orientation reversed: the mirror convention.
    Reversed,
}

fn smoothness_error(e: &EmbeddedPolygon, c: &PantsCurve) -> Option<String> {
    let k = e.k();
    let pts = c.points(e);
    let n = c.segments.len();
    if n == 0 {
        return Some("curve has no segments".into());
    }
    for (i, (seg, &(from, to))) in c.segments.iter().zip(&pts).enumerate() {
        if from.euclidean_distance(to) < 1e-12 {
            return Some(format!("segment {i} is degenerate"));
        }
        let next = &c.segments[(i + 1) % n];
        let (nfrom, nto) = pts[(i + 1) % n];
        match (seg.to, next.from) {
            (Anchor::Midpoint(j), Anchor::Midpoint(j2)) => {
                if e.partner(j) != j2 % k {
                    return Some(format!("M{} is not glued to M{}", j + 1, j2 + 1));
                }
                let f = pairing_isometry(e, j % k).ok()?;
                if f.apply(to).euclidean_distance(nfrom) > 1e-9 {
                    return Some(format!("pairing of side {j} misses the next segment"));
                }
                let incoming = -direction(to, from);
                let pushed = f.push_tangent(to, incoming);
                let outgoing = direction(nfrom, nto);
                let gap = (pushed / outgoing).arg().abs();
                if gap > SMOOTHNESS {
                    return Some(format!("corner of {gap:.3e} rad across side {}", j + 1));
                }
            }
            (Anchor::Vertex(v), Anchor::Vertex(w)) => {
                let sum = vertex_turn(e, v % k, direction(to, from), w % k, direction(nfrom, nto));
                match sum {
                    Some(s) if (s - PI).abs() <= SMOOTHNESS => {}
                    Some(s) => {
                        return Some(format!(
                            "angle {s:.12} around vertex cycle of V{v}, expected pi"
                        ))
                    }
                    None => return Some(format!("V{v} and V{w} are not identified")),
                }
            }
            (a, b) if a == b => {
                let gap = (direction(nfrom, nto) / -direction(to, from)).arg().abs();
                if gap > SMOOTHNESS {
                    return Some(format!("corner of {gap:.3e} rad at {}", a.label()));
                }
            }
            (a, b) => {
                return Some(format!("{} does not continue at {}", a.label(), b.label()));
            }
        }
    }
    None
}

/// Total counter-clockwise angle swept around a vertex cycle from the ray
/// `in_ray` at vertex `v` to the ray `out_ray` at vertex `w`. The corner at
/// vertex `i` runs from side `i` to side `i − 1`, and side `i − 1` continues
/// as side `pairing[i − 1]` at the vertex of that index.
fn vertex_turn(
    e: &EmbeddedPolygon,
    v: usize,
    in_ray: Complex64,
    w: usize,
    out_ray: Complex64,
) -> Option<f64> {
    let k = e.k();
    let verts = &e.vertices;
    let mut cur = v;
    let mut start = in_ray;
    let mut total = 0.0;
    for step in 0..=k {
        let end = direction(verts[cur], verts[(cur + k - 1) % k]);
        let corner = ccw_angle(start, end);
        if cur == w {
            let to_out = ccw_angle(start, out_ray);
            if to_out <= corner + SMOOTHNESS && (step > 0 || to_out > 0.0) {
                return Some(total + to_out);
            }
        }
        total += corner;
        let z = e.partner((cur + k - 1) % k);
        cur = z;
        start = direction(verts[z], verts[(z + 1) % k]);
        if step > 0 && cur == v {
            break;
        }
    }
    None
}

pub fn verify_pants(e: &EmbeddedPolygon, pd: &PantsDecomposition) -> ValidationReport {
    let mut out = Vec::new();
    let mut push = |condition: &str, message: String| {
        out.push(Violation {
            condition: condition.into(),
            message,
        })
    };
    let g = e.source.genus as usize;
    let expected = 3 * g - 3;
    if pd.curves.len() != expected {
        push(
            "count",
            format!(
                "{} curves, a genus-{g} pants decomposition has {expected}",
                pd.curves.len()
            ),
        );
    }
    for (i, c) in pd.curves.iter().enumerate() {
        if let Some(msg) = smoothness_error(e, c) {
            push("geodesic", format!("curve {}: {msg}", i + 1));
        }
    }
    let segs: Vec<(usize, usize, DiscPoint, DiscPoint)> = pd
        .curves
        .iter()
        .enumerate()
        .flat_map(|(ci, c)| {
            c.points(e)
                .into_iter()
                .enumerate()
                .map(move |(si, (a, b))| (ci, si, a, b))
        })
        .collect();
    for (x, &(c1, s1, a1, b1)) in segs.iter().enumerate() {
        for &(c2, s2, a2, b2) in &segs[x + 1..] {
            if segments_cross(a1, b1, a2, b2) {
                push(
                    "crossing",
                    format!(
                        "segment {} of curve {} crosses segment {} of curve {}",
                        s1 + 1,
                        c1 + 1,
                        s2 + 1,
                        c2 + 1
                    ),
                );
            }
        }
    }
    let classes = e.source.vertex_classes();
    let marks: Vec<BTreeSet<(u8, usize)>> = pd
        .curves
        .iter()
        .map(|c| {
            c.itinerary()
                .iter()
                .filter_map(|a| a.class(e, &classes))
                .collect()
        })
        .collect();
    for i in 0..marks.len() {
        for j in i + 1..marks.len() {
            if !marks[i].is_disjoint(&marks[j]) {
                push(
                    "crossing",
                    format!("curves {} and {} meet at an identified point", i + 1, j + 1),
                );
            }
        }
    }
    ValidationReport::from_violations(out)
}

/// Sum of segment lengths; refuses curves that are not closed geodesics.
pub fn curve_length(e: &EmbeddedPolygon, c: &PantsCurve) -> Result<Length, FnError> {
    curve_length_indexed(e, c, 0)
}

fn curve_length_indexed(
    e: &EmbeddedPolygon,
    c: &PantsCurve,
    index: usize,
) -> Result<Length, FnError> {
    if let Some(detail) = smoothness_error(e, c) {
        return Err(FnError::NotGeodesic {
            curve: index,
            detail,
        });
    }
    let total = c
        .points(e)
        .iter()
        .map(|&(a, b)| hyperbolic_distance(a, b).value())
        .sum();
    Ok(Length::new(total)?)
}

fn target_geodesic(
    e: &EmbeddedPolygon,
    pd: &PantsDecomposition,
    t: &SeamTarget,
) -> Result<Geodesic, FnError> {
    let (a, b) = match *t {
        SeamTarget::Segment { curve, segment } => {
            let c = pd.curves.get(curve).ok_or(FnError::InvalidIndex {
                index: curve,
                what: "seam target curve",
            })?;
            let s = c.segments.get(segment).ok_or(FnError::InvalidIndex {
                index: segment,
                what: "seam target segment",
            })?;
            (s.from.point(e), s.to.point(e))
        }
        SeamTarget::Through { from, to } => (from.point(e), to.point(e)),
    };
    Ok(geodesic_through(a, b)?)
}

struct Foot {
    segment: usize,
    /// Signed distance from the segment start, along the direction of travel.
    position: f64,
    /// At the foot: direction of travel, and the perpendicular pointing into the curve.
    travel: Complex64,
    inward: Complex64,
}

fn seam_foot(
    e: &EmbeddedPolygon,
    pd: &PantsDecomposition,
    curve: &PantsCurve,
    f: &SeamFoot,
) -> Result<Foot, FnError> {
    let seg = curve.segments.get(f.segment).ok_or(FnError::InvalidIndex {
        index: f.segment,
        what: "seam segment",
    })?;
    let (start, end) = (seg.from.point(e), seg.to.point(e));
    let g = geodesic_through(start, end)?;
    let target = target_geodesic(e, pd, &f.target)?;
    let (_, on_curve, on_target) = common_perpendicular(&g, &target)?;
    let forward = direction(start, end);
    let orient = if (g.tangent_at(start).conj() * forward).re >= 0.0 {
        1.0
    } else {
        -1.0
    };
    let dist = hyperbolic_distance(start, on_curve).value();
    let position = if dist == 0.0 || (direction(start, on_curve).conj() * forward).re >= 0.0 {
        dist
    } else {
        -dist
    };
    Ok(Foot {
        segment: f.segment,
        position,
        travel: g.tangent_at(on_curve) * orient,
        inward: -direction(on_curve, on_target),
    })
}

pub fn twist_at(e: &EmbeddedPolygon, pd: &PantsDecomposition, i: usize) -> Result<f64, FnError> {
    twist_with(e, pd, i, Handedness::Standard)
}

/// Twist of curve `i` along its seam, read with the given handedness.
pub fn twist_with(
    e: &EmbeddedPolygon,
    pd: &PantsDecomposition,
    i: usize,
    hand: Handedness,
) -> Result<f64, FnError> {
    let curve = pd.curves.get(i).ok_or(FnError::InvalidIndex {
        index: i,
        what: "pants curve",
    })?;
    let seam = pd
        .seams
        .iter()
        .find(|s| s.curve == i)
        .ok_or(FnError::NoSeam(i))?;
    let f1 = seam_foot(e, pd, curve, &seam.feet[0])?;
    let f2 = seam_foot(e, pd, curve, &seam.feet[1])?;
    let lens: Vec<f64> = curve
        .points(e)
        .iter()
        .map(|&(a, b)| hyperbolic_distance(a, b).value())
        .collect();
    let n = lens.len();
    let magnitude = if f1.segment == f2.segment && f2.position >= f1.position {
        f2.position - f1.position
    } else {
        let mut acc = lens[f1.segment] - f1.position;
        let mut s = (f1.segment + 1) % n;
        while s != f2.segment {
            acc += lens[s];
            s = (s + 1) % n;
        }
        acc + f2.position
    };
    let left = cross(f1.inward, f1.travel) > 0.0;
    let positive = match hand {
        Handedness::Standard => left,
        Handedness::Reversed => !left,
    };
    Ok(if positive { magnitude } else { -magnitude })
}

pub(crate) fn lengths_of(
    e: &EmbeddedPolygon,
    pd: &PantsDecomposition,
) -> Result<Vec<Length>, FnError> {
    pd.curves
        .iter()
        .enumerate()
        .map(|(i, c)| curve_length_indexed(e, c, i))
        .collect()
}
