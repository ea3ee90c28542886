use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{from_origin, hyperbolic_distance, DiscError, DiscPoint, Isometry};
use crate::tol::TOL;

/// A complete geodesic of the disc.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum Geodesic {
    /// The diameter with unit direction `(dx, dy)`. Directions are
    /// normalised to `dx > 0`, or `dx = 0, dy > 0`.
    Diameter { dx: f64, dy: f64 },
    /// The part inside the disc of the circle centred at `(a, b)` with
    /// radius `rho`; `a² + b² = 1 + rho²`.
    Arc { a: f64, b: f64, rho: f64 },
}

fn canonical_direction(u: Complex64) -> Complex64 {
    let u = u / u.norm();
    if u.re < 0.0 || (u.re == 0.0 && u.im < 0.0) {
        -u
    } else {
        u
    }
}

impl Geodesic {
    pub fn diameter(direction: Complex64) -> Self {
        let u = canonical_direction(direction);
        Geodesic::Diameter { dx: u.re, dy: u.im }
    }

    /// The arc orthogonal to the unit circle with the given Euclidean center.
    pub fn arc(center: Complex64) -> Self {
        Geodesic::Arc {
            a: center.re,
            b: center.im,
            rho: (center.norm_sqr() - 1.0).sqrt(),
        }
    }

    /// Euclidean distance from `p` to the supporting line or circle.
    pub fn residual(&self, p: DiscPoint) -> f64 {
        match *self {
            Geodesic::Diameter { dx, dy } => (dx * p.y - dy * p.x).abs(),
            Geodesic::Arc { a, b, rho } => ((p.x - a).hypot(p.y - b) - rho).abs(),
        }
    }

    pub fn contains(&self, p: DiscPoint) -> bool {
        self.residual(p) <= TOL.residual
    }

    /// Unit tangent at a point of the geodesic. For arcs this is the
    /// counter-clockwise direction around the Euclidean center.
    pub fn tangent_at(&self, p: DiscPoint) -> Complex64 {
        match *self {
            Geodesic::Diameter { dx, dy } => Complex64::new(dx, dy),
            Geodesic::Arc { a, b, .. } => {
                let r = p.z() - Complex64::new(a, b);
                Complex64::i() * r / r.norm()
            }
        }
    }

    /// `|a² + b² − 1 − ρ²|` for arcs, `|dx² + dy² − 1|` for diameters.
    pub fn orthogonality_residual(&self) -> f64 {
        match *self {
            Geodesic::Diameter { dx, dy } => (dx * dx + dy * dy - 1.0).abs(),
            Geodesic::Arc { a, b, rho } => (a * a + b * b - 1.0 - rho * rho).abs(),
        }
    }

    /// Endpoints on the unit circle.
    pub fn ideal_endpoints(&self) -> (Complex64, Complex64) {
        match *self {
            Geodesic::Diameter { dx, dy } => {
                let u = Complex64::new(dx, dy);
                (-u, u)
            }
            Geodesic::Arc { a, b, .. } => {
                let c = Complex64::new(a, b);
                let n = c.norm();
                let psi = (1.0 / n).acos();
                let u = c / n;
                (
                    u * Complex64::from_polar(1.0, -psi),
                    u * Complex64::from_polar(1.0, psi),
                )
            }
        }
    }

    /// Image under an isometry, rebuilt from the images of the endpoints.
    pub fn mapped(&self, f: &Isometry) -> Geodesic {
        let (e1, e2) = self.ideal_endpoints();
        geodesic_from_ideal(f.apply_z(e1), f.apply_z(e2))
    }

    /// The reflection in this geodesic, as an orientation-reversing isometry.
    pub fn reflection(&self) -> Isometry {
        match *self {
            // z ↦ u²z̄
            Geodesic::Diameter { dx, dy } => {
                Isometry::from_parts(Complex64::new(dx, dy), Complex64::new(0.0, 0.0), true)
            }
            // z ↦ (c z̄ − 1)/(z̄ − c̄), scaled into SU(1,1) form by i/ρ
            Geodesic::Arc { a, b, rho } => {
                let c = Complex64::new(a, b);
                Isometry::from_parts(Complex64::i() * c / rho, -Complex64::i() / rho, true)
            }
        }
    }
}

pub fn geodesic_through(p: DiscPoint, q: DiscPoint) -> Result<Geodesic, DiscError> {
    if p.euclidean_distance(q) <= TOL.construction {
        return Err(DiscError::Coincident);
    }
    let det = p.x * q.y - p.y * q.x;
    if det.abs() <= TOL.residual {
        let far = if p.norm() >= q.norm() { p } else { q };
        return Ok(Geodesic::diameter(far.z()));
    }
    // c·p = (1 + |p|²)/2 and c·q = (1 + |q|²)/2
    let u = (1.0 + p.x * p.x + p.y * p.y) / 2.0;
    let v = (1.0 + q.x * q.x + q.y * q.y) / 2.0;
    let a = (u * q.y - v * p.y) / det;
    let b = (p.x * v - q.x * u) / det;
    Ok(Geodesic::arc(Complex64::new(a, b)))
}

/// The geodesic with the given endpoints on the unit circle.
pub fn geodesic_from_ideal(e1: Complex64, e2: Complex64) -> Geodesic {
    let e1 = e1 / e1.norm();
    let e2 = e2 / e2.norm();
    let s = e1 + e2;
    if s.norm() <= TOL.residual {
        return Geodesic::diameter(e1);
    }
    let denom = 1.0 + (e1 * e2.conj()).re;
    Geodesic::arc(s / denom)
}

fn inside(z: Complex64) -> Option<DiscPoint> {
    (z.norm_sqr() < 1.0 - TOL.construction).then(|| DiscPoint::from_z(z))
}

fn diameter_arc(u: Complex64, c: Complex64) -> Option<DiscPoint> {
    // t² − 2t(u·c) + 1 = 0; the roots multiply to 1, take the inner one.
    let uc = u.re * c.re + u.im * c.im;
    let disc = uc * uc - 1.0;
    if disc <= 0.0 {
        return None;
    }
    let t = 1.0 / (uc + uc.signum() * disc.sqrt());
    inside(u * t)
}

pub fn intersect(g1: &Geodesic, g2: &Geodesic) -> Option<DiscPoint> {
    use Geodesic::*;
    match (*g1, *g2) {
        (Diameter { dx: a, dy: b }, Diameter { dx: c, dy: d }) => {
            ((a * d - b * c).abs() > TOL.construction).then_some(DiscPoint::ORIGIN)
        }
        (Diameter { dx, dy }, Arc { a, b, .. }) | (Arc { a, b, .. }, Diameter { dx, dy }) => {
            diameter_arc(Complex64::new(dx, dy), Complex64::new(a, b))
        }
        (
            Arc {
                a: a1,
                b: b1,
                rho: r1,
            },
            Arc {
                a: a2,
                b: b2,
                rho: r2,
            },
        ) => {
            let c1 = Complex64::new(a1, b1);
            let c2 = Complex64::new(a2, b2);
            let d = (c2 - c1).norm();
            if d <= TOL.construction || d >= r1 + r2 || d <= (r1 - r2).abs() {
                return None;
            }
            let along = (r1 * r1 - r2 * r2 + d * d) / (2.0 * d);
            let h2 = r1 * r1 - along * along;
            if h2 <= 0.0 {
                return None;
            }
            let e = (c2 - c1) / d;
            let base = c1 + e * along;
            let off = Complex64::i() * e * h2.sqrt();
            // the two intersections are inverse in the unit circle
            let (p, q) = (base + off, base - off);
            inside(if p.norm_sqr() < q.norm_sqr() { p } else { q })
        }
    }
}

/// Angle in `[0, π/2]` between two geodesics at a common point.
pub fn angle_between(g1: &Geodesic, g2: &Geodesic, at: DiscPoint) -> f64 {
    let t1 = g1.tangent_at(at);
    let t2 = g2.tangent_at(at);
    let c = (t1.re * t2.re + t1.im * t2.im).abs().min(1.0);
    c.acos()
}

fn circle_order(a: Complex64, b: Complex64, x: Complex64) -> bool {
    // true iff x lies on the counter-clockwise arc from a to b
    let ab = super::ccw_angle(a, b);
    let ax = super::ccw_angle(a, x);
    ax > 0.0 && ax < ab
}

/// The common perpendicular of two ultraparallel geodesics and its feet on
/// `g1` and `g2`.
pub fn common_perpendicular(
    g1: &Geodesic,
    g2: &Geodesic,
) -> Result<(Geodesic, DiscPoint, DiscPoint), DiscError> {
    let (a1, b1) = g1.ideal_endpoints();
    let (a2, b2) = g2.ideal_endpoints();
    let eps = TOL.residual;
    for (x, y) in [(a1, a2), (a1, b2), (b1, a2), (b1, b2)] {
        if (x - y).norm() <= eps {
            return Err(DiscError::NoCommonPerpendicular("asymptotic or equal"));
        }
    }
    if circle_order(a1, b1, a2) != circle_order(a1, b1, b2) {
        return Err(DiscError::NoCommonPerpendicular("intersecting"));
    }
    // R2∘R1 translates along the common perpendicular; its fixed points
    // solve β̄z² + (ᾱ − α)z − β = 0.
    let m = g2.reflection().compose(&g1.reflection());
    let (alpha, beta) = (m.alpha(), m.beta());
    let qa = beta.conj();
    let qb = alpha.conj() - alpha;
    let qc = -beta;
    let root = (qb * qb - 4.0 * qa * qc).sqrt();
    let (z1, z2) = if qa.norm() <= TOL.construction {
        return Err(DiscError::NoCommonPerpendicular("degenerate"));
    } else {
        // pick the numerically stable pairing of roots
        let q = if (qb.conj() * root).re >= 0.0 {
            -(qb + root) / 2.0
        } else {
            -(qb - root) / 2.0
        };
        (q / qa, qc / q)
    };
    let perp = geodesic_from_ideal(z1, z2);
    let f1 = intersect(&perp, g1).ok_or(DiscError::NoCommonPerpendicular("degenerate"))?;
    let f2 = intersect(&perp, g2).ok_or(DiscError::NoCommonPerpendicular("degenerate"))?;
    Ok((perp, f1, f2))
}

/// The point of `g` closest to `p`; `p` itself when `p` lies on `g`.
pub fn foot_of_perpendicular(p: DiscPoint, g: &Geodesic) -> DiscPoint {
    if g.contains(p) {
        return p;
    }
    let moved = g.mapped(&super::translation_to_origin(p));
    let foot = match moved {
        Geodesic::Diameter { .. } => return p,
        Geodesic::Arc { a, b, rho } => {
            let c = Complex64::new(a, b);
            let n = c.norm();
            c / n * (n - rho)
        }
    };
    DiscPoint::from_z(from_origin(p.z(), foot))
}

/// True iff the open hyperbolic segments `[p1,q1]` and `[p2,q2]` cross.
/// Segments that only touch at an endpoint do not count.
pub fn segments_cross(p1: DiscPoint, q1: DiscPoint, p2: DiscPoint, q2: DiscPoint) -> bool {
    let (Ok(g1), Ok(g2)) = (geodesic_through(p1, q1), geodesic_through(p2, q2)) else {
        return false;
    };
    let Some(x) = intersect(&g1, &g2) else {
        return false;
    };
    let strictly_within = |p: DiscPoint, q: DiscPoint| {
        let dp = hyperbolic_distance(p, x).value();
        let dq = hyperbolic_distance(x, q).value();
        let d = hyperbolic_distance(p, q).value();
        dp > TOL.oracle && dq > TOL.oracle && (dp + dq - d).abs() <= TOL.oracle * (1.0 + d)
    };
    strictly_within(p1, q1) && strictly_within(p2, q2)
}
