//! Canonical polygons of irreducible Type 1 actions and the glued octagon
//! family of compatible pairs.
//!
//! Sides and vertices are numbered from 0. Side `i` runs from vertex `i` to
//! vertex `i + 1`, so vertex `i` sits between sides `i − 1` and `i`.
//! Side `m` of the canonical polygon is glued to side `pairing[m]`, with
//! vertex `m` going to vertex `pairing[m] + 1`.
//!
//! For `k = 2n` sides the pairing word glues even sides to odd sides. Which
//! vertex parity carries the angle `2π/n1` is not fixed by the word alone;
//! [`realize_type1`] picks the parity for which every vertex cycle sums to
//! `2π`, and fails if neither does.

use serde::{Deserialize, Serialize};
use std::f64::consts::{PI, TAU};
use thiserror::Error;

use crate::dataset::{gcd, ActionKind, ConePair, DataSet};
use crate::disc::{DiscError, Length};
use crate::tol::TOL;

mod embed;
mod glued;

pub use embed::{embed, pairing_isometry, EmbeddedPolygon};
pub(crate) use glued::check_octagon_constraints;
pub use glued::{build_glued_octagon, GluedPolygon};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PolygonError {
    #[error("{c} is not invertible modulo {n}")]
    NotCoprime { c: u64, n: u64 },
    #[error("invalid data set: {0}")]
    InvalidDataSet(String),
    #[error("not an irreducible Type 1 data set: {0}")]
    NotIrreducibleType1(String),
    #[error("genus {genus} action has no hyperbolic polygon (angle sum too large)")]
    NotHyperbolic { genus: u64 },
    #[error("side pairing is inconsistent: {0}")]
    InconsistentPairing(String),
    #[error("side index {index} out of range for a {k}-gon")]
    InvalidSide { index: usize, k: usize },
    #[error("constraint violated: {0}")]
    Constraint(String),
    #[error(transparent)]
    Disc(#[from] DiscError),
}

/// `c⁻¹ mod n`, in `[1, n − 1]` (or `0` when `n = 1`).
pub fn mod_inverse(c: u64, n: u64) -> Result<u64, PolygonError> {
    if n == 0 || gcd(c % n, n) != 1 {
        return Err(PolygonError::NotCoprime { c, n });
    }
    let (mut r0, mut r1) = (n as i128, (c % n) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    Ok(t0.rem_euclid(n as i128) as u64)
}

/// The semi-regular polygon with side pairing whose rotation realizes an
/// irreducible Type 1 action.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CanonicalPolygon {
    pub k: usize,
    /// Interior angle at each vertex.
    pub angles: Vec<f64>,
    /// `pairing[m]` is the side glued to side `m`.
    pub pairing: Vec<usize>,
    pub side_length: Length,
    /// Distance from the center to the midpoint of each side.
    pub inradius: Length,
    /// Angle of the rotation realizing the action, `2π·c3⁻¹/n`.
    pub rotation_angle: f64,
    /// Number of sides the realizing rotation advances by.
    pub rotation_shift: usize,
    pub genus: u64,
    /// The data set with pairs reordered as `(c1,n1), (c2,n2), (c3,n)`.
    pub data_set: DataSet,
}

/// Hyperbolic triangle with angles `a`, `b` at the base and `c` at the apex.
/// Returns `(cosh base, cosh side opposite b)`.
fn triangle(a: f64, b: f64, c: f64) -> (f64, f64) {
    let base = (a.cos() * b.cos() + c.cos()) / (a.sin() * b.sin());
    let leg = (a.cos() * c.cos() + b.cos()) / (a.sin() * c.sin());
    (base, leg)
}

impl CanonicalPolygon {
    /// Central angle subtended by one side.
    pub fn central_angle(&self) -> f64 {
        TAU / self.k as f64
    }

    /// `(k − 2)π − Σ angles`.
    pub fn area(&self) -> f64 {
        (self.k as f64 - 2.0) * PI - self.angles.iter().sum::<f64>()
    }

    pub fn is_regular(&self) -> bool {
        self.angles.iter().all(|&a| a == self.angles[0])
    }

    /// Hyperbolic distance from the center to vertex `i`.
    pub fn vertex_radius(&self, i: usize) -> f64 {
        let k = self.k;
        let a = self.angles[i % k] / 2.0;
        let b = self.angles[(i + 1) % k] / 2.0;
        triangle(a, b, self.central_angle()).1.acosh()
    }

    /// Vertex classes under the side identifications, as a class id per vertex.
    pub fn vertex_classes(&self) -> Vec<usize> {
        vertex_classes(&self.pairing)
    }
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    let mut x = x;
    while parent[x] != r {
        let next = parent[x];
        parent[x] = r;
        x = next;
    }
    r
}

/// Union-find over vertices: side `m` glues vertex `m` to `pairing[m] + 1`
/// and vertex `m + 1` to `pairing[m]`. Class ids are the smallest vertex
/// index in each class.
pub(crate) fn vertex_classes(pairing: &[usize]) -> Vec<usize> {
    let k = pairing.len();
    let mut parent: Vec<usize> = (0..k).collect();
    for (m, &z) in pairing.iter().enumerate() {
        for (x, y) in [(m, (z + 1) % k), ((m + 1) % k, z)] {
            let (rx, ry) = (find(&mut parent, x), find(&mut parent, y));
            if rx != ry {
                parent[rx.max(ry)] = rx.min(ry);
            }
        }
    }
    (0..k).map(|v| find(&mut parent, v)).collect()
}

fn cycle_sums_are_full_turns(angles: &[f64], classes: &[usize]) -> bool {
    let mut sums = vec![0.0; angles.len()];
    for (v, &c) in classes.iter().enumerate() {
        sums[c] += angles[v];
    }
    classes
        .iter()
        .enumerate()
        .filter(|&(v, &c)| v == c)
        .all(|(v, _)| (sums[v] - TAU).abs() <= TOL.angle)
}

/// Puts the order-`n` pair last and a pair of order 2, if any, first.
fn normalized_pairs(d: &DataSet) -> [ConePair; 3] {
    let p = &d.pairs;
    let full = if p[2].n_i == d.n {
        2
    } else {
        (0..3).rev().find(|&i| p[i].n_i == d.n).unwrap_or(2)
    };
    let mut rest: Vec<ConePair> = (0..3).filter(|&i| i != full).map(|i| p[i]).collect();
    if rest[1].n_i == 2 && rest[0].n_i != 2 {
        rest.swap(0, 1);
    }
    [rest[0], rest[1], p[full]]
}

/// Builds the canonical polygon of an irreducible Type 1 data set.
pub fn realize_type1(d: &DataSet) -> Result<CanonicalPolygon, PolygonError> {
    let report = d.validate();
    if !report.valid {
        let msgs: Vec<_> = report
            .violations
            .iter()
            .map(|v| v.message.clone())
            .collect();
        return Err(PolygonError::InvalidDataSet(msgs.join("; ")));
    }
    let class = d.classify();
    if !(class.irreducible && class.kind == ActionKind::Type1) {
        return Err(PolygonError::NotIrreducibleType1(format!(
            "{d} is {} ({})",
            class.kind,
            if class.irreducible {
                "irreducible"
            } else {
                "reducible"
            }
        )));
    }
    let genus = d
        .genus()
        .map_err(|e| PolygonError::InvalidDataSet(e.to_string()))?;
    let [p1, p2, p3] = normalized_pairs(d);
    let n = d.n as usize;
    let c3_inv = mod_inverse(p3.c, d.n)?;

    // z ≡ m + qj (mod n) with q = n·c3⁻¹/n2 and j = n2 − c2
    let q = (d.n / p2.n_i * c3_inv) % d.n;
    let j = p2.n_i - p2.c;
    let qj = ((q * j) % d.n) as usize;

    let (k, pairing, angle_sets) = if p1.n_i == 2 || p2.n_i == 2 {
        // a_{m+1}⁻¹ ~ a_z: side m (from 0) meets side z − 1
        let pairing: Vec<usize> = (0..n).map(|m| (m + qj + n - 1) % n).collect();
        let theta = TAU / p2.n_i as f64;
        (n, pairing, vec![vec![theta; n]])
    } else {
        // a_{2m+1}⁻¹ ~ a_{2z}: side 2m meets side 2z − 1, z taken in 1..=n
        let k = 2 * n;
        let mut pairing = vec![usize::MAX; k];
        for m in 0..n {
            let z = (m + qj + n - 1) % n + 1;
            let odd = 2 * z - 1;
            pairing[2 * m] = odd;
            pairing[odd] = 2 * m;
        }
        let t1 = TAU / p1.n_i as f64;
        let t2 = TAU / p2.n_i as f64;
        let by_parity = |even: f64, odd: f64| {
            (0..k)
                .map(|v| if v % 2 == 0 { even } else { odd })
                .collect::<Vec<_>>()
        };
        (k, pairing, vec![by_parity(t1, t2), by_parity(t2, t1)])
    };

    for (m, &z) in pairing.iter().enumerate() {
        if z >= k || pairing[z] != m || z == m {
            return Err(PolygonError::InconsistentPairing(format!(
                "side {m} is glued to {z}, which is glued back to {}",
                pairing.get(z).copied().unwrap_or(usize::MAX)
            )));
        }
    }
    let classes = vertex_classes(&pairing);
    let angles = angle_sets
        .into_iter()
        .find(|a| cycle_sums_are_full_turns(a, &classes))
        .ok_or_else(|| {
            PolygonError::InconsistentPairing(
                "no angle assignment closes every vertex cycle".into(),
            )
        })?;

    let vertex_count = classes.iter().enumerate().filter(|&(v, &c)| v == c).count();
    let euler = vertex_count as i64 - (k / 2) as i64 + 1;
    if euler != 2 - 2 * genus as i64 {
        return Err(PolygonError::InconsistentPairing(format!(
            "quotient has Euler characteristic {euler}, expected {}",
            2 - 2 * genus as i64
        )));
    }

    let central = TAU / k as f64;
    let area = (k as f64 - 2.0) * PI - angles.iter().sum::<f64>();
    if genus < 2 || area <= 0.0 {
        return Err(PolygonError::NotHyperbolic { genus });
    }
    let (a_half, b_half) = (angles[0] / 2.0, angles[1] / 2.0);
    let (cosh_a, _) = triangle(a_half, b_half, central);
    let inradius = if a_half == b_half {
        (a_half.cos() / (central / 2.0).sin()).acosh()
    } else {
        semi_regular_inradius(a_half, b_half, central)
    };

    Ok(CanonicalPolygon {
        k,
        angles,
        pairing,
        side_length: Length::new(cosh_a.acosh())?,
        inradius: Length::new(inradius)?,
        rotation_angle: TAU * c3_inv as f64 / d.n as f64,
        rotation_shift: c3_inv as usize * k / n,
        genus,
        data_set: DataSet {
            n: d.n,
            g0: d.g0,
            r: d.r,
            pairs: vec![p1, p2, p3],
        },
    })
}

/// Center-to-midpoint distance when the two endpoint angles differ; the
/// perpendicular from the center then misses the midpoint.
fn semi_regular_inradius(a: f64, b: f64, central: f64) -> f64 {
    use crate::disc::{hyperbolic_distance, hyperbolic_midpoint, DiscPoint};
    let r0 = triangle(a, b, central).1.acosh();
    let r1 = triangle(b, a, central).1.acosh();
    let v0 = DiscPoint::from_z(num_complex::Complex64::new((r0 / 2.0).tanh(), 0.0));
    let v1 = DiscPoint::from_z(num_complex::Complex64::from_polar(
        (r1 / 2.0).tanh(),
        central,
    ));
    hyperbolic_distance(DiscPoint::ORIGIN, hyperbolic_midpoint(v0, v1)).value()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dataset::parse_data_set;

    fn realize(text: &str) -> Result<CanonicalPolygon, PolygonError> {
        realize_type1(&parse_data_set(text).unwrap())
    }

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn inverses() {
        assert_eq!(mod_inverse(1, 10).unwrap(), 1);
        assert_eq!(mod_inverse(3, 8).unwrap(), 3);
        assert_eq!(mod_inverse(7, 10).unwrap(), 3);
        assert!(mod_inverse(4, 10).is_err());
        for n in 2..40u64 {
            for c in 1..n {
                match mod_inverse(c, n) {
                    Ok(i) => {
                        assert!((1..n).contains(&i));
                        assert_eq!(c * i % n, 1);
                    }
                    Err(_) => assert!((1..n).all(|i| c * i % n != 1)),
                }
            }
        }
    }

    #[test]
    fn order_ten_polygon() {
        let p = realize("(10,0;(1,2),(2,5),(1,10))").unwrap();
        assert_eq!(p.k, 10);
        assert!(p.angles.iter().all(|&a| a == TAU / 5.0));
        assert_eq!(p.pairing, (0..10).map(|m| (m + 5) % 10).collect::<Vec<_>>());
        let s5 = 5f64.sqrt();
        assert!(rel(p.side_length.value(), (2.0 + s5).acosh()) < 1e-10);
        assert!(rel(p.inradius.value(), ((5.0 + 3.0 * s5) / 2.0).sqrt().asinh()) < 1e-10);
        assert!((p.area() - 4.0 * PI).abs() < 1e-9);
        assert_eq!(p.genus, 2);
        assert_eq!(p.rotation_shift, 1);
        assert!((p.rotation_angle - TAU / 10.0).abs() < 1e-15);
    }

    #[test]
    fn order_eight_polygon() {
        let p = realize("(8,0;(1,2),(3,8),(1,8))").unwrap();
        assert_eq!(p.k, 8);
        assert!(p.angles.iter().all(|&a| a == TAU / 8.0));
        assert_eq!(p.pairing, (0..8).map(|m| (m + 4) % 8).collect::<Vec<_>>());
        let s2 = 2f64.sqrt();
        assert!(rel(p.side_length.value(), (5.0 + 4.0 * s2).acosh()) < 1e-10);
        assert!(rel(p.inradius.value(), (2.0 + 2.0 * s2).sqrt().asinh()) < 1e-10);
    }

    #[test]
    fn regular_side_formula_shape() {
        for (text, theta, k) in [
            ("(10,0;(1,2),(2,5),(1,10))", TAU / 5.0, 10.0),
            ("(8,0;(1,2),(3,8),(1,8))", TAU / 8.0, 8.0),
        ] {
            let p = realize(text).unwrap();
            let h = theta / 2.0;
            let closed = ((h.cos().powi(2) + (TAU / k).cos()) / h.sin().powi(2)).acosh();
            assert!((p.side_length.value() - closed).abs() < 1e-12);
        }
    }

    #[test]
    fn order_five_shares_the_order_ten_shape() {
        let a = realize("(10,0;(1,2),(2,5),(1,10))").unwrap();
        let b = realize("(5,0;(2,5),(2,5),(1,5))").unwrap();
        assert_eq!(a.k, b.k);
        assert_eq!(a.angles, b.angles);
        assert_eq!(a.pairing, b.pairing);
        assert_eq!(a.side_length, b.side_length);
        assert_eq!(a.inradius, b.inradius);
        assert_eq!(b.rotation_shift, 2);
        assert!((b.rotation_angle - TAU / 5.0).abs() < 1e-15);
    }

    #[test]
    fn semi_regular_genus_three() {
        let p = realize("(12,0;(1,3),(1,4),(5,12))").unwrap();
        assert_eq!(p.k, 24);
        assert_eq!(p.genus, 3);
        assert!(!p.is_regular());
        let classes = p.vertex_classes();
        let mut sums = std::collections::BTreeMap::new();
        for (v, &c) in classes.iter().enumerate() {
            *sums.entry(c).or_insert(0.0) += p.angles[v];
        }
        assert!(sums.values().all(|s| (s - TAU).abs() < 1e-9));
        assert!((p.area() - TAU * 4.0).abs() < 1e-9);
        for (m, &z) in p.pairing.iter().enumerate() {
            assert_eq!(p.pairing[z], m);
            assert_ne!(m % 2, z % 2);
        }
    }

    #[test]
    fn pair_order_is_normalised() {
        // order-2 pair given second, order-n pair given first
        let p = realize("(10,0;(1,10),(2,5),(1,2))").unwrap();
        assert_eq!(p.data_set.pairs[0].n_i, 2);
        assert_eq!(p.data_set.pairs[2].n_i, 10);
        assert_eq!(p.k, 10);
    }

    #[test]
    fn rejections() {
        assert!(matches!(
            realize("(4,0;(1,2),(1,4),(1,4))"),
            Err(PolygonError::NotHyperbolic { genus: 1 })
        ));
        assert!(matches!(
            realize("(4,0;(1,2),(1,2),(1,4),(3,4))"),
            Err(PolygonError::NotIrreducibleType1(_))
        ));
        assert!(matches!(
            realize("(10,0;(1,2),(1,5),(1,10))"),
            Err(PolygonError::InvalidDataSet(_))
        ));
    }
}
