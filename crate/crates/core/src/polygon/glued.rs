use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::{FRAC_PI_2, FRAC_PI_3};

use super::PolygonError;
use crate::disc::{ccw_angle, cross, direction, from_origin, to_origin, DiscPoint, Length};

/// The octagon of a compatible pair: two congruent pentagons glued along
/// the seam `A1 A2`, with six angles `α` and two angles `2β`.
///
/// The seam lies on the real axis with its midpoint `D` at the origin;
/// the pentagon `A1 A2 X3 X2 X1` is in the upper half and its mirror image
/// in the lower half.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GluedPolygon {
    pub alpha: f64,
    pub beta: f64,
    pub side_length: Length,
    /// Base angle of the isosceles triangle with legs `s` and apex `α`.
    pub theta: f64,
    /// Base of that triangle.
    pub diag_d: Length,
    pub seam_length: Length,
    /// `A1, A2, X3, X2, X1`, counter-clockwise.
    pub pentagon_vertices: Vec<DiscPoint>,
    /// Complex conjugates of `pentagon_vertices`, in the same order.
    pub reflected_vertices: Vec<DiscPoint>,
}

/// Checks `0 < α < π/3` and `cosh s > cot²(α/2)`.
pub(crate) fn check_octagon_constraints(alpha: f64, s: f64) -> Result<(), PolygonError> {
    if !(alpha > 0.0 && alpha < FRAC_PI_3) {
        return Err(PolygonError::Constraint(format!(
            "alpha = {alpha} must lie in (0, pi/3)"
        )));
    }
    if !(s.is_finite() && s > 0.0) {
        return Err(PolygonError::Constraint(format!(
            "s = {s} must be positive"
        )));
    }
    let cot_half = 1.0 / (alpha / 2.0).tan();
    if s.cosh() <= cot_half * cot_half {
        return Err(PolygonError::Constraint(format!(
            "cosh s = {} must exceed cot^2(alpha/2) = {}",
            s.cosh(),
            cot_half * cot_half
        )));
    }
    Ok(())
}

pub fn build_glued_octagon(alpha: f64, s: f64) -> Result<GluedPolygon, PolygonError> {
    check_octagon_constraints(alpha, s)?;
    let beta = FRAC_PI_2 - 1.5 * alpha;
    let theta = (1.0 / (s.cosh() * (alpha / 2.0).tan())).atan();
    let d = (s.cosh().powi(2) - s.sinh().powi(2) * alpha.cos()).acosh();
    let ell = 2.0 * (d.tanh() * (beta - theta).cos()).atanh();

    let a2 = Complex64::new((ell / 4.0).tanh(), 0.0);
    // right triangle D A2 X2 with legs ℓ/2, h and hypotenuse d
    let h = (d.cosh() / (ell / 2.0).cosh()).max(1.0).acosh();
    let x2 = Complex64::new(0.0, (h / 2.0).tanh());
    let x3 = isosceles_apex(x2, a2, d, s);

    let pentagon: Vec<DiscPoint> = [-a2, a2, x3, x2, -x3.conj()]
        .into_iter()
        .map(|z| DiscPoint::new(z.re, z.im))
        .collect::<Result<_, _>>()?;
    let reflected = pentagon.iter().map(|p| p.conj()).collect();
    Ok(GluedPolygon {
        alpha,
        beta,
        side_length: Length::new(s)?,
        theta,
        diag_d: Length::new(d)?,
        seam_length: Length::new(ell)?,
        pentagon_vertices: pentagon,
        reflected_vertices: reflected,
    })
}

/// Apex of the isosceles triangle with base `p q` (length `d`) and legs
/// `s`, on the far side of the base from the origin.
fn isosceles_apex(p: Complex64, q: Complex64, d: f64, s: f64) -> Complex64 {
    let mid = {
        let w = to_origin(p, q);
        let r = (w.norm().atanh() / 2.0).tanh();
        from_origin(p, w / w.norm() * r)
    };
    let height = (s.cosh() / (d / 2.0).cosh()).acosh();
    let u = {
        let w = to_origin(mid, q);
        w / w.norm()
    };
    let origin_side = cross(u, to_origin(mid, Complex64::new(0.0, 0.0)));
    let normal = if origin_side > 0.0 {
        -Complex64::i() * u
    } else {
        Complex64::i() * u
    };
    from_origin(mid, normal * (height / 2.0).tanh())
}

impl GluedPolygon {
    pub fn seam_endpoints(&self) -> (DiscPoint, DiscPoint) {
        (self.pentagon_vertices[0], self.pentagon_vertices[1])
    }

    /// `A1, X1', X2', X3', A2, X3, X2, X1`, counter-clockwise.
    pub fn octagon_vertices(&self) -> Vec<DiscPoint> {
        let p = &self.pentagon_vertices;
        let r = &self.reflected_vertices;
        vec![p[0], r[4], r[3], r[2], p[1], p[2], p[3], p[4]]
    }

    /// Interior angles of the octagon measured from the vertex positions.
    pub fn measured_angles(&self) -> Vec<f64> {
        let v = self.octagon_vertices();
        let k = v.len();
        (0..k)
            .map(|i| {
                ccw_angle(
                    direction(v[i], v[(i + 1) % k]),
                    direction(v[i], v[(i + k - 1) % k]),
                )
            })
            .collect()
    }

    /// `cosh ℓ` from the printed closed form `cosh⁴s − 2cosh³s + 2cosh s`.
    pub fn closed_form_cosh_seam(&self) -> f64 {
        let c = self.side_length.value().cosh();
        c.powi(4) - 2.0 * c.powi(3) + 2.0 * c
    }

    /// Relative gap between `cosh ℓ` from `tanh(ℓ/2) = tanh d·cos(β − θ)`
    /// and the closed form.
    pub fn seam_residual(&self) -> f64 {
        let closed = self.closed_form_cosh_seam();
        (self.seam_length.value().cosh() - closed).abs() / closed
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::disc::hyperbolic_distance;
    use std::f64::consts::{FRAC_PI_4, PI};

    #[test]
    fn constraint_probes() {
        assert!(build_glued_octagon(FRAC_PI_4, 3.0).is_ok());
        let err = build_glued_octagon(FRAC_PI_4, 2.0).unwrap_err();
        assert!(err.to_string().contains("cot^2"), "{err}");
        let err = build_glued_octagon(1.2, 3.0).unwrap_err();
        assert!(err.to_string().contains("pi/3"), "{err}");
        assert!(build_glued_octagon(0.0, 3.0).is_err());
        assert!(build_glued_octagon(FRAC_PI_3, 5.0).is_err());
        // just inside and just outside the existence bound at α = π/4
        let bound = (1.0 / (PI / 8.0).tan()).powi(2).acosh();
        assert!((bound - 2.4485).abs() < 1e-4);
        assert!(build_glued_octagon(FRAC_PI_4, bound + 1e-9).is_ok());
        assert!(build_glued_octagon(FRAC_PI_4, bound - 1e-9).is_err());
    }

    #[test]
    fn construction_invariants() {
        for &(alpha, s) in &[(FRAC_PI_4, 3.0), (0.3, 5.0), (0.9, 2.5), (0.5, 3.6)] {
            let g = build_glued_octagon(alpha, s).unwrap();
            assert!((3.0 * g.alpha + 2.0 * g.beta - PI).abs() <= 4.0 * f64::EPSILON);
            let rhs = 1.0 / g.theta.tan() / (alpha / 2.0).tan();
            assert!((s.cosh() - rhs).abs() <= 1e-9 * s.cosh());
            let p = &g.pentagon_vertices;
            for i in 1..5 {
                let len = hyperbolic_distance(p[i], p[(i + 1) % 5]).value();
                assert!((len - s).abs() < 1e-9, "side {i} of pentagon: {len}");
            }
            let seam = hyperbolic_distance(p[0], p[1]).value();
            assert!((seam - g.seam_length.value()).abs() < 1e-9);
            assert!((hyperbolic_distance(p[1], p[3]).value() - g.diag_d.value()).abs() < 1e-9);
            // reflected copy shares the seam
            assert_eq!(g.reflected_vertices[0], p[0].conj());
            assert!(p.iter().all(|v| v.y >= 0.0));
        }
    }

    #[test]
    fn seam_and_apex_angles() {
        let g = build_glued_octagon(FRAC_PI_4, 3.0).unwrap();
        let a = g.measured_angles();
        // A1, A2 carry 2β; X1, X3 and their mirrors carry α
        for i in [0, 4] {
            assert!((a[i] - 2.0 * g.beta).abs() < 1e-8, "vertex {i}: {}", a[i]);
        }
        for i in [1, 3, 5, 7] {
            assert!((a[i] - g.alpha).abs() < 1e-8, "vertex {i}: {}", a[i]);
        }
    }
}
