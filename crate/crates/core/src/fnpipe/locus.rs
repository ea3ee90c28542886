use super::{FNCoordinates, FnError, LocusPoint};
use crate::disc::Length;
use crate::polygon::{build_glued_octagon, check_octagon_constraints};

/// Coordinates `(γ1, γ2, γ1, t, 0, −t)` of the compatible-pair locus at `(α, s)`.
pub fn branch_locus_point(alpha: f64, s: f64) -> Result<LocusPoint, FnError> {
    check_octagon_constraints(alpha, s)?;
    let gamma1 = 2.0 * ((s / 2.0).cosh() * alpha.sin()).acosh();
    let c = s.cosh();
    let gamma2 = (c.powi(4) - 2.0 * c.powi(3) + 2.0 * c).acosh();
    let xarg = alpha.cos() / (s / 2.0).tanh();
    if xarg.abs() >= 1.0 {
        return Err(FnError::Constraint(format!(
            "coth(s/2)·cos(alpha) = {xarg} is outside (-1, 1)"
        )));
    }
    let x = xarg.atanh();
    let y = (s - x).sinh() * alpha.tan();
    if y.abs() <= 1.0 {
        return Err(FnError::Constraint(format!(
            "sinh(s-x)·tan(alpha) = {y} has no arcoth"
        )));
    }
    let t = gamma1 / 2.0 - (1.0 / y).atanh();
    if !(gamma1.is_finite() && gamma2.is_finite() && t.is_finite()) {
        return Err(FnError::Constraint(format!(
            "no locus point at alpha = {alpha}, s = {s}"
        )));
    }
    let g1 = Length::new(gamma1)?;
    Ok(LocusPoint {
        alpha,
        s: Length::new(s)?,
        coords: FNCoordinates::new(vec![g1, Length::new(gamma2)?, g1], vec![t, 0.0, -t]),
    })
}

/// Relative gap between the two routes to `cosh γ2` on the glued octagon.
pub fn gamma2_two_route_residual(alpha: f64, s: f64) -> Result<f64, FnError> {
    Ok(build_glued_octagon(alpha, s)?.seam_residual())
}

/// `Γ_l − d`, from `cosh(Γ_l/2) = √(cosh²(d/2) + sinh²l·sinh²(d/2))`
/// rearranged to avoid cancellation near `l = 0`.
fn excess(d: f64, l: f64) -> f64 {
    let (c0, s0) = ((d / 2.0).cosh(), (d / 2.0).sinh());
    let delta = (l.sinh() * s0).powi(2);
    let x = (c0 * c0 + delta).sqrt();
    let s = (s0 * s0 + delta).sqrt();
    2.0 * ((delta / (x + c0) + delta / (s + s0)) / (c0 + s0)).ln_1p()
}

/// `Γ_l` for the one-parameter family of curves at distance `d`.
pub fn family_length(d: f64, l: f64) -> f64 {
    d + excess(d, l)
}

/// Minimizes `Γ_l` over `l` by golden-section search; returns `(l*, Γ_{l*})`.
pub fn min_length_family(d: Length) -> (f64, Length) {
    let d = d.value();
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let bound = d.max(1.0);
    let (mut a, mut b) = (-bound, bound);
    let mut x1 = b - inv_phi * (b - a);
    let mut x2 = a + inv_phi * (b - a);
    let (mut f1, mut f2) = (excess(d, x1), excess(d, x2));
    while b - a > 1e-10 {
        if f1 <= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = excess(d, x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = excess(d, x2);
        }
    }
    let l = (a + b) / 2.0;
    (l, Length::new(family_length(d, l)).expect("finite length"))
}

/// `(c1, c2)` for an irregular 10-gon with side data `a1..a5`, angle `α`
/// between `a2, a3` and `β` between `a4, a5`.
pub fn irregular_lengths(
    a: &[Length; 5],
    alpha: f64,
    beta: f64,
) -> Result<(Length, Length), FnError> {
    let c = |p: f64, q: f64, angle: f64| {
        let (hp, hq) = (p / 2.0, q / 2.0);
        2.0 * (hp.cosh() * hq.cosh() - hp.sinh() * hq.sinh() * angle.cos()).acosh()
    };
    for angle in [alpha, beta] {
        if !(angle > 0.0 && angle < std::f64::consts::PI) {
            return Err(FnError::Constraint(format!(
                "angle {angle} must lie in (0, pi)"
            )));
        }
    }
    let c1 = c(a[1].value(), a[2].value(), alpha);
    let c2 = c(a[3].value(), a[4].value(), beta);
    Ok((Length::new(c1)?, Length::new(c2)?))
}
