//! Numerical tolerances shared by every geometric operation.

/// Accuracy budget for double-precision disc geometry.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerances {
    /// Slack when constructing values with strict invariants (|z| < 1, unit directions).
    pub construction: f64,
    /// Residual allowed for incidence tests (point on geodesic, orthogonality of arcs).
    pub residual: f64,
    /// Allowed angle error in radians.
    pub angle: f64,
    /// Comparison against an independent oracle.
    pub oracle: f64,
}

impl Tolerances {
    pub const DEFAULT: Tolerances = Tolerances {
        construction: 1e-12,
        residual: 1e-10,
        angle: 1e-9,
        oracle: 1e-9,
    };
}

impl Default for Tolerances {
    fn default() -> Self {
        Self::DEFAULT
    }
}

/// The tolerances every operation in this crate reads from.
pub const TOL: Tolerances = Tolerances::DEFAULT;
