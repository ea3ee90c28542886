//! Fenchel-Nielsen coordinates for the branch loci of finite cyclic actions
//! on Teichmüller space.
//!
//! The crate is organised bottom-up:
//!
//! - [`dataset`]: cyclic data sets `(n, g0, r; (c1,n1), ...)`, their
//!   validation, genus, classification and compatible-pair composition.
//! - [`disc`]: a Poincaré-disc geometry kernel (points, geodesics,
//!   perpendiculars, isometries).
//! - [`polygon`]: canonical polygons realizing irreducible Type 1 actions,
//!   their embedding in the disc, and the glued octagon family for
//!   compatible pairs.
//! - [`fnpipe`]: pants decompositions on embedded polygons, length and twist
//!   parameters, and the closed-form locus evaluations.
//! - [`acceptance`]: the end-to-end verification suite shared by the
//!   `acceptance` test target and the `branchloci selftest` command.

pub mod acceptance;
pub mod dataset;
pub mod disc;
pub mod fnpipe;
pub mod oracle;
pub mod polygon;
pub mod tol;

pub use dataset::{ActionClass, ActionKind, ConePair, DataSet, ValidationReport, Violation};
pub use disc::{DiscPoint, Geodesic, Isometry, Length};
pub use fnpipe::{FNCoordinates, LocusPoint, PantsCurve, PantsDecomposition};
pub use polygon::{CanonicalPolygon, EmbeddedPolygon, GluedPolygon};
pub use tol::{Tolerances, TOL};
