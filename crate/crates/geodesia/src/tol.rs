//! The tolerance family. Meshes are normalized to unit diameter on load, so
//! each constant is both the absolute and the diameter-relative value.

/// Vertex-vs-face-plane slack for the convexity test.
pub const TOL_PLANE: f64 = 1e-9;
/// Rigid-motion isometry slack.
pub const TOL_RIGID: f64 = 1e-10;
/// Point classification (vertex / edge snapping) radius.
pub const TOL_PT: f64 = 1e-9;
/// Collinearity slack for reconstructed crossing points.
pub const TOL_COL: f64 = 1e-8;
/// Equidistance slack on ridge points, and cocircularity detection.
pub const TOL_RIDGE: f64 = 1e-8;
/// Occupancy tie detection (degeneracy reporting).
pub const TOL_TIE: f64 = 1e-9;
/// Separation under which two sweep events count as simultaneous.
pub const TOL_EVENT: f64 = 1e-10;
/// Degenerate-face area threshold.
pub const TOL_AREA: f64 = 1e-12;
/// Bisection precision for event parameters.
pub const TOL_PARAM: f64 = 1e-12;
