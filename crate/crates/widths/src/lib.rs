//! Widths of convex polygons along a uniformly random direction.
//!
//! The central quantity is the deviation rate `delta(X_T)`: the standard
//! deviation of the shadow width of a polygon `T`, taken over a uniformly
//! random light direction, divided by its mean. It vanishes exactly on
//! curves of constant width and so measures how far a shape is from them.
//!
//! Modules:
//! - [`geometry`]: angles, edge vectors, convex polygons, pointwise widths.
//! - [`moments`]: closed-form first/second width moments, `delta`, the
//!   minimum-value formula `nu`, and quadrature / Monte Carlo oracles.
//! - [`symmetry`]: pre-edge bundles, asymmetrization and symmetrization,
//!   the diagonal representation of centrally symmetric polygons.
//! - [`reinhardt`]: exact root-of-unity combinatorics of the minimizers
//!   (sign vectors, cyclotomic divisibility, dihedral canonicalization,
//!   cyclic run vectors, realization as equilateral polygons).
//! - [`experiments`]: reproduction suites — truncation trends, even/odd
//!   regular-polygon comparisons, random polygon sampling, and a
//!   derivative-free search for minimum-deviation shapes.

pub mod experiments;
pub mod geometry;
pub mod moments;
pub mod reinhardt;
pub mod symmetry;

pub use geometry::{Angle, ConvexPolygon, GeometryError, MomentSummary, PlanarVector};
pub use moments::{moment_summary, nu};
