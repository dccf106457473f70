//! Asymmetrization of polygons to pre-edge bundles and symmetrization back
//! to centrally symmetric polygons.
//!
//! `H` is the closed upper half plane with the negative real axis removed:
//! `Im > 0`, or `Im = 0 and Re >= 0`. The map `iota` folds a nonzero vector
//! into `H` by negating it when necessary. Folding every edge of a polygon
//! into `H` and summing parallel results gives its pre-edge bundle — the
//! similarity-reduced direction content. Widths transport across this map:
//! the bundle width equals the polygon width at every angle, so the
//! deviation rate is a bundle invariant.

use crate::geometry::{Angle, ConvexPolygon, GeometryError, PlanarVector, TAU};
use std::f64::consts::PI;
use thiserror::Error;

/// Pre-edges whose arguments differ by less than this (circularly, mod pi)
/// are treated as parallel and merged.
pub const ARGUMENT_MERGE_EPS: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SymmetryError {
    #[error("zero vector has no direction")]
    ZeroVector,
    #[error("polygon is not centrally symmetric")]
    NotSymmetric,
    #[error("{0}")]
    Geometry(#[from] GeometryError),
}

/// A nonzero vector in `H` (upper half plane, boundary on the nonnegative
/// real axis).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PreEdge(PlanarVector);

impl PreEdge {
    pub fn vector(self) -> PlanarVector {
        self.0
    }

    pub fn magnitude(self) -> f64 {
        self.0.magnitude()
    }

    /// Argument in `[0, pi)`.
    pub fn argument(self) -> Angle {
        self.0.argument()
    }
}

fn in_upper_half(v: PlanarVector) -> bool {
    v.im > 0.0 || (v.im == 0.0 && v.re >= 0.0)
}

/// Fold a nonzero vector into `H`: identity on `H`, negation outside.
pub fn iota(a: PlanarVector) -> Result<PreEdge, SymmetryError> {
    if a.magnitude() == 0.0 {
        return Err(SymmetryError::ZeroVector);
    }
    Ok(PreEdge(if in_upper_half(a) { a } else { -a }))
}

/// An argument-sorted sequence of pre-edges with strictly increasing
/// arguments in `[0, pi)`.
#[derive(Debug, Clone, PartialEq)]
pub struct PreEdgeBundle {
    pre_edges: Vec<PreEdge>,
}

impl PreEdgeBundle {
    /// Build a bundle, merging parallel pre-edges (Abbreviation) and
    /// sorting by argument.
    pub fn new(pre_edges: Vec<PreEdge>) -> Result<Self, SymmetryError> {
        if pre_edges.is_empty() {
            return Err(SymmetryError::ZeroVector);
        }
        let merged = merge_parallel(pre_edges)?;
        Ok(PreEdgeBundle { pre_edges: merged })
    }

    pub fn pre_edges(&self) -> &[PreEdge] {
        &self.pre_edges
    }

    pub fn size(&self) -> usize {
        self.pre_edges.len()
    }

    /// Comparison up to circular argument tolerance (mod pi) and relative
    /// magnitude tolerance. Arguments live on a circle of circumference pi,
    /// so a pre-edge sitting at the 0/pi seam may appear at either end of
    /// the sorted list; alignment is tried at every cyclic shift.
    pub fn approx_eq(&self, other: &PreEdgeBundle, arg_tol: f64, rel_mag_tol: f64) -> bool {
        let m = self.size();
        if m != other.size() {
            return false;
        }
        let matches = |a: &PreEdge, b: &PreEdge| {
            let d = (a.argument().radians() - b.argument().radians()).abs();
            let circ = d.min(PI - d);
            let (ma, mb) = (a.magnitude(), b.magnitude());
            circ <= arg_tol && (ma - mb).abs() <= rel_mag_tol * ma.max(mb)
        };
        (0..m).any(|shift| {
            (0..m).all(|i| matches(&self.pre_edges[(i + shift) % m], &other.pre_edges[i]))
        })
    }

    /// The regular bundle `R_m`: `m` pre-edges of the given magnitude with
    /// arguments `phase + j*pi/m`.
    pub fn regular(m: usize, magnitude: f64, phase: Angle) -> Result<Self, SymmetryError> {
        if m == 0 || magnitude <= 0.0 {
            return Err(SymmetryError::ZeroVector);
        }
        let base = phase.radians().rem_euclid(PI);
        let mut pre_edges: Vec<PreEdge> = (0..m)
            .map(|j| {
                let theta = (base + j as f64 * PI / m as f64).rem_euclid(PI);
                iota(PlanarVector::from_polar(magnitude, Angle::new(theta)))
                    .expect("regular pre-edge is nonzero")
            })
            .collect();
        pre_edges.sort_by(|a, b| a.argument().radians().total_cmp(&b.argument().radians()));
        Ok(PreEdgeBundle { pre_edges })
    }
}

/// Sum pre-edges sharing a direction (mod pi within `ARGUMENT_MERGE_EPS`)
/// and return them sorted by argument.
fn merge_parallel(mut pre_edges: Vec<PreEdge>) -> Result<Vec<PreEdge>, SymmetryError> {
    pre_edges.sort_by(|a, b| a.argument().radians().total_cmp(&b.argument().radians()));
    let mut groups: Vec<PreEdge> = Vec::with_capacity(pre_edges.len());
    for pe in pre_edges {
        match groups.last_mut() {
            Some(last)
                if pe.argument().radians() - last.argument().radians() < ARGUMENT_MERGE_EPS =>
            {
                *last = iota(last.vector() + pe.vector())?;
            }
            _ => groups.push(pe),
        }
    }
    // Wrap-around: arguments just below pi are parallel (mod pi) to
    // arguments just above 0; fold the last group into the first.
    if groups.len() >= 2 {
        let first = groups[0];
        let last = groups[groups.len() - 1];
        if PI - last.argument().radians() + first.argument().radians() < ARGUMENT_MERGE_EPS {
            groups.pop();
            groups[0] = iota(first.vector() - last.vector())?;
        }
    }
    Ok(groups)
}

/// Fold every edge of `polygon` into `H` and merge parallel results: the
/// pre-edge bundle of the polygon. The polygon is then a realization of
/// the bundle.
pub fn asymmetrize(polygon: &ConvexPolygon) -> PreEdgeBundle {
    let pre_edges: Vec<PreEdge> = polygon
        .edges()
        .iter()
        .map(|&e| iota(e).expect("polygon edges are nonzero"))
        .collect();
    PreEdgeBundle {
        pre_edges: merge_parallel(pre_edges).expect("folded edges cannot cancel"),
    }
}

/// The canonical centrally symmetric realization of a bundle: the 2m-gon
/// with vertices
/// `gamma, gamma + b_1/2, ..., gamma + (b_1+...+b_m)/2,
///  gamma + (b_2+...+b_m)/2, ..., gamma + b_m/2`
/// where `gamma = -(b_1+...+b_m)/4`.
pub fn symmetrize(bundle: &PreEdgeBundle) -> ConvexPolygon {
    let b = bundle.pre_edges();
    let m = b.len();
    let total = b
        .iter()
        .fold(PlanarVector::ZERO, |acc, pe| acc + pe.vector());
    let gamma = total.scale(-0.25);
    let mut vertices = Vec::with_capacity(2 * m);
    let mut prefix = PlanarVector::ZERO;
    vertices.push(gamma);
    for pe in b {
        prefix = prefix + pe.vector();
        vertices.push(gamma + prefix.scale(0.5));
    }
    // Suffix sums b_k + ... + b_m for k = 2..m.
    let mut suffix = total;
    for pe in &b[..m.saturating_sub(1)] {
        suffix = suffix - pe.vector();
        vertices.push(gamma + suffix.scale(0.5));
    }
    ConvexPolygon::new(vertices).expect("symmetrization of a valid bundle is convex")
}

/// Bundle width `sum_j (|b_j|/2) |sin(arg(b_j) - omega)|`.
pub fn bundle_width(bundle: &PreEdgeBundle, omega: Angle) -> f64 {
    let (s, c) = omega.radians().sin_cos();
    bundle
        .pre_edges()
        .iter()
        .map(|pe| {
            let v = pe.vector();
            0.5 * (v.im * c - v.re * s).abs()
        })
        .sum()
}

/// Width of a centrally symmetric polygon by the diagonal representation:
/// in the vertex sector `arg(g_{j-1} - g_j) <= omega <= arg(g_j - g_{j+1})`
/// the width is `2 |g_j| sin(arg(g_j) - omega)`. A boundary `omega` is
/// assigned to the earlier sector.
pub fn diagonal_width(polygon: &ConvexPolygon, omega: Angle) -> Result<f64, SymmetryError> {
    if !polygon.is_centrally_symmetric(1e-12) {
        return Err(SymmetryError::NotSymmetric);
    }
    let vs = polygon.vertices();
    let n = vs.len();
    // Sector boundaries a_j = arg(g_{j-1} - g_j) increase cyclically.
    let bounds: Vec<f64> = (0..n)
        .map(|j| (vs[(j + n - 1) % n] - vs[j]).argument().radians())
        .collect();
    let w = omega.radians();
    for j in 0..n {
        let lo = bounds[j];
        let span = (bounds[(j + 1) % n] - lo).rem_euclid(TAU);
        let offset = (w - lo).rem_euclid(TAU);
        // Upper-inclusive, lower-exclusive: the shared boundary belongs to
        // the earlier sector.
        if offset > 0.0 && offset <= span {
            let g = vs[j];
            return Ok(2.0 * g.magnitude() * (g.argument().radians() - w).sin());
        }
    }
    // omega coincides with a sector's lower boundary: it is the upper
    // boundary of the previous sector.
    let j = bounds
        .iter()
        .position(|&b| (w - b).rem_euclid(TAU) == 0.0)
        .expect("omega lies in some sector");
    let g = vs[(j + n - 1) % n];
    Ok(2.0 * g.magnitude() * (g.argument().radians() - w).sin())
}

/// Whether `polygon` realizes `bundle`: its asymmetrization equals the
/// bundle within argument tolerance and 1e-9 relative magnitude.
pub fn is_realization(polygon: &ConvexPolygon, bundle: &PreEdgeBundle) -> bool {
    asymmetrize(polygon).approx_eq(bundle, ARGUMENT_MERGE_EPS, 1e-9)
}
