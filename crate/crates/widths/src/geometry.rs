//! Planar primitives: angles on the branch `(-pi, pi]`, edge vectors,
//! convex polygons with counterclockwise vertex cycles, and pointwise
//! shadow-width evaluation.
//!
//! A polygon is stored as the ordered list of its extremal vertices; the
//! constructor merges collinear vertices and rejects clockwise or
//! non-convex input. The 2-gon (a segment) is a first-class citizen: its
//! edge cycle is `{e, -e}` and every width formula applies to it unchanged.

use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use thiserror::Error;

pub const TAU: f64 = 2.0 * PI;

/// Relative tolerance deciding that two consecutive edges are parallel and
/// the shared vertex is not extremal: `|cross| < MERGE_EPS * |e1| * |e2|`.
pub const MERGE_EPS: f64 = 1e-12;

/// Closure defects below `CLOSURE_EPS * perimeter` are redistributed
/// uniformly across the edge cycle; larger defects are rejected.
pub const CLOSURE_EPS: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeometryError {
    #[error("not a counterclockwise convex vertex cycle: {0}")]
    NotConvex(String),
    #[error("fewer than 2 distinct points")]
    DegenerateInput,
    #[error("vertex cycle is ambiguous or does not close: {0}")]
    NotClosedCycle(String),
    #[error("bad parameter: {0}")]
    BadParameter(String),
}

/// An angle normalized to the branch `(-pi, pi]`; the tie at `-pi` maps
/// to `+pi`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Angle(f64);

impl Angle {
    pub fn new(radians: f64) -> Self {
        let mut r = radians.rem_euclid(TAU); // [0, 2*pi)
        if r > PI {
            r -= TAU;
        }
        Angle(r)
    }

    pub fn radians(self) -> f64 {
        self.0
    }

    /// Normalized difference `self - other` on the branch.
    pub fn difference(self, other: Angle) -> Angle {
        Angle::new(self.0 - other.0)
    }
}

impl From<f64> for Angle {
    fn from(radians: f64) -> Self {
        Angle::new(radians)
    }
}

/// A vector in the plane, also used as a point (complex-number view).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PlanarVector {
    pub re: f64,
    pub im: f64,
}

impl PlanarVector {
    pub const ZERO: PlanarVector = PlanarVector { re: 0.0, im: 0.0 };

    pub fn new(re: f64, im: f64) -> Self {
        PlanarVector { re, im }
    }

    pub fn from_polar(magnitude: f64, angle: Angle) -> Self {
        let (s, c) = angle.radians().sin_cos();
        PlanarVector::new(magnitude * c, magnitude * s)
    }

    pub fn magnitude(self) -> f64 {
        self.re.hypot(self.im)
    }

    /// Argument on the branch `(-pi, pi]`.
    pub fn argument(self) -> Angle {
        let a = self.im.atan2(self.re);
        if a == -PI {
            Angle(PI)
        } else {
            Angle(a)
        }
    }

    pub fn dot(self, other: PlanarVector) -> f64 {
        self.re * other.re + self.im * other.im
    }

    /// Signed area of the parallelogram spanned by `self` and `other`;
    /// positive when `other` lies counterclockwise of `self`.
    pub fn cross(self, other: PlanarVector) -> f64 {
        self.re * other.im - self.im * other.re
    }

    pub fn scale(self, factor: f64) -> PlanarVector {
        PlanarVector::new(self.re * factor, self.im * factor)
    }

    pub fn rotate(self, angle: Angle) -> PlanarVector {
        let (s, c) = angle.radians().sin_cos();
        PlanarVector::new(self.re * c - self.im * s, self.re * s + self.im * c)
    }

    /// Complex multiplication.
    pub fn complex_mul(self, other: PlanarVector) -> PlanarVector {
        PlanarVector::new(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )
    }

    /// Complex division; caller guarantees `other != 0`.
    pub fn complex_div(self, other: PlanarVector) -> PlanarVector {
        let d = other.re * other.re + other.im * other.im;
        PlanarVector::new(
            (self.re * other.re + self.im * other.im) / d,
            (self.im * other.re - self.re * other.im) / d,
        )
    }

    pub fn is_finite(self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }
}

impl std::ops::Add for PlanarVector {
    type Output = PlanarVector;
    fn add(self, rhs: PlanarVector) -> PlanarVector {
        PlanarVector::new(self.re + rhs.re, self.im + rhs.im)
    }
}

impl std::ops::Sub for PlanarVector {
    type Output = PlanarVector;
    fn sub(self, rhs: PlanarVector) -> PlanarVector {
        PlanarVector::new(self.re - rhs.re, self.im - rhs.im)
    }
}

impl std::ops::Neg for PlanarVector {
    type Output = PlanarVector;
    fn neg(self) -> PlanarVector {
        PlanarVector::new(-self.re, -self.im)
    }
}

/// First and second moment of a width random variable together with the
/// derived ratios `kappa = E(X^2)/E(X)^2` and `delta = sqrt(kappa - 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MomentSummary {
    pub mean: f64,
    pub second_moment: f64,
    pub kappa: f64,
    pub delta: f64,
}

impl MomentSummary {
    /// Assemble from the two raw moments. `kappa - 1` is clamped at zero:
    /// it is nonnegative in exact arithmetic (variance), and rounding may
    /// push it a few ulps below zero for near-constant widths.
    pub fn from_moments(mean: f64, second_moment: f64) -> Self {
        let kappa = second_moment / (mean * mean);
        let delta = (kappa - 1.0).max(0.0).sqrt();
        MomentSummary {
            mean,
            second_moment,
            kappa,
            delta,
        }
    }
}

/// A convex polygon: a counterclockwise cycle of `n >= 2` extremal
/// vertices. Construction validates convexity, merges collinear
/// (non-extremal) vertices, and precomputes the edge cycle.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvexPolygon {
    vertices: Vec<PlanarVector>,
    edges: Vec<PlanarVector>,
}

impl ConvexPolygon {
    /// Build a polygon from a counterclockwise vertex cycle.
    ///
    /// Collinear vertices are merged, so `[(0,0),(1,0),(2,0),(2,1),(0,1)]`
    /// yields a quadrilateral and a collinear point set yields a 2-gon.
    /// Clockwise or non-convex input is rejected.
    pub fn new(vertices: Vec<PlanarVector>) -> Result<Self, GeometryError> {
        for v in &vertices {
            if !v.is_finite() {
                return Err(GeometryError::BadParameter(
                    "non-finite vertex coordinate".into(),
                ));
            }
        }
        let scale = vertices
            .iter()
            .map(|v| v.re.abs().max(v.im.abs()))
            .fold(0.0_f64, f64::max);
        if scale == 0.0 && vertices.len() <= 1 {
            return Err(GeometryError::DegenerateInput);
        }
        let point_tol = MERGE_EPS * scale.max(f64::MIN_POSITIVE);

        // Collapse coincident consecutive points (cyclically).
        let mut pts: Vec<PlanarVector> = Vec::with_capacity(vertices.len());
        for v in vertices {
            if pts.last().is_none_or(|p| (*p - v).magnitude() > point_tol) {
                pts.push(v);
            }
        }
        while pts.len() >= 2 && (pts[0] - pts[pts.len() - 1]).magnitude() <= point_tol {
            pts.pop();
        }
        if pts.len() < 2 {
            return Err(GeometryError::DegenerateInput);
        }

        // A point visited twice non-consecutively cannot bound a convex
        // region; report it as a cycle defect rather than NotConvex.
        for i in 0..pts.len() {
            for j in (i + 1)..pts.len() {
                if (pts[i] - pts[j]).magnitude() <= point_tol {
                    return Err(GeometryError::NotClosedCycle(format!(
                        "vertex {j} repeats vertex {i}"
                    )));
                }
            }
        }

        // Merge non-extremal vertices: the turning at a vertex is zero when
        // its two edges are parallel and point the same way.
        loop {
            let n = pts.len();
            if n <= 2 {
                break;
            }
            let mut removed = false;
            for j in 0..n {
                let prev = pts[(j + n - 1) % n];
                let next = pts[(j + 1) % n];
                let a = pts[j] - prev;
                let b = next - pts[j];
                if a.cross(b).abs() <= MERGE_EPS * a.magnitude() * b.magnitude()
                    && a.dot(b) > 0.0
                {
                    pts.remove(j);
                    removed = true;
                    break;
                }
            }
            if !removed {
                break;
            }
        }

        let n = pts.len();
        let edges: Vec<PlanarVector> = (0..n).map(|j| pts[(j + 1) % n] - pts[j]).collect();

        if n > 2 {
            // Exterior angles must all be nonnegative and sum to one full
            // turn; a negative turn is a reflex vertex or clockwise input,
            // a sum above 2*pi is a cycle winding more than once.
            let mut total = 0.0;
            for j in 0..n {
                let a = edges[(j + n - 1) % n];
                let b = edges[j];
                if a.cross(b) < -MERGE_EPS * a.magnitude() * b.magnitude() {
                    return Err(GeometryError::NotConvex(format!(
                        "negative turning at vertex {j}"
                    )));
                }
                total += b.argument().difference(a.argument()).radians();
            }
            if (total - TAU).abs() > 1e-9 {
                return Err(GeometryError::NotConvex(format!(
                    "exterior angles sum to {total:.12} instead of 2*pi"
                )));
            }
        }

        Ok(ConvexPolygon {
            vertices: pts,
            edges,
        })
    }

    /// Build a polygon from its edge cycle. The edges must sum to zero up
    /// to a defect below `CLOSURE_EPS * perimeter`, which is redistributed
    /// uniformly; the first vertex is placed at the origin.
    pub fn from_edge_cycle(edges: Vec<PlanarVector>) -> Result<Self, GeometryError> {
        if edges.len() < 2 {
            return Err(GeometryError::DegenerateInput);
        }
        let perimeter: f64 = edges.iter().map(|e| e.magnitude()).sum();
        if perimeter <= 0.0 || !perimeter.is_finite() {
            return Err(GeometryError::BadParameter("zero or non-finite edges".into()));
        }
        let defect = edges
            .iter()
            .fold(PlanarVector::ZERO, |acc, e| acc + *e);
        if defect.magnitude() > CLOSURE_EPS * perimeter {
            return Err(GeometryError::NotClosedCycle(format!(
                "edge cycle defect {:.3e} exceeds {:.3e}",
                defect.magnitude(),
                CLOSURE_EPS * perimeter
            )));
        }
        let correction = defect.scale(1.0 / edges.len() as f64);
        let mut vertices = Vec::with_capacity(edges.len());
        let mut cursor = PlanarVector::ZERO;
        for e in &edges[..edges.len() - 1] {
            vertices.push(cursor);
            cursor = cursor + *e - correction;
        }
        vertices.push(cursor);
        ConvexPolygon::new(vertices)
    }

    /// The regular `n`-gon with the given circumradius, vertices at
    /// `r * exp(i*(phase + 2*pi*k/n))`. `n = 2` yields the 2-gon.
    pub fn regular(n: u32, circumradius: f64, phase: Angle) -> Result<Self, GeometryError> {
        if n < 2 {
            return Err(GeometryError::BadParameter(format!(
                "regular polygon needs n >= 2, got {n}"
            )));
        }
        if !(circumradius > 0.0 && circumradius.is_finite()) {
            return Err(GeometryError::BadParameter(format!(
                "circumradius must be positive and finite, got {circumradius}"
            )));
        }
        let vertices = (0..n)
            .map(|k| {
                let theta = Angle::new(phase.radians() + TAU * k as f64 / n as f64);
                PlanarVector::from_polar(circumradius, theta)
            })
            .collect();
        ConvexPolygon::new(vertices)
    }

    pub fn vertices(&self) -> &[PlanarVector] {
        &self.vertices
    }

    /// Edge cycle `e_j = v_{j+1} - v_j` (indices mod n). For the 2-gon
    /// this is `{e, -e}`, so the perimeter counts both traversals.
    pub fn edges(&self) -> &[PlanarVector] {
        &self.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn perimeter(&self) -> f64 {
        self.edges.iter().map(|e| e.magnitude()).sum()
    }

    pub fn centroid(&self) -> PlanarVector {
        self.vertices
            .iter()
            .fold(PlanarVector::ZERO, |acc, v| acc + *v)
            .scale(1.0 / self.vertices.len() as f64)
    }

    /// Length of the shadow cast by light from direction `omega`:
    /// `sum_j |e_j| * sin(arg(e_j) - omega)_+`, which equals the support
    /// width of the polygon along `omega +/- pi/2`.
    pub fn shadow_width(&self, omega: Angle) -> f64 {
        let (s, c) = omega.radians().sin_cos();
        self.edges
            .iter()
            .map(|e| (e.im * c - e.re * s).max(0.0))
            .sum()
    }

    /// Image under the similarity `v -> scale * R(rotation) * v + shift`.
    pub fn transform(
        &self,
        scale: f64,
        rotation: Angle,
        shift: PlanarVector,
    ) -> Result<Self, GeometryError> {
        if !(scale > 0.0 && scale.is_finite()) {
            return Err(GeometryError::BadParameter(format!(
                "similarity scale must be positive, got {scale}"
            )));
        }
        let vertices = self
            .vertices
            .iter()
            .map(|v| v.rotate(rotation).scale(scale) + shift)
            .collect();
        ConvexPolygon::new(vertices)
    }

    /// Whether `v_{k+m} = -v_k` holds for all k (requires 2m vertices).
    pub fn is_centrally_symmetric(&self, tolerance: f64) -> bool {
        let n = self.vertices.len();
        if n % 2 != 0 {
            return false;
        }
        let m = n / 2;
        let scale = self
            .vertices
            .iter()
            .map(|v| v.magnitude())
            .fold(0.0_f64, f64::max);
        (0..m).all(|k| (self.vertices[k + m] + self.vertices[k]).magnitude() <= tolerance * scale)
    }

    /// Parse the JSON polygon format `{"vertices": [[x, y], ...]}`.
    pub fn from_json_str(text: &str) -> Result<Self, GeometryError> {
        let file: PolygonFile = serde_json::from_str(text)
            .map_err(|e| GeometryError::BadParameter(format!("polygon JSON: {e}")))?;
        ConvexPolygon::new(file.vertices.into_iter().map(|[x, y]| PlanarVector::new(x, y)).collect())
    }

    pub fn to_json_string(&self) -> String {
        let file = PolygonFile {
            vertices: self.vertices.iter().map(|v| [v.re, v.im]).collect(),
        };
        serde_json::to_string(&file).expect("polygon serialization cannot fail")
    }

    /// Parse the headerless CSV polygon format, one `x,y` pair per line.
    pub fn from_csv_str(text: &str) -> Result<Self, GeometryError> {
        let mut vertices = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let mut fields = line.split(',');
            let parse = |field: Option<&str>| -> Result<f64, GeometryError> {
                field
                    .map(str::trim)
                    .ok_or(())
                    .and_then(|f| f.parse::<f64>().map_err(|_| ()))
                    .map_err(|()| {
                        GeometryError::BadParameter(format!(
                            "polygon CSV line {}: expected `x,y`",
                            lineno + 1
                        ))
                    })
            };
            let x = parse(fields.next())?;
            let y = parse(fields.next())?;
            if fields.next().is_some() {
                return Err(GeometryError::BadParameter(format!(
                    "polygon CSV line {}: expected exactly two fields",
                    lineno + 1
                )));
            }
            vertices.push(PlanarVector::new(x, y));
        }
        ConvexPolygon::new(vertices)
    }

    pub fn to_csv_string(&self) -> String {
        let mut out = String::new();
        for v in &self.vertices {
            out.push_str(&format!("{},{}\n", v.re, v.im));
        }
        out
    }
}

#[derive(Serialize, Deserialize)]
struct PolygonFile {
    vertices: Vec<[f64; 2]>,
}
