//! Closed-form moments of the random-direction width and the deviation
//! rate, plus independent numerical oracles.
//!
//! For an edge vector `a` the single-edge width is
//! `X_a(omega) = |a| * sin(arg(a) - omega)_+`, with
//! `E(X_a) = |a| / pi` and the pair second moment
//! `E(X_a X_b) = |a||b| V(arg(b) - arg(a)) / (4 pi)` where
//! `V(x) = (pi - |x|) cos x + sin |x|` on `(-pi, pi]`. Summing over the
//! edge cycle gives exact first and second moments of the polygon width,
//! and from them `kappa` and `delta`. All formulas act on the edge
//! multiset, so the 2-gon (edge cycle `{e, -e}`) needs no special case.

use crate::geometry::{Angle, ConvexPolygon, MomentSummary, PlanarVector, TAU};
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MomentsError {
    #[error("zero vector has no direction")]
    ZeroVector,
    #[error("bad parameter: {0}")]
    BadParameter(String),
}

/// The pairwise second-moment kernel `V(x) = (pi - |x|) cos x + sin |x|`,
/// extended 2*pi-periodically; even, with global maximum `V(0) = pi`.
pub fn v_kernel(x: Angle) -> f64 {
    let a = x.radians().abs();
    (PI - a) * a.cos() + a.sin()
}

/// `E(X_a X_b) = |a| |b| V(arg(b) - arg(a)) / (4 pi)`; symmetric in its
/// arguments because `V` is even.
pub fn pair_moment(a: PlanarVector, b: PlanarVector) -> Result<f64, MomentsError> {
    let (ra, rb) = (a.magnitude(), b.magnitude());
    if ra == 0.0 || rb == 0.0 {
        return Err(MomentsError::ZeroVector);
    }
    let eta = b.argument().difference(a.argument());
    Ok(ra * rb * v_kernel(eta) / (4.0 * PI))
}

/// `E(X_T) = perimeter(T) / pi`.
pub fn first_moment(polygon: &ConvexPolygon) -> f64 {
    polygon.perimeter() / PI
}

/// `E(X_T^2) = (1/4pi) * sum_{j,k} |e_j||e_k| V(theta_j - theta_k)` over
/// the edge cycle.
pub fn second_moment(polygon: &ConvexPolygon) -> f64 {
    let edges = polygon.edges();
    let polar: Vec<(f64, f64)> = edges
        .iter()
        .map(|e| (e.magnitude(), e.argument().radians()))
        .collect();
    let mut sum = 0.0;
    for (rj, tj) in &polar {
        for (rk, tk) in &polar {
            sum += rj * rk * v_kernel(Angle::new(tj - tk));
        }
    }
    sum / (4.0 * PI)
}

/// Mean, second moment, `kappa`, and `delta` of the width of `polygon`,
/// all in closed form.
pub fn moment_summary(polygon: &ConvexPolygon) -> MomentSummary {
    MomentSummary::from_moments(first_moment(polygon), second_moment(polygon))
}

/// The minimum deviation rate over convex `n`-gons (attained when `n` is
/// not a power of 2):
/// `nu_n = sqrt( pi/(4n tan(pi/2n)) + pi^2/(8n^2 sin^2(pi/2n)) - 1 )`.
pub fn nu(n: u32) -> Result<f64, MomentsError> {
    if n < 1 {
        return Err(MomentsError::BadParameter("nu needs n >= 1".into()));
    }
    let nf = n as f64;
    let x = PI / (2.0 * nf);
    let inside = PI / (4.0 * nf * x.tan()) + PI * PI / (8.0 * nf * nf * x.sin() * x.sin()) - 1.0;
    Ok(inside.max(0.0).sqrt())
}

/// Moments by composite Simpson quadrature of the width over `[0, 2pi)`.
///
/// The integrand has derivative kinks exactly at the 2n edge-argument
/// angles, so the partition is refined to place a panel boundary at every
/// one of them before distributing `panels` across the smooth pieces.
pub fn quadrature_moments(
    polygon: &ConvexPolygon,
    panels: u32,
) -> Result<MomentSummary, MomentsError> {
    if panels < 16 {
        return Err(MomentsError::BadParameter(format!(
            "quadrature needs at least 16 panels, got {panels}"
        )));
    }
    // Kink locations: omega = theta_j and theta_j + pi, mapped to [0, 2pi).
    let mut breaks: Vec<f64> = Vec::with_capacity(2 * polygon.edges().len() + 2);
    for e in polygon.edges() {
        let theta = e.argument().radians().rem_euclid(TAU);
        breaks.push(theta);
        breaks.push((theta + PI).rem_euclid(TAU));
    }
    breaks.push(0.0);
    breaks.push(TAU);
    breaks.sort_by(f64::total_cmp);
    breaks.dedup_by(|a, b| (*a - *b).abs() < 1e-14);

    let width = |omega: f64| polygon.shadow_width(Angle::new(omega));
    let mut integral_w = 0.0;
    let mut integral_w2 = 0.0;
    for pair in breaks.windows(2) {
        let (a, b) = (pair[0], pair[1]);
        let len = b - a;
        if len <= 0.0 {
            continue;
        }
        let m = ((panels as f64 * len / TAU).ceil() as usize).max(2);
        let h = len / m as f64;
        // Simpson on each panel: (h/6) * (f(x) + 4 f(x + h/2) + f(x + h)).
        for k in 0..m {
            let x0 = a + k as f64 * h;
            let x1 = x0 + 0.5 * h;
            let x2 = a + (k + 1) as f64 * h;
            let (w0, w1, w2) = (width(x0), width(x1), width(x2));
            integral_w += h / 6.0 * (w0 + 4.0 * w1 + w2);
            integral_w2 += h / 6.0 * (w0 * w0 + 4.0 * w1 * w1 + w2 * w2);
        }
    }
    Ok(MomentSummary::from_moments(
        integral_w / TAU,
        integral_w2 / TAU,
    ))
}

/// Monte Carlo moment estimates with delta-method standard errors.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct MonteCarloMoments {
    pub summary: MomentSummary,
    pub mean_se: f64,
    pub second_moment_se: f64,
    pub delta_se: f64,
    pub samples: u64,
}

/// Estimate the moments from `samples` i.i.d. uniform directions.
///
/// The generator is ChaCha8 seeded with `seed_from_u64(seed)`; the i-th
/// direction is `omega_i = 2*pi * ((u_i >> 11) / 2^53)` where `u_i` is the
/// i-th 64-bit output. The stream is portable, so a fixed seed gives
/// bit-identical results on every platform; parallel callers should use
/// disjoint seeds.
pub fn monte_carlo_moments(
    polygon: &ConvexPolygon,
    samples: u64,
    seed: u64,
) -> Result<MonteCarloMoments, MomentsError> {
    if samples < 1000 {
        return Err(MomentsError::BadParameter(format!(
            "Monte Carlo needs at least 1000 samples, got {samples}"
        )));
    }
    let edges: Vec<(f64, f64)> = polygon.edges().iter().map(|e| (e.re, e.im)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut s1, mut s2, mut s3, mut s4) = (0.0_f64, 0.0_f64, 0.0_f64, 0.0_f64);
    for _ in 0..samples {
        let u = (rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64;
        let (s, c) = (TAU * u).sin_cos();
        let mut x = 0.0;
        for &(re, im) in &edges {
            x += (im * c - re * s).max(0.0);
        }
        let x2 = x * x;
        s1 += x;
        s2 += x2;
        s3 += x2 * x;
        s4 += x2 * x2;
    }
    let n = samples as f64;
    let (m1, m2, m3, m4) = (s1 / n, s2 / n, s3 / n, s4 / n);
    let var_m1 = (m2 - m1 * m1).max(0.0) / n;
    let var_m2 = (m4 - m2 * m2).max(0.0) / n;
    let cov = (m3 - m1 * m2) / n;
    let summary = MomentSummary::from_moments(m1, m2);
    // Delta method for delta = sqrt(m2/m1^2 - 1).
    let delta_se = if summary.delta > 1e-12 {
        let g1 = -m2 / (summary.delta * m1 * m1 * m1);
        let g2 = 0.5 / (summary.delta * m1 * m1);
        (g1 * g1 * var_m1 + g2 * g2 * var_m2 + 2.0 * g1 * g2 * cov)
            .max(0.0)
            .sqrt()
    } else {
        f64::INFINITY
    };
    Ok(MonteCarloMoments {
        summary,
        mean_se: var_m1.sqrt(),
        second_moment_se: var_m2.sqrt(),
        delta_se,
        samples,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::GeometryError;

    pub(crate) fn poly(points: &[(f64, f64)]) -> ConvexPolygon {
        ConvexPolygon::new(points.iter().map(|&(x, y)| PlanarVector::new(x, y)).collect())
            .unwrap()
    }

    fn two_gon() -> ConvexPolygon {
        poly(&[(0.0, 0.0), (1.0, 0.0)])
    }

    fn unit_triangle() -> ConvexPolygon {
        ConvexPolygon::regular(3, 1.0 / 3.0_f64.sqrt(), Angle::new(PI / 2.0)).unwrap()
    }

    fn unit_square() -> ConvexPolygon {
        poly(&[(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)])
    }

    #[test]
    fn v_kernel_special_values() {
        assert_eq!(v_kernel(Angle::new(0.0)), PI);
        assert!(v_kernel(Angle::new(PI)).abs() < 1e-15);
        assert!((v_kernel(Angle::new(PI / 2.0)) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn v_kernel_even_and_periodic() {
        for k in 0..200 {
            let x = -PI + (k as f64 + 0.5) * TAU / 200.0;
            assert!((v_kernel(Angle::new(x)) - v_kernel(Angle::new(-x))).abs() < 1e-12);
            assert!((v_kernel(Angle::new(x)) - v_kernel(Angle::new(x + TAU))).abs() < 1e-12);
            assert!(v_kernel(Angle::new(x)) <= PI + 1e-15);
        }
    }

    #[test]
    fn pair_moment_examples() {
        let e = PlanarVector::new(1.0, 0.0);
        assert!((pair_moment(e, e).unwrap() - 0.25).abs() < 1e-15);
        let up = PlanarVector::new(0.0, 1.0);
        assert!((pair_moment(e, up).unwrap() - 1.0 / (4.0 * PI)).abs() < 1e-15);
        assert!(pair_moment(e, -e).unwrap().abs() < 1e-16);
        assert_eq!(
            pair_moment(PlanarVector::ZERO, e).unwrap_err(),
            MomentsError::ZeroVector
        );
    }

    #[test]
    fn pair_moment_symmetric() {
        let a = PlanarVector::new(0.3, -1.7);
        let b = PlanarVector::new(-2.1, 0.4);
        assert!((pair_moment(a, b).unwrap() - pair_moment(b, a).unwrap()).abs() < 1e-15);
    }

    #[test]
    fn first_moments() {
        assert!((first_moment(&two_gon()) - 2.0 / PI).abs() < 1e-15);
        assert!((first_moment(&unit_triangle()) - 3.0 / PI).abs() < 1e-12);
        assert!((first_moment(&unit_square()) - 4.0 / PI).abs() < 1e-15);
    }

    #[test]
    fn second_moments() {
        assert!((second_moment(&two_gon()) - 0.5).abs() < 1e-15);
        let triangle_expected = 0.5 + 3.0 * 3.0_f64.sqrt() / (4.0 * PI);
        assert!((second_moment(&unit_triangle()) - triangle_expected).abs() < 1e-12);
        // Pairwise sum for the unit square: 4 V(0) + 8 V(pi/2) + 4 V(pi)
        // over 4 pi, i.e. 1 + 2/pi.
        assert!((second_moment(&unit_square()) - (1.0 + 2.0 / PI)).abs() < 1e-14);
    }

    #[test]
    fn summary_matches_table_values() {
        let two = moment_summary(&two_gon());
        assert!((two.delta - (PI * PI / 8.0 - 1.0).sqrt()).abs() < 1e-15);
        assert!((two.delta - 0.48342).abs() < 1e-5);
        assert!((moment_summary(&unit_square()).delta - 0.09772).abs() < 1e-5);
        assert!((moment_summary(&unit_triangle()).delta - 0.04196).abs() < 1e-5);
    }

    #[test]
    fn nu_table_row_values() {
        assert!((nu(1).unwrap() - 0.48342).abs() < 1e-5);
        assert!((nu(5).unwrap() - 0.01485).abs() < 1e-5);
        assert!((nu(7).unwrap() - 0.00754).abs() < 1e-5);
        assert!(matches!(nu(0), Err(MomentsError::BadParameter(_))));
    }

    #[test]
    fn nu_strictly_decreasing_to_64() {
        let mut prev = nu(1).unwrap();
        for m in 2..=64 {
            let next = nu(m).unwrap();
            assert!(next < prev, "nu({m}) = {next} not below nu({}) = {prev}", m - 1);
            prev = next;
        }
    }

    #[test]
    fn quadrature_agrees_on_known_cases() {
        let q2 = quadrature_moments(&two_gon(), 512).unwrap();
        assert!((q2.mean - 2.0 / PI).abs() < 1e-9);
        let qs = quadrature_moments(&unit_square(), 512).unwrap();
        assert!((qs.second_moment - (1.0 + 2.0 / PI)).abs() < 1e-9);
        assert!(matches!(
            quadrature_moments(&two_gon(), 8),
            Err(MomentsError::BadParameter(_))
        ));
    }

    #[test]
    fn quadrature_matches_closed_form_on_irregular_polygon() {
        let t = poly(&[(0.0, 0.0), (3.0, 0.2), (3.4, 1.9), (1.2, 3.1), (-0.8, 1.4)]);
        let closed = moment_summary(&t);
        let quad = quadrature_moments(&t, 1024).unwrap();
        assert!((closed.kappa - quad.kappa).abs() < 1e-8 * closed.kappa);
    }

    #[test]
    fn monte_carlo_consistent_and_deterministic() {
        let t = two_gon();
        let mc = monte_carlo_moments(&t, 1_000_000, 42).unwrap();
        assert!((mc.summary.mean - 2.0 / PI).abs() < 4.0 * mc.mean_se);
        let again = monte_carlo_moments(&t, 1_000_000, 42).unwrap();
        assert_eq!(mc, again); // bit-identical for a fixed seed

        let tri = monte_carlo_moments(&unit_triangle(), 1_000_000, 7).unwrap();
        assert!((tri.summary.delta - 0.04196).abs() < 4.0 * tri.delta_se + 1e-5);

        assert!(matches!(
            monte_carlo_moments(&t, 10, 0),
            Err(MomentsError::BadParameter(_))
        ));
    }

    #[test]
    fn closure_identity_cosine_sum_vanishes() {
        // sum_{j,k} |e_j||e_k| cos(theta_j - theta_k) = |sum_j e_j|^2 = 0.
        let t = poly(&[(0.0, 0.0), (2.7, 0.3), (3.0, 2.0), (0.5, 2.4)]);
        let polar: Vec<(f64, f64)> = t
            .edges()
            .iter()
            .map(|e| (e.magnitude(), e.argument().radians()))
            .collect();
        let sum: f64 = polar
            .iter()
            .flat_map(|&(rj, tj)| polar.iter().map(move |&(rk, tk)| rj * rk * (tj - tk).cos()))
            .sum();
        let p = t.perimeter();
        assert!(sum.abs() < 1e-9 * p * p);
    }

    #[test]
    fn delta_similarity_invariant() {
        let t = poly(&[(0.0, 0.0), (2.0, 0.1), (1.4, 1.6)]);
        let d = moment_summary(&t).delta;
        let s = t
            .transform(0.37, Angle::new(1.234), PlanarVector::new(10.0, -3.0))
            .unwrap();
        assert!((moment_summary(&s).delta - d).abs() < 1e-12 * d.max(1.0));
    }

    #[test]
    fn bad_polygon_is_rejected_before_moments() {
        let r = ConvexPolygon::new(vec![PlanarVector::new(0.0, 0.0)]);
        assert!(matches!(r, Err(GeometryError::DegenerateInput)));
    }
}
