//! Cross-module invariants: width transport through asymmetrization,
//! moment transport, oracle agreement, dihedral/cyclic cross-enumeration,
//! and the deviation-rate bounds on random polygons.

use proptest::prelude::*;
use std::collections::BTreeSet;
use std::f64::consts::PI;
use widths::experiments::{max_deviation_rate, random_convex_polygon};
use widths::geometry::{Angle, ConvexPolygon, PlanarVector, TAU};
use widths::moments::{moment_summary, nu, quadrature_moments};
use widths::reinhardt::{
    enumerate_p, realize, reinhardt_criterion, to_cyclic_vector, CyclicVector,
};
use widths::symmetry::{asymmetrize, bundle_width, diagonal_width, symmetrize, PreEdgeBundle};

fn sample_angles(count: usize) -> impl Iterator<Item = Angle> {
    (0..count).map(move |k| Angle::new(TAU * k as f64 / count as f64 + 0.000391))
}

#[test]
fn realization_identity_on_random_polygons() {
    for seed in 0..100u64 {
        let n = 3 + (seed % 9) as u32;
        let t = random_convex_polygon(n, seed).unwrap();
        let b = asymmetrize(&t);
        for omega in sample_angles(100) {
            let lhs = t.shadow_width(omega);
            let rhs = bundle_width(&b, omega);
            assert!((lhs - rhs).abs() < 1e-12, "seed {seed}, omega {omega:?}");
        }
    }
}

#[test]
fn moment_transport_and_round_trip() {
    for seed in 0..60u64 {
        let n = 3 + (seed % 8) as u32;
        let t = random_convex_polygon(n, 500 + seed).unwrap();
        let b = asymmetrize(&t);
        let u = symmetrize(&b);
        let mt = moment_summary(&t);
        let mu = moment_summary(&u);
        assert!((mt.delta - mu.delta).abs() < 1e-12 * mt.delta.max(1.0));
        assert!((mt.kappa - mu.kappa).abs() < 1e-12 * mt.kappa);
        assert!(u.is_centrally_symmetric(1e-12));
        assert!(asymmetrize(&u).approx_eq(&b, 1e-9, 1e-9));
    }
}

#[test]
fn diagonal_representation_agrees_on_symmetrizations() {
    for seed in 0..40u64 {
        let n = 3 + (seed % 7) as u32;
        let t = random_convex_polygon(n, 900 + seed).unwrap();
        let u = symmetrize(&asymmetrize(&t));
        for omega in sample_angles(64) {
            let d = diagonal_width(&u, omega).unwrap();
            assert!((d - u.shadow_width(omega)).abs() < 1e-11, "seed {seed}");
        }
    }
}

#[test]
fn closed_form_matches_quadrature_on_random_polygons() {
    for seed in 0..25u64 {
        let n = 3 + (seed % 10) as u32;
        let t = random_convex_polygon(n, 1300 + seed).unwrap();
        let closed = moment_summary(&t);
        let quad = quadrature_moments(&t, 1024).unwrap();
        assert!((closed.mean - quad.mean).abs() < 1e-8 * closed.mean);
        assert!(
            (closed.second_moment - quad.second_moment).abs() < 1e-8 * closed.second_moment
        );
    }
}

#[test]
fn deviation_rate_bounds_on_random_polygons() {
    let bound = max_deviation_rate();
    for seed in 0..1000u64 {
        let n = 3 + (seed % 10) as u32;
        let t = random_convex_polygon(n, 2200 + seed).unwrap();
        let delta = moment_summary(&t).delta;
        assert!(delta < bound, "seed {seed}: delta {delta} reached the 2-gon bound");
        assert!(
            delta >= nu(n).unwrap() - 1e-12,
            "seed {seed}: delta {delta} below nu({n})"
        );
    }
}

#[test]
fn reinhardt_width_profile_is_periodic() {
    // A realized minimizer has a pi/n-periodic width oscillating between
    // W and W cos(pi/2n). The profile has a corner at each minimum, so the
    // extrema are located by refining around the best grid sample.
    fn refine(t: &ConvexPolygon, center: f64, halfwidth: f64, take_max: bool) -> f64 {
        let mut best_arg = center;
        let mut best = t.shadow_width(Angle::new(center));
        let mut h = halfwidth;
        for _ in 0..20 {
            for k in -8i32..=8 {
                let omega = best_arg + h * k as f64 / 8.0;
                let w = t.shadow_width(Angle::new(omega));
                if (take_max && w > best) || (!take_max && w < best) {
                    best = w;
                    best_arg = omega;
                }
            }
            h /= 8.0;
        }
        best
    }

    for n in [3u32, 5, 6, 7, 9, 12] {
        let v = enumerate_p(n).unwrap().into_iter().next().unwrap();
        let t = realize(&v, 1.0).unwrap();
        let period = PI / n as f64;
        let mut arg_max = (0.0, 0.0_f64);
        let mut arg_min = (0.0, f64::MAX);
        for omega in sample_angles(720) {
            let w = t.shadow_width(omega);
            let w_shift = t.shadow_width(Angle::new(omega.radians() + period));
            assert!((w - w_shift).abs() < 1e-10, "n = {n}");
            if w > arg_max.1 {
                arg_max = (omega.radians(), w);
            }
            if w < arg_min.1 {
                arg_min = (omega.radians(), w);
            }
        }
        let step = TAU / 720.0;
        let w_max = refine(&t, arg_max.0, step, true);
        let w_min = refine(&t, arg_min.0, step, false);
        let ratio = w_min / w_max;
        let expected = (PI / (2.0 * n as f64)).cos();
        assert!(
            (ratio - expected).abs() < 1e-6,
            "n = {n}: oscillation ratio {ratio} vs cos(pi/2n) {expected}"
        );
    }
}

#[test]
fn realized_bundles_are_regular() {
    for n in [3u32, 5, 6, 9, 12] {
        for v in enumerate_p(n).unwrap() {
            let t = realize(&v, 1.0).unwrap();
            let b = asymmetrize(&t);
            let regular = PreEdgeBundle::regular(n as usize, 1.0, Angle::new(0.0)).unwrap();
            assert!(
                b.approx_eq(&regular, 1e-9, 1e-9),
                "n = {n}, signs {:?}",
                v.signs()
            );
        }
    }
}

/// Every composition of n with an odd number of parts that passes the
/// cyclotomic criterion must arise as the run vector of some P(n) member,
/// and conversely.
#[test]
fn cyclic_vectors_cross_enumeration() {
    fn compositions(n: u32) -> Vec<Vec<u32>> {
        if n == 0 {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        for first in 1..=n {
            for mut rest in compositions(n - first) {
                rest.insert(0, first);
                out.push(rest);
            }
        }
        out
    }

    for n in 2..=16u32 {
        let accepted: BTreeSet<Vec<u32>> = compositions(n)
            .into_iter()
            .filter(|c| c.len() % 2 == 1)
            .map(|c| CyclicVector::new(c).unwrap())
            .filter(reinhardt_criterion)
            .map(|c| c.runs().to_vec())
            .collect();
        let realized: BTreeSet<Vec<u32>> = enumerate_p(n)
            .unwrap()
            .iter()
            .map(|v| to_cyclic_vector(v).unwrap().runs().to_vec())
            .collect();
        assert_eq!(accepted, realized, "n = {n}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn shadow_width_similarity_invariance(
        seed in 0u64..5000,
        scale in 0.05f64..20.0,
        rotation in -PI..PI,
        shift_x in -50.0f64..50.0,
        shift_y in -50.0f64..50.0,
        omega in 0.0..TAU,
    ) {
        let n = 3 + (seed % 6) as u32;
        let t = random_convex_polygon(n, seed).unwrap();
        let phi = Angle::new(rotation);
        let s = t
            .transform(scale, phi, PlanarVector::new(shift_x, shift_y))
            .unwrap();
        let w = t.shadow_width(Angle::new(omega));
        let w_s = s.shadow_width(Angle::new(omega + rotation));
        prop_assert!((w_s - scale * w).abs() < 1e-9 * scale * w.max(1.0));
    }

    #[test]
    fn polygon_serialization_round_trips(seed in 0u64..5000) {
        let n = 3 + (seed % 9) as u32;
        let t = random_convex_polygon(n, seed).unwrap();
        let json = ConvexPolygon::from_json_str(&t.to_json_string()).unwrap();
        prop_assert_eq!(&json, &t);
        let csv = ConvexPolygon::from_csv_str(&t.to_csv_string()).unwrap();
        prop_assert_eq!(&csv, &t);
    }

    #[test]
    fn delta_never_exceeds_2gon_bound(seed in 0u64..20000) {
        let n = 3 + (seed % 10) as u32;
        let t = random_convex_polygon(n, seed).unwrap();
        let summary = moment_summary(&t);
        prop_assert!(summary.second_moment >= summary.mean * summary.mean - 1e-12);
        prop_assert!(summary.delta <= max_deviation_rate() + 1e-12);
    }
}
