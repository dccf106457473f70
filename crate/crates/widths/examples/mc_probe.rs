use std::time::Instant;
use widths::experiments::random_convex_polygon;
use widths::moments::{moment_summary, monte_carlo_moments, quadrature_moments};

fn main() {
    let t0 = Instant::now();
    let mut worst_quad = 0.0_f64;
    let mut worst_z_mean = 0.0_f64;
    let mut worst_z_second = 0.0_f64;
    for i in 0..100u64 {
        let n = 3 + (i % 10) as u32;
        let polygon = random_convex_polygon(n, 1000 + i).unwrap();
        let closed = moment_summary(&polygon);
        let quad = quadrature_moments(&polygon, 1024).unwrap();
        worst_quad = worst_quad
            .max(((closed.mean - quad.mean) / closed.mean).abs())
            .max(((closed.second_moment - quad.second_moment) / closed.second_moment).abs());
        let mc = monte_carlo_moments(&polygon, 1_000_000, 5000 + i).unwrap();
        worst_z_mean = worst_z_mean.max(((mc.summary.mean - closed.mean) / mc.mean_se).abs());
        worst_z_second = worst_z_second
            .max(((mc.summary.second_moment - closed.second_moment) / mc.second_moment_se).abs());
    }
    println!(
        "100 polygons in {:?}: worst quad rel {:.2e}, worst |z| mean {:.2}, second {:.2}",
        t0.elapsed(),
        worst_quad,
        worst_z_mean,
        worst_z_second
    );
}
