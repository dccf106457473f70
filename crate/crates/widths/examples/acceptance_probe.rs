use std::time::Instant;
use widths::experiments::{minimize_delta, SearchConfig};
use widths::moments::{moment_summary, nu};
use widths::reinhardt::{canonical_classes, enumerate_p, realize};

fn main() {
    let t0 = Instant::now();
    for n in 2..=17u32 {
        let start = Instant::now();
        let members = enumerate_p(n).unwrap();
        let classes = canonical_classes(n).unwrap();
        println!(
            "n={n:2}: |P|={:5} classes={:3} ({:?})",
            members.len(),
            classes.len(),
            start.elapsed()
        );
    }
    println!("total enumeration: {:?}", t0.elapsed());

    for n in [3u32, 5, 6, 7, 9, 10, 12, 15] {
        let target = nu(n).unwrap();
        let worst = canonical_classes(n)
            .unwrap()
            .iter()
            .map(|v| (moment_summary(&realize(v, 1.0).unwrap()).delta - target).abs())
            .fold(0.0_f64, f64::max);
        println!("n={n:2}: worst |delta - nu| = {worst:.3e}");
    }

    let t1 = Instant::now();
    let result = minimize_delta(&SearchConfig {
        n: 4,
        iterations: 20_000,
        restarts: 20,
        seed: 7,
        simplex_scale: 0.25,
    })
    .unwrap();
    println!(
        "kite search: delta {:.12} (target 0.035306425305, diff {:+.2e}) in {:?}, {} evals, restart {}",
        result.delta,
        result.delta - 0.035306425305,
        t1.elapsed(),
        result.evaluations,
        result.best_restart
    );
    for v in result.polygon.vertices() {
        println!("  vertex ({:+.11}, {:+.11})", v.re, v.im);
    }
}
