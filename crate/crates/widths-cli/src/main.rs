//! `widths` — deviation rates of random-direction widths of convex
//! polygons, exact Reinhardt enumeration, truncation trends, and shape
//! search.
//!
//! Exit codes: 0 success, 1 domain error (bad geometry, out-of-range
//! enumeration, unreadable file), 2 usage error.

mod emit;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use std::f64::consts::PI;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use widths::experiments::{minimize_delta, truncation_trend, SearchConfig};
use widths::geometry::{Angle, ConvexPolygon, TAU};
use widths::moments::{moment_summary, nu};
use widths::reinhardt::{canonical_classes, enumerate_p, realize, to_cyclic_vector};

#[derive(Parser)]
#[command(
    name = "widths",
    version,
    about = "Deviation rate of the random-direction width of convex polygons",
    after_help = "The environment variable WIDTHS_NUM_THREADS caps internal parallelism."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct ShapeSource {
    /// Polygon file: JSON {"vertices": [[x, y], ...]} or headerless CSV
    /// with one "x,y" pair per line
    file: Option<PathBuf>,

    /// Use the regular N-gon (N >= 2)
    #[arg(long, value_name = "N")]
    regular: Option<u32>,

    /// Use the INDEX-th Reinhardt class of P(N), unit edge length
    #[arg(long, num_args = 2, value_names = ["N", "INDEX"])]
    reinhardt: Option<Vec<u32>>,
}

#[derive(Subcommand)]
enum Command {
    /// Print the moment summary (mean, second moment, kappa, delta) as JSON
    Delta {
        #[command(flatten)]
        source: ShapeSource,
    },
    /// Enumerate the sign vectors of P(n), their canonical classes, or
    /// their cyclic run vectors
    Enumerate {
        /// Polygon size n (2..=24)
        n: u32,
        /// Deduplicate to canonical classes under the dihedral action
        #[arg(long)]
        canonical: bool,
        /// Emit canonical classes with cyclic run vectors
        #[arg(long)]
        cyclic: bool,
        /// Plain-text lines instead of JSON
        #[arg(long)]
        csv: bool,
    },
    /// Print the table of minimum deviation rates nu(m) as CSV
    NuTable {
        /// Largest m (1..=64)
        #[arg(value_parser = clap::value_parser!(u32).range(1..=64))]
        max_m: u32,
    },
    /// Print the width profile omega -> width as CSV over [0, 2*pi)
    Profile {
        #[command(flatten)]
        source: ShapeSource,
        /// Number of sample angles (>= 8)
        #[arg(long, default_value_t = 360, value_parser = clap::value_parser!(u32).range(8..))]
        samples: u32,
    },
    /// Deviation-rate differences of truncated regular triangles
    Truncate {
        /// Cut slope ratio; 1 keeps the cut parallel to the opposite side
        #[arg(long, default_value_t = 1.0)]
        lambda: f64,
        /// Cut depths: "a,b,c" or "start:stop:count" (each in (0, 0.2])
        #[arg(long, default_value = "0.005:0.05:10")]
        t_grid: String,
        /// CSV "t,delta_diff" instead of JSON
        #[arg(long)]
        csv: bool,
    },
    /// Search for the minimum-deviation n-gon by simplex descent
    Search {
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 20)]
        restarts: u32,
        #[arg(long, default_value_t = 20_000)]
        iterations: u32,
        #[arg(long, default_value_t = 0.25)]
        simplex_scale: f64,
    },
}

fn main() -> ExitCode {
    if let Ok(threads) = std::env::var("WIDTHS_NUM_THREADS") {
        if let Ok(threads) = threads.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new()
                .num_threads(threads.max(1))
                .build_global();
        }
    }
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(payload) => {
            println!("{payload}");
            ExitCode::SUCCESS
        }
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
    }
}

fn run(command: Command) -> Result<String, String> {
    match command {
        Command::Delta { source } => {
            let polygon = load_shape(&source)?;
            Ok(emit::to_json_17(&moment_summary(&polygon)))
        }
        Command::Enumerate {
            n,
            canonical,
            cyclic,
            csv,
        } => enumerate_command(n, canonical || cyclic, csv),
        Command::NuTable { max_m } => {
            let mut out = String::from("m,nu,nu_full\n");
            for m in 1..=max_m {
                let value = nu(m).map_err(|e| e.to_string())?;
                let _ = writeln!(out, "{m},{},{}", emit::trunc5(value), emit::full(value));
            }
            Ok(out.trim_end().to_string())
        }
        Command::Profile { source, samples } => {
            let polygon = load_shape(&source)?;
            let mut out = String::from("omega,width\n");
            for k in 0..samples {
                let omega = TAU * k as f64 / samples as f64;
                let width = polygon.shadow_width(Angle::new(omega));
                let _ = writeln!(out, "{},{}", emit::full(omega), emit::full(width));
            }
            Ok(out.trim_end().to_string())
        }
        Command::Truncate {
            lambda,
            t_grid,
            csv,
        } => {
            let grid = parse_grid(&t_grid)?;
            let rows = truncation_trend(lambda, &grid).map_err(|e| e.to_string())?;
            if csv {
                let mut out = String::from("t,delta_diff\n");
                for (t, diff) in rows {
                    let _ = writeln!(out, "{},{}", emit::full(t), emit::full(diff));
                }
                Ok(out.trim_end().to_string())
            } else {
                #[derive(Serialize)]
                struct Row {
                    t: f64,
                    delta_diff: f64,
                }
                #[derive(Serialize)]
                struct Payload {
                    lambda: f64,
                    rows: Vec<Row>,
                }
                Ok(emit::to_json_17(&Payload {
                    lambda,
                    rows: rows
                        .into_iter()
                        .map(|(t, delta_diff)| Row { t, delta_diff })
                        .collect(),
                }))
            }
        }
        Command::Search {
            n,
            seed,
            restarts,
            iterations,
            simplex_scale,
        } => {
            let config = SearchConfig {
                n,
                iterations,
                restarts,
                seed,
                simplex_scale,
            };
            let result = minimize_delta(&config).map_err(|e| e.to_string())?;
            #[derive(Serialize)]
            struct Payload {
                n: u32,
                seed: u64,
                restarts: u32,
                iterations: u32,
                simplex_scale: f64,
                delta: f64,
                nu: f64,
                vertices: Vec<[f64; 2]>,
                evaluations: u64,
                best_restart: u32,
            }
            Ok(emit::to_json_17(&Payload {
                n,
                seed,
                restarts,
                iterations,
                simplex_scale,
                delta: result.delta,
                nu: nu(n).map_err(|e| e.to_string())?,
                vertices: result
                    .polygon
                    .vertices()
                    .iter()
                    .map(|v| [v.re, v.im])
                    .collect(),
                evaluations: result.evaluations,
                best_restart: result.best_restart,
            }))
        }
    }
}

fn enumerate_command(n: u32, classes: bool, csv: bool) -> Result<String, String> {
    if classes {
        let reps = canonical_classes(n).map_err(|e| e.to_string())?;
        #[derive(Serialize)]
        struct Class {
            cyclic: Vec<u32>,
            sign_vector: Vec<i8>,
            delta: f64,
        }
        let entries: Vec<Class> = reps
            .iter()
            .map(|v| {
                let cyclic = to_cyclic_vector(v).map_err(|e| e.to_string())?;
                let delta = moment_summary(&realize(v, 1.0).map_err(|e| e.to_string())?).delta;
                Ok(Class {
                    cyclic: cyclic.runs().to_vec(),
                    sign_vector: v.signs().to_vec(),
                    delta,
                })
            })
            .collect::<Result<_, String>>()?;
        if csv {
            let mut out = format!("count,{}\n", entries.len());
            for class in &entries {
                let runs: Vec<String> = class.cyclic.iter().map(u32::to_string).collect();
                let _ = writeln!(out, "({})", runs.join(","));
            }
            return Ok(out.trim_end().to_string());
        }
        #[derive(Serialize)]
        struct Payload {
            n: u32,
            count: usize,
            classes: Vec<Class>,
        }
        Ok(emit::to_json_17(&Payload {
            n,
            count: entries.len(),
            classes: entries,
        }))
    } else {
        let members = enumerate_p(n).map_err(|e| e.to_string())?;
        if csv {
            let mut out = format!("count,{}\n", members.len());
            for v in &members {
                let signs: Vec<String> = v.signs().iter().map(i8::to_string).collect();
                let _ = writeln!(out, "{}", signs.join(","));
            }
            return Ok(out.trim_end().to_string());
        }
        #[derive(Serialize)]
        struct Payload {
            n: u32,
            count: usize,
            sign_vectors: Vec<Vec<i8>>,
        }
        Ok(emit::to_json_17(&Payload {
            n,
            count: members.len(),
            sign_vectors: members.iter().map(|v| v.signs().to_vec()).collect(),
        }))
    }
}

fn load_shape(source: &ShapeSource) -> Result<ConvexPolygon, String> {
    if let Some(path) = &source.file {
        return read_polygon(path);
    }
    if let Some(n) = source.regular {
        return ConvexPolygon::regular(n, 1.0, Angle::new(PI / 2.0)).map_err(|e| e.to_string());
    }
    if let Some(spec) = &source.reinhardt {
        let (n, index) = (spec[0], spec[1] as usize);
        let reps = canonical_classes(n).map_err(|e| e.to_string())?;
        let class = reps.get(index).ok_or_else(|| {
            format!(
                "Reinhardt class index {index} out of range: n = {n} has {} classes",
                reps.len()
            )
        })?;
        return realize(class, 1.0).map_err(|e| e.to_string());
    }
    unreachable!("clap enforces exactly one source")
}

fn read_polygon(path: &Path) -> Result<ConvexPolygon, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let looks_like_json = matches!(
        path.extension().and_then(|e| e.to_str()),
        Some("json" | "JSON")
    ) || text.trim_start().starts_with('{');
    if looks_like_json {
        ConvexPolygon::from_json_str(&text).map_err(|e| e.to_string())
    } else {
        ConvexPolygon::from_csv_str(&text).map_err(|e| e.to_string())
    }
}

/// Grid syntax: either explicit "a,b,c" or "start:stop:count" inclusive.
fn parse_grid(spec: &str) -> Result<Vec<f64>, String> {
    let parse = |s: &str| -> Result<f64, String> {
        s.trim()
            .parse::<f64>()
            .map_err(|_| format!("bad grid number `{s}`"))
    };
    if spec.contains(':') {
        let parts: Vec<&str> = spec.split(':').collect();
        if parts.len() != 3 {
            return Err(format!("grid `{spec}` must be start:stop:count"));
        }
        let (start, stop) = (parse(parts[0])?, parse(parts[1])?);
        let count: usize = parts[2]
            .trim()
            .parse()
            .map_err(|_| format!("bad grid count `{}`", parts[2]))?;
        if count < 1 {
            return Err("grid count must be positive".into());
        }
        if count == 1 {
            return Ok(vec![start]);
        }
        let step = (stop - start) / (count - 1) as f64;
        return Ok((0..count).map(|k| start + step * k as f64).collect());
    }
    spec.split(',').map(parse).collect()
}
