use std::collections::BTreeSet;
use std::fs;
use std::io::{self, Read, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use honeycomb::constructions::{
    counterexample_instance, dual_grid_honeycomb, three_vertex_honeycomb, fractional_vertex_instance, hexagon_instance,
    hexagon_tiles,
};
use honeycomb::deformation::{deform, Direction, StopKind};
use honeycomb::duality::{grid_to_honeycomb, honeycomb_to_grid};
use honeycomb::extremality::{is_vertex, vertex_check};
use honeycomb::integralizer::{integralize, TraceStep};
use honeycomb::io as formats;
use honeycomb::lattice::{integer_edge_sets, is_concave, random_concave, tiling_of};
use honeycomb::legal_path::find_legal_path;
use honeycomb::rational::{self, frac, int};
use honeycomb::{Axis, ConvexGrid, Error, GridEdge, GridPoint};

#[derive(Parser)]
#[command(name = "honeycomb", version, about = "Concave cocirculations, honeycombs and integer rounding")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a grid, and optionally a cocirculation or honeycomb.
    Validate {
        #[arg(long)]
        grid: Option<String>,
        #[arg(long = "in")]
        input: Option<String>,
        /// What `--in` holds.
        #[arg(long, value_enum, default_value_t = InKind::Cocirc)]
        kind: InKind,
    },
    /// Convert between (grid, cocirculation) and honeycomb.
    Dualize {
        #[arg(long, value_enum)]
        to: Target,
        #[arg(long = "in")]
        input: String,
        /// Grid input for `--to honeycomb`, grid output for `--to grid`.
        #[arg(long)]
        grid: String,
        #[arg(long, default_value = "-")]
        out: String,
    },
    /// Round a concave cocirculation to an integer one.
    Integralize {
        #[arg(long = "in")]
        input: String,
        #[arg(long)]
        grid: String,
        #[arg(long, default_value = "-")]
        out: String,
        #[arg(long)]
        trace: Option<String>,
    },
    /// Print the legal path the rounding would deform next.
    LegalPath {
        #[arg(long = "in")]
        input: String,
    },
    /// One deformation step on a honeycomb.
    Deform {
        #[arg(long = "in")]
        input: String,
        #[arg(long, value_enum, default_value_t = Dir::Right)]
        direction: Dir,
        #[arg(long, default_value = "-")]
        out: String,
        #[arg(long)]
        trace: Option<String>,
    },
    /// Is the cocirculation a vertex of the polytope fixed on `--fixed`?
    VertexCheck {
        #[arg(long = "in")]
        input: String,
        #[arg(long)]
        grid: String,
        #[arg(long)]
        fixed: String,
    },
    /// Write one of the built-in instances.
    Gen {
        #[arg(long, value_enum)]
        kind: GenKind,
        #[arg(long, default_value_t = 3)]
        k: i64,
        #[arg(long, default_value_t = 3)]
        n: i64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Cocirculation (or honeycomb for `dualgrid`) output.
        #[arg(long, default_value = "-")]
        out: String,
        #[arg(long)]
        grid: Option<String>,
        /// Edge set output for `fractional-vertex`.
        #[arg(long)]
        fixed: Option<String>,
    },
    /// Run the built-in fixtures and print a pass/fail table.
    Selftest,
}

#[derive(Copy, Clone, ValueEnum)]
enum InKind {
    Cocirc,
    Honeycomb,
}

#[derive(Copy, Clone, ValueEnum)]
enum Target {
    Honeycomb,
    Grid,
}

#[derive(Copy, Clone, ValueEnum)]
enum Dir {
    Right,
    Left,
}

#[derive(Copy, Clone, ValueEnum)]
enum GenKind {
    Dualgrid,
    Hexagon,
    FractionalVertex,
    Counterexample,
    /// Random concave cocirculation on the 3-side grid of size `n`.
    Random,
}

/// Failure of a subcommand, carrying its exit code.
struct Failure {
    code: u8,
    kind: &'static str,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure { code: if e.is_input_error() { 3 } else { 2 }, kind: e.kind(), message: e.to_string() }
    }
}

fn io_failure(path: &str, e: io::Error) -> Failure {
    Failure { code: 3, kind: "Io", message: format!("{path}: {e}") }
}

type Outcome = Result<(), Failure>;

fn read(path: &str) -> Result<String, Failure> {
    if path == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(|e| io_failure(path, e))?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| io_failure(path, e))
    }
}

fn write(path: &str, contents: &str) -> Outcome {
    let mut text = contents.to_string();
    if !text.ends_with('\n') {
        text.push('\n');
    }
    if path == "-" {
        io::stdout().write_all(text.as_bytes()).map_err(|e| io_failure(path, e))
    } else {
        fs::write(path, text).map_err(|e| io_failure(path, e))
    }
}

fn trace_lines(steps: &[TraceStep]) -> String {
    steps.iter().map(|s| serde_json::to_string(s).expect("trace serializes") + "\n").collect()
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(64),
            };
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("{}", json!({ "error": f.kind, "message": f.message }));
            ExitCode::from(f.code)
        }
    }
}

fn run(cmd: Command) -> Outcome {
    match cmd {
        Command::Validate { grid, input, kind } => validate(grid.as_deref(), input.as_deref(), kind),
        Command::Dualize { to, input, grid, out } => match to {
            Target::Honeycomb => {
                let g = formats::parse_grid(&read(&grid)?)?;
                let h = formats::parse_cocirculation(&read(&input)?)?;
                write(&out, &formats::honeycomb_json(&grid_to_honeycomb(&g, &h)?))
            }
            Target::Grid => {
                let hc = formats::parse_honeycomb(&read(&input)?)?;
                let (g, h) = honeycomb_to_grid(&hc)?;
                write(&grid, &formats::grid_json(&g))?;
                write(&out, &formats::cocirculation_json(&h))
            }
        },
        Command::Integralize { input, grid, out, trace } => {
            let g = formats::parse_grid(&read(&grid)?)?;
            let h = formats::parse_cocirculation(&read(&input)?)?;
            let r = integralize(&g, &h)?;
            if let Some(t) = trace {
                write(&t, &trace_lines(&r.trace))?;
            }
            write(&out, &formats::cocirculation_json(&r.cocirculation))
        }
        Command::LegalPath { input } => {
            let hc = formats::parse_honeycomb(&read(&input)?)?;
            let p = find_legal_path(&hc)?;
            let v = json!({ "cycle": p.is_cycle, "edges": p.edges, "vertices": p.vertices });
            write("-", &v.to_string())
        }
        Command::Deform { input, direction, out, trace } => {
            let hc = formats::parse_honeycomb(&read(&input)?)?;
            let path = find_legal_path(&hc)?;
            let dir = match direction {
                Dir::Right => Direction::Right,
                Dir::Left => Direction::Left,
            };
            let d = deform(&hc, &path, dir)?;
            if let Some(t) = trace {
                let step = TraceStep {
                    iteration: 1,
                    epsilon: d.stop.epsilon.clone(),
                    events: d.stop.kinds.iter().map(|k| StopKind::code(*k).to_string()).collect(),
                    cycle: path.is_cycle,
                    path_edges: path.len(),
                    direction: match direction {
                        Dir::Right => "right".into(),
                        Dir::Left => "left".into(),
                    },
                    before: d.before,
                    after: d.after,
                };
                write(&t, &trace_lines(&[step]))?;
            }
            write(&out, &formats::honeycomb_json(&d.honeycomb))
        }
        Command::VertexCheck { input, grid, fixed } => {
            let g = formats::parse_grid(&read(&grid)?)?;
            let h = formats::parse_cocirculation(&read(&input)?)?;
            let f = formats::parse_edges(&read(&fixed)?)?;
            let c = vertex_check(&g, &h, &f)?;
            write("-", &json!({ "vertex": c.is_vertex, "degrees_of_freedom": c.degrees_of_freedom }).to_string())
        }
        Command::Gen { kind, k, n, seed, out, grid, fixed } => generate(kind, k, n, seed, &out, grid, fixed),
        Command::Selftest => selftest(),
    }
}

fn validate(grid: Option<&str>, input: Option<&str>, kind: InKind) -> Outcome {
    let mut report = serde_json::Map::new();
    match (kind, input) {
        (InKind::Honeycomb, Some(path)) => {
            let hc = formats::parse_honeycomb(&read(path)?)?;
            report.insert("vertices".into(), hc.vertices().len().into());
            report.insert("edges".into(), hc.edges().len().into());
            report.insert("integral".into(), hc.is_integral().into());
        }
        (InKind::Cocirc, _) => {
            let path = grid.ok_or(Failure { code: 64, kind: "Usage", message: "--grid is required".into() })?;
            let g = formats::parse_grid(&read(path)?)?;
            report.insert("triangles".into(), g.num_triangles().into());
            report.insert("sides".into(), g.sides().len().into());
            if let Some(path) = input {
                let h = formats::parse_cocirculation(&read(path)?)?;
                h.check_on(&g)?;
                report.insert("concave".into(), is_concave(&g, &h)?.into());
                report.insert("integral".into(), h.is_integral().into());
            }
        }
        (InKind::Honeycomb, None) => {
            return Err(Failure { code: 64, kind: "Usage", message: "--in is required for a honeycomb".into() })
        }
    }
    report.insert("valid".into(), true.into());
    write("-", &serde_json::Value::Object(report).to_string())
}

fn generate(kind: GenKind, k: i64, n: i64, seed: u64, out: &str, grid: Option<String>, fixed: Option<String>) -> Outcome {
    let emit = |g: &ConvexGrid, h| -> Outcome {
        if let Some(p) = &grid {
            write(p, &formats::grid_json(g))?;
        }
        write(out, &formats::cocirculation_json(h))
    };
    match kind {
        GenKind::Dualgrid => write(out, &formats::honeycomb_json(&dual_grid_honeycomb(n)?)),
        GenKind::Hexagon => {
            let (g, h) = hexagon_instance(k)?;
            emit(&g, &h)
        }
        GenKind::Counterexample => {
            let (g, h) = counterexample_instance()?;
            emit(&g, &h)
        }
        GenKind::FractionalVertex => {
            let (g, h, f) = fractional_vertex_instance(k)?;
            if let Some(p) = &fixed {
                write(p, &formats::edges_json(&f))?;
            }
            emit(&g, &h)
        }
        GenKind::Random => {
            let g = ConvexGrid::three_side(n)?;
            emit(&g, &random_concave(&g, seed, 6))
        }
    }
}

type Check = (&'static str, fn() -> Result<bool, Error>);

fn selftest() -> Outcome {
    let checks: [Check; 5] = [
        ("three-vertex honeycomb: 3 vertices, 10 edges, 7 rays, round trip", || {
            let hc = three_vertex_honeycomb()?;
            let (g, h) = honeycomb_to_grid(&hc)?;
            Ok(hc.vertices().len() == 3
                && hc.edges().len() == 10
                && hc.boundary_edges().len() == 7
                && grid_to_honeycomb(&g, &h)? == hc)
        }),
        ("hexagon k=3: stripe values and 17 tiles", || {
            let (g, h) = hexagon_instance(3)?;
            let e = |a, b, ax| GridEdge::new(GridPoint::new(a, b), ax);
            let stripes = (1..=3).all(|a| h.value(e(a, 0, Axis::One)) == &frac(-1, 3))
                && (0..3).all(|i| {
                    h.value(e(1, -i - 1, Axis::Two)) == &(int(i) + frac(1, 3))
                        && h.value(e(i + 2, i + 1, Axis::Three)) == &(int(i) + frac(1, 3))
                });
            Ok(stripes && tiling_of(&g, &h)?.tiles() == hexagon_tiles(3)?.tiles())
        }),
        ("hexagon k=3: vertex for the boundary", || {
            let (g, h) = hexagon_instance(3)?;
            is_vertex(&g, &h, &g.boundary_edges().collect())
        }),
        ("counterexample: rigid, rounding must move an integral value", || {
            let (g, h) = counterexample_instance()?;
            let integral: BTreeSet<GridEdge> = g.edges().filter(|e| rational::is_integral(h.value(*e))).collect();
            let r = integralize(&g, &h)?;
            let (o, i) = integer_edge_sets(&g, &h);
            Ok(is_concave(&g, &h)?
                && is_vertex(&g, &h, &integral)?
                && o.iter().chain(&i).all(|e| r.cocirculation.value(*e) == h.value(*e))
                && integral.iter().any(|e| r.cocirculation.value(*e) != h.value(*e)))
        }),
        ("fractional vertex k=3: denominator 3, vertex for two sides", || {
            let (g, h, f) = fractional_vertex_instance(3)?;
            Ok(honeycomb::constructions::has_denominator(&h, 3)
                && g.boundary_edges().all(|e| rational::is_integral(h.value(e)))
                && is_vertex(&g, &h, &f)?)
        }),
    ];
    let mut failed = 0;
    for (name, check) in checks {
        let status = match check() {
            Ok(true) => "PASS".to_string(),
            Ok(false) => "FAIL".to_string(),
            Err(e) => format!("FAIL ({e})"),
        };
        if status != "PASS" {
            failed += 1;
        }
        println!("{status:<6} {name}");
    }
    if failed == 0 {
        Ok(())
    } else {
        Err(Failure { code: 2, kind: "SelftestFailed", message: format!("{failed} check(s) failed") })
    }
}
