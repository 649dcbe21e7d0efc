//! The `dchordal` command line tool.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use serde_json::json;

use crate::coloring::{three_color, three_color_checked, three_color_components, ThreeColoring};
use crate::error::Error;
use crate::generators::{generate, reduce_3col_to_4col, Family, GenSpec};
use crate::graph::Graph;
use crate::io::{parse_dimacs, write_dimacs, write_result, RunResult, Verdict};
use crate::properties::{check_property, Property};
use crate::recognition::find_mno;

#[derive(Debug, Parser)]
#[command(name = "dchordal", version, about = "3-colouring and recognition of dually chordal graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decide dual chordality and print a maximum neighbourhood ordering.
    Recognize { file: PathBuf },
    /// 3-colour a graph whose blocks are locally connected.
    Color {
        file: PathBuf,
        /// Skip the block and local connectivity scan.
        #[arg(long)]
        unchecked: bool,
        /// Colour each connected component separately.
        #[arg(long)]
        per_component: bool,
    },
    /// Check a structural property against the brute-force oracles.
    Check {
        file: PathBuf,
        #[arg(long, value_enum)]
        property: Property,
    },
    /// Write a random graph in DIMACS format.
    Gen {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0.5)]
        density: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short = 'o', long = "output")]
        output: PathBuf,
    },
    /// Add a universal vertex: 3-colourable in, 4-colourable out.
    Reduce {
        file: PathBuf,
        #[arg(short = 'o', long = "output")]
        output: PathBuf,
    },
    /// Time the unchecked 3-colouring on generated graphs; prints CSV.
    Bench {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Extra chord probability. The default keeps every instance
        /// 3-colourable, so each run colours the whole graph.
        #[arg(long, default_value_t = 0.0)]
        density: f64,
        /// Runs per size; the median is reported.
        #[arg(long, default_value_t = 5)]
        reps: usize,
    },
}

/// A failure that ends the run with exit code 2.
struct Failure(String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(e.to_string())
    }
}

fn read_graph(path: &Path) -> Result<Graph, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure(format!("{}: {e}", path.display())))?;
    parse_dimacs(&text).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn millis(start: Instant) -> f64 {
    start.elapsed().as_secs_f64() * 1e3
}

fn median(xs: &mut [f64]) -> f64 {
    xs.sort_by(f64::total_cmp);
    let k = xs.len();
    if k % 2 == 1 {
        xs[k / 2]
    } else {
        (xs[k / 2 - 1] + xs[k / 2]) / 2.0
    }
}

/// Runs one command; the output is either a JSON result object or CSV.
fn execute(cmd: Command) -> Result<(RunResult, Option<String>), Failure> {
    match cmd {
        Command::Recognize { file } => {
            let g = read_graph(&file)?;
            let input = file.display().to_string();
            let start = Instant::now();
            let mno = match find_mno(&g) {
                Err(Error::Disconnected) => {
                    let mut r = RunResult::new("recognize", &input, Verdict::NotDuallyChordal);
                    r.report = Some(json!({"reason": "graph is not connected"}));
                    return Ok((r, None));
                }
                other => other?,
            };
            let elapsed = millis(start);
            let mut r = match mno {
                Some(mno) => {
                    let mut r = RunResult::new("recognize", &input, Verdict::DuallyChordal);
                    let order: Vec<usize> = mno.order.iter().map(|v| v + 1).collect();
                    let witness: Vec<usize> = mno.witness.iter().map(|v| v + 1).collect();
                    r.report = Some(json!({"order": order, "max_neighbour": witness}));
                    r
                }
                None => {
                    let mut r = RunResult::new("recognize", &input, Verdict::NotDuallyChordal);
                    r.report = Some(json!({"reason": "no maximum neighbourhood ordering"}));
                    r
                }
            };
            r.timing_ms = elapsed;
            Ok((r, None))
        }
        Command::Color {
            file,
            unchecked,
            per_component,
        } => {
            let g = read_graph(&file)?;
            let input = file.display().to_string();
            let start = Instant::now();
            let out = if per_component {
                three_color_components(&g, !unchecked)
            } else if unchecked {
                three_color(&g)
            } else {
                three_color_checked(&g)
            };
            let elapsed = millis(start);
            let mut r = match out {
                Ok(ThreeColoring::Colored(c)) => RunResult::new("color", &input, Verdict::Colorable).with_coloring(&c),
                Ok(ThreeColoring::NotThreeColorable { stuck }) => {
                    let mut r = RunResult::new("color", &input, Verdict::Not3Colorable);
                    r.report = Some(json!({"stuck_at": stuck + 1}));
                    r
                }
                Ok(ThreeColoring::NotApplicable { vertex }) => {
                    let mut r = RunResult::new("color", &input, Verdict::NotApplicable);
                    r.report = Some(json!({"reason": "block not locally connected", "vertex": vertex + 1}));
                    r
                }
                Err(e @ Error::Disconnected) => {
                    let mut r = RunResult::new("color", &input, Verdict::NotApplicable);
                    r.report = Some(json!({"reason": format!("{e}; use --per-component")}));
                    r
                }
                Err(e) => return Err(e.into()),
            };
            r.timing_ms = elapsed;
            Ok((r, None))
        }
        Command::Check { file, property } => {
            let g = read_graph(&file)?;
            let start = Instant::now();
            let report = check_property(&g, property)?;
            let verdict = if report.holds {
                Verdict::PropertyHolds
            } else {
                Verdict::PropertyFails
            };
            let mut r = RunResult::new("check", &file.display().to_string(), verdict);
            r.timing_ms = millis(start);
            r.report = Some(serde_json::to_value(&report).expect("plain data"));
            Ok((r, None))
        }
        Command::Gen {
            family,
            n,
            density,
            seed,
            output,
        } => {
            let spec = GenSpec::new(family, n, density, seed);
            let start = Instant::now();
            let g = generate(&spec)?;
            let elapsed = millis(start);
            write_file(&output, &write_dimacs(&g))?;
            let input = format!("{} n={n} density={density}", family.name());
            let mut r = RunResult::new("gen", &input, Verdict::Written);
            r.timing_ms = elapsed;
            r.seed = Some(seed);
            r.report = Some(json!({"output": output.display().to_string(), "n": g.n(), "m": g.m()}));
            Ok((r, None))
        }
        Command::Reduce { file, output } => {
            let g = read_graph(&file)?;
            let start = Instant::now();
            let h = reduce_3col_to_4col(&g);
            let elapsed = millis(start);
            write_file(&output, &write_dimacs(&h))?;
            let mut r = RunResult::new("reduce", &file.display().to_string(), Verdict::Written);
            r.timing_ms = elapsed;
            r.report = Some(json!({"output": output.display().to_string(), "universal_vertex": h.n()}));
            Ok((r, None))
        }
        Command::Bench {
            family,
            sizes,
            seed,
            density,
            reps,
        } => {
            if reps == 0 {
                return Err(Failure("--reps must be positive".into()));
            }
            let mut csv = String::from("n,m,time_ms\n");
            let mut total = 0.0;
            for &n in &sizes {
                let g = generate(&GenSpec::new(family, n, density, seed))?;
                let connected = g.is_connected();
                let mut times = Vec::with_capacity(reps);
                for _ in 0..reps {
                    let start = Instant::now();
                    let out = if connected {
                        three_color(&g)?
                    } else {
                        three_color_components(&g, false)?
                    };
                    times.push(millis(start));
                    std::hint::black_box(out);
                }
                let t = median(&mut times);
                total += t;
                csv.push_str(&format!("{},{},{:.3}\n", g.n(), g.m(), t));
            }
            let mut r = RunResult::new("bench", family.name(), Verdict::Written);
            r.timing_ms = total;
            r.seed = Some(seed);
            Ok((r, Some(csv)))
        }
    }
}

/// Parses `argv` (program name first), runs the command and returns the
/// process exit code: 0 for a positive verdict, 1 for a negative one, 2 for
/// usage, parse and I/O errors.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    0
                }
                _ => {
                    let _ = write!(err, "{}", e.render());
                    2
                }
            };
        }
    };
    match execute(cli.command) {
        Ok((r, Some(csv))) => {
            let _ = write!(out, "{csv}");
            r.exit_code()
        }
        Ok((r, None)) => {
            let _ = writeln!(out, "{}", write_result(&r));
            r.exit_code()
        }
        Err(Failure(msg)) => {
            let _ = writeln!(err, "dchordal: {msg}");
            2
        }
    }
}
