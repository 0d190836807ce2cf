use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use robinson::grid::{Patch, Rect};
use robinson::hierarchy::{limit_window, CornerSpec, Hierarchy};
use robinson::render::{render_domains, render_patch, RenderStyle};
use robinson::solver::{Boundary, Region, SearchOptions, Solver};
use robinson::tiles::{Catalog, Diagonal};
use robinson::verify::{blue_growth, period_scan, Verifier};

const UNSAT: u8 = 2;
const FAILED: u8 = 3;

/// Robinson tiles: build corners, query the limit tiling, search and verify.
#[derive(Parser)]
#[command(name = "robinson", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the order-n bumpy corner with the given orientation.
    Corner {
        #[arg(long)]
        order: u32,
        #[arg(long, value_parser = parse_diagonal)]
        orient: Diagonal,
        #[command(flatten)]
        out: PatchOut,
    },
    /// Cut a window out of the limit tiling.
    Limit {
        #[arg(long, allow_hyphen_values = true)]
        x0: i64,
        #[arg(long, allow_hyphen_values = true)]
        y0: i64,
        #[arg(long)]
        width: usize,
        #[arg(long)]
        height: usize,
        #[command(flatten)]
        out: PatchOut,
    },
    /// Exhaustive search over a rectangle anchored at (0, 0).
    Solve(SolveArgs),
    /// Run a verification check and emit a report.
    Verify {
        #[command(subcommand)]
        check: Check,
        /// Write the report here instead of standard output.
        #[arg(long, global = true)]
        out: Option<PathBuf>,
        /// Search threads: 1 is sequential, 0 uses every core.
        #[arg(long, global = true, default_value_t = 1)]
        threads: usize,
    },
    /// Render a patch file as SVG.
    Render {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Cell size in pixels.
        #[arg(long, default_value_t = 40.0)]
        cell: f64,
        /// Draw the propagated candidate sets instead of the raw patch.
        #[arg(long)]
        propagate: bool,
        /// Wrap around when propagating.
        #[arg(long)]
        torus: bool,
        #[arg(long)]
        no_arrows: bool,
        #[arg(long)]
        no_blue: bool,
    },
}

#[derive(Args)]
struct PatchOut {
    /// Write the patch here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write an SVG rendering.
    #[arg(long)]
    svg: Option<PathBuf>,
}

#[derive(Args)]
#[command(group(clap::ArgGroup::new("mode").required(true).args(["count", "first", "enumerate"])))]
struct SolveArgs {
    #[arg(long)]
    width: usize,
    #[arg(long)]
    height: usize,
    #[arg(long)]
    torus: bool,
    /// Patch file with pre-assigned cells.
    #[arg(long)]
    fixed: Option<PathBuf>,
    #[arg(long)]
    count: bool,
    #[arg(long)]
    first: bool,
    #[arg(long)]
    enumerate: bool,
    /// Keep only the first N solutions in canonical order.
    #[arg(long)]
    cap: Option<usize>,
    /// Directory for solution files; standard output otherwise.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value_t = 1)]
    threads: usize,
}

#[derive(Subcommand)]
enum Check {
    /// Count completions of the order-n gap region for each orientation.
    UniqueFill {
        #[arg(long)]
        order: u32,
    },
    /// Enumerate the order-(n+1) window around a fixed order-n corner.
    Forcing {
        #[arg(long)]
        order: u32,
        /// Also evaluate the step-by-step claims.
        #[arg(long)]
        steps: bool,
    },
    /// Count k x k torus tilings for k up to kmax.
    Torus {
        #[arg(long)]
        kmax: usize,
    },
    /// Look for a non-invariance witness for every small translation.
    Aperiodic {
        #[arg(long)]
        maxnorm: u32,
        #[arg(long)]
        window: usize,
    },
    /// Largest blue square per corner order.
    Blue {
        #[arg(long)]
        order: u32,
    },
}

fn parse_diagonal(s: &str) -> Result<Diagonal, String> {
    s.parse()
}

fn write_or_print(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn emit_patch(p: &Patch, out: &PatchOut) -> Result<()> {
    write_or_print(out.out.as_deref(), &p.to_json())?;
    if let Some(svg) = &out.svg {
        let doc = render_patch(p, &RenderStyle::default())?;
        fs::write(svg, doc).with_context(|| format!("writing {}", svg.display()))?;
    }
    Ok(())
}

fn read_patch(path: &Path) -> Result<Patch> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Patch::from_json(&text).with_context(|| format!("parsing {}", path.display()))
}

fn solve(args: SolveArgs) -> Result<ExitCode> {
    // Flags default to false, which clap counts as present for `requires`.
    if args.cap.is_some() && !args.enumerate {
        bail!("--cap only applies with --enumerate");
    }
    let boundary = if args.torus { Boundary::Torus } else { Boundary::Open };
    let mut region = Region::new(args.width, args.height, boundary)?;
    if let Some(path) = &args.fixed {
        region.fix_patch(&read_patch(path)?)?;
    }
    let solver = Solver::new(Catalog::robinson())?.with_options(SearchOptions { threads: args.threads });
    if args.count {
        let n = solver.count(&region)?;
        println!("{n}");
        return Ok(if n == 0 {
            ExitCode::from(UNSAT)
        } else {
            ExitCode::SUCCESS
        });
    }
    let sols = if args.first {
        solver.enumerate(&region, Some(1))?
    } else {
        solver.enumerate(&region, args.cap)?
    };
    if sols.is_empty() {
        eprintln!("no solution");
        return Ok(ExitCode::from(UNSAT));
    }
    match &args.out {
        Some(dir) => {
            fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
            for (i, p) in sols.iter().enumerate() {
                let path = dir.join(format!("solution-{i:06}.patch.json"));
                fs::write(&path, p.to_json()).with_context(|| format!("writing {}", path.display()))?;
            }
        }
        None => {
            for p in &sols {
                print!("{}", p.to_json());
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn verify(check: Check, threads: usize) -> Result<(Value, bool)> {
    let v = Verifier::new(Hierarchy::robinson()).with_options(SearchOptions { threads });
    Ok(match check {
        Check::UniqueFill { order } => {
            let results = v.unique_fill(order)?;
            let passed = results.iter().all(|r| r.count == 1 && r.equals_corner);
            (
                json!({ "check": "unique-fill", "order": order, "results": results, "passed": passed }),
                passed,
            )
        }
        Check::Forcing { order, steps } => {
            let report = v.forcing(order)?;
            let mut passed = report.passed();
            let mut doc = json!({ "check": "forcing", "report": report });
            if steps {
                let checks = v.step_checks(order)?;
                passed &= checks.iter().all(|c| c.passed);
                doc["steps"] = serde_json::to_value(checks)?;
            }
            doc["passed"] = passed.into();
            (doc, passed)
        }
        Check::Torus { kmax } => {
            let counts = v.torus_counts(kmax)?;
            let passed = counts.iter().all(|&(_, n)| n == 0);
            let counts: Vec<Value> = counts.iter().map(|(k, n)| json!({ "k": k, "count": n })).collect();
            (
                json!({ "check": "torus", "kmax": kmax, "counts": counts, "passed": passed }),
                passed,
            )
        }
        Check::Aperiodic { maxnorm, window } => {
            let witnesses = period_scan(maxnorm, window)?;
            let passed = witnesses.iter().all(|w| w.witness.is_some());
            (
                json!({
                    "check": "aperiodic",
                    "maxnorm": maxnorm,
                    "window": window,
                    "witnesses": witnesses,
                    "passed": passed,
                }),
                passed,
            )
        }
        Check::Blue { order } => {
            let sides = blue_growth(order, Diagonal::NE)?;
            // Order 1 has no square; from order 2 on the maximum must grow.
            let passed = sides.iter().skip(1).zip(sides.iter().skip(2)).all(|(a, b)| a.1 < b.1);
            let rows: Vec<Value> = sides
                .iter()
                .map(|(n, s)| json!({ "order": n, "max_side": s.to_string() }))
                .collect();
            (
                json!({ "check": "blue", "order": order, "orientation": "NE", "max_sides": rows, "passed": passed }),
                passed,
            )
        }
    })
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Corner { order, orient, out } => {
            let p = Hierarchy::robinson().corner(CornerSpec::new(order, orient))?;
            emit_patch(&p, &out)?;
        }
        Command::Limit {
            x0,
            y0,
            width,
            height,
            out,
        } => {
            if width == 0 || height == 0 {
                bail!("window dimensions must be positive");
            }
            emit_patch(&limit_window(Rect::new(x0, y0, width, height))?, &out)?;
        }
        Command::Solve(args) => return solve(args),
        Command::Verify { check, out, threads } => {
            let (doc, passed) = verify(check, threads)?;
            let text = serde_json::to_string_pretty(&doc)? + "\n";
            write_or_print(out.as_deref(), &text)?;
            if !passed {
                return Ok(ExitCode::from(FAILED));
            }
        }
        Command::Render {
            input,
            out,
            cell,
            propagate,
            torus,
            no_arrows,
            no_blue,
        } => {
            if torus && !propagate {
                bail!("--torus only applies with --propagate");
            }
            let style = RenderStyle {
                cell,
                draw_arrows: !no_arrows,
                draw_blue: !no_blue,
                ..RenderStyle::default()
            };
            let patch = read_patch(&input)?;
            let svg = if propagate {
                let boundary = if torus { Boundary::Torus } else { Boundary::Open };
                let solver = Solver::new(Catalog::robinson())?;
                match solver.propagate(&Region::from_patch(&patch, boundary))? {
                    Ok(d) => render_domains(&d, &style)?,
                    Err(c) => {
                        eprintln!("{c}");
                        return Ok(ExitCode::from(UNSAT));
                    }
                }
            } else {
                render_patch(&patch, &style)?
            };
            write_or_print(out.as_deref(), &svg)?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(u8::from(e.use_stderr()));
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
