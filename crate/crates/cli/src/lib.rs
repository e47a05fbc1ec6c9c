//! Command-line front end: JSON on stdout, a short summary on stderr.

pub mod render;

use std::fs::File;
use std::io::{BufReader, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use reeb_ruling::generators::{
    annulus_polygon, comb_polygon, lower_bound_polygon, regular_polygon, FamilyParams,
};
use reeb_ruling::oracle::{
    brute_force_complexity_with_cap, random_simple_polygon_retrying, DEFAULT_CAP,
};
use reeb_ruling::{
    load_polygon, parallel_reeb_complexity, reeb_graph, to_json, Direction, Polygon, ReebExport,
};
use serde::Serialize;

use crate::render::{write_svg, RenderSpec};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_DEGENERATE: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "reeb-ruling",
    version,
    about = "Reeb complexity of polygons under parallel rulings"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Minimum leaf count over all sweep directions.
    Complexity { file: PathBuf },
    /// Reeb graph for one sweep direction.
    Reeb {
        file: PathBuf,
        #[arg(long, value_parser = parse_direction, allow_hyphen_values = true)]
        direction: Direction,
    },
    /// Write a generated polygon.
    Generate {
        #[command(subcommand)]
        family: Family,
    },
    /// Exhaustive minimum over all event intervals.
    Oracle {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
    },
    /// Draw the polygon as SVG.
    Render {
        file: PathBuf,
        /// Sweep direction; defaults to the complexity witness.
        #[arg(long, value_parser = parse_direction, allow_hyphen_values = true)]
        direction: Option<Direction>,
        #[arg(long)]
        cones: bool,
        /// Number of ruling lines.
        #[arg(long, value_name = "N")]
        ruling: Option<usize>,
        #[arg(long)]
        reeb: bool,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Debug, Args)]
struct Out {
    #[arg(long)]
    out: PathBuf,
}

#[derive(Debug, Subcommand)]
enum Family {
    /// Spiked star on two concentric circles.
    LowerBound {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 4.0)]
        r1: f64,
        #[arg(long, default_value_t = 1.0)]
        r2: f64,
        #[command(flatten)]
        out: Out,
    },
    /// Strip with triangular prongs on both sides.
    Comb {
        #[arg(long)]
        teeth: usize,
        #[command(flatten)]
        out: Out,
    },
    /// Square with a centered square hole.
    Annulus {
        #[arg(long, default_value_t = 4.0)]
        outer: f64,
        #[arg(long, default_value_t = 1.0)]
        hole: f64,
        #[command(flatten)]
        out: Out,
    },
    /// Regular polygon on the unit circle.
    Regular {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        out: Out,
    },
    /// Random simple polygon.
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: Out,
    },
}

fn parse_direction(text: &str) -> Result<Direction, String> {
    let (x, y) = text
        .split_once(',')
        .ok_or_else(|| format!("expected dx,dy, got {text:?}"))?;
    let parse = |s: &str| s.trim().parse::<f64>().map_err(|e| format!("{s:?}: {e}"));
    Direction::new(parse(x)?, parse(y)?).map_err(|e| e.to_string())
}

/// A failure with its exit status.
struct Failure {
    code: i32,
    message: String,
}

fn invalid(e: impl std::fmt::Display) -> Failure {
    Failure {
        code: EXIT_INVALID,
        message: e.to_string(),
    }
}

fn load(path: &Path) -> Result<Polygon, Failure> {
    let file = File::open(path).map_err(|e| invalid(format!("{}: {e}", path.display())))?;
    load_polygon(BufReader::new(file)).map_err(|e| invalid(format!("{}: {e}", path.display())))
}

fn emit<T: Serialize>(out: &mut dyn Write, value: &T) -> Result<(), Failure> {
    out.write_all(to_json(value).as_bytes()).map_err(invalid)
}

#[derive(Serialize)]
struct Written<'a> {
    out: &'a Path,
    n: usize,
    h: usize,
}

fn generate(family: Family, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Failure> {
    let (polygon, path) = match family {
        Family::LowerBound { n, r1, r2, out } => (
            lower_bound_polygon(FamilyParams { n, r1, r2 }).map_err(invalid)?,
            out.out,
        ),
        Family::Comb { teeth, out } => (comb_polygon(teeth).map_err(invalid)?, out.out),
        Family::Annulus { outer, hole, out } => {
            (annulus_polygon(outer, hole).map_err(invalid)?, out.out)
        }
        Family::Regular { n, out } => (regular_polygon(n).map_err(invalid)?, out.out),
        Family::Random { n, seed, out } => (
            random_simple_polygon_retrying(n, seed).map_err(invalid)?,
            out.out,
        ),
    };
    std::fs::write(&path, polygon.to_json_string())
        .map_err(|e| invalid(format!("{}: {e}", path.display())))?;
    let _ = writeln!(
        err,
        "wrote {} ({} vertices, {} holes)",
        path.display(),
        polygon.n(),
        polygon.h()
    );
    emit(
        out,
        &Written {
            out: &path,
            n: polygon.n(),
            h: polygon.h(),
        },
    )?;
    Ok(EXIT_OK)
}

fn dispatch(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Failure> {
    match command {
        Command::Complexity { file } => {
            let p = load(&file)?;
            let r = parallel_reeb_complexity(&p);
            emit(out, &r)?;
            let _ = writeln!(
                err,
                "min_leaves {} (k={}, c_max={}, h={}) at {}",
                r.min_leaves, r.k, r.c_max, r.h, r.witness
            );
            if r.degenerate {
                let _ = writeln!(
                    err,
                    "degenerate: the optimum lies on a cone boundary only; generic minimum {}",
                    r.generic_min_leaves
                );
                return Ok(EXIT_DEGENERATE);
            }
            Ok(EXIT_OK)
        }
        Command::Reeb { file, direction } => {
            let p = load(&file)?;
            let g = reeb_graph(&p, &direction).map_err(invalid)?;
            emit(out, &ReebExport::from(&g))?;
            let _ = writeln!(
                err,
                "{} leaves, {} branch nodes, {} holes",
                g.leaves, g.branches, g.holes
            );
            Ok(EXIT_OK)
        }
        Command::Generate { family } => generate(family, out, err),
        Command::Oracle { file, cap } => {
            let p = load(&file)?;
            let r = brute_force_complexity_with_cap(&p, cap).map_err(invalid)?;
            emit(out, &r)?;
            let _ = writeln!(
                err,
                "min_leaves {} over {} intervals at {}",
                r.min_leaves, r.intervals_evaluated, r.witness
            );
            if r.boundary_beats_interior {
                let _ = writeln!(
                    err,
                    "degenerate: boundary angle scores {:?}",
                    r.boundary_min_leaves
                );
                return Ok(EXIT_DEGENERATE);
            }
            Ok(EXIT_OK)
        }
        Command::Render {
            file,
            direction,
            cones,
            ruling,
            reeb,
            out: path,
        } => {
            let polygon = load(&file)?;
            let direction = match direction {
                Some(d) => d,
                None => {
                    let r = parallel_reeb_complexity(&polygon);
                    r.generic_witness.unwrap_or(r.witness)
                }
            };
            let spec = RenderSpec {
                polygon,
                direction: Some(direction),
                show_cones: cones,
                show_ruling: ruling.is_some(),
                ruling_line_count: ruling.unwrap_or(0),
                show_reeb: reeb,
                output_path: path,
            };
            write_svg(&spec).map_err(invalid)?;
            let _ = writeln!(
                err,
                "wrote {} (direction {direction})",
                spec.output_path.display()
            );
            emit(
                out,
                &serde_json::json!({ "out": spec.output_path, "direction": direction }),
            )?;
            Ok(EXIT_OK)
        }
    }
}

/// Runs one command line; returns the process exit status.
pub fn run_cli<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}
