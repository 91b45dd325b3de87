mod commands;
mod pattern_spec;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(name = "latscope", version, about = "Periods and symmetries of projected lattices and patterns")]
struct Cli {
    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct LatticeArg {
    /// JSON file `{"dim": n, "gens": [[...], ...]}`.
    #[arg(long)]
    lattice: PathBuf,
}

#[derive(Args)]
struct GroupArg {
    /// JSON file `{"dim": n, "gens": [...], "reps": [{"delta": ..., "v": ...}]}`.
    #[arg(long)]
    group: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// Dual lattice.
    Dual(LatticeArg),
    /// Orthogonal maps preserving a lattice.
    Holohedry(LatticeArg),
    /// Whether the points of the lattice in a band are periodic under a shift.
    CheckPeriod {
        #[command(flatten)]
        lattice: LatticeArg,
        #[arg(long)]
        y0: String,
        /// Comma-separated horizontal shift.
        #[arg(long)]
        p: String,
    },
    /// Period module of projected invariant functions, as CSV.
    Periods {
        #[command(flatten)]
        group: GroupArg,
        /// Band width; may be repeated.
        #[arg(long, required = true)]
        y0: Vec<String>,
    },
    /// Decision-tree case for projecting onto a target planar lattice.
    Classify {
        #[command(flatten)]
        group: GroupArg,
        /// Target generator a0 as "x,y" (default: hexagonal).
        #[arg(long, requires = "b0")]
        a0: Option<String>,
        #[arg(long, requires = "a0")]
        b0: Option<String>,
    },
    /// Hexagonal profile of one group, or of the built-in catalog.
    HexTable {
        #[arg(long)]
        group: Option<PathBuf>,
        /// Compare against the embedded tables; exit 3 on mismatch.
        #[arg(long)]
        check_tables: bool,
    },
    /// Period modules over an arithmetic progression of widths, as CSV.
    Sweep {
        #[command(flatten)]
        group: GroupArg,
        #[arg(long)]
        start: String,
        #[arg(long)]
        step: String,
        #[arg(long, default_value_t = 10)]
        count: usize,
    },
    /// Render a projected (or restricted) pattern as binary PGM.
    Render {
        /// Pattern JSON: `{"group": ..., "waves": [{"k": [...], "re": .., "im": ..}]}`.
        #[arg(long)]
        pattern: PathBuf,
        /// Band width for the projection.
        #[arg(long, conflicts_with = "r")]
        y0: Option<String>,
        /// Height of the restriction hyperplane.
        #[arg(long)]
        r: Option<String>,
        /// "xmin,xmax,ymin,ymax".
        #[arg(long, default_value = "-2,2,-2,2")]
        window: String,
        /// "w,h".
        #[arg(long, default_value = "256,256")]
        px: String,
    },
    /// Check the group axioms; exit 2 on failure.
    Validate(GroupArg),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = commands::apply_precision_env() {
        eprintln!("error: {e:#}");
        return ExitCode::from(1);
    }
    let out = match commands::run(cli.command) {
        Ok(out) => out,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(1);
        }
    };
    let written = match &cli.out {
        Some(path) => std::fs::write(path, &out.bytes),
        None => std::io::stdout().write_all(&out.bytes),
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return ExitCode::from(1);
    }
    ExitCode::from(out.code)
}
