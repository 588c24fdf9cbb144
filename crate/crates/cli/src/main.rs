//! `momentkit` command line: model files in, text, JSON or SVG out.
//!
//! Exit status is 0 on success, 1 when `validate` finds violations and 2 on
//! usage, input or computation errors.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use momentkit::format::parse_vector;
use momentkit::geometry::QVector;
use momentkit::numeric::{Action, DEFAULT_TOLERANCE};
use momentkit::rational::{parse_rational, Rational};

mod commands;

#[derive(Parser)]
#[command(
    name = "momentkit",
    version,
    about = "Exact fixed-point data of Hamiltonian torus actions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

fn rational(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

fn vector(s: &str) -> Result<QVector, String> {
    parse_vector(s).map_err(|e| e.to_string())
}

fn action(s: &str) -> Result<Action, String> {
    s.parse()
        .map_err(|e: momentkit::numeric::NumericError| e.to_string())
}

#[derive(Args)]
struct Output {
    /// Write to this file instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ModelInput {
    /// Model JSON file.
    model: PathBuf,
    /// Generator `ξ`, e.g. `1,0,-1`; enumerated when omitted.
    #[arg(long, value_parser = vector, allow_hyphen_values = true)]
    xi: Option<QVector>,
    /// Emit JSON instead of text.
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum ExampleName {
    Su3Natural,
    Su3Skew,
    So5,
    Su3NaturalBlowup,
    Cpn,
}

#[derive(Subcommand)]
enum Command {
    /// Check a model for consistency; exits 1 on violations.
    Validate { model: PathBuf },
    /// Morse indices and Betti numbers.
    Betti(ModelInput),
    /// Deformation coordinates along index-1 weight rays.
    Deform(ModelInput),
    /// Convex hull of a point set, or of the fixed images of a model.
    Hull {
        input: PathBuf,
        #[command(flatten)]
        output: Output,
    },
    /// Hull of the Weyl orbit of a dominant polytope.
    WeylHull {
        /// Root system such as `A2` or `B2`.
        #[arg(long)]
        group: String,
        /// Point-set file with the dominant polytope.
        #[arg(long)]
        delta: PathBuf,
        #[command(flatten)]
        output: Output,
    },
    /// Reflectivity of one point of the dominant slice.
    Reflective {
        model: PathBuf,
        /// The point to test, e.g. `3/2,3/2`.
        #[arg(long, value_parser = vector, allow_hyphen_values = true)]
        point: QVector,
        /// Point-set file for the dominant polytope; defaults to the
        /// dominant slice of the image hull.
        #[arg(long)]
        delta: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Classify every vertex of the dominant polytope.
    Classify {
        model: PathBuf,
        #[arg(long)]
        delta: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Write a built-in example model.
    Example {
        #[arg(value_enum)]
        name: ExampleName,
        #[arg(long, value_parser = rational)]
        t: Option<Rational>,
        #[arg(long, value_parser = rational)]
        s: Option<Rational>,
        #[arg(long, value_parser = rational)]
        gamma: Option<Rational>,
        #[arg(long, value_parser = rational)]
        delta: Option<Rational>,
        #[arg(long, value_parser = rational)]
        epsilon: Option<Rational>,
        /// Complex dimension for `cpn`.
        #[arg(long)]
        n: Option<usize>,
        #[command(flatten)]
        output: Output,
    },
    /// Cut a polytope by `<normal, x> <= offset` or blow up a vertex.
    Cut {
        input: PathBuf,
        #[arg(long, value_parser = vector, allow_hyphen_values = true, requires = "offset", conflicts_with = "vertex")]
        normal: Option<QVector>,
        #[arg(long, value_parser = rational, allow_hyphen_values = true)]
        offset: Option<Rational>,
        #[arg(long, value_parser = vector, allow_hyphen_values = true, requires = "epsilon")]
        vertex: Option<QVector>,
        #[arg(long, value_parser = rational)]
        epsilon: Option<Rational>,
        #[command(flatten)]
        output: Output,
    },
    /// Monte Carlo check of an SU(3) action on P² × P².
    Sample {
        #[arg(long, value_parser = action)]
        action: Action,
        #[arg(long, value_parser = rational)]
        t: Rational,
        #[arg(long, value_parser = rational)]
        s: Rational,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 100_000)]
        count: usize,
        #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
        tol: f64,
        #[command(flatten)]
        output: Output,
    },
    /// SVG figure of a model's image hull with optional dashed overlays.
    Render {
        model: PathBuf,
        /// Further models drawn dashed.
        #[arg(long)]
        overlay: Vec<PathBuf>,
        /// Draw the walls of the model's root system.
        #[arg(long)]
        walls: bool,
        /// Label fixed-point markers with their ids.
        #[arg(long)]
        labels: bool,
        #[arg(long)]
        title: Option<String>,
        #[command(flatten)]
        output: Output,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match commands::run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
