//! Command-line front end: `peel`, `vgraph`, `probe`, `oracle` and `bench`.

mod commands;
pub mod manifest;
pub mod svg;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

pub use manifest::RunManifest;
pub use svg::{render_svg, Overlays};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_ALL_ABORTED: i32 = 3;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Validation(String),
    #[error("{0}")]
    Failure(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => EXIT_VALIDATION,
            CliError::Failure(_) => EXIT_FAILURE,
        }
    }
}

impl From<potato::Error> for CliError {
    fn from(e: potato::Error) -> Self {
        if e.is_validation() {
            CliError::Validation(e.to_string())
        } else {
            CliError::Failure(e.to_string())
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "potato", version, about = "Large convex polygons inside simple polygons")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Approximate the largest convex polygon inside a polygon.
    Peel(PeelArgs),
    /// Build the visibility graph of random points in a polygon.
    Vgraph(VgraphArgs),
    /// Estimate the probability that two random points see each other.
    Probe(ProbeArgs),
    /// Emit a test polygon with bounds on its largest convex subset.
    Oracle(OracleArgs),
    /// Time the peeler on a polygon family of growing size.
    Bench(BenchArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ModeArg {
    Paper,
    Practical,
}

impl From<ModeArg> for potato::peeler::Mode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Paper => potato::peeler::Mode::Paper,
            ModeArg::Practical => potato::peeler::Mode::Practical,
        }
    }
}

/// Options shared by the commands that run the peeler.
#[derive(Debug, Clone, Args, Serialize)]
pub struct PeelOptions {
    #[arg(long, default_value_t = 0.2)]
    pub epsilon: f64,
    #[arg(long, default_value_t = 0.1)]
    pub delta: f64,
    #[arg(long, env = "PEEL_SEED", default_value_t = 0)]
    pub seed: u64,
    #[arg(long, env = "PEEL_MODE", value_enum, ignore_case = true, default_value_t = ModeArg::Practical)]
    pub mode: ModeArg,
    #[arg(long)]
    pub c1: Option<f64>,
    #[arg(long)]
    pub c2: Option<f64>,
    #[arg(long)]
    pub c3: Option<f64>,
    /// Lower bound on the optimum area in input units.
    #[arg(long)]
    pub area_estimate: Option<f64>,
    /// Run exactly this many iterations instead of ceil(3 log2(1/delta)).
    #[arg(long)]
    pub max_repeat: Option<usize>,
    /// Sample every edge even when its region is covered by another.
    #[arg(long)]
    pub no_skip_dominated: bool,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct PeelArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[command(flatten)]
    pub opts: PeelOptions,
    #[arg(long)]
    pub svg: Option<PathBuf>,
    /// Result file; printed to stdout when absent.
    #[arg(long)]
    pub json: Option<PathBuf>,
    /// Report wall_time_ms as 0 so repeated runs are byte-identical.
    #[arg(long)]
    pub no_timing: bool,
    #[arg(long)]
    pub dump_triangulation: Option<PathBuf>,
    #[arg(long)]
    pub manifest: Option<PathBuf>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct VgraphArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub points: usize,
    #[arg(long, env = "PEEL_SEED", default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub cap: Option<usize>,
    #[arg(long)]
    pub svg: Option<PathBuf>,
    #[arg(long)]
    pub json: Option<PathBuf>,
    #[arg(long)]
    pub manifest: Option<PathBuf>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ProbeArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, default_value_t = 10_000)]
    pub trials: usize,
    #[arg(long, env = "PEEL_SEED", default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub json: Option<PathBuf>,
    /// Also estimate over the built-in polygon families and write a CSV.
    #[arg(long)]
    pub sweep_csv: Option<PathBuf>,
    #[arg(long)]
    pub manifest: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Convex,
    Lshape,
    Comb,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct OracleArgs {
    #[arg(long, value_enum)]
    pub family: Family,
    /// Vertex count of the random convex polygon.
    #[arg(long, default_value_t = 16)]
    pub n: usize,
    #[arg(long, env = "PEEL_SEED", default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 16)]
    pub teeth: usize,
    #[arg(long, default_value_t = 1.0)]
    pub tooth_width: f64,
    #[arg(long, default_value_t = 1.0)]
    pub gap: f64,
    #[arg(long, default_value_t = 4.0)]
    pub tooth_height: f64,
    #[arg(long, default_value_t = 0.5)]
    pub base_height: f64,
    #[arg(long)]
    pub json: Option<PathBuf>,
    #[arg(long)]
    pub manifest: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BenchFamily {
    Staircase,
    Comb,
    Regular,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct BenchArgs {
    #[arg(long, value_enum, default_value_t = BenchFamily::Staircase)]
    pub family: BenchFamily,
    #[arg(long, value_delimiter = ',', default_values_t = [32, 64, 128, 256])]
    pub sizes: Vec<usize>,
    #[command(flatten)]
    pub opts: PeelOptions,
    #[arg(long)]
    pub json: Option<PathBuf>,
    #[arg(long)]
    pub manifest: Option<PathBuf>,
}

/// Parses `argv` (including the program name), runs the command and
/// returns the process exit code. Diagnostics go to stderr.
pub fn parse_and_dispatch<I, S>(argv: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_VALIDATION } else { EXIT_OK };
        }
    };
    match commands::run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
