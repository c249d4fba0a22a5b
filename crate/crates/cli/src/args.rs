use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use slosh_iso::{DepthSpec, DEFAULT_SEED};

#[derive(Debug, Parser)]
#[command(
    name = "slosh-iso",
    version,
    about = "Neumann and sloshing eigenvalues of vertical-wall containers, with isoperimetric checks",
    after_help = "Set SLOSH_ISO_THREADS to cap the worker pool (default: number of processors)."
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Lowest nonzero Neumann eigenvalues of each shape on one mesh.
    Eig(EigArgs),
    /// Sloshing eigenvalues and frequencies of vertical-wall containers.
    Slosh(SloshArgs),
    /// Evaluate the four isoperimetric inequalities, one verdict line each.
    Check(CheckArgs),
    /// Inequality reports over a one-parameter shape family.
    Sweep(SweepArgs),
    /// Shallow-water radial basin eigenvalue against the volume bound.
    Troesch(TroeschArgs),
    /// Write the triangle mesh of a shape.
    Mesh(MeshArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyKind {
    Rectangles,
    RegularPolygons,
    Ellipses,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BasinKind {
    Parabolic,
    Conical,
    Flat,
    Quartic,
}

fn parse_seed(s: &str) -> Result<u64, String> {
    let parsed = match s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        Some(hex) => u64::from_str_radix(hex, 16),
        None => s.parse(),
    };
    parsed.map_err(|e| format!("bad seed {s:?}: {e}"))
}

fn parse_depth(s: &str) -> Result<DepthSpec<f64>, String> {
    s.parse().map_err(|e: slosh_iso::Error| e.to_string())
}

fn parse_positive(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if v > 0.0 && v.is_finite() => Ok(v),
        Ok(v) => Err(format!("must be positive, got {v}")),
        Err(e) => Err(e.to_string()),
    }
}

#[derive(Debug, Args)]
pub struct ShapeInput {
    /// Shape file: one JSON object, an array, or a stream of objects ("-" reads stdin)
    #[arg(long, value_name = "FILE")]
    pub shape: PathBuf,

    /// Uniform refinement level of the mesh
    #[arg(long, default_value_t = 5, value_parser = clap::value_parser!(u8).range(0..=9))]
    pub level: u8,

    /// Seed of the eigensolver's start vectors (decimal or 0x-prefixed hex)
    #[arg(long, default_value_t = DEFAULT_SEED, value_parser = parse_seed)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Output file (default: standard output)
    #[arg(long, short, value_name = "FILE")]
    pub output: Option<PathBuf>,

    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct EigArgs {
    #[command(flatten)]
    pub input: ShapeInput,

    /// Number of nonzero eigenvalues (clusters at the cutoff are reported in full)
    #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u8).range(1..=20))]
    pub modes: u8,

    /// Also write stiffness and mass matrices as PREFIX_<shape>_{K,M}.txt (row col value)
    #[arg(long, value_name = "PREFIX")]
    pub dump_matrices: Option<PathBuf>,

    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct SloshArgs {
    #[command(flatten)]
    pub input: ShapeInput,

    /// Number of modes
    #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u8).range(1..=20))]
    pub modes: u8,

    /// Container depth: a positive length or "inf"
    #[arg(long, default_value = "inf", value_parser = parse_depth)]
    pub depth: DepthSpec<f64>,

    /// Gravitational acceleration for the radian frequency
    #[arg(long, default_value_t = 9.81, value_parser = parse_positive)]
    pub g: f64,

    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    #[command(flatten)]
    pub input: ShapeInput,

    /// Container depth: a positive length or "inf"
    #[arg(long, default_value = "inf", value_parser = parse_depth)]
    pub depth: DepthSpec<f64>,

    /// Write the full report here as well (verdict lines always go to standard output)
    #[arg(long, short, value_name = "FILE")]
    pub output: Option<PathBuf>,

    /// Format of the report file
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// Shape family
    #[arg(long, value_enum)]
    pub family: FamilyKind,

    /// Comma-separated family parameters: aspect ratios, side counts, or b/a ratios
    #[arg(long, value_delimiter = ',', num_args = 1.., required = true)]
    pub params: Vec<f64>,

    /// Boundary points of each ellipse
    #[arg(long, default_value_t = 256)]
    pub boundary_points: usize,

    /// Uniform refinement level of the finest mesh
    #[arg(long, default_value_t = 5, value_parser = clap::value_parser!(u8).range(0..=9))]
    pub level: u8,

    /// Container depth: a positive length or "inf"
    #[arg(long, default_value = "inf", value_parser = parse_depth)]
    pub depth: DepthSpec<f64>,

    /// Seed of the eigensolver's start vectors (decimal or 0x-prefixed hex)
    #[arg(long, default_value_t = DEFAULT_SEED, value_parser = parse_seed)]
    pub seed: u64,

    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct TroeschArgs {
    /// Built-in depth profile
    #[arg(long, value_enum, required_unless_present = "profile", conflicts_with = "profile")]
    pub basin: Option<BasinKind>,

    /// Eigenvalue parameter of the parabolic basin h = nu (r0^2 - r^2)/2
    #[arg(long, value_parser = parse_positive, conflicts_with = "h0")]
    pub nu: Option<f64>,

    /// Depth at the axis of a built-in profile
    #[arg(long, value_parser = parse_positive)]
    pub h0: Option<f64>,

    /// Free-surface radius of a built-in profile
    #[arg(long, default_value_t = 1.0, value_parser = parse_positive)]
    pub r0: f64,

    /// Tabulated profile: two columns "r h", r rising from 0 to r0
    #[arg(long, value_name = "FILE")]
    pub profile: Option<PathBuf>,

    /// Grid points on [0, r0] (at least 100)
    #[arg(long, default_value_t = 2000)]
    pub n: usize,

    /// Azimuthal index
    #[arg(long, default_value_t = 1)]
    pub m: usize,

    /// Number of radial modes listed in JSON output
    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u8).range(1..=20))]
    pub modes: u8,

    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct MeshArgs {
    #[command(flatten)]
    pub input: ShapeInput,

    /// Output file (default: standard output)
    #[arg(long, short, value_name = "FILE")]
    pub output: Option<PathBuf>,
}
