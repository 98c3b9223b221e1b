//! Command-line argument definitions.

use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;

/// Analyse and render harmonic algebraic curves
/// `C_theta(P) = { z : Im(e^{-i theta} P(z)) = 0 }`.
///
/// Instances are given as a roots JSON file, inline unit-circle root angles,
/// or a seeded random unit-circle root set. All angles are radians. Exit
/// codes: 0 success/pass, 1 verification failed, 2 bad usage or input,
/// 3 numerical failure.
#[derive(Debug, Parser)]
#[command(name = "hcurve", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check that the curve meets the unit circle exactly in the roots plus
    /// the predicted regular polygon.
    Verify(VerifyArgs),
    /// Trace the curve inside a square window with marching squares.
    Trace(TraceArgs),
    /// Pair up the 2n asymptote rays by following the curve between them.
    Matching(MatchingArgs),
    /// List the critical theta values and the matching on each arc between
    /// them.
    Necklace(NecklaceArgs),
    /// Compare curve tangent lines at each root against the circle tangent
    /// and the polygon vertices.
    Tangents(TangentsArgs),
    /// Draw the curve, circle, roots and polygon as SVG.
    Render(RenderArgs),
    /// Reproduce the showcase figure: 7 seeded roots at theta = 0, rendered
    /// to SVG with the verification embedded.
    Demo(DemoArgs),
}

/// Where the roots come from. Exactly one source must be given.
#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct Source {
    /// JSON file: {"roots": [[re, im], ...], "multiplicities": [m1, ...]?}
    #[arg(long, value_name = "FILE")]
    pub roots: Option<PathBuf>,

    /// Inline unit-circle root angles in radians
    #[arg(long, value_name = "RAD", num_args = 1.., allow_negative_numbers = true)]
    pub roots_angles: Option<Vec<f64>>,

    /// N random roots on the unit circle from the seeded generator
    #[arg(long, value_name = "N")]
    pub random: Option<usize>,
}

/// Like [`Source`], but optional (used where `--batch` can replace it).
#[derive(Debug, Args)]
#[group(id = "opt_source", required = false, multiple = false)]
pub struct OptionalSource {
    /// JSON file: {"roots": [[re, im], ...], "multiplicities": [m1, ...]?}
    #[arg(long, value_name = "FILE")]
    pub roots: Option<PathBuf>,

    /// Inline unit-circle root angles in radians
    #[arg(long, value_name = "RAD", num_args = 1.., allow_negative_numbers = true)]
    pub roots_angles: Option<Vec<f64>>,

    /// N random roots on the unit circle from the seeded generator
    #[arg(long, value_name = "N")]
    pub random: Option<usize>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub source: OptionalSource,

    /// Seed for --random and --batch
    #[arg(long, value_name = "SEED", default_value_t = 42)]
    pub seed: u64,

    /// Curve parameter theta in radians (required unless --batch)
    #[arg(long, value_name = "RAD", allow_negative_numbers = true)]
    pub theta: Option<f64>,

    /// Matching tolerance on circle angles
    #[arg(long, value_name = "TOL", default_value_t = harmonic_curves::circle::VERIFY_TOL)]
    pub tol: f64,

    /// Verify N seeded instances (n cycles 1..=10, theta drawn per instance)
    /// instead of a single instance
    #[arg(long, value_name = "N", conflicts_with_all = ["roots", "roots_angles", "random", "theta"])]
    pub batch: Option<usize>,

    /// Emit angles in (-pi, pi] instead of [0, 2 pi)
    #[arg(long)]
    pub signed_angles: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TraceFormat {
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct TraceArgs {
    #[command(flatten)]
    pub source: Source,

    /// Seed for --random
    #[arg(long, value_name = "SEED", default_value_t = 42)]
    pub seed: u64,

    /// Curve parameter theta in radians
    #[arg(long, value_name = "RAD", allow_negative_numbers = true)]
    pub theta: f64,

    /// Half-width of the square window centred at the origin
    #[arg(long, value_name = "W", default_value_t = 2.0)]
    pub window: f64,

    /// Grid cells per window side
    #[arg(long, value_name = "C", default_value_t = 256)]
    pub cells: usize,

    /// Output format
    #[arg(long, value_enum, default_value_t = TraceFormat::Json)]
    pub format: TraceFormat,
}

#[derive(Debug, Args)]
pub struct MatchingArgs {
    #[command(flatten)]
    pub source: Source,

    /// Seed for --random
    #[arg(long, value_name = "SEED", default_value_t = 42)]
    pub seed: u64,

    /// Curve parameter theta in radians
    #[arg(long, value_name = "RAD", allow_negative_numbers = true)]
    pub theta: f64,

    /// Start/exit radius for continuation (default: the asymptote validity
    /// radius 2 n (1 + max |root|))
    #[arg(long, value_name = "R")]
    pub radius: Option<f64>,
}

#[derive(Debug, Args)]
pub struct NecklaceArgs {
    #[command(flatten)]
    pub source: Source,

    /// Seed for --random
    #[arg(long, value_name = "SEED", default_value_t = 42)]
    pub seed: u64,

    /// Guard distance from critical theta values when sampling beads
    #[arg(long, value_name = "RAD", default_value_t = harmonic_curves::necklace::NECKLACE_GUARD)]
    pub guard: f64,
}

#[derive(Debug, Args)]
pub struct TangentsArgs {
    #[command(flatten)]
    pub source: Source,

    /// Seed for --random
    #[arg(long, value_name = "SEED", default_value_t = 42)]
    pub seed: u64,

    /// Curve parameter theta in radians
    #[arg(long, value_name = "RAD", allow_negative_numbers = true)]
    pub theta: f64,

    /// Angular tolerance for the coincidence decisions
    #[arg(long, value_name = "TOL", default_value_t = harmonic_curves::tangents::TANGENCY_TOL)]
    pub tol: f64,
}

#[derive(Debug, Args)]
pub struct RenderArgs {
    #[command(flatten)]
    pub source: Source,

    /// Seed for --random
    #[arg(long, value_name = "SEED", default_value_t = 42)]
    pub seed: u64,

    /// Curve parameter theta in radians
    #[arg(long, value_name = "RAD", allow_negative_numbers = true)]
    pub theta: f64,

    /// Half-width of the square window centred at the origin
    #[arg(long, value_name = "W", default_value_t = 2.0)]
    pub window: f64,

    /// Grid cells per window side
    #[arg(long, value_name = "C", default_value_t = 512)]
    pub cells: usize,

    /// Also draw the 2n asymptote rays
    #[arg(long)]
    pub rays: bool,

    /// Write the SVG here instead of stdout (a JSON summary then goes to
    /// stdout)
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct DemoArgs {
    /// Seed for the 7 random unit-circle roots
    #[arg(long, value_name = "SEED", default_value_t = 42)]
    pub seed: u64,

    /// Where to write the SVG
    #[arg(long, value_name = "PATH", default_value = "demo.svg")]
    pub out: PathBuf,
}
