//! `aztec`: generate, check, measure and draw space-filling curves, and run
//! the sparse-coding scan-order benchmark.

mod commands;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "aztec", version, about = "Space-filling curve toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write the visiting sequence of a curve as JSON or CSV.
    Path(PathArgs),
    /// Check bijectivity, continuity, corners and self-similarity.
    Verify(VerifyArgs),
    /// Enumerate rectangles whose cells form one contiguous index run.
    Clusters(ClustersArgs),
    /// Draw a curve (optionally over its clusters) as SVG.
    Render(RenderArgs),
    /// Compare range-query locality of several scans.
    Metrics(MetricsArgs),
    /// Sparse-code MNIST digits along several scans and report PSNR/time.
    Bench(BenchArgs),
}

/// Curve selection shared by the single-curve subcommands.
#[derive(Debug, Args)]
struct CurveArgs {
    /// Curve: aztec, hilbert, peano, raster-v, raster-h, serpentine, zigzag.
    #[arg(long)]
    curve: String,
    /// Recursion order (grammar curves).
    #[arg(long, conflicts_with = "side")]
    order: Option<u32>,
    /// Grid side; required for raster, serpentine and zigzag, and for
    /// grammar curves must be a power of their pattern size.
    #[arg(long)]
    side: Option<u32>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Args)]
struct PathArgs {
    #[command(flatten)]
    curve: CurveArgs,
    /// Output format.
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Output file; standard output when omitted.
    #[arg(long)]
    out: Option<std::path::PathBuf>,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    /// Curve name (see `path --help`).
    #[arg(long)]
    curve: String,
    /// Inclusive order range such as `1..4`, or a single order.
    #[arg(long, default_value = "1..3", conflicts_with = "side")]
    orders: String,
    /// Verify one grid of this side instead of an order range.
    #[arg(long)]
    side: Option<u32>,
}

#[derive(Debug, Args)]
struct ClustersArgs {
    #[command(flatten)]
    curve: CurveArgs,
    /// Largest rectangle area to report; the whole grid when omitted.
    #[arg(long)]
    max_area: Option<u64>,
    /// CSV file receiving every cluster (x0,y0,x1,y1,min_index,max_index,area).
    #[arg(long)]
    out: Option<std::path::PathBuf>,
}

#[derive(Debug, Args)]
struct RenderArgs {
    #[command(flatten)]
    curve: CurveArgs,
    /// SVG output file.
    #[arg(long)]
    svg: std::path::PathBuf,
    /// Overlay clusters: the four characteristic families for aztec, every
    /// cluster with both sides >= 2 (except the full grid) otherwise.
    #[arg(long)]
    clusters: bool,
    /// Approximate drawing width in user units.
    #[arg(long, default_value_t = 512.0)]
    width: f64,
    /// Omit the cell grid.
    #[arg(long)]
    no_grid: bool,
}

#[derive(Debug, Args)]
struct MetricsArgs {
    /// Comma-separated curve names.
    #[arg(
        long,
        value_delimiter = ',',
        default_value = "aztec,hilbert,raster-v,serpentine,zigzag"
    )]
    curves: Vec<String>,
    /// Grid side shared by all curves.
    #[arg(long, default_value_t = 64)]
    side: u32,
    /// Number of random query rectangles.
    #[arg(long, default_value_t = 10_000)]
    queries: usize,
    /// Seed for the query generator.
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Optional CSV output (scan,samples,seed,mean_runs,max_runs).
    #[arg(long)]
    out: Option<std::path::PathBuf>,
}

#[derive(Debug, Args)]
struct BenchArgs {
    /// IDX3 image file (MNIST format).
    #[arg(long)]
    images: std::path::PathBuf,
    /// Number of images to read from the start of the file.
    #[arg(long, default_value_t = 100)]
    count: usize,
    /// Maximum number of OMP atoms per image.
    #[arg(long, default_value_t = aztec_sfc::cs::DEFAULT_SPARSITY)]
    sparsity: usize,
    /// OMP residual-norm stopping threshold.
    #[arg(long, default_value_t = 0.0)]
    tolerance: f64,
    /// Comma-separated scans.
    #[arg(
        long,
        value_delimiter = ',',
        default_value = "hilbert,aztec,zigzag,serpentine,raster-v"
    )]
    scans: Vec<String>,
    /// Per-record CSV output.
    #[arg(long)]
    out: std::path::PathBuf,
    /// Statistics CSV; defaults to `<out stem>_stats.csv` next to `--out`.
    #[arg(long)]
    stats: Option<std::path::PathBuf>,
    /// Run single-threaded and report solve-time statistics.
    #[arg(long)]
    serial_timing: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli.command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}
