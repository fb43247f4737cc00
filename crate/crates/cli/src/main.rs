use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use hoi_core::format::ViewKind;
use hoi_core::Orientation;

mod commands;

#[derive(Debug, Parser)]
#[command(name = "hoi", version, about = "Pairwise and three-way connectivity views of multichannel recordings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Compute views for one recording or every recording in a manifest.
    Views(ViewsArgs),
    /// Print one cell of a stored O-information tensor.
    Inspect(InspectArgs),
}

#[derive(Debug, Args)]
pub struct KernelArgs {
    /// Gaussian kernel width, in units of the standardized signal.
    #[arg(long, default_value_t = hoi_core::KernelParams::DEFAULT_SIGMA)]
    pub sigma: f64,

    /// Renyi entropy order (must not be 1).
    #[arg(long, default_value_t = hoi_core::KernelParams::DEFAULT_ALPHA)]
    pub alpha: f64,

    /// Layout of the input CSV.
    #[arg(long, default_value = "rows-are-channels")]
    pub orientation: Orientation,

    /// Worker threads; 0 uses every core.
    #[arg(long, env = "HOI_THREADS", default_value_t = 0)]
    pub threads: usize,
}

#[derive(Debug, Args)]
pub struct ViewsArgs {
    /// Single recording CSV; its file stem is the subject id.
    #[arg(long, conflicts_with = "manifest", required_unless_present = "manifest")]
    pub input: Option<PathBuf>,

    /// JSON manifest listing recordings.
    #[arg(long)]
    pub manifest: Option<PathBuf>,

    /// Comma-separated views to compute.
    #[arg(long, value_delimiter = ',', default_value = "pearson,mi,oinfo")]
    pub views: Vec<ViewKind>,

    #[command(flatten)]
    pub kernel: KernelArgs,

    /// Output directory (created if missing).
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct InspectArgs {
    /// HOI1 tensor file.
    pub tensor: PathBuf,
    pub i: usize,
    pub j: usize,
    pub k: usize,

    /// Recompute TC, DTC and O for the triplet from the source recording.
    #[arg(long, requires = "input")]
    pub recompute: bool,

    /// Source recording CSV (with --recompute).
    #[arg(long)]
    pub input: Option<PathBuf>,

    #[command(flatten)]
    pub kernel: KernelArgs,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Views(args) => commands::views(&args),
        Command::Inspect(args) => commands::inspect(&args),
    }
}
