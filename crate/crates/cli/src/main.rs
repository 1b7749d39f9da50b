use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use eraserlab::config::Config;
use eraserlab::run;

#[derive(Parser)]
#[command(
    name = "eraserlab",
    version,
    about = "Polarization-tagged double-slit bench: patterns, scans and erasure demos"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Expected coincidence pattern for the configured bench, no sampling
    Pattern(RunArgs),
    /// Poisson-sampled detector scan with expected rates alongside
    Scan(RunArgs),
    /// Fringes and antifringes at orthogonal polarizer settings, with their sum
    EraseDemo(RunArgs),
    /// Outcome table linking idler polarization to the slit taken
    Whichpath(RunArgs),
    /// The same conditioned pattern under both collapse orders
    Ordering(RunArgs),
    /// Source-state polarization correlations at optimized analyzer angles
    Chsh(RunArgs),
}

#[derive(Args)]
struct RunArgs {
    /// Bench description file
    #[arg(long)]
    config: PathBuf,
    /// Directory receiving the CSV and JSON outputs
    #[arg(long, default_value = ".")]
    out: PathBuf,
    /// Overrides the seed from the file
    #[arg(long)]
    seed: Option<u64>,
    /// Overrides the number of scan points from the file
    #[arg(long)]
    points: Option<usize>,
}

fn main() -> Result<()> {
    let cli = Cli::parse();
    let (args, runner): (&RunArgs, fn(&Config, &Path) -> Result<()>) = match &cli.command {
        Command::Pattern(args) => (args, run::pattern),
        Command::Scan(args) => (args, run::scan),
        Command::EraseDemo(args) => (args, run::erase_demo),
        Command::Whichpath(args) => (args, run::whichpath),
        Command::Ordering(args) => (args, run::ordering),
        Command::Chsh(args) => (args, run::chsh_run),
    };
    let mut config = Config::load(&args.config)?;
    if let Some(seed) = args.seed {
        config.seed = seed;
    }
    if let Some(points) = args.points {
        if points == 0 {
            bail!("--points must be at least 1");
        }
        config.points = points;
    }
    fs::create_dir_all(&args.out)
        .with_context(|| format!("creating output directory {}", args.out.display()))?;
    runner(&config, &args.out)
}
