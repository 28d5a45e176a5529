//! Command-line front end: solving, instance generation, LP export and
//! performance-profile aggregation over JSON-lines run records.

pub mod alloc;
pub mod gen;
pub mod profile;
pub mod record;
pub mod solve;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use hypercut::bip::{build_model, export_lp, ModelMode};
use hypercut::hgraph::compact;
use hypercut::hgraph::io::read_hmetis;

pub use gen::{run_gen, GenArgs};
pub use record::{validate_record, Algorithm, RunRecord, Status};
pub use solve::{run_solve, SolveArgs};

#[derive(Parser, Debug)]
#[command(name = "hypercut", version, about = "Minimum cuts of hypergraphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Solve one instance and print a JSON run record.
    Solve(SolveArgs),
    /// Aggregate JSON-lines run records into performance-profile CSV.
    Profile(ProfileArgs),
    /// Generate, re-weight or core-reduce instances.
    Gen(GenArgs),
    /// Export the integer program of an instance in LP format.
    Lp(LpArgs),
}

#[derive(Args, Debug)]
pub struct ProfileArgs {
    pub records: PathBuf,
    /// Comma-separated factors; defaults to a fixed grid from 1 to 100.
    #[arg(long, value_delimiter = ',')]
    pub tau: Option<Vec<f64>>,
    /// CSV destination; standard output if omitted.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct LpArgs {
    pub input: PathBuf,
    #[arg(short, long)]
    pub output: PathBuf,
    #[arg(long, value_enum, default_value = "pairwise")]
    pub mode: ModeArg,
}

#[derive(Clone, Copy, Debug, clap::ValueEnum)]
pub enum ModeArg {
    Pairwise,
    Representative,
}

pub fn run_profile(args: &ProfileArgs) -> anyhow::Result<()> {
    let file = std::fs::File::open(&args.records)?;
    let records = profile::read_records(std::io::BufReader::new(file))?;
    let taus = args.tau.clone().unwrap_or_else(|| profile::DEFAULT_TAUS.to_vec());
    if let Some(bad) = taus.iter().find(|t| t.is_nan() || **t < 1.0) {
        anyhow::bail!("tau must be at least 1, got {bad}");
    }
    let points = profile::compute_profile(&records, &taus)?;
    match &args.output {
        Some(path) => profile::write_csv(&points, std::fs::File::create(path)?),
        None => profile::write_csv(&points, std::io::stdout().lock()),
    }
}

pub fn run_lp(args: &LpArgs) -> anyhow::Result<()> {
    let h = compact(&read_hmetis(&args.input)?.hypergraph);
    let mode = match args.mode {
        ModeArg::Pairwise => ModelMode::Pairwise,
        ModeArg::Representative => ModelMode::Representative,
    };
    export_lp(&build_model(&h, mode)?, &args.output)?;
    Ok(())
}
