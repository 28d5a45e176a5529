use std::path::PathBuf;
use std::time::{Duration, Instant};

use anyhow::Context;
use clap::Args;

use hypercut::bip::{self, BipLimits, ModelMode};
use hypercut::hgraph::io::{read_hmetis, HmetisFile};
use hypercut::hgraph::{compact, CutResult};
use hypercut::oracle::brute_mincut;
use hypercut::osolve::{mincut_ordering_traced, OrderingOptions};
use hypercut::reduce::{run_pipeline, PipelineConfig, ResidualSolver, RuleStat};
use hypercut::trimmer::trimmer_mincut;
use hypercut::Error;

use crate::alloc;
use crate::record::{Algorithm, ConfigEcho, RunRecord, Status};

#[derive(Args, Clone, Debug)]
pub struct SolveArgs {
    /// Input in hMetis format.
    pub input: PathBuf,
    #[arg(long, value_enum, default_value = "heicut")]
    pub algo: Algorithm,
    /// Contract label-propagation clusters each round.
    #[arg(long)]
    pub use_lp: bool,
    #[arg(long, default_value_t = 1)]
    pub lp_iterations: usize,
    /// Stop reducing at this many vertices.
    #[arg(long, default_value_t = 1000)]
    pub threshold: usize,
    #[arg(long, value_enum, default_value = "exact")]
    pub solver: SolverArg,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Seconds; checked between rounds, phases and branch-and-bound nodes.
    #[arg(long)]
    pub time_limit: Option<f64>,
    /// Write one block id (0 or 1) per vertex.
    #[arg(long)]
    pub partition_out: Option<PathBuf>,
    /// Write reduction statistics as JSON lines.
    #[arg(long)]
    pub stats_out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum SolverArg {
    Exact,
    Bip,
}

impl SolveArgs {
    pub fn new(input: impl Into<PathBuf>, algo: Algorithm) -> Self {
        Self {
            input: input.into(),
            algo,
            use_lp: false,
            lp_iterations: 1,
            threshold: 1000,
            solver: SolverArg::Exact,
            seed: 0,
            time_limit: None,
            partition_out: None,
            stats_out: None,
        }
    }

    fn echo(&self) -> ConfigEcho {
        ConfigEcho {
            use_lp: self.use_lp || self.algo == Algorithm::HeicutLp,
            threshold: self.threshold,
            solver: match self.solver {
                SolverArg::Exact => "exact".into(),
                SolverArg::Bip => "bip".into(),
            },
            lp_iterations: self.lp_iterations,
            time_limit_s: self.time_limit,
        }
    }
}

struct Outcome {
    cut: CutResult,
    stats: Vec<RuleStat>,
}

fn dispatch(args: &SolveArgs, file: &HmetisFile, deadline: Option<Instant>) -> hypercut::Result<Outcome> {
    let h = &file.hypergraph;
    let plain = |cut| Outcome { cut, stats: Vec::new() };
    match args.algo {
        Algorithm::Heicut | Algorithm::HeicutLp => {
            let config = PipelineConfig {
                use_lp: args.use_lp || args.algo == Algorithm::HeicutLp,
                lp_iterations: args.lp_iterations,
                threshold: args.threshold,
                seed: args.seed,
                solver: match args.solver {
                    SolverArg::Exact => ResidualSolver::Exact,
                    SolverArg::Bip => ResidualSolver::Bip,
                },
                bip: BipLimits::default(),
                deadline,
            };
            let out = run_pipeline(h, &config)?;
            Ok(Outcome {
                cut: out.cut,
                stats: out.stats,
            })
        }
        Algorithm::Trimmer => {
            if file.format.has_edge_weights() {
                return Err(Error::WeightedInput("input format carries hyperedge weights".into()));
            }
            trimmer_mincut(h, args.seed).map(plain)
        }
        Algorithm::Bip => {
            let limits = BipLimits {
                mode: ModelMode::Representative,
                deadline,
                ..Default::default()
            };
            bip::bip_mincut(&compact(h), &limits).map(plain)
        }
        Algorithm::Exact => {
            let opts = OrderingOptions { start: 0, deadline };
            mincut_ordering_traced(h, opts).map(|t| plain(t.cut))
        }
        Algorithm::Oracle => brute_mincut(h).map(plain),
    }
}

fn write_partition(path: &PathBuf, side: &[bool]) -> anyhow::Result<()> {
    let text: String = side.iter().map(|&s| if s { "0\n" } else { "1\n" }).collect();
    std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn write_stats(path: &PathBuf, stats: &[RuleStat]) -> anyhow::Result<()> {
    let mut text = String::new();
    for s in stats {
        text.push_str(&serde_json::to_string(s)?);
        text.push('\n');
    }
    std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

/// Runs one solve. Problems with the input or the algorithm become a
/// `failed` record; only output-file errors are returned as `Err`.
pub fn run_solve(args: &SolveArgs) -> anyhow::Result<RunRecord> {
    let mut record = RunRecord {
        instance: args.input.display().to_string(),
        algorithm: args.algo,
        value: None,
        status: Status::Failed,
        reason: None,
        provenance: None,
        runtime_ms: 0.0,
        peak_memory_bytes: 0,
        seed: args.seed,
        vertices: 0,
        edges: 0,
        pins: 0,
        config: args.echo(),
        round_stats: Vec::new(),
    };
    let file = match read_hmetis(&args.input) {
        Ok(f) => f,
        Err(e) => {
            record.reason = Some(e.to_string());
            return Ok(record);
        }
    };
    let h = &file.hypergraph;
    record.vertices = h.num_vertices();
    record.edges = h.num_edges();
    record.pins = h.num_pins();

    if let Some(limit) = args.time_limit {
        if !(limit >= 0.0 && limit.is_finite()) {
            record.reason = Some(format!("invalid time limit {limit}"));
            return Ok(record);
        }
    }
    alloc::reset_peak();
    let start = Instant::now();
    let deadline = args.time_limit.map(|s| start + Duration::from_secs_f64(s));
    let result = dispatch(args, &file, deadline);
    record.runtime_ms = start.elapsed().as_secs_f64() * 1e3;
    record.peak_memory_bytes = alloc::peak_bytes() as u64;

    match result {
        Ok(out) => {
            record.value = Some(out.cut.value);
            record.status = if out.cut.complete {
                Status::Ok
            } else {
                Status::TimeoutWithIncumbent
            };
            record.provenance = Some(out.cut.provenance.to_string());
            if let (Some(path), Some(side)) = (&args.partition_out, &out.cut.side) {
                write_partition(path, side)?;
            }
            if let Some(path) = &args.stats_out {
                write_stats(path, &out.stats)?;
            }
            record.round_stats = out.stats;
        }
        Err(e) => record.reason = Some(e.to_string()),
    }
    Ok(record)
}
