use std::path::{Path, PathBuf};

use anyhow::{bail, Context};
use clap::Args;
use serde::Serialize;

use hypercut::hgraph::io::{read_hmetis, save_hmetis, HmetisFormat};
use hypercut::synth::{find_benchmark_core, random_hypergraph, randomize_weights, GenSpec};
use hypercut::{Hypergraph, Weight};

#[derive(Args, Clone, Debug)]
pub struct GenArgs {
    /// Existing instance to re-weight or reduce to a core.
    pub input: Option<PathBuf>,
    /// Generate a random instance instead of reading one.
    #[arg(long)]
    pub random: bool,
    /// Redraw all weights uniformly from LO..=HI.
    #[arg(long, num_args = 2, value_names = ["LO", "HI"])]
    pub weights: Option<Vec<Weight>>,
    /// Extract the first (k,2)-core whose minimum cut is below its minimum
    /// weighted degree. Applied before re-weighting.
    #[arg(long)]
    pub kcore: bool,
    #[arg(short = 'n', long, default_value_t = 8)]
    pub vertices: usize,
    #[arg(short = 'm', long, default_value_t = 12)]
    pub edges: usize,
    #[arg(long, default_value_t = 2)]
    pub min_size: usize,
    #[arg(long, default_value_t = 4)]
    pub max_size: usize,
    #[arg(long)]
    pub connected: bool,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Output file; a `.json` metadata sidecar is written next to it.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Serialize)]
pub struct GenMetadata {
    pub source: Option<String>,
    pub random: Option<GenSpec>,
    /// Transformations in the order applied.
    pub steps: Vec<String>,
    pub core_k: Option<usize>,
    pub core_lambda: Option<Weight>,
    pub core_min_weighted_degree: Option<Weight>,
    pub weight_range: Option<(Weight, Weight)>,
    pub seed: u64,
    pub vertices: usize,
    pub edges: usize,
    pub pins: usize,
}

pub fn sidecar_path(output: &Path) -> PathBuf {
    let mut name = output.as_os_str().to_owned();
    name.push(".json");
    PathBuf::from(name)
}

fn default_output(args: &GenArgs) -> PathBuf {
    match &args.input {
        Some(input) => {
            let stem = input
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_default();
            let suffix = if args.kcore { "core" } else { "weighted" };
            input.with_file_name(format!("{stem}.{suffix}.hgr"))
        }
        None => PathBuf::from(format!("random-n{}-m{}-s{}.hgr", args.vertices, args.edges, args.seed)),
    }
}

/// Writes the instance and its sidecar; returns the instance path.
pub fn run_gen(args: &GenArgs) -> anyhow::Result<PathBuf> {
    let mut meta = GenMetadata {
        source: None,
        random: None,
        steps: Vec::new(),
        core_k: None,
        core_lambda: None,
        core_min_weighted_degree: None,
        weight_range: None,
        seed: args.seed,
        vertices: 0,
        edges: 0,
        pins: 0,
    };
    let mut h: Hypergraph = match (&args.input, args.random) {
        (Some(_), true) => bail!("give either --random or an input file, not both"),
        (None, false) => bail!("nothing to generate: pass --random or an input file"),
        (None, true) => {
            let spec = GenSpec {
                vertices: (args.vertices, args.vertices),
                edges: (args.edges, args.edges),
                edge_size: (args.min_size, args.max_size),
                edge_weight: (1, 1),
                vertex_weight: (1, 1),
                connected: args.connected,
                seed: args.seed,
            };
            let h = random_hypergraph(&spec)?;
            meta.random = Some(spec);
            meta.steps.push("random".into());
            h
        }
        (Some(path), false) => {
            meta.source = Some(path.display().to_string());
            read_hmetis(path)
                .with_context(|| format!("reading {}", path.display()))?
                .hypergraph
        }
    };

    if args.kcore {
        let Some(core) = find_benchmark_core(&h)? else {
            bail!("no (k,2)-core with a non-trivial minimum cut");
        };
        meta.core_k = Some(core.k);
        meta.core_lambda = Some(core.lambda);
        meta.core_min_weighted_degree = Some(core.min_weighted_degree);
        meta.steps.push("kcore".into());
        h = core.core.hypergraph;
    }
    let mut format = None;
    if let Some(w) = &args.weights {
        let (lo, hi) = (w[0], w[1]);
        h = randomize_weights(&h, lo, hi, args.seed)?;
        meta.weight_range = Some((lo, hi));
        meta.steps.push("weights".into());
        if (lo, hi) != (1, 1) {
            format = Some(HmetisFormat::Both);
        }
    }

    meta.vertices = h.num_vertices();
    meta.edges = h.num_edges();
    meta.pins = h.num_pins();
    let out = args.output.clone().unwrap_or_else(|| default_output(args));
    save_hmetis(&h, format, &out).with_context(|| format!("writing {}", out.display()))?;
    let sidecar = sidecar_path(&out);
    std::fs::write(&sidecar, serde_json::to_string_pretty(&meta)? + "\n")
        .with_context(|| format!("writing {}", sidecar.display()))?;
    Ok(out)
}
