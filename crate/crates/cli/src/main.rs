use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use attrwalk::commands::{cmd_evaluate, cmd_generate, cmd_predict, cmd_stats, Outcome, RunConfig};
use attrwalk::config::ConfigFile;
use attrwalk::formats::Indexing;
use attrwalk::Result;
use attrwalk_core::evaluation::AucMode;
use attrwalk_core::method::Method;
use attrwalk_core::propagation::InitMode;
use clap::{ArgAction, Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "attrwalk", version, about = "Attribute-weighted SimRank link prediction")]
struct Cli {
    /// Raise log verbosity (-v info with per-sweep progress, -vv debug).
    #[arg(short, long, action = ArgAction::Count, global = true)]
    verbose: u8,

    /// `key = value` file supplying defaults for any long option.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Rank the most likely missing links of a graph.
    Predict(Common),
    /// Compare methods by AUC over repeated probe splits.
    Evaluate(Common),
    /// Print structural statistics of a graph.
    Stats(Common),
    /// Write a synthetic planted-partition graph with group attributes.
    Generate(GenerateArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum InitArg {
    Identity,
    Attrsim,
}

#[derive(Clone, Copy, ValueEnum)]
enum AucArg {
    Sampled,
    Exact,
}

macro_rules! value_enum_from_str {
    ($($t:ty),*) => {$(
        impl FromStr for $t {
            type Err = String;
            fn from_str(s: &str) -> std::result::Result<Self, String> {
                <Self as ValueEnum>::from_str(s, true)
            }
        }
    )*};
}
value_enum_from_str!(InitArg, AucArg);

#[derive(Args)]
struct Common {
    /// Edge list, one `u v` pair per line.
    #[arg(long)]
    edges: Option<PathBuf>,
    /// Node attribute file.
    #[arg(long)]
    attrs: Option<PathBuf>,
    /// Whether node ids in input files start at 0 or 1.
    #[arg(long, value_enum)]
    indexing: Option<Indexing>,
    /// Comma-separated methods, or `all`.
    #[arg(long)]
    method: Option<String>,
    /// Attenuation coefficient.
    #[arg(long)]
    c: Option<f64>,
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long)]
    max_iter: Option<usize>,
    #[arg(long, value_enum)]
    init: Option<InitArg>,
    #[arg(long)]
    lp_epsilon: Option<f64>,
    #[arg(long)]
    katz_beta: Option<f64>,
    /// Fraction of edges moved to the probe set.
    #[arg(long)]
    split: Option<f64>,
    #[arg(long)]
    reps: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    top_k: Option<usize>,
    /// Output file (predict, stats) or prefix for `.txt` and `.jsonl` (evaluate).
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    auc: Option<AucArg>,
    #[arg(long)]
    auc_samples: Option<u64>,
    /// Dataset label used in reports; defaults to the edge file stem.
    #[arg(long)]
    dataset: Option<String>,
    /// Add wall-clock seconds to evaluation reports.
    #[arg(long)]
    timings: bool,
    /// Write the attribute similarity matrix to this file.
    #[arg(long)]
    dump_sim: Option<PathBuf>,
    /// Write the full score matrix to this file.
    #[arg(long)]
    dump_scores: Option<PathBuf>,
    /// Write the `original_id,dense_index` mapping to this file.
    #[arg(long)]
    id_map: Option<PathBuf>,
}

#[derive(Args)]
struct GenerateArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long)]
    nodes: Option<usize>,
    #[arg(long)]
    groups: Option<usize>,
    #[arg(long)]
    p_in: Option<f64>,
    #[arg(long)]
    p_out: Option<f64>,
    /// Attribute mass moved off a node's own block.
    #[arg(long)]
    noise: Option<f64>,
    #[arg(long)]
    attrs_per_group: Option<usize>,
}

fn resolve(args: Common, file: &ConfigFile, default_methods: &str) -> Result<RunConfig> {
    let d = RunConfig::default();
    let mut cfg = RunConfig {
        edges: file.pick(args.edges.map(|p| p.display().to_string()), "edges")?.map(PathBuf::from),
        attrs: file.pick(args.attrs.map(|p| p.display().to_string()), "attrs")?.map(PathBuf::from),
        out: file.pick(args.out.map(|p| p.display().to_string()), "out")?.map(PathBuf::from),
        indexing: file.pick_or(args.indexing, "indexing", d.indexing)?,
        top_k: file.pick_or(args.top_k, "top-k", d.top_k)?,
        dataset: file.pick(args.dataset, "dataset")?,
        dump_sim: args.dump_sim,
        dump_scores: args.dump_scores,
        id_map: args.id_map,
        ..d
    };
    let methods = file.pick_or(args.method, "method", default_methods.to_string())?;
    cfg.methods = Method::parse_list(&methods)?;

    let e = &mut cfg.experiment;
    let p = &mut e.propagation;
    p.c = file.pick_or(args.c, "c", p.c)?;
    p.tolerance = file.pick_or(args.tol, "tol", p.tolerance)?;
    p.max_iterations = file.pick_or(args.max_iter, "max-iter", p.max_iterations)?;
    if let Some(init) = file.pick(args.init, "init")? {
        p.init_mode = match init {
            InitArg::Identity => InitMode::Identity,
            InitArg::Attrsim => InitMode::AttributeSimilarity,
        };
    }
    p.validate()?;
    e.baseline.lp_epsilon = file.pick_or(args.lp_epsilon, "lp-epsilon", e.baseline.lp_epsilon)?;
    e.baseline.katz_beta = file.pick_or(args.katz_beta, "katz-beta", e.baseline.katz_beta)?;
    e.baseline.validate()?;
    e.split_fraction = file.pick_or(args.split, "split", e.split_fraction)?;
    e.repetitions = file.pick_or(args.reps, "reps", e.repetitions)?;
    e.master_seed = file.pick_or(args.seed, "seed", e.master_seed)?;
    if let Some(auc) = file.pick(args.auc, "auc")? {
        e.auc_mode = match auc {
            AucArg::Sampled => AucMode::Sampled,
            AucArg::Exact => AucMode::Exact,
        };
    }
    e.auc_samples = file.pick_or(args.auc_samples, "auc-samples", e.auc_samples)?;
    e.record_timing = args.timings || file.pick_or(None, "timings", false)?;
    cfg.planted.seed = e.master_seed;
    Ok(cfg)
}

fn resolve_generate(args: GenerateArgs, file: &ConfigFile) -> Result<RunConfig> {
    let mut cfg = resolve(args.common, file, "randwalk")?;
    let g = &mut cfg.planted;
    g.n = file.pick_or(args.nodes, "nodes", g.n)?;
    g.k_groups = file.pick_or(args.groups, "groups", g.k_groups)?;
    g.p_in = file.pick_or(args.p_in, "p-in", g.p_in)?;
    g.p_out = file.pick_or(args.p_out, "p-out", g.p_out)?;
    g.attr_noise = file.pick_or(args.noise, "noise", g.attr_noise)?;
    g.attrs_per_group = file.pick_or(args.attrs_per_group, "attrs-per-group", g.attrs_per_group)?;
    g.validate()?;
    Ok(cfg)
}

fn run(cli: Cli) -> Result<Outcome> {
    let file = match &cli.config {
        Some(path) => ConfigFile::load(path)?,
        None => ConfigFile::default(),
    };
    let ok = Outcome { converged: true };
    match cli.command {
        Command::Predict(args) => cmd_predict(&resolve(args, &file, "randwalk")?),
        Command::Evaluate(args) => Ok(cmd_evaluate(&resolve(args, &file, "all")?)?.1),
        Command::Stats(args) => cmd_stats(&resolve(args, &file, "randwalk")?).map(|_| ok),
        Command::Generate(args) => cmd_generate(&resolve_generate(args, &file)?).map(|_| ok),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            // usage mistakes are configuration errors; help and version are not errors
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let level = match cli.verbose {
        0 => "warn",
        1 => "info",
        _ => "debug",
    };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level))
        .format_timestamp(None)
        .init();
    match run(cli) {
        Ok(Outcome { converged: true }) => ExitCode::SUCCESS,
        Ok(Outcome { converged: false }) => {
            log::error!("an iterative method stopped at its sweep limit before converging");
            ExitCode::from(3)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
