use std::fs;
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use coreperiph::rng::derive_seed;
use coreperiph::{
    classify_known_beta, cp_density, error_vector, find_cut_with, largest_score_gap, pearson,
    permutation_zscore, plant_high_degree_periphery, refine_partition, s_frac, spearman,
    BlockModelParams, KappaEnsemble, Method, Partition, RefineMode,
};
use coreperiph_cli::experiment::{
    lapsgn_partition, run_experiment, score_graph, ExperimentConfig, ExperimentMethod, Mode, Variant,
};
use coreperiph_cli::io;

#[derive(Parser)]
#[command(name = "coreperiph", version, about = "Core-periphery detection for undirected graphs")]
struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sample a graph with a planted core and periphery.
    Generate(GenerateArgs),
    /// Compute per-vertex coreness scores.
    Score(ScoreArgs),
    /// Split the vertices into core and periphery.
    Partition(PartitionArgs),
    /// Compare a predicted partition with a reference one.
    Eval(EvalArgs),
    /// Correlate two score files.
    Correlate(CorrelateArgs),
    /// Run a synthetic sweep and write CSV summaries.
    Experiment(ExperimentArgs),
}

#[derive(Args)]
struct GraphInput {
    /// Edge-list file.
    #[arg(long, short)]
    input: PathBuf,
    /// Vertex count, for graphs whose last vertices are isolated.
    #[arg(long)]
    n: Option<usize>,
}

#[derive(Args)]
struct ScoringArgs {
    /// degree, path, sampled-path, betweenness, lowrank or lap.
    #[arg(long, default_value = "path")]
    method: String,
    /// Sampling probability for sampled-path.
    #[arg(long, default_value_t = 0.1)]
    alpha: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Run spectral methods on the largest connected component only.
    #[arg(long)]
    lcc: bool,
}

#[derive(Args)]
struct GenerateArgs {
    /// block, c1, c2, xx1mx or planted-degree.
    #[arg(long, default_value = "block")]
    variant: String,
    #[arg(long, default_value_t = 100)]
    n: usize,
    /// Core fraction.
    #[arg(long, default_value_t = 0.5)]
    beta: f64,
    /// Block probabilities `p_cc,p_cp,p_pp` (block and planted-degree).
    #[arg(long, value_delimiter = ',', default_values_t = [0.5, 0.5, 0.27])]
    probs: Vec<f64>,
    /// Base probability (c1, c2).
    #[arg(long, default_value_t = 0.25)]
    p: f64,
    /// κ for c1/c2, x for xx1mx, selection probability for planted-degree.
    #[arg(long)]
    param: Option<f64>,
    /// Extra edges per planted vertex (planted-degree).
    #[arg(long, default_value_t = 15)]
    extra: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Edge-list output (default: stdout).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write the planted partition as CSV.
    #[arg(long)]
    truth: Option<PathBuf>,
}

#[derive(Args)]
struct ScoreArgs {
    #[command(flatten)]
    graph: GraphInput,
    #[command(flatten)]
    scoring: ScoringArgs,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct PartitionArgs {
    #[command(flatten)]
    graph: GraphInput,
    /// Any score method, or lapsgn.
    #[arg(long, default_value = "path")]
    method: String,
    /// Read scores from this CSV instead of computing them.
    #[arg(long, conflicts_with = "method")]
    scores: Option<PathBuf>,
    #[arg(long, default_value_t = 0.1)]
    alpha: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    lcc: bool,
    /// Known core fraction: take the top round(beta * n) vertices.
    #[arg(long, conflicts_with = "boundary_frac")]
    beta: Option<f64>,
    /// Find-Cut with boundary b = round(frac * n).
    #[arg(long)]
    boundary_frac: Option<f64>,
    /// Size penalty weight in the objective.
    #[arg(long, default_value_t = 0.0)]
    gamma: f64,
    /// Target core fraction of the size penalty.
    #[arg(long, default_value_t = 0.5)]
    target_beta: f64,
    /// Greedy local search after classification: move or swap.
    #[arg(long)]
    refine: Option<String>,
    /// Partition CSV output (default: stdout).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Objective curve CSV (Find-Cut only).
    #[arg(long)]
    curve: Option<PathBuf>,
}

#[derive(Args)]
struct EvalArgs {
    #[arg(long)]
    truth: PathBuf,
    #[arg(long)]
    pred: PathBuf,
    /// Permutations for the z-score (0 to skip).
    #[arg(long, default_value_t = 10000)]
    n_perm: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CorrelateArgs {
    /// Two score CSV files.
    #[arg(long, num_args = 2, required = true)]
    scores: Vec<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ExperimentArgs {
    #[arg(long, default_value = "c1")]
    variant: String,
    /// Grid of parameter values (see `generate --param`).
    #[arg(long, value_delimiter = ',', required = true)]
    grid: Vec<f64>,
    #[arg(long, default_value_t = 100)]
    n: usize,
    #[arg(long, default_value_t = 0.5)]
    beta: f64,
    #[arg(long, default_value_t = 0.25)]
    p: f64,
    #[arg(long, value_delimiter = ',', default_values_t = [0.4, 0.4, 0.2])]
    probs: Vec<f64>,
    #[arg(long, default_value_t = 15)]
    extra: usize,
    #[arg(long, default_value_t = 10)]
    runs: usize,
    #[arg(
        long,
        value_delimiter = ',',
        default_values_t = ["degree".to_string(), "path".into(), "lowrank".into(), "lap".into(), "lapsgn".into()]
    )]
    method: Vec<String>,
    /// Classify with the known core fraction.
    #[arg(long)]
    known_beta: bool,
    /// Classify with Find-Cut at these boundary fractions.
    #[arg(long, value_delimiter = ',')]
    boundary_frac: Vec<f64>,
    #[arg(long, default_value_t = 0.0)]
    gamma: f64,
    #[arg(long, default_value_t = 0.1)]
    alpha: f64,
    #[arg(long)]
    lcc: bool,
    /// Master seed.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Record wall-clock seconds per method.
    #[arg(long)]
    timings: bool,
    /// Output directory for records.csv, means.csv and failures.csv.
    #[arg(long)]
    out: PathBuf,
}

fn probs3(v: &[f64]) -> Result<[f64; 3]> {
    match v {
        [a, b, c] => Ok([*a, *b, *c]),
        _ => bail!("expected three probabilities p_cc,p_cp,p_pp"),
    }
}

fn generate(a: GenerateArgs) -> Result<()> {
    let variant: Variant = a.variant.parse()?;
    let base = probs3(&a.probs)?;
    let need = |name: &str| a.param.with_context(|| format!("--param is required for {name}"));
    let probs = match variant {
        Variant::Block => base,
        Variant::C1 => KappaEnsemble::C1.probabilities(a.p, need("c1")?)?,
        Variant::C2 => KappaEnsemble::C2.probabilities(a.p, need("c2")?)?,
        Variant::Xx1mx => {
            let x = need("xx1mx")?;
            [x, x, 1.0 - x]
        }
        Variant::PlantedDegree => base,
    };
    let planted = coreperiph::generate_block_model(&BlockModelParams::with_beta(a.n, a.beta, probs, a.seed)?)?;
    let graph = if variant == Variant::PlantedDegree {
        let select = a.param.unwrap_or(0.1);
        let out = plant_high_degree_periphery(&planted.graph, &planted.truth, select, a.extra, derive_seed(a.seed, 0, 1))?;
        out.graph
    } else {
        planted.graph
    };
    graph.write_edge_list(io::output(a.out.as_deref())?)?;
    if let Some(path) = a.truth {
        io::write_partition(io::output(Some(&path))?, &planted.truth)?;
    }
    Ok(())
}

fn score(a: ScoreArgs) -> Result<()> {
    let g = io::read_graph(&a.graph.input, a.graph.n)?;
    let method: Method = a.scoring.method.parse()?;
    let s = score_graph(&g, method, a.scoring.alpha, a.scoring.seed, a.scoring.lcc)?;
    io::write_scores(io::output(a.out.as_deref())?, &s.scores)
}

fn partition(a: PartitionArgs) -> Result<()> {
    let g = io::read_graph(&a.graph.input, a.graph.n)?;
    let n = g.n();
    let mut curve = None;
    let part: Partition = if a.scores.is_none() && a.method == "lapsgn" {
        lapsgn_partition(&g, a.lcc)?
    } else {
        let scores = match &a.scores {
            Some(path) => io::read_scores(path, Method::Degree)?,
            None => score_graph(&g, a.method.parse()?, a.alpha, a.seed, a.lcc)?,
        };
        if scores.len() != n {
            bail!("{} scores for a graph with {n} vertices", scores.len());
        }
        match (a.beta, a.boundary_frac) {
            (Some(beta), _) => classify_known_beta(&scores, beta)?,
            (None, frac) => {
                let b = ((frac.unwrap_or(0.1) * n as f64).round() as usize).max(1);
                let cut = find_cut_with(&g, &scores, b, a.gamma, a.target_beta)?;
                log::info!(
                    "core size {} (phi* = {}), objective {}",
                    cut.curve.argmax,
                    cut.curve.phi_star,
                    cut.curve.objective
                );
                if let Some((at, gap)) = largest_score_gap(&scores) {
                    log::info!("largest score gap {gap} below the top {at} vertices");
                }
                curve = Some(cut.curve);
                cut.partition
            }
        }
    };
    let part = match a.refine.as_deref() {
        Some(mode) => {
            let mode: RefineMode = mode.parse()?;
            let before = cp_density(&g, &part, a.gamma, a.target_beta);
            let refined = refine_partition(&g, &part, mode, a.gamma, a.target_beta)?;
            log::info!("refined objective {before} -> {}", cp_density(&g, &refined, a.gamma, a.target_beta));
            refined
        }
        None => part,
    };
    io::write_partition(io::output(a.out.as_deref())?, &part)?;
    match (a.curve, curve) {
        (Some(path), Some(c)) => io::write_curve(io::output(Some(&path))?, &c)?,
        (Some(_), None) => log::warn!("no objective curve for this classifier; --curve ignored"),
        _ => {}
    }
    Ok(())
}

fn eval(a: EvalArgs) -> Result<()> {
    let truth = io::read_partition(&a.truth)?;
    let pred = io::read_partition(&a.pred)?;
    let e = error_vector(&truth, &pred)?;
    let mut stats = vec![
        ("y1", e.y1.to_string()),
        ("y2", e.y2.to_string()),
        ("total", e.total().to_string()),
        ("s_frac", s_frac(&truth, &pred)?.to_string()),
    ];
    if a.n_perm > 0 {
        let z = permutation_zscore(&truth, &pred, a.n_perm, a.seed)?;
        stats.push(("perm_mean", z.mean.to_string()));
        stats.push(("perm_stdev", z.stdev.to_string()));
        stats.push(("z", z.z.map_or_else(|| "undefined".to_string(), |z| z.to_string())));
    }
    io::write_stats(io::output(a.out.as_deref())?, &stats)
}

fn correlate(a: CorrelateArgs) -> Result<()> {
    let x = io::read_scores(&a.scores[0], Method::Degree)?;
    let y = io::read_scores(&a.scores[1], Method::Degree)?;
    let show = |r: coreperiph::Result<f64>| r.map_or_else(|e| format!("undefined ({e})"), |v| v.to_string());
    let stats = [
        ("pearson", show(pearson(&x.scores, &y.scores))),
        ("spearman", show(spearman(&x.scores, &y.scores))),
    ];
    io::write_stats(io::output(a.out.as_deref())?, &stats)
}

fn experiment(a: ExperimentArgs) -> Result<()> {
    let mut modes = Vec::new();
    if a.known_beta {
        modes.push(Mode::KnownBeta);
    }
    modes.extend(a.boundary_frac.iter().map(|&f| Mode::Boundary(f)));
    if modes.is_empty() {
        modes.push(Mode::KnownBeta);
    }
    let cfg = ExperimentConfig {
        variant: a.variant.parse()?,
        grid: a.grid,
        n: a.n,
        beta: a.beta,
        p: a.p,
        probs: probs3(&a.probs)?,
        extra: a.extra,
        runs: a.runs,
        methods: a
            .method
            .iter()
            .map(|m| m.parse::<ExperimentMethod>())
            .collect::<coreperiph::Result<_>>()?,
        modes,
        gamma: a.gamma,
        alpha: a.alpha,
        lcc: a.lcc,
        master_seed: a.seed,
        record_timings: a.timings,
    };
    let result = run_experiment(&cfg)?;
    fs::create_dir_all(&a.out).with_context(|| format!("creating {}", a.out.display()))?;
    result.write_records(io::output(Some(&a.out.join("records.csv")))?)?;
    result.write_means(io::output(Some(&a.out.join("means.csv")))?)?;
    result.write_failures(io::output(Some(&a.out.join("failures.csv")))?)?;
    Ok(())
}

fn main() -> Result<()> {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        rayon::ThreadPoolBuilder::new().num_threads(threads).build_global()?;
    }
    match cli.command {
        Command::Generate(a) => generate(a),
        Command::Score(a) => score(a),
        Command::Partition(a) => partition(a),
        Command::Eval(a) => eval(a),
        Command::Correlate(a) => correlate(a),
        Command::Experiment(a) => experiment(a),
    }
}
