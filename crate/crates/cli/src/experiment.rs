//! Synthetic experiment sweeps.
//!
//! A sweep visits every grid point and run: it samples a graph, scores it
//! with each method, classifies with each requested mode, and records the
//! errors against the planted partition.
//!
//! The graph seed of grid point `i`, run `r` is
//! `derive_seed(master_seed, i, r)`. Planting high-degree vertices draws from
//! `derive_seed(graph_seed, 0, 1)` and Sampled-Path-Core from
//! `derive_seed(graph_seed, 0, 2)`. Runs execute in parallel but every
//! stream is fixed in advance and records are sorted before writing, so the
//! CSV output does not depend on the thread count.

use std::fmt;
use std::io::Write;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;

use coreperiph::rng::derive_seed;
use coreperiph::{
    classify_known_beta, cp_density, degree_core, error_vector, find_cut_with, generate_block_model,
    lap_core, lapsgn_core, lowrank_core, path_core, plant_high_degree_periphery, sampled_path_core,
    betweenness, BlockModelParams, Error, Graph, KappaEnsemble, Method, Partition, PlantedGraph,
    ScoreVector,
};

/// Graph ensemble swept by an experiment. The grid parameter means:
///
/// * `block`: `p_cp`, with `p_cc` and `p_pp` taken from the base probabilities;
/// * `c1`, `c2`: `κ`, with base probability `p`;
/// * `xx1mx`: `x` in `(x, x, 1 - x)`;
/// * `planted-degree`: the selection probability for planted high-degree
///   peripheral vertices on top of the base probabilities.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    Block,
    C1,
    C2,
    Xx1mx,
    PlantedDegree,
}

impl Variant {
    pub fn name(self) -> &'static str {
        match self {
            Variant::Block => "block",
            Variant::C1 => "c1",
            Variant::C2 => "c2",
            Variant::Xx1mx => "xx1mx",
            Variant::PlantedDegree => "planted-degree",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        [Variant::Block, Variant::C1, Variant::C2, Variant::Xx1mx, Variant::PlantedDegree]
            .into_iter()
            .find(|v| v.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown variant `{s}`")))
    }
}

/// A method run by the experiment: a scoring method, or LapSgn-Core which
/// classifies by eigenvector signs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExperimentMethod {
    Score(Method),
    LapSgn,
}

impl ExperimentMethod {
    pub fn name(self) -> &'static str {
        match self {
            ExperimentMethod::Score(m) => m.name(),
            ExperimentMethod::LapSgn => "lapsgn",
        }
    }

    fn is_spectral(self) -> bool {
        matches!(
            self,
            ExperimentMethod::LapSgn | ExperimentMethod::Score(Method::LowRank | Method::Lap)
        )
    }
}

impl fmt::Display for ExperimentMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ExperimentMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        if s == "lapsgn" {
            Ok(ExperimentMethod::LapSgn)
        } else {
            s.parse().map(ExperimentMethod::Score)
        }
    }
}

/// How scores become a partition.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Mode {
    /// The top `round(βn)` vertices are core.
    KnownBeta,
    /// Find-Cut with boundary `b = max(1, round(frac · n))`.
    Boundary(f64),
}

impl Mode {
    fn boundary(self, n: usize) -> Option<usize> {
        match self {
            Mode::KnownBeta => None,
            Mode::Boundary(frac) => Some(((frac * n as f64).round() as usize).max(1)),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub variant: Variant,
    pub grid: Vec<f64>,
    pub n: usize,
    /// Core fraction of the planted partition.
    pub beta: f64,
    /// Base probability of the `c1` and `c2` ensembles.
    pub p: f64,
    /// Base `(p_cc, p_cp, p_pp)` of the `block` and `planted-degree` variants.
    pub probs: [f64; 3],
    /// Extra edges per planted high-degree vertex.
    pub extra: usize,
    pub runs: usize,
    pub methods: Vec<ExperimentMethod>,
    pub modes: Vec<Mode>,
    pub gamma: f64,
    /// Sampling probability of Sampled-Path-Core.
    pub alpha: f64,
    /// Score spectral methods on the largest connected component only.
    pub lcc: bool,
    pub master_seed: u64,
    /// Record wall-clock seconds. Off by default since timings are the only
    /// output that differs between identical runs.
    pub record_timings: bool,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            variant: Variant::C1,
            grid: vec![1.5],
            n: 100,
            beta: 0.5,
            p: 0.25,
            probs: [0.4, 0.4, 0.2],
            extra: 15,
            runs: 1,
            methods: vec![
                ExperimentMethod::Score(Method::Degree),
                ExperimentMethod::Score(Method::Path),
                ExperimentMethod::Score(Method::LowRank),
                ExperimentMethod::Score(Method::Lap),
                ExperimentMethod::LapSgn,
            ],
            modes: vec![Mode::KnownBeta],
            gamma: 0.0,
            alpha: 0.1,
            lcc: false,
            master_seed: 0,
            record_timings: false,
        }
    }
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<(), Error> {
        let bad = |msg: &str| Err(Error::InvalidParameter(msg.to_string()));
        if self.grid.is_empty() {
            return bad("parameter grid is empty");
        }
        if self.runs == 0 {
            return bad("runs must be at least 1");
        }
        if self.methods.is_empty() {
            return bad("no methods requested");
        }
        if self.modes.is_empty() {
            return bad("no classification modes requested");
        }
        if !(self.beta > 0.0 && self.beta < 1.0) {
            return bad("beta must lie in (0, 1)");
        }
        Ok(())
    }
}

/// One (method, grid point, run, mode) outcome.
#[derive(Debug, Clone, PartialEq)]
pub struct Record {
    pub method: ExperimentMethod,
    pub param: f64,
    pub seed: u64,
    pub n: usize,
    /// Find-Cut boundary, or `None` for known-β classification.
    pub b: Option<usize>,
    pub y1: usize,
    pub y2: usize,
    /// Objective of the returned partition.
    pub objective: f64,
    /// Core fraction of the returned partition.
    pub phi_star: f64,
    pub seconds: Option<f64>,
}

impl Record {
    pub fn total(&self) -> usize {
        self.y1 + self.y2
    }
}

/// A grid point, or a single method on one run, that could not be evaluated.
#[derive(Debug, Clone, PartialEq)]
pub struct Failure {
    pub method: Option<ExperimentMethod>,
    pub param: f64,
    pub seed: Option<u64>,
    pub message: String,
}

/// Averages over runs for one (method, mode, grid point).
#[derive(Debug, Clone, PartialEq)]
pub struct Mean {
    pub method: ExperimentMethod,
    pub param: f64,
    pub b: Option<usize>,
    pub runs: usize,
    pub y1: f64,
    pub y2: f64,
    pub objective: f64,
    pub seconds: Option<f64>,
}

impl Mean {
    pub fn total(&self) -> f64 {
        self.y1 + self.y2
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentResult {
    pub config: ExperimentConfig,
    pub records: Vec<Record>,
    pub failures: Vec<Failure>,
}

fn sample_graph(cfg: &ExperimentConfig, param: f64, seed: u64) -> Result<PlantedGraph, Error> {
    let with = |probs| generate_block_model(&BlockModelParams::with_beta(cfg.n, cfg.beta, probs, seed)?);
    match cfg.variant {
        Variant::Block => with([cfg.probs[0], param, cfg.probs[2]]),
        Variant::C1 => with(KappaEnsemble::C1.probabilities(cfg.p, param)?),
        Variant::C2 => with(KappaEnsemble::C2.probabilities(cfg.p, param)?),
        Variant::Xx1mx => with([param, param, 1.0 - param]),
        Variant::PlantedDegree => {
            let base = with(cfg.probs)?;
            let planted = plant_high_degree_periphery(
                &base.graph,
                &base.truth,
                param,
                cfg.extra,
                derive_seed(seed, 0, 1),
            )?;
            Ok(PlantedGraph {
                graph: planted.graph,
                truth: base.truth,
            })
        }
    }
}

fn score(g: &Graph, method: Method, alpha: f64, seed: u64) -> Result<ScoreVector, Error> {
    match method {
        Method::Degree => Ok(degree_core(g)),
        Method::Path => Ok(path_core(g)),
        Method::SampledPath => sampled_path_core(g, alpha, derive_seed(seed, 0, 2)),
        Method::Betweenness => Ok(betweenness(g)),
        Method::LowRank => lowrank_core(g).map(|r| r.scores),
        Method::Lap => lap_core(g).map(|r| r.scores),
    }
}

/// Scores `g` with `method`, restricted to the largest connected component
/// when `lcc` is set. Vertices outside the component score one below the
/// component minimum.
pub fn score_graph(g: &Graph, method: Method, alpha: f64, seed: u64, lcc: bool) -> Result<ScoreVector, Error> {
    if !lcc {
        return score(g, method, alpha, seed);
    }
    let sub = g.largest_connected_component()?;
    let inner = score(&sub.graph, method, alpha, seed)?;
    let floor = inner.scores.iter().copied().fold(f64::INFINITY, f64::min) - 1.0;
    Ok(ScoreVector::new(method, sub.project(&inner.scores, g.n(), floor)))
}

/// LapSgn-Core on `g`, or on its largest connected component with every
/// other vertex peripheral.
pub fn lapsgn_partition(g: &Graph, lcc: bool) -> Result<Partition, Error> {
    if !lcc {
        return Ok(lapsgn_core(g)?.partition);
    }
    let sub = g.largest_connected_component()?;
    let inner = lapsgn_core(&sub.graph)?.partition;
    Ok(Partition::from_mask(sub.project(inner.mask(), g.n(), false)))
}

struct Job {
    grid: usize,
    run: usize,
    seed: u64,
}

fn run_job(cfg: &ExperimentConfig, job: &Job) -> (Vec<(usize, usize, Record)>, Vec<Failure>) {
    let param = cfg.grid[job.grid];
    let mut records = Vec::new();
    let mut failures = Vec::new();
    let planted = match sample_graph(cfg, param, job.seed) {
        Ok(p) => p,
        Err(e) => {
            failures.push(Failure {
                method: None,
                param,
                seed: Some(job.seed),
                message: e.to_string(),
            });
            return (records, failures);
        }
    };
    let g = &planted.graph;
    let n = g.n();
    for (mi, &method) in cfg.methods.iter().enumerate() {
        let lcc = cfg.lcc && method.is_spectral();
        let start = Instant::now();
        let scored = match method {
            ExperimentMethod::Score(m) => score_graph(g, m, cfg.alpha, job.seed, lcc).map(Ok),
            ExperimentMethod::LapSgn => lapsgn_partition(g, lcc).map(Err),
        };
        let score_time = start.elapsed().as_secs_f64();
        let scored = match scored {
            Ok(s) => s,
            Err(e) => {
                failures.push(Failure {
                    method: Some(method),
                    param,
                    seed: Some(job.seed),
                    message: e.to_string(),
                });
                continue;
            }
        };
        for (ki, &mode) in cfg.modes.iter().enumerate() {
            let b = mode.boundary(n);
            let start = Instant::now();
            let partition = match (&scored, b) {
                (Err(sign), _) => Ok(sign.clone()),
                (Ok(s), None) => classify_known_beta(s, cfg.beta),
                (Ok(s), Some(b)) => find_cut_with(g, s, b, cfg.gamma, cfg.beta).map(|c| c.partition),
            };
            let seconds = score_time + start.elapsed().as_secs_f64();
            let partition = match partition {
                Ok(p) => p,
                Err(e) => {
                    failures.push(Failure {
                        method: Some(method),
                        param,
                        seed: Some(job.seed),
                        message: e.to_string(),
                    });
                    continue;
                }
            };
            let errors = error_vector(&planted.truth, &partition).expect("same vertex set");
            records.push((
                mi,
                ki,
                Record {
                    method,
                    param,
                    seed: job.seed,
                    n,
                    b,
                    y1: errors.y1,
                    y2: errors.y2,
                    objective: cp_density(g, &partition, cfg.gamma, cfg.beta),
                    phi_star: partition.core_size() as f64 / n as f64,
                    seconds: cfg.record_timings.then_some(seconds),
                },
            ));
        }
    }
    (records, failures)
}

/// Runs the sweep. Grid points whose parameters are infeasible, and single
/// methods that fail on a sampled graph, are reported in
/// [`ExperimentResult::failures`] while the rest of the sweep continues.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentResult, Error> {
    cfg.validate()?;
    let jobs: Vec<Job> = (0..cfg.grid.len())
        .flat_map(|grid| {
            (0..cfg.runs).map(move |run| Job {
                grid,
                run,
                seed: derive_seed(cfg.master_seed, grid as u64, run as u64),
            })
        })
        .collect();
    let outputs: Vec<_> = jobs.par_iter().map(|job| run_job(cfg, job)).collect();

    let mut keyed = Vec::new();
    let mut failures = Vec::new();
    for (job, (records, fails)) in jobs.iter().zip(outputs) {
        for (mi, ki, r) in records {
            keyed.push(((mi, job.grid, job.run, ki), r));
        }
        failures.extend(fails);
    }
    keyed.sort_by_key(|(k, _)| *k);
    for f in &failures {
        log::warn!(
            "{} param={} seed={:?}: {}",
            f.method.map_or("graph", |m| m.name()),
            f.param,
            f.seed,
            f.message
        );
    }
    Ok(ExperimentResult {
        config: cfg.clone(),
        records: keyed.into_iter().map(|(_, r)| r).collect(),
        failures,
    })
}

impl ExperimentResult {
    /// Per-(method, mode, grid point) means, in record order.
    pub fn means(&self) -> Vec<Mean> {
        let mut out: Vec<(Mean, f64)> = Vec::new();
        for r in &self.records {
            let pos = out
                .iter()
                .position(|(m, _)| m.method == r.method && m.param == r.param && m.b == r.b);
            let idx = pos.unwrap_or_else(|| {
                out.push((
                    Mean {
                        method: r.method,
                        param: r.param,
                        b: r.b,
                        runs: 0,
                        y1: 0.0,
                        y2: 0.0,
                        objective: 0.0,
                        seconds: r.seconds.map(|_| 0.0),
                    },
                    0.0,
                ));
                out.len() - 1
            });
            let (m, secs) = &mut out[idx];
            m.runs += 1;
            m.y1 += r.y1 as f64;
            m.y2 += r.y2 as f64;
            m.objective += r.objective;
            *secs += r.seconds.unwrap_or(0.0);
        }
        out.into_iter()
            .map(|(mut m, secs)| {
                let k = m.runs as f64;
                m.y1 /= k;
                m.y2 /= k;
                m.objective /= k;
                m.seconds = m.seconds.map(|_| secs / k);
                m
            })
            .collect()
    }

    fn b_field(b: Option<usize>) -> String {
        b.map_or_else(|| "known".to_string(), |b| b.to_string())
    }

    /// Long-format CSV, one row per record.
    pub fn write_records<W: Write>(&self, out: W) -> csv::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record([
            "method", "variant", "param", "seed", "n", "beta", "b", "y1", "y2", "objective", "phi_star",
            "seconds",
        ])?;
        for r in &self.records {
            w.write_record([
                r.method.name().to_string(),
                self.config.variant.name().to_string(),
                r.param.to_string(),
                r.seed.to_string(),
                r.n.to_string(),
                self.config.beta.to_string(),
                Self::b_field(r.b),
                r.y1.to_string(),
                r.y2.to_string(),
                r.objective.to_string(),
                r.phi_star.to_string(),
                r.seconds.map_or_else(String::new, |s| s.to_string()),
            ])?;
        }
        w.flush()?;
        Ok(())
    }

    /// One row per (method, mode, grid point) with mean errors.
    pub fn write_means<W: Write>(&self, out: W) -> csv::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record([
            "method", "variant", "param", "b", "runs", "y1", "y2", "total", "objective", "seconds",
        ])?;
        for m in self.means() {
            w.write_record([
                m.method.name().to_string(),
                self.config.variant.name().to_string(),
                m.param.to_string(),
                Self::b_field(m.b),
                m.runs.to_string(),
                m.y1.to_string(),
                m.y2.to_string(),
                m.total().to_string(),
                m.objective.to_string(),
                m.seconds.map_or_else(String::new, |s| s.to_string()),
            ])?;
        }
        w.flush()?;
        Ok(())
    }

    /// Failures as CSV: `method,param,seed,message`.
    pub fn write_failures<W: Write>(&self, out: W) -> csv::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["method", "param", "seed", "message"])?;
        for f in &self.failures {
            w.write_record([
                f.method.map_or("", |m| m.name()).to_string(),
                f.param.to_string(),
                f.seed.map_or_else(String::new, |s| s.to_string()),
                f.message.clone(),
            ])?;
        }
        w.flush()?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> ExperimentConfig {
        ExperimentConfig {
            n: 40,
            grid: vec![1.4, 1.8],
            runs: 2,
            modes: vec![Mode::KnownBeta, Mode::Boundary(0.1)],
            master_seed: 5,
            ..ExperimentConfig::default()
        }
    }

    #[test]
    fn single_run_gives_one_record_per_method() {
        let cfg = ExperimentConfig {
            n: 30,
            ..ExperimentConfig::default()
        };
        let res = run_experiment(&cfg).unwrap();
        assert_eq!(res.records.len(), cfg.methods.len());
        let names: Vec<_> = res.records.iter().map(|r| r.method.name()).collect();
        assert_eq!(names, ["degree", "path", "lowrank", "lap", "lapsgn"]);
    }

    #[test]
    fn records_are_ordered_and_complete() {
        let cfg = small();
        let res = run_experiment(&cfg).unwrap();
        assert!(res.failures.is_empty());
        assert_eq!(res.records.len(), 5 * 2 * 2 * 2);
        assert_eq!(res.records[0].b, None);
        assert_eq!(res.records[1].b, Some(4));
        assert_eq!(res.records[0].seed, derive_seed(5, 0, 0));
        assert_eq!(res.records[2].seed, derive_seed(5, 0, 1));
        let means = res.means();
        assert_eq!(means.len(), 5 * 2 * 2);
        assert!(means.iter().all(|m| m.runs == 2));
    }

    #[test]
    fn infeasible_grid_points_are_reported() {
        let cfg = ExperimentConfig {
            grid: vec![1.5, 3.0],
            n: 30,
            ..ExperimentConfig::default()
        };
        let res = run_experiment(&cfg).unwrap();
        assert_eq!(res.records.len(), cfg.methods.len());
        assert_eq!(res.failures.len(), 1);
        assert_eq!(res.failures[0].param, 3.0);
    }

    #[test]
    fn output_is_independent_of_thread_count() {
        let cfg = small();
        let csv = |threads| {
            rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap()
                .install(|| {
                    let res = run_experiment(&cfg).unwrap();
                    let mut buf = Vec::new();
                    res.write_records(&mut buf).unwrap();
                    res.write_means(&mut buf).unwrap();
                    buf
                })
        };
        assert_eq!(csv(1), csv(3));
    }

    #[test]
    fn timings_only_change_the_seconds_column() {
        let plain = run_experiment(&small()).unwrap();
        let timed = run_experiment(&ExperimentConfig {
            record_timings: true,
            ..small()
        })
        .unwrap();
        for (a, b) in plain.records.iter().zip(&timed.records) {
            assert_eq!(a.seconds, None);
            assert!(b.seconds.unwrap() > 0.0);
            assert_eq!(Record { seconds: None, ..b.clone() }, *a);
        }
    }

    #[test]
    fn lcc_handles_isolated_vertices() {
        let cfg = ExperimentConfig {
            variant: Variant::Block,
            probs: [0.3, 0.05, 0.0],
            grid: vec![0.02],
            n: 60,
            methods: vec![ExperimentMethod::Score(Method::Lap), ExperimentMethod::LapSgn],
            ..ExperimentConfig::default()
        };
        let without = run_experiment(&cfg).unwrap();
        assert_eq!(without.failures.len(), 2);
        let with = run_experiment(&ExperimentConfig { lcc: true, ..cfg }).unwrap();
        assert!(with.failures.is_empty());
        assert_eq!(with.records.len(), 2);
    }

    #[test]
    fn parses_names() {
        assert_eq!("lapsgn".parse::<ExperimentMethod>().unwrap(), ExperimentMethod::LapSgn);
        assert_eq!(
            "sampled-path".parse::<ExperimentMethod>().unwrap(),
            ExperimentMethod::Score(Method::SampledPath)
        );
        assert_eq!("planted-degree".parse::<Variant>().unwrap(), Variant::PlantedDegree);
        assert!("nope".parse::<Variant>().is_err());
    }
}
