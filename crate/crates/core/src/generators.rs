//! Random graphs with a planted core and periphery.
//!
//! All block-model draws follow one documented stream order so that a seed
//! pins the graph exactly: one uniform `f64` per vertex pair, visiting the
//! core-core pairs in lexicographic order, then the core-periphery pairs,
//! then the periphery-periphery pairs. The pair is an edge when the draw is
//! below its block probability. Core vertices are `0..n_c`.

use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;
use rand::seq::index;
use rand::Rng as _;

use crate::error::{Error, Result};
use crate::graph::{Graph, Partition};
use crate::rng::rng_from_seed;

/// Parameters of the two-block model `G(p_cc, p_cp, p_pp, n_c, n_p)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlockModelParams {
    pub n_c: usize,
    pub n_p: usize,
    pub p_cc: f64,
    pub p_cp: f64,
    pub p_pp: f64,
    pub seed: u64,
}

impl BlockModelParams {
    /// `n` vertices of which `round(beta * n)` are core. `beta` is the core
    /// fraction.
    pub fn with_beta(n: usize, beta: f64, probs: [f64; 3], seed: u64) -> Result<Self> {
        if !(0.0..=1.0).contains(&beta) {
            return Err(Error::InvalidParameter(format!("beta = {beta} not in [0, 1]")));
        }
        let n_c = (beta * n as f64).round() as usize;
        let params = BlockModelParams {
            n_c,
            n_p: n - n_c,
            p_cc: probs[0],
            p_cp: probs[1],
            p_pp: probs[2],
            seed,
        };
        params.validate()?;
        Ok(params)
    }

    pub fn n(&self) -> usize {
        self.n_c + self.n_p
    }

    pub fn probabilities(&self) -> [f64; 3] {
        [self.p_cc, self.p_cp, self.p_pp]
    }

    pub fn validate(&self) -> Result<()> {
        if self.n() == 0 {
            return Err(Error::InvalidParameter("block model needs n >= 1".into()));
        }
        for (name, p) in [("p_cc", self.p_cc), ("p_cp", self.p_cp), ("p_pp", self.p_pp)] {
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::InvalidParameter(format!("{name} = {p} not in [0, 1]")));
            }
        }
        Ok(())
    }
}

/// A generated graph together with its planted partition.
#[derive(Debug, Clone)]
pub struct PlantedGraph {
    pub graph: Graph,
    pub truth: Partition,
}

/// Samples the two-block model. The first `n_c` ids are the core.
pub fn generate_block_model(params: &BlockModelParams) -> Result<PlantedGraph> {
    params.validate()?;
    let (n_c, n) = (params.n_c, params.n());
    let mut rng = rng_from_seed(params.seed);
    let mut edges = Vec::new();
    let mut draw = |u: usize, v: usize, p: f64| {
        if rng.gen::<f64>() < p {
            edges.push((u, v));
        }
    };
    for u in 0..n_c {
        for v in (u + 1)..n_c {
            draw(u, v, params.p_cc);
        }
    }
    for u in 0..n_c {
        for v in n_c..n {
            draw(u, v, params.p_cp);
        }
    }
    for u in n_c..n {
        for v in (u + 1)..n {
            draw(u, v, params.p_pp);
        }
    }
    Ok(PlantedGraph {
        graph: Graph::from_edges(n, edges)?,
        truth: Partition::leading(n, n_c),
    })
}

/// The two κ-parametrised families of block models.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum KappaEnsemble {
    /// `(κ²p, κp, p)`
    C1,
    /// `(κ²p, κp, κp)`
    C2,
}

impl KappaEnsemble {
    /// Edge probabilities `(p_cc, p_cp, p_pp)` for base probability `p`.
    pub fn probabilities(self, p: f64, kappa: f64) -> Result<[f64; 3]> {
        let probs = match self {
            KappaEnsemble::C1 => [kappa * kappa * p, kappa * p, p],
            KappaEnsemble::C2 => [kappa * kappa * p, kappa * p, kappa * p],
        };
        if probs.iter().any(|q| !(0.0..=1.0).contains(q)) {
            return Err(Error::InvalidParameter(format!(
                "kappa = {kappa}, p = {p} gives probabilities {probs:?} outside [0, 1]"
            )));
        }
        Ok(probs)
    }
}

impl fmt::Display for KappaEnsemble {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            KappaEnsemble::C1 => "c1",
            KappaEnsemble::C2 => "c2",
        })
    }
}

impl FromStr for KappaEnsemble {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "c1" => Ok(KappaEnsemble::C1),
            "c2" => Ok(KappaEnsemble::C2),
            _ => Err(Error::InvalidParameter(format!("unknown ensemble `{s}`"))),
        }
    }
}

/// Samples `C1(n, β, p, κ)` or `C2(n, β, p, κ)`.
pub fn generate_kappa_ensemble(
    variant: KappaEnsemble,
    n: usize,
    beta: f64,
    p: f64,
    kappa: f64,
    seed: u64,
) -> Result<PlantedGraph> {
    let probs = variant.probabilities(p, kappa)?;
    generate_block_model(&BlockModelParams::with_beta(n, beta, probs, seed)?)
}

/// The idealised core-periphery pattern: ones everywhere except the
/// periphery-periphery block.
///
/// Returns the matrix as written, with ones on the core diagonal (it has
/// rank 2 whenever both blocks are non-empty), and the simple graph obtained
/// by zeroing the diagonal.
pub fn idealized(n_c: usize, n_p: usize) -> (DMatrix<f64>, Graph) {
    let n = n_c + n_p;
    let matrix = DMatrix::from_fn(n, n, |i, j| if i < n_c || j < n_c { 1.0 } else { 0.0 });
    let edges = (0..n_c).flat_map(|u| ((u + 1)..n).map(move |v| (u, v)));
    let graph = Graph::from_edges(n, edges).expect("idealized edges are simple");
    (matrix, graph)
}

/// Block-diagonal matrix `I_g ⊗ A₀` with `g` copies of the idealised
/// pattern on `n_c + n_p` vertices each.
pub fn hierarchical_blocks(g: usize, n_c: usize, n_p: usize) -> Result<DMatrix<f64>> {
    if g == 0 {
        return Err(Error::InvalidParameter("need at least one block".into()));
    }
    let (block, _) = idealized(n_c, n_p);
    let l = n_c + n_p;
    let mut out = DMatrix::zeros(g * l, g * l);
    for k in 0..g {
        out.view_mut((k * l, k * l), (l, l)).copy_from(&block);
    }
    Ok(out)
}

/// Output of [`plant_high_degree_periphery`].
#[derive(Debug, Clone)]
pub struct PlantedDegree {
    pub graph: Graph,
    /// Peripheral vertices that were selected, in id order.
    pub selected: Vec<usize>,
    pub added_edges: usize,
    /// `(vertex, missing)` for selected vertices with fewer than `extra`
    /// peripheral non-neighbours available.
    pub shortfalls: Vec<(usize, usize)>,
}

/// Makes some peripheral vertices high-degree.
///
/// Peripheral vertices are visited in id order. Each is selected with
/// probability `select_prob` (one uniform draw); a selected vertex is joined
/// to `extra` peripheral non-neighbours sampled uniformly without
/// replacement from the current graph, so edges planted earlier count.
/// When fewer than `extra` candidates exist, all are joined and the
/// shortfall recorded.
pub fn plant_high_degree_periphery(
    g: &Graph,
    truth: &Partition,
    select_prob: f64,
    extra: usize,
    seed: u64,
) -> Result<PlantedDegree> {
    if truth.n() != g.n() {
        return Err(Error::SizeMismatch {
            expected: g.n(),
            actual: truth.n(),
        });
    }
    if !(0.0..=1.0).contains(&select_prob) {
        return Err(Error::InvalidParameter(format!(
            "select probability {select_prob} not in [0, 1]"
        )));
    }
    let n = g.n();
    let mut adjacent = vec![false; n * n];
    for &(u, v) in g.edges() {
        adjacent[u * n + v] = true;
        adjacent[v * n + u] = true;
    }
    let periphery = truth.periphery();
    let mut rng = rng_from_seed(seed);
    let mut edges = g.edges().to_vec();
    let mut selected = Vec::new();
    let mut shortfalls = Vec::new();
    for &v in &periphery {
        if rng.gen::<f64>() >= select_prob {
            continue;
        }
        selected.push(v);
        let candidates: Vec<usize> = periphery
            .iter()
            .copied()
            .filter(|&u| u != v && !adjacent[v * n + u])
            .collect();
        let chosen: Vec<usize> = if candidates.len() <= extra {
            if candidates.len() < extra {
                shortfalls.push((v, extra - candidates.len()));
            }
            candidates
        } else {
            index::sample(&mut rng, candidates.len(), extra)
                .into_iter()
                .map(|i| candidates[i])
                .collect()
        };
        for u in chosen {
            adjacent[v * n + u] = true;
            adjacent[u * n + v] = true;
            edges.push((u.min(v), u.max(v)));
        }
    }
    for &(v, missing) in &shortfalls {
        log::warn!("peripheral vertex {v} is {missing} non-neighbour(s) short");
    }
    let added_edges = edges.len() - g.m();
    Ok(PlantedDegree {
        graph: Graph::from_edges(n, edges)?,
        selected,
        added_edges,
        shortfalls,
    })
}
