//! The core-periphery density objective and classifiers built on it.
//!
//! For a partition `(C, P)` the objective is
//!
//! ```text
//! E(C,C)/Vol(C,C) + E(C,P)/Vol(C,P) - E(P,P)/Vol(P,P) - γ·| |C|/n - β |
//! ```
//!
//! with `Vol(X,X) = |X|(|X|-1)/2`, `Vol(X,Y) = |X||Y|`, and a density of 0
//! wherever the volume is 0.

use crate::error::{Error, Result};
use crate::graph::{Graph, Partition};
use crate::score::ScoreVector;

/// Edge counts between and within the two sides of a partition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct EdgeCounts {
    pub core_core: usize,
    pub core_periphery: usize,
    pub periphery_periphery: usize,
}

impl EdgeCounts {
    /// Counts by a full pass over the edges.
    pub fn of(g: &Graph, part: &Partition) -> EdgeCounts {
        let mut c = EdgeCounts::default();
        for &(u, v) in g.edges() {
            match (part.is_core(u), part.is_core(v)) {
                (true, true) => c.core_core += 1,
                (false, false) => c.periphery_periphery += 1,
                _ => c.core_periphery += 1,
            }
        }
        c
    }

    pub fn total(&self) -> usize {
        self.core_core + self.core_periphery + self.periphery_periphery
    }

    /// Counts after periphery vertex `v` with `core_nbrs` core neighbours
    /// and degree `deg` joins the core.
    fn with_joined(self, core_nbrs: usize, deg: usize) -> EdgeCounts {
        EdgeCounts {
            core_core: self.core_core + core_nbrs,
            core_periphery: self.core_periphery + deg - 2 * core_nbrs,
            periphery_periphery: self.periphery_periphery - (deg - core_nbrs),
        }
    }

    /// Counts after core vertex `v` with `core_nbrs` core neighbours and
    /// degree `deg` leaves the core.
    fn with_left(self, core_nbrs: usize, deg: usize) -> EdgeCounts {
        EdgeCounts {
            core_core: self.core_core - core_nbrs,
            core_periphery: self.core_periphery + 2 * core_nbrs - deg,
            periphery_periphery: self.periphery_periphery + deg - core_nbrs,
        }
    }
}

fn density(edges: usize, vol: f64) -> f64 {
    if vol == 0.0 {
        0.0
    } else {
        edges as f64 / vol
    }
}

/// Objective from edge counts and the core size.
pub fn objective_from_counts(counts: EdgeCounts, n_core: usize, n: usize, gamma: f64, beta: f64) -> f64 {
    let c = n_core as f64;
    let p = (n - n_core) as f64;
    let value = density(counts.core_core, c * (c - 1.0) / 2.0)
        + density(counts.core_periphery, c * p)
        - density(counts.periphery_periphery, p * (p - 1.0) / 2.0);
    if gamma == 0.0 {
        value
    } else {
        value - gamma * (c / n as f64 - beta).abs()
    }
}

/// `E(C,C) + E(C,P) - E(P,P)`.
pub fn cp_connectivity(g: &Graph, part: &Partition) -> f64 {
    let c = EdgeCounts::of(g, part);
    c.core_core as f64 + c.core_periphery as f64 - c.periphery_periphery as f64
}

/// The density objective with size penalty `γ·| |C|/n - β |`.
pub fn cp_density(g: &Graph, part: &Partition, gamma: f64, beta: f64) -> f64 {
    objective_from_counts(EdgeCounts::of(g, part), part.core_size(), g.n(), gamma, beta)
}

/// The objective at every admissible core size of a Find-Cut sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct ObjectiveCurve {
    /// Candidate core sizes `b..=n-b`.
    pub cut_points: Vec<usize>,
    pub values: Vec<f64>,
    /// Core size with the largest objective (smallest such size on ties).
    pub argmax: usize,
    /// Objective value at `argmax`.
    pub objective: f64,
    /// `argmax / n`.
    pub phi_star: f64,
}

/// Result of [`find_cut`].
#[derive(Debug, Clone, PartialEq)]
pub struct FindCut {
    pub partition: Partition,
    pub curve: ObjectiveCurve,
    /// Score of the lowest-ranked core vertex.
    pub threshold: f64,
}

/// Find-Cut with `γ = 0`.
pub fn find_cut(g: &Graph, scores: &ScoreVector, b: usize) -> Result<FindCut> {
    find_cut_with(g, scores, b, 0.0, 0.0)
}

/// Sorts vertices by score and takes the top-`n_c` prefix that maximises
/// the objective over `b <= n_c <= n - b`. Edge counts are updated as each
/// vertex crosses the cut, so the sweep costs `O(m + n log n)`.
pub fn find_cut_with(g: &Graph, scores: &ScoreVector, b: usize, gamma: f64, beta: f64) -> Result<FindCut> {
    let n = g.n();
    if scores.len() != n {
        return Err(Error::SizeMismatch {
            expected: n,
            actual: scores.len(),
        });
    }
    if b < 1 || 2 * b > n {
        return Err(Error::InvalidParameter(format!(
            "boundary b = {b} must satisfy 1 <= b <= n/2 with n = {n}"
        )));
    }
    let order = scores.ranking();
    let mut core_nbrs = vec![0usize; n];
    let mut counts = EdgeCounts {
        periphery_periphery: g.m(),
        ..EdgeCounts::default()
    };
    let mut cut_points = Vec::with_capacity(n - 2 * b + 1);
    let mut values = Vec::with_capacity(n - 2 * b + 1);
    for (k, &v) in order.iter().enumerate().take(n - b) {
        counts = counts.with_joined(core_nbrs[v], g.degree(v));
        for &w in g.neighbors(v) {
            core_nbrs[w] += 1;
        }
        let n_core = k + 1;
        if n_core >= b {
            cut_points.push(n_core);
            values.push(objective_from_counts(counts, n_core, n, gamma, beta));
        }
    }
    let mut best = 0;
    for (i, &value) in values.iter().enumerate() {
        if value > values[best] {
            best = i;
        }
    }
    let argmax = cut_points[best];
    let partition = top_set(n, &order[..argmax]);
    Ok(FindCut {
        threshold: scores.scores[order[argmax - 1]],
        curve: ObjectiveCurve {
            objective: values[best],
            phi_star: argmax as f64 / n as f64,
            argmax,
            cut_points,
            values,
        },
        partition,
    })
}

fn top_set(n: usize, core: &[usize]) -> Partition {
    let mut mask = vec![false; n];
    for &v in core {
        mask[v] = true;
    }
    Partition::from_mask(mask)
}

/// Top-`round(βn)` vertices by score form the core (ties by ascending id).
pub fn classify_known_beta(scores: &ScoreVector, beta: f64) -> Result<Partition> {
    if !(beta > 0.0 && beta < 1.0) {
        return Err(Error::InvalidParameter(format!("beta = {beta} must lie in (0, 1)")));
    }
    let n = scores.len();
    let n_core = (beta * n as f64).round() as usize;
    if n_core == 0 {
        log::warn!("round(beta * n) = 0 for beta = {beta}, n = {n}: the core is empty");
    }
    let order = scores.ranking();
    Ok(top_set(n, &order[..n_core]))
}

/// Position and size of the largest drop between consecutive sorted scores,
/// as `(core size above the drop, drop)`. `None` for fewer than two scores.
pub fn largest_score_gap(scores: &ScoreVector) -> Option<(usize, f64)> {
    let order = scores.ranking();
    let s = &scores.scores;
    order
        .windows(2)
        .enumerate()
        .map(|(i, w)| (i + 1, s[w[0]] - s[w[1]]))
        .fold(None, |best, cur| match best {
            Some((_, gap)) if gap >= cur.1 => best,
            _ => Some(cur),
        })
}

/// Local search step used by [`refine_partition`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RefineMode {
    /// Move one vertex to the other side.
    Move,
    /// Exchange one core vertex with one periphery vertex.
    Swap,
}

impl std::str::FromStr for RefineMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "move" => Ok(RefineMode::Move),
            "swap" => Ok(RefineMode::Swap),
            _ => Err(Error::InvalidParameter(format!("unknown refine mode `{s}`"))),
        }
    }
}

const IMPROVEMENT: f64 = 1e-12;

/// Greedy hill climbing on the objective: each iteration applies the best
/// single move or swap, stopping when no step improves by more than `1e-12`.
pub fn refine_partition(g: &Graph, part: &Partition, mode: RefineMode, gamma: f64, beta: f64) -> Result<Partition> {
    let n = g.n();
    if part.n() != n {
        return Err(Error::SizeMismatch {
            expected: n,
            actual: part.n(),
        });
    }
    let mut mask = part.mask().to_vec();
    let mut core_nbrs: Vec<usize> = (0..n)
        .map(|v| g.neighbors(v).iter().filter(|&&w| mask[w]).count())
        .collect();
    let mut counts = EdgeCounts::of(g, part);
    let mut n_core = part.core_size();
    let mut current = objective_from_counts(counts, n_core, n, gamma, beta);

    let flip = |v: usize, mask: &mut Vec<bool>, core_nbrs: &mut Vec<usize>| {
        let joined = !mask[v];
        mask[v] = joined;
        for &w in g.neighbors(v) {
            if joined {
                core_nbrs[w] += 1;
            } else {
                core_nbrs[w] -= 1;
            }
        }
    };

    loop {
        let mut best: Option<(f64, EdgeCounts, usize, Option<usize>)> = None;
        let mut consider = |value: f64, c: EdgeCounts, u: usize, w: Option<usize>| {
            if value > current + IMPROVEMENT && best.map_or(true, |b| value > b.0) {
                best = Some((value, c, u, w));
            }
        };
        match mode {
            RefineMode::Move => {
                for v in 0..n {
                    let (c, size) = if mask[v] {
                        (counts.with_left(core_nbrs[v], g.degree(v)), n_core - 1)
                    } else {
                        (counts.with_joined(core_nbrs[v], g.degree(v)), n_core + 1)
                    };
                    consider(objective_from_counts(c, size, n, gamma, beta), c, v, None);
                }
            }
            RefineMode::Swap => {
                for u in (0..n).filter(|&u| mask[u]) {
                    let out = counts.with_left(core_nbrs[u], g.degree(u));
                    for w in (0..n).filter(|&w| !mask[w]) {
                        let nbrs = core_nbrs[w] - usize::from(g.has_edge(u, w));
                        let c = out.with_joined(nbrs, g.degree(w));
                        consider(objective_from_counts(c, n_core, n, gamma, beta), c, u, Some(w));
                    }
                }
            }
        }
        let Some((value, c, u, w)) = best else { break };
        flip(u, &mut mask, &mut core_nbrs);
        match w {
            Some(w) => flip(w, &mut mask, &mut core_nbrs),
            None => {
                if mask[u] {
                    n_core += 1;
                } else {
                    n_core -= 1;
                }
            }
        }
        counts = c;
        current = value;
    }
    Ok(Partition::from_mask(mask))
}
