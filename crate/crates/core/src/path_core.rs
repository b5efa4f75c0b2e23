//! Transport-based coreness: Path-Core, Sampled-Path-Core and geodesic
//! betweenness.
//!
//! Path-Core scores a vertex `w` by summing, over every edge `(s, t)`, the
//! fraction of shortest `s`-`t` paths through `w` in the graph with that
//! edge removed. Each edge costs three breadth-first searches on `G \ (s, t)`:
//!
//! 1. from `s`, recording distances `d_s`;
//! 2. from `t`, recording distances `d_t` and counting shortest paths from
//!    `t` only along edges that step one closer to `s`, so `σ_t(w)` is
//!    non-zero exactly on vertices of a shortest `s`-`t` path;
//! 3. from `s` again, restricted to edges that step one closer to `t`,
//!    counting `σ_s`.
//!
//! Vertex `w ∉ {s, t}` then receives `σ_s(w) σ_t(w) / σ_s(t)`. When removing
//! the edge disconnects `s` from `t` the edge contributes nothing.
//!
//! The edge loop runs on the rayon pool. Edges are split into fixed-size
//! blocks that depend only on `m`; each block is summed in edge order and the
//! block totals are added in block order, so the result is bit-identical for
//! any number of threads.

use std::collections::VecDeque;

use rand::Rng as _;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rng::rng_from_seed;
use crate::score::{Method, ScoreVector};

/// Scratch buffers for one edge's three searches.
struct EdgeSearch {
    d_s: Vec<i64>,
    d_t: Vec<i64>,
    sigma_s: Vec<f64>,
    sigma_t: Vec<f64>,
    on_path: Vec<bool>,
    visited: Vec<usize>,
    queue: VecDeque<usize>,
}

impl EdgeSearch {
    fn new(n: usize) -> Self {
        EdgeSearch {
            d_s: vec![-1; n],
            d_t: vec![-1; n],
            sigma_s: vec![0.0; n],
            sigma_t: vec![0.0; n],
            on_path: vec![false; n],
            visited: Vec::with_capacity(n),
            queue: VecDeque::with_capacity(n),
        }
    }

    fn reset(&mut self) {
        self.d_s.fill(-1);
        self.d_t.fill(-1);
        self.sigma_s.fill(0.0);
        self.sigma_t.fill(0.0);
        for &v in &self.visited {
            self.on_path[v] = false;
        }
        self.visited.clear();
    }

    /// Adds the contribution of edge `(s, t)` to `scores`.
    fn accumulate(&mut self, g: &Graph, s: usize, t: usize, scores: &mut [f64]) {
        self.reset();
        let removed = |w: usize, u: usize| (w == s && u == t) || (w == t && u == s);

        // distances from s in G'
        self.d_s[s] = 0;
        self.queue.push_back(s);
        while let Some(w) = self.queue.pop_front() {
            for &u in g.neighbors(w) {
                if self.d_s[u] < 0 && !removed(w, u) {
                    self.d_s[u] = self.d_s[w] + 1;
                    self.queue.push_back(u);
                }
            }
        }
        if self.d_s[t] < 0 {
            return;
        }

        // distances from t, and path counts from t toward s
        self.d_t[t] = 0;
        self.sigma_t[t] = 1.0;
        self.queue.push_back(t);
        while let Some(w) = self.queue.pop_front() {
            for &u in g.neighbors(w) {
                if removed(w, u) {
                    continue;
                }
                if self.d_t[u] < 0 {
                    self.d_t[u] = self.d_t[w] + 1;
                    self.queue.push_back(u);
                }
                if self.d_s[u] >= 0 && self.d_s[u] < self.d_s[w] {
                    self.sigma_t[u] += self.sigma_t[w];
                }
            }
        }

        // path counts from s toward t, visiting only shortest-path vertices
        self.sigma_s[s] = 1.0;
        self.on_path[s] = true;
        self.visited.push(s);
        self.queue.push_back(s);
        while let Some(w) = self.queue.pop_front() {
            for &u in g.neighbors(w) {
                if removed(w, u) || self.d_t[u] >= self.d_t[w] {
                    continue;
                }
                if !self.on_path[u] {
                    self.on_path[u] = true;
                    self.visited.push(u);
                    self.queue.push_back(u);
                }
                self.sigma_s[u] += self.sigma_s[w];
            }
        }

        let total = self.sigma_s[t];
        for &w in &self.visited {
            if w != s && w != t {
                scores[w] += self.sigma_s[w] * self.sigma_t[w] / total;
            }
        }
    }
}

/// Block length for the deterministic parallel reduction; a function of the
/// work size only.
fn block_len(items: usize) -> usize {
    256.max(items.div_ceil(512))
}

/// Sums per-item score contributions in a thread-count independent order.
fn reduce_blocks<T, F, S>(n: usize, items: &[T], init: F, visit: impl Fn(&mut S, &T, &mut [f64]) + Sync) -> Vec<f64>
where
    T: Sync,
    F: Fn() -> S + Sync,
{
    let partials: Vec<Vec<f64>> = items
        .par_chunks(block_len(items.len()))
        .map(|block| {
            let mut state = init();
            let mut acc = vec![0.0; n];
            for item in block {
                visit(&mut state, item, &mut acc);
            }
            acc
        })
        .collect();
    let mut total = vec![0.0; n];
    for part in partials {
        for (t, p) in total.iter_mut().zip(part) {
            *t += p;
        }
    }
    total
}

fn path_core_over(g: &Graph, edges: &[(usize, usize)]) -> Vec<f64> {
    let n = g.n();
    reduce_blocks(
        n,
        edges,
        || EdgeSearch::new(n),
        |search, &(s, t), acc| search.accumulate(g, s, t, acc),
    )
}

/// Path-Core scores of every vertex. `O(m²)` time, `O(n + m)` extra space
/// per worker.
pub fn path_core(g: &Graph) -> ScoreVector {
    ScoreVector::new(Method::Path, path_core_over(g, g.edges()))
}

/// Path-Core restricted to a random subset of edges: each edge's searches run
/// independently with probability `alpha`, drawn in edge order from a stream
/// seeded by `seed`. The graph itself is not sparsified.
pub fn sampled_path_core(g: &Graph, alpha: f64, seed: u64) -> Result<ScoreVector> {
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(Error::InvalidParameter(format!("alpha = {alpha} not in (0, 1]")));
    }
    let mut rng = rng_from_seed(seed);
    let sampled: Vec<(usize, usize)> = g
        .edges()
        .iter()
        .copied()
        .filter(|_| rng.gen::<f64>() < alpha)
        .collect();
    Ok(ScoreVector::new(Method::SampledPath, path_core_over(g, &sampled)))
}

struct SourceSearch {
    dist: Vec<i64>,
    sigma: Vec<f64>,
    delta: Vec<f64>,
    order: Vec<usize>,
    queue: VecDeque<usize>,
}

/// Geodesic betweenness: for each unordered pair `{j, k}` not containing
/// `i`, the fraction of shortest `j`-`k` paths through `i`. Disconnected
/// pairs contribute nothing. Brandes' accumulation, one search per source.
pub fn betweenness(g: &Graph) -> ScoreVector {
    let n = g.n();
    let sources: Vec<usize> = (0..n).collect();
    let totals = reduce_blocks(
        n,
        &sources,
        || SourceSearch {
            dist: vec![-1; n],
            sigma: vec![0.0; n],
            delta: vec![0.0; n],
            order: Vec::with_capacity(n),
            queue: VecDeque::with_capacity(n),
        },
        |st, &s, acc| {
            st.dist.fill(-1);
            st.sigma.fill(0.0);
            st.delta.fill(0.0);
            st.order.clear();
            st.dist[s] = 0;
            st.sigma[s] = 1.0;
            st.queue.push_back(s);
            while let Some(w) = st.queue.pop_front() {
                st.order.push(w);
                for &u in g.neighbors(w) {
                    if st.dist[u] < 0 {
                        st.dist[u] = st.dist[w] + 1;
                        st.queue.push_back(u);
                    }
                    if st.dist[u] == st.dist[w] + 1 {
                        st.sigma[u] += st.sigma[w];
                    }
                }
            }
            for &w in st.order.iter().rev() {
                for &u in g.neighbors(w) {
                    if st.dist[u] == st.dist[w] - 1 {
                        st.delta[u] += st.sigma[u] / st.sigma[w] * (1.0 + st.delta[w]);
                    }
                }
                if w != s {
                    acc[w] += st.delta[w];
                }
            }
        },
    );
    // every unordered pair was counted from both ends
    ScoreVector::new(Method::Betweenness, totals.into_iter().map(|x| x / 2.0).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    fn complete(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).flat_map(|u| ((u + 1)..n).map(move |v| (u, v)))).unwrap()
    }

    fn star(leaves: usize) -> Graph {
        Graph::from_edges(leaves + 1, (1..=leaves).map(|v| (0, v))).unwrap()
    }

    fn path3() -> Graph {
        Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap()
    }

    #[test]
    fn path_core_small_examples() {
        assert_eq!(path_core(&complete(3)).scores, vec![1.0; 3]);
        assert_eq!(path_core(&path3()).scores, vec![0.0; 3]);
        assert_eq!(path_core(&cycle(4)).scores, vec![2.0; 4]);
        assert_eq!(path_core(&Graph::empty(3)).scores, vec![0.0; 3]);
    }

    #[test]
    fn leaves_score_zero() {
        // triangle with a pendant vertex
        let g = Graph::from_edges(4, [(0, 1), (1, 2), (0, 2), (2, 3)]).unwrap();
        let s = path_core(&g).scores;
        assert_eq!(s[3], 0.0);
        assert_eq!(s, vec![1.0, 1.0, 1.0, 0.0]);
    }

    #[test]
    fn counts_multiple_shortest_paths() {
        // K4: removing (s,t) leaves two 2-hop paths, so each of the 3 edges
        // not touching a vertex gives it 1/2
        assert_eq!(path_core(&complete(4)).scores, vec![1.5; 4]);
    }

    #[test]
    fn sampled_full_rate_equals_exact() {
        let g = complete(6);
        assert_eq!(sampled_path_core(&g, 1.0, 3).unwrap().scores, path_core(&g).scores);
        assert_eq!(sampled_path_core(&Graph::empty(4), 0.5, 3).unwrap().scores, vec![0.0; 4]);
    }

    #[test]
    fn sampled_rejects_bad_rate() {
        for alpha in [0.0, -0.1, 1.5, f64::NAN] {
            assert!(sampled_path_core(&cycle(4), alpha, 0).is_err());
        }
    }

    #[test]
    fn sampled_on_cycle_takes_values_in_range() {
        let c4 = cycle(4);
        for seed in 0..20 {
            let s = sampled_path_core(&c4, 0.5, seed).unwrap();
            assert!(s.scores.iter().all(|&x| x == 0.0 || x == 1.0 || x == 2.0));
            assert_eq!(s, sampled_path_core(&c4, 0.5, seed).unwrap());
        }
    }

    #[test]
    fn betweenness_small_examples() {
        assert_eq!(betweenness(&complete(3)).scores, vec![0.0; 3]);
        assert_eq!(betweenness(&path3()).scores, vec![0.0, 1.0, 0.0]);
        assert_eq!(betweenness(&star(4)).scores, vec![6.0, 0.0, 0.0, 0.0, 0.0]);
        // C4: each vertex is middle for one opposite pair with 2 paths
        assert_eq!(betweenness(&cycle(4)).scores, vec![0.5; 4]);
    }

    #[test]
    fn vertex_transitive_graphs_have_uniform_scores() {
        for g in [cycle(5), cycle(7), complete(5)] {
            for s in [path_core(&g).scores, betweenness(&g).scores] {
                assert!(s.iter().all(|&x| (x - s[0]).abs() < 1e-12), "{s:?}");
            }
        }
    }

    #[test]
    fn independent_of_thread_count() {
        let edges: Vec<(usize, usize)> = (0..60)
            .flat_map(|u| ((u + 1)..60).filter(move |v| (u * 7 + v * 3) % 5 == 0).map(move |v| (u, v)))
            .collect();
        let g = Graph::from_edges(60, edges).unwrap();
        let run = |threads| {
            rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap()
                .install(|| (path_core(&g).scores, betweenness(&g).scores))
        };
        let one = run(1);
        assert_eq!(one, run(4));
    }
}
