//! Brute-force reference implementations shared by the integration tests.
//! They enumerate paths explicitly and share no code with the library.

#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Adjacency matrix of a graph given by its edge list.
pub fn adjacency(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<bool>> {
    let mut a = vec![vec![false; n]; n];
    for &(u, v) in edges {
        a[u][v] = true;
        a[v][u] = true;
    }
    a
}

fn extend(a: &[Vec<bool>], path: &mut Vec<usize>, on_path: &mut Vec<bool>, t: usize, out: &mut Vec<Vec<usize>>) {
    let last = *path.last().unwrap();
    if last == t {
        out.push(path.clone());
        return;
    }
    for w in 0..a.len() {
        if a[last][w] && !on_path[w] {
            on_path[w] = true;
            path.push(w);
            extend(a, path, on_path, t, out);
            path.pop();
            on_path[w] = false;
        }
    }
}

/// Every shortest `s`-`t` path, found by enumerating all simple paths and
/// keeping the shortest ones. Empty when `t` is unreachable.
pub fn shortest_paths(a: &[Vec<bool>], s: usize, t: usize) -> Vec<Vec<usize>> {
    let mut all = Vec::new();
    let mut on_path = vec![false; a.len()];
    on_path[s] = true;
    extend(a, &mut vec![s], &mut on_path, t, &mut all);
    let Some(best) = all.iter().map(Vec::len).min() else {
        return Vec::new();
    };
    all.retain(|p| p.len() == best);
    all
}

/// Adds `count(w) / total` for each interior vertex `w` of `paths`.
fn accumulate(paths: &[Vec<usize>], scores: &mut [f64]) {
    if paths.is_empty() {
        return;
    }
    let mut hits = vec![0usize; scores.len()];
    for p in paths {
        for &w in &p[1..p.len() - 1] {
            hits[w] += 1;
        }
    }
    for (s, h) in scores.iter_mut().zip(hits) {
        *s += h as f64 / paths.len() as f64;
    }
}

/// Path-Core by definition: for each edge, the fraction of shortest paths
/// between its endpoints through each vertex once the edge is removed.
pub fn path_core_oracle(n: usize, edges: &[(usize, usize)]) -> Vec<f64> {
    let mut scores = vec![0.0; n];
    for (i, &(s, t)) in edges.iter().enumerate() {
        let rest: Vec<_> = edges.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &e)| e).collect();
        let a = adjacency(n, &rest);
        accumulate(&shortest_paths(&a, s, t), &mut scores);
    }
    scores
}

/// Betweenness by definition, over unordered pairs.
pub fn betweenness_oracle(n: usize, edges: &[(usize, usize)]) -> Vec<f64> {
    let a = adjacency(n, edges);
    let mut scores = vec![0.0; n];
    for s in 0..n {
        for t in (s + 1)..n {
            accumulate(&shortest_paths(&a, s, t), &mut scores);
        }
    }
    scores
}

/// G(n, p) edge list.
pub fn gnp(n: usize, p: f64, rng: &mut ChaCha8Rng) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            if rng.gen::<f64>() < p {
                edges.push((u, v));
            }
        }
    }
    edges
}

pub fn is_connected(n: usize, edges: &[(usize, usize)]) -> bool {
    if n == 0 {
        return true;
    }
    let a = adjacency(n, edges);
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(u) = stack.pop() {
        for w in 0..n {
            if a[u][w] && !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    seen.into_iter().all(|x| x)
}

/// Random connected graph on `n` vertices by rejection sampling G(n, p).
pub fn random_connected(n: usize, p: f64, seed: u64) -> Vec<(usize, usize)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let edges = gnp(n, p, &mut rng);
        if is_connected(n, &edges) {
            return edges;
        }
    }
}

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations, ascending.
pub fn jacobi_eigenvalues(m: &[Vec<f64>]) -> Vec<f64> {
    let n = m.len();
    let mut a: Vec<Vec<f64>> = m.to_vec();
    for _sweep in 0..100 {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i][j] * a[i][j])
            .sum();
        if off < 1e-26 {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                if a[p][q].abs() < 1e-300 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (akp, akq) = (a[k][p], a[k][q]);
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[p][k], a[q][k]);
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    let mut ev: Vec<f64> = (0..n).map(|i| a[i][i]).collect();
    ev.sort_by(f64::total_cmp);
    ev
}
