//! Simple undirected graphs and core/periphery partitions.
//!
//! Vertices are dense `0..n` indices. A [`Graph`] keeps its edge list in
//! lexicographic order (`u < v` within each pair) together with sorted
//! neighbour lists, and is immutable once built.

use std::collections::VecDeque;
use std::io::{BufRead, Write};

use nalgebra::DMatrix;

use crate::error::{Error, Result};

/// A simple undirected graph: no self-loops, no multi-edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<usize>>,
}

/// Result of parsing an edge-list stream.
#[derive(Debug, Clone, PartialEq)]
pub struct EdgeList {
    pub graph: Graph,
    /// Number of input lines that repeated an edge already seen.
    pub duplicates: usize,
}

impl Graph {
    /// Graph on `n` vertices with no edges.
    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            edges: Vec::new(),
            adjacency: vec![Vec::new(); n],
        }
    }

    /// Builds a graph from unordered vertex pairs. Repeated pairs are
    /// collapsed; self-loops and out-of-range ids are rejected.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut list = Vec::new();
        for (u, v) in edges {
            if u == v {
                return Err(Error::SelfLoop { line: 0, vertex: u });
            }
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            list.push((u.min(v), u.max(v)));
        }
        Ok(Self::from_normalized(n, list).0)
    }

    /// `edges` must already satisfy `u < v < n`. Returns the number of
    /// duplicates removed.
    fn from_normalized(n: usize, mut edges: Vec<(usize, usize)>) -> (Self, usize) {
        edges.sort_unstable();
        let before = edges.len();
        edges.dedup();
        let duplicates = before - edges.len();
        let mut adjacency = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        (
            Graph {
                n,
                edges,
                adjacency,
            },
            duplicates,
        )
    }

    /// Parses the whitespace-separated edge-list format: one `u v` pair per
    /// line, `#` comments and blank lines ignored.
    ///
    /// The vertex count is `n_override` if given, else the value of an
    /// `n=<count>` token in a leading comment (as written by
    /// [`Graph::write_edge_list`]), else `1 + max id`. Ids must be below an
    /// explicit count.
    pub fn from_edge_list<R: BufRead>(reader: R, n_override: Option<usize>) -> Result<EdgeList> {
        let mut edges = Vec::new();
        let mut max_id: Option<usize> = None;
        let mut declared = n_override;
        let mut seen_edge = false;
        for (idx, line) in reader.lines().enumerate() {
            let line_no = idx + 1;
            let line = line?;
            let trimmed = line.trim();
            if let Some(comment) = trimmed.strip_prefix('#') {
                if declared.is_none() && !seen_edge {
                    declared = comment
                        .split_whitespace()
                        .find_map(|t| t.strip_prefix("n=").and_then(|v| v.parse().ok()));
                }
                continue;
            }
            if trimmed.is_empty() {
                continue;
            }
            seen_edge = true;
            let mut tokens = trimmed.split_whitespace();
            let mut next_id = || -> Result<usize> {
                let tok = tokens.next().ok_or_else(|| Error::Parse {
                    line: line_no,
                    message: "expected two vertex ids".into(),
                })?;
                tok.parse::<usize>().map_err(|_| Error::Parse {
                    line: line_no,
                    message: format!("`{tok}` is not a non-negative integer"),
                })
            };
            let u = next_id()?;
            let v = next_id()?;
            if let Some(extra) = tokens.next() {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("unexpected trailing token `{extra}`"),
                });
            }
            if u == v {
                return Err(Error::SelfLoop {
                    line: line_no,
                    vertex: u,
                });
            }
            if let Some(n) = declared {
                if u.max(v) >= n {
                    return Err(Error::Parse {
                        line: line_no,
                        message: format!("vertex {} out of range for n = {n}", u.max(v)),
                    });
                }
            }
            max_id = Some(max_id.map_or(u.max(v), |m| m.max(u).max(v)));
            edges.push((u.min(v), u.max(v)));
        }
        let n = declared.unwrap_or_else(|| max_id.map_or(0, |m| m + 1));
        let (graph, duplicates) = Self::from_normalized(n, edges);
        if duplicates > 0 {
            log::warn!("collapsed {duplicates} duplicate edge(s)");
        }
        Ok(EdgeList { graph, duplicates })
    }

    /// Writes the graph in the edge-list format read by
    /// [`Graph::from_edge_list`], preceded by a comment carrying `n`.
    pub fn write_edge_list<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "# n={} m={}", self.n, self.m())?;
        for &(u, v) in &self.edges {
            writeln!(out, "{u} {v}")?;
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Sorted neighbours of `v`.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adjacency.iter().map(Vec::len).collect()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adjacency[u].binary_search(&v).is_ok()
    }

    /// Dense 0/1 adjacency matrix with zero diagonal.
    pub fn adjacency_matrix(&self) -> DMatrix<f64> {
        let mut a = DMatrix::zeros(self.n, self.n);
        for &(u, v) in &self.edges {
            a[(u, v)] = 1.0;
            a[(v, u)] = 1.0;
        }
        a
    }

    /// The complement graph: `(i, j)`, `i != j`, is an edge iff it is not an
    /// edge of `self`.
    pub fn complement(&self) -> Graph {
        let mut edges = Vec::with_capacity(self.n * self.n.saturating_sub(1) / 2 - self.m());
        for u in 0..self.n {
            let mut present = self.adjacency[u].iter().peekable();
            for v in (u + 1)..self.n {
                while present.next_if(|&&w| w < v).is_some() {}
                if present.next_if_eq(&&v).is_none() {
                    edges.push((u, v));
                }
            }
        }
        Self::from_normalized(self.n, edges).0
    }

    /// Connected-component label of each vertex, labels numbered in order of
    /// their smallest vertex.
    pub fn component_labels(&self) -> Vec<usize> {
        let mut label = vec![usize::MAX; self.n];
        let mut next = 0;
        let mut queue = VecDeque::new();
        for root in 0..self.n {
            if label[root] != usize::MAX {
                continue;
            }
            label[root] = next;
            queue.push_back(root);
            while let Some(w) = queue.pop_front() {
                for &u in &self.adjacency[w] {
                    if label[u] == usize::MAX {
                        label[u] = next;
                        queue.push_back(u);
                    }
                }
            }
            next += 1;
        }
        label
    }

    pub fn is_connected(&self) -> bool {
        self.component_labels().iter().all(|&l| l == 0)
    }

    /// Subgraph induced by `vertices` (which must be distinct), relabelled in
    /// the order given.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Subgraph {
        let mut new_id = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            new_id[v] = i;
        }
        let edges = self
            .edges
            .iter()
            .filter_map(|&(u, v)| {
                let (a, b) = (new_id[u], new_id[v]);
                (a != usize::MAX && b != usize::MAX).then(|| (a.min(b), a.max(b)))
            })
            .collect();
        Subgraph {
            graph: Self::from_normalized(vertices.len(), edges).0,
            original: vertices.to_vec(),
        }
    }

    /// The largest connected component, ties broken toward the component
    /// holding the smallest vertex id. Vertex order is preserved.
    pub fn largest_connected_component(&self) -> Result<Subgraph> {
        if self.n == 0 {
            return Err(Error::EmptyGraph);
        }
        let labels = self.component_labels();
        let count = labels.iter().max().map_or(0, |&l| l + 1);
        let mut sizes = vec![0usize; count];
        for &l in &labels {
            sizes[l] += 1;
        }
        // labels are ordered by smallest member, so the first maximum wins ties
        let best = (0..count).fold(0, |best, l| if sizes[l] > sizes[best] { l } else { best });
        let vertices: Vec<usize> = (0..self.n).filter(|&v| labels[v] == best).collect();
        Ok(self.induced_subgraph(&vertices))
    }
}

/// An induced subgraph together with the map back to the parent's ids.
#[derive(Debug, Clone)]
pub struct Subgraph {
    pub graph: Graph,
    /// `original[i]` is the parent id of subgraph vertex `i`.
    pub original: Vec<usize>,
}

impl Subgraph {
    /// Lifts per-vertex values on the subgraph to the parent graph, filling
    /// vertices outside the subgraph with `fill`.
    pub fn project<T: Clone>(&self, values: &[T], parent_n: usize, fill: T) -> Vec<T> {
        let mut out = vec![fill; parent_n];
        for (i, &v) in self.original.iter().enumerate() {
            out[v] = values[i].clone();
        }
        out
    }
}

/// Assignment of every vertex to the core or the periphery.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    is_core: Vec<bool>,
}

impl Partition {
    pub fn from_mask(is_core: Vec<bool>) -> Self {
        Partition { is_core }
    }

    /// Partition of `0..n` whose core is `core`; every other vertex is
    /// peripheral.
    pub fn from_core<I: IntoIterator<Item = usize>>(n: usize, core: I) -> Result<Self> {
        let mut is_core = vec![false; n];
        for v in core {
            if v >= n {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            is_core[v] = true;
        }
        Ok(Partition { is_core })
    }

    /// The first `n_core` vertices form the core.
    pub fn leading(n: usize, n_core: usize) -> Self {
        Partition {
            is_core: (0..n).map(|v| v < n_core).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.is_core.len()
    }

    pub fn is_core(&self, v: usize) -> bool {
        self.is_core[v]
    }

    pub fn mask(&self) -> &[bool] {
        &self.is_core
    }

    pub fn core_size(&self) -> usize {
        self.is_core.iter().filter(|&&c| c).count()
    }

    pub fn periphery_size(&self) -> usize {
        self.n() - self.core_size()
    }

    pub fn core(&self) -> Vec<usize> {
        (0..self.n()).filter(|&v| self.is_core[v]).collect()
    }

    pub fn periphery(&self) -> Vec<usize> {
        (0..self.n()).filter(|&v| !self.is_core[v]).collect()
    }

    /// Swaps the roles of core and periphery.
    pub fn flipped(&self) -> Self {
        Partition {
            is_core: self.is_core.iter().map(|c| !c).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(text: &str) -> Result<EdgeList> {
        Graph::from_edge_list(text.as_bytes(), None)
    }

    fn path3() -> Graph {
        Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap()
    }

    #[test]
    fn parses_path_graph() {
        let parsed = parse("0 1\n1 2").unwrap();
        assert_eq!(parsed.graph.n(), 3);
        assert_eq!(parsed.graph.m(), 2);
        assert_eq!(parsed.duplicates, 0);
        assert_eq!(parsed.graph, path3());
    }

    #[test]
    fn collapses_duplicates() {
        let parsed = parse("0 1\n0 1").unwrap();
        assert_eq!((parsed.graph.n(), parsed.graph.m(), parsed.duplicates), (2, 1, 1));
        // reversed orientation is the same undirected edge
        assert_eq!(parse("0 1\n1 0").unwrap().duplicates, 1);
    }

    #[test]
    fn rejects_self_loop() {
        assert_eq!(parse("0 0"), Err(Error::SelfLoop { line: 1, vertex: 0 }));
    }

    #[test]
    fn reports_line_numbers() {
        let err = parse("# header\n0 1\n\n1 x\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 4, .. }), "{err:?}");
        assert!(matches!(parse("3\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse("1 2 3\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse("-1 2\n"), Err(Error::Parse { line: 1, .. })));
    }

    #[test]
    fn honours_vertex_count_override() {
        let parsed = Graph::from_edge_list("0 1\n".as_bytes(), Some(5)).unwrap();
        assert_eq!(parsed.graph.n(), 5);
        assert!(Graph::from_edge_list("0 7\n".as_bytes(), Some(5)).is_err());
        assert_eq!(parse("# nothing\n").unwrap().graph.n(), 0);
    }

    #[test]
    fn edge_list_round_trips() {
        let g = Graph::from_edges(6, [(0, 3), (2, 5), (1, 2), (3, 4)]).unwrap();
        let mut buf = Vec::new();
        g.write_edge_list(&mut buf).unwrap();
        let back = Graph::from_edge_list(buf.as_slice(), Some(6)).unwrap().graph;
        assert_eq!(back, g);
        let isolated = Graph::from_edges(5, [(0, 1)]).unwrap();
        let mut buf = Vec::new();
        isolated.write_edge_list(&mut buf).unwrap();
        assert_eq!(Graph::from_edge_list(buf.as_slice(), None).unwrap().graph, isolated);
        assert!(Graph::from_edge_list("# n=2\n0 2\n".as_bytes(), None).is_err());
    }

    #[test]
    fn complement_examples() {
        let k3 = Graph::from_edges(3, [(0, 1), (0, 2), (1, 2)]).unwrap();
        assert_eq!(k3.complement(), Graph::empty(3));
        let k4 = Graph::empty(4).complement();
        assert_eq!(k4.m(), 6);
        assert!(k4.degrees().iter().all(|&d| d == 3));
        assert_eq!(path3().complement().edges(), &[(0, 2)]);
        assert_eq!(Graph::empty(0).complement().n(), 0);
    }

    #[test]
    fn lcc_of_connected_graph_is_identity() {
        let sub = path3().largest_connected_component().unwrap();
        assert_eq!(sub.graph, path3());
        assert_eq!(sub.original, vec![0, 1, 2]);
    }

    #[test]
    fn lcc_picks_largest_component() {
        let g = Graph::from_edges(5, [(0, 1), (2, 3), (3, 4)]).unwrap();
        let sub = g.largest_connected_component().unwrap();
        assert_eq!(sub.original, vec![2, 3, 4]);
        assert_eq!(sub.graph.edges(), &[(0, 1), (1, 2)]);

        let with_isolated = Graph::from_edges(4, [(0, 1), (1, 2)]).unwrap();
        let sub = with_isolated.largest_connected_component().unwrap();
        assert_eq!(sub.original, vec![0, 1, 2]);
        assert_eq!(sub.graph, path3());
        assert_eq!(sub.project(&[7, 8, 9], 4, 0), vec![7, 8, 9, 0]);
    }

    #[test]
    fn lcc_ties_go_to_smallest_id() {
        let g = Graph::from_edges(4, [(2, 3), (0, 1)]).unwrap();
        assert_eq!(g.largest_connected_component().unwrap().original, vec![0, 1]);
        assert_eq!(Graph::empty(0).largest_connected_component().unwrap_err(), Error::EmptyGraph);
    }

    #[test]
    fn partition_accessors() {
        let p = Partition::from_core(4, [0, 2]).unwrap();
        assert_eq!(p.core(), vec![0, 2]);
        assert_eq!(p.periphery(), vec![1, 3]);
        assert_eq!(p.flipped().core(), vec![1, 3]);
        assert_eq!(Partition::leading(4, 1).core(), vec![0]);
        assert!(Partition::from_core(2, [2]).is_err());
    }
}
