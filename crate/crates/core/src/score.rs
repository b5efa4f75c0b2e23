//! Per-vertex coreness scores.

use std::fmt;
use std::str::FromStr;

use crate::error::Error;
use crate::graph::Graph;

/// The coreness methods that produce a score per vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Method {
    Degree,
    Path,
    SampledPath,
    Betweenness,
    LowRank,
    Lap,
}

impl Method {
    pub const ALL: [Method; 6] = [
        Method::Degree,
        Method::Path,
        Method::SampledPath,
        Method::Betweenness,
        Method::LowRank,
        Method::Lap,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::Degree => "degree",
            Method::Path => "path",
            Method::SampledPath => "sampled-path",
            Method::Betweenness => "betweenness",
            Method::LowRank => "lowrank",
            Method::Lap => "lap",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown score method `{s}`")))
    }
}

/// Coreness scores, one per vertex; larger means more core-like.
#[derive(Debug, Clone, PartialEq)]
pub struct ScoreVector {
    pub method: Method,
    pub scores: Vec<f64>,
}

impl ScoreVector {
    pub fn new(method: Method, scores: Vec<f64>) -> Self {
        ScoreVector { method, scores }
    }

    pub fn len(&self) -> usize {
        self.scores.len()
    }

    pub fn is_empty(&self) -> bool {
        self.scores.is_empty()
    }

    /// Vertices ordered by decreasing score, ties by increasing id.
    pub fn ranking(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.scores.len()).collect();
        order.sort_by(|&a, &b| self.scores[b].total_cmp(&self.scores[a]).then(a.cmp(&b)));
        order
    }
}

/// Degree-Core: the score of a vertex is its degree.
pub fn degree_core(g: &Graph) -> ScoreVector {
    ScoreVector::new(
        Method::Degree,
        g.degrees().into_iter().map(|d| d as f64).collect(),
    )
}
