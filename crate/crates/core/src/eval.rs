//! Classification errors, correlations and partition similarity.

use rand::seq::SliceRandom;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::Partition;
use crate::rng::{derive_seed, rng_from_seed};

/// `y1` core vertices labelled peripheral, `y2` peripheral vertices
/// labelled core.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ErrorVector {
    pub y1: usize,
    pub y2: usize,
}

impl ErrorVector {
    pub fn total(&self) -> usize {
        self.y1 + self.y2
    }
}

fn same_size(a: &Partition, b: &Partition) -> Result<()> {
    if a.n() == b.n() {
        Ok(())
    } else {
        Err(Error::SizeMismatch {
            expected: a.n(),
            actual: b.n(),
        })
    }
}

pub fn error_vector(truth: &Partition, pred: &Partition) -> Result<ErrorVector> {
    same_size(truth, pred)?;
    let mut e = ErrorVector::default();
    for v in 0..truth.n() {
        match (truth.is_core(v), pred.is_core(v)) {
            (true, false) => e.y1 += 1,
            (false, true) => e.y2 += 1,
            _ => {}
        }
    }
    Ok(e)
}

/// Fraction of vertices on the same side in both partitions.
pub fn s_frac(p1: &Partition, p2: &Partition) -> Result<f64> {
    same_size(p1, p2)?;
    Ok(agreement(p1.mask(), p2.mask()))
}

fn agreement(a: &[bool], b: &[bool]) -> f64 {
    let same = a.iter().zip(b).filter(|(x, y)| x == y).count();
    same as f64 / a.len() as f64
}

fn check_pair(x: &[f64], y: &[f64]) -> Result<()> {
    if x.len() != y.len() {
        return Err(Error::SizeMismatch {
            expected: x.len(),
            actual: y.len(),
        });
    }
    if x.len() < 2 {
        return Err(Error::InvalidParameter("correlation needs at least two values".into()));
    }
    Ok(())
}

/// Sample Pearson correlation.
pub fn pearson(x: &[f64], y: &[f64]) -> Result<f64> {
    check_pair(x, y)?;
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (a, b) in x.iter().zip(y) {
        let (dx, dy) = (a - mx, b - my);
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if sxx == 0.0 || syy == 0.0 {
        return Err(Error::ZeroVariance);
    }
    Ok((sxy / (sxx.sqrt() * syy.sqrt())).clamp(-1.0, 1.0))
}

/// 1-based ranks with tied values sharing their mean rank.
pub fn average_ranks(x: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..x.len()).collect();
    order.sort_by(|&a, &b| x[a].total_cmp(&x[b]));
    let mut ranks = vec![0.0; x.len()];
    let mut i = 0;
    while i < order.len() {
        let mut j = i;
        while j + 1 < order.len() && x[order[j + 1]] == x[order[i]] {
            j += 1;
        }
        let rank = (i + j) as f64 / 2.0 + 1.0;
        for &k in &order[i..=j] {
            ranks[k] = rank;
        }
        i = j + 1;
    }
    ranks
}

/// Spearman correlation: Pearson correlation of average ranks.
pub fn spearman(x: &[f64], y: &[f64]) -> Result<f64> {
    check_pair(x, y)?;
    pearson(&average_ranks(x), &average_ranks(y))
}

/// Observed similarity against a permutation null.
#[derive(Debug, Clone, PartialEq)]
pub struct PermutationZScore {
    pub s_frac: f64,
    pub mean: f64,
    /// Population standard deviation of the permuted similarities.
    pub stdev: f64,
    /// `(s_frac - mean) / stdev`, or `None` when `stdev` is zero.
    pub z: Option<f64>,
}

/// Compares `s_frac(p1, p2)` with its distribution when the vertex labels
/// of `p2` are shuffled uniformly at random. Permutation `i` draws from the
/// stream `derive_seed(seed, i, 0)`, so the result does not depend on the
/// number of threads.
pub fn permutation_zscore(p1: &Partition, p2: &Partition, n_perm: usize, seed: u64) -> Result<PermutationZScore> {
    same_size(p1, p2)?;
    if n_perm == 0 {
        return Err(Error::InvalidParameter("n_perm must be at least 1".into()));
    }
    let observed = agreement(p1.mask(), p2.mask());
    let samples: Vec<f64> = (0..n_perm as u64)
        .into_par_iter()
        .map(|i| {
            let mut shuffled = p2.mask().to_vec();
            shuffled.shuffle(&mut rng_from_seed(derive_seed(seed, i, 0)));
            agreement(p1.mask(), &shuffled)
        })
        .collect();
    let k = samples.len() as f64;
    let mean = samples.iter().sum::<f64>() / k;
    let stdev = (samples.iter().map(|s| (s - mean).powi(2)).sum::<f64>() / k).sqrt();
    let z = if stdev > 0.0 {
        Some((observed - mean) / stdev)
    } else {
        None
    };
    Ok(PermutationZScore {
        s_frac: observed,
        mean,
        stdev,
        z,
    })
}
