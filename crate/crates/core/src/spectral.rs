//! Dense spectral tools and the spectral coreness methods.
//!
//! * [`lowrank_core`]: rank-2 reconstruction of the adjacency matrix from
//!   its two largest-magnitude eigenpairs, thresholded at 0.5; the score is
//!   the row sum of the thresholded matrix.
//! * [`lap_core`]: the eigenvector of the random-walk Laplacian `L = D⁻¹A`
//!   for its smallest algebraic eigenvalue.
//! * [`lapsgn_core`]: the sign pattern of that eigenvector, oriented by the
//!   core-periphery density objective.
//!
//! `L` is not symmetric, so its spectrum is computed from the similar matrix
//! `D^{-1/2} A D^{-1/2}` and eigenvectors are mapped back by `D^{-1/2}`.

use nalgebra::{DMatrix, DVector, SymmetricEigen};

use crate::error::{Error, Result};
use crate::find_cut::cp_density;
use crate::graph::{Graph, Partition};
use crate::score::{Method, ScoreVector};

const SYMMETRY_TOL: f64 = 1e-10;

/// Eigenvalues in descending algebraic order with matching unit
/// eigenvectors stored as columns.
#[derive(Debug, Clone)]
pub struct SpectralDecomposition {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: DMatrix<f64>,
}

impl SpectralDecomposition {
    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    pub fn vector(&self, i: usize) -> DVector<f64> {
        self.eigenvectors.column(i).into_owned()
    }
}

/// Flips `v` so that its largest-magnitude entry (first one on ties) is
/// positive.
fn orient(mut v: DVector<f64>) -> DVector<f64> {
    let max = v.amax();
    if let Some(&lead) = v.iter().find(|x| x.abs() >= max - 1e-12 * max.max(1.0)) {
        if lead < 0.0 {
            v.neg_mut();
        }
    }
    v
}

/// Full eigendecomposition of a dense symmetric matrix.
///
/// The matrix must be square and symmetric to within `1e-10` entrywise.
/// Eigenvectors are sign-normalised so that the output depends only on the
/// input matrix.
pub fn eig_symmetric(m: &DMatrix<f64>) -> Result<SpectralDecomposition> {
    if m.nrows() != m.ncols() {
        return Err(Error::SizeMismatch {
            expected: m.nrows(),
            actual: m.ncols(),
        });
    }
    let n = m.nrows();
    for i in 0..n {
        for j in (i + 1)..n {
            let deviation = (m[(i, j)] - m[(j, i)]).abs();
            if !(deviation <= SYMMETRY_TOL) {
                return Err(Error::Asymmetric {
                    row: i,
                    col: j,
                    deviation,
                });
            }
        }
    }
    if n == 0 {
        return Ok(SpectralDecomposition {
            eigenvalues: Vec::new(),
            eigenvectors: DMatrix::zeros(0, 0),
        });
    }
    let sym = (m + m.transpose()) * 0.5;
    let eig = SymmetricEigen::new(sym);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]).then(a.cmp(&b)));
    let eigenvalues = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let columns: Vec<DVector<f64>> = order
        .iter()
        .map(|&i| orient(eig.eigenvectors.column(i).into_owned()))
        .collect();
    Ok(SpectralDecomposition {
        eigenvalues,
        eigenvectors: DMatrix::from_columns(&columns),
    })
}

/// Number of eigenvalues with magnitude above `tol * max(1, max |λ|)`.
pub fn numerical_rank(m: &DMatrix<f64>, tol: f64) -> Result<usize> {
    let eig = eig_symmetric(m)?;
    let scale = eig.eigenvalues.iter().fold(1.0_f64, |a, l| a.max(l.abs()));
    Ok(eig.eigenvalues.iter().filter(|l| l.abs() > tol * scale).count())
}

/// `F = D - A`.
pub fn combinatorial_laplacian(g: &Graph) -> DMatrix<f64> {
    let mut f = -g.adjacency_matrix();
    for v in 0..g.n() {
        f[(v, v)] = g.degree(v) as f64;
    }
    f
}

fn require_no_isolated(g: &Graph) -> Result<()> {
    match (0..g.n()).find(|&v| g.degree(v) == 0) {
        Some(v) => Err(Error::IsolatedVertex(v)),
        None => Ok(()),
    }
}

/// `L = D⁻¹A`, the row-stochastic transition matrix of the simple random
/// walk. Fails on isolated vertices.
pub fn random_walk_laplacian(g: &Graph) -> Result<DMatrix<f64>> {
    require_no_isolated(g)?;
    let mut l = g.adjacency_matrix();
    for v in 0..g.n() {
        let d = g.degree(v) as f64;
        l.row_mut(v).iter_mut().for_each(|x| *x /= d);
    }
    Ok(l)
}

/// Eigenpairs of `L = D⁻¹A` in descending eigenvalue order. Eigenvectors are
/// right eigenvectors of `L`, scaled to unit Euclidean norm; they are
/// `D`-orthogonal rather than orthogonal.
pub fn random_walk_spectrum(g: &Graph) -> Result<SpectralDecomposition> {
    require_no_isolated(g)?;
    let n = g.n();
    let inv_sqrt: Vec<f64> = (0..n).map(|v| 1.0 / (g.degree(v) as f64).sqrt()).collect();
    let mut s = DMatrix::zeros(n, n);
    for &(u, v) in g.edges() {
        let w = inv_sqrt[u] * inv_sqrt[v];
        s[(u, v)] = w;
        s[(v, u)] = w;
    }
    let sym = eig_symmetric(&s)?;
    let columns: Vec<DVector<f64>> = (0..n)
        .map(|i| {
            let u = sym.eigenvectors.column(i);
            let x = DVector::from_fn(n, |r, _| u[r] * inv_sqrt[r]);
            orient(x.normalize())
        })
        .collect();
    Ok(SpectralDecomposition {
        eigenvalues: sym.eigenvalues,
        eigenvectors: DMatrix::from_columns(&columns),
    })
}

/// Output of LowRank-Core.
#[derive(Debug, Clone)]
pub struct LowRankCore {
    pub scores: ScoreVector,
    /// `λ₁v₁v₁ᵀ + λ₂v₂v₂ᵀ`.
    pub approximation: DMatrix<f64>,
    /// The approximation with entries strictly above 0.5 set to 1 and all
    /// others to 0.
    pub thresholded: DMatrix<f64>,
    pub eigenvalues: [f64; 2],
}

/// Index of the largest-magnitude eigenvalue among `candidates`, scanning in
/// descending algebraic order so near-ties go to the more positive value.
fn largest_magnitude(values: &[f64], skip: Option<usize>) -> usize {
    let scale = values.iter().fold(1.0_f64, |a, l| a.max(l.abs()));
    let tol = 1e-12 * scale;
    let mut best: Option<usize> = None;
    for (i, l) in values.iter().enumerate() {
        if Some(i) == skip {
            continue;
        }
        match best {
            Some(b) if l.abs() <= values[b].abs() + tol => {}
            _ => best = Some(i),
        }
    }
    best.expect("at least two eigenvalues")
}

/// LowRank-Core on an arbitrary symmetric matrix.
pub fn lowrank_core_matrix(a: &DMatrix<f64>) -> Result<LowRankCore> {
    if a.nrows() < 2 {
        return Err(Error::InvalidParameter("LowRank-Core needs n >= 2".into()));
    }
    let eig = eig_symmetric(a)?;
    let first = largest_magnitude(&eig.eigenvalues, None);
    let second = largest_magnitude(&eig.eigenvalues, Some(first));
    let mut approximation = DMatrix::zeros(a.nrows(), a.ncols());
    for &k in &[first, second] {
        let v = eig.eigenvectors.column(k);
        approximation += eig.eigenvalues[k] * &v * v.transpose();
    }
    let thresholded = approximation.map(|x| if x > 0.5 { 1.0 } else { 0.0 });
    let scores = thresholded.row_iter().map(|row| row.sum()).collect();
    Ok(LowRankCore {
        scores: ScoreVector::new(Method::LowRank, scores),
        approximation,
        thresholded,
        eigenvalues: [eig.eigenvalues[first], eig.eigenvalues[second]],
    })
}

/// LowRank-Core on the adjacency matrix of `g`. Row sums of the thresholded
/// matrix include whatever its diagonal holds.
pub fn lowrank_core(g: &Graph) -> Result<LowRankCore> {
    lowrank_core_matrix(&g.adjacency_matrix())
}

/// Index of the bottom eigenpair used by the Laplacian methods: the smallest
/// algebraic eigenvalue, or the next one up if that is exactly zero.
fn bottom_index(values: &[f64]) -> usize {
    let last = values.len() - 1;
    if last > 0 && values[last].abs() <= 1e-12 {
        last - 1
    } else {
        last
    }
}

/// Objective values of the two sign partitions of `v`: `(η₁, η₂)` with
/// `v ≥ 0` as core and `v ≤ 0` as core respectively.
fn sign_objectives(g: &Graph, v: &[f64]) -> (Partition, f64, Partition, f64) {
    let nonneg = Partition::from_mask(v.iter().map(|&x| x >= 0.0).collect());
    let nonpos = Partition::from_mask(v.iter().map(|&x| x <= 0.0).collect());
    let eta1 = cp_density(g, &nonneg, 0.0, 0.0);
    let eta2 = cp_density(g, &nonpos, 0.0, 0.0);
    (nonneg, eta1, nonpos, eta2)
}

const ETA_TIE: f64 = 1e-12;

/// Output of Lap-Core.
#[derive(Debug, Clone)]
pub struct LapCore {
    pub scores: ScoreVector,
    pub eigenvalue: f64,
}

/// Lap-Core scores: the bottom eigenvector of `L`, oriented so that its
/// non-negative entries form the sign partition with the larger
/// core-periphery density. Fails on isolated vertices.
pub fn lap_core(g: &Graph) -> Result<LapCore> {
    let spectrum = random_walk_spectrum(g)?;
    let k = bottom_index(&spectrum.eigenvalues);
    let mut v: Vec<f64> = spectrum.eigenvectors.column(k).iter().copied().collect();
    let (_, eta1, _, eta2) = sign_objectives(g, &v);
    if eta2 > eta1 + ETA_TIE {
        v.iter_mut().for_each(|x| *x = -*x);
    }
    Ok(LapCore {
        scores: ScoreVector::new(Method::Lap, v),
        eigenvalue: spectrum.eigenvalues[k],
    })
}

/// Output of LapSgn-Core.
#[derive(Debug, Clone)]
pub struct LapSgn {
    pub partition: Partition,
    /// Objective with the non-negative entries as core.
    pub eta_nonneg: f64,
    /// Objective with the non-positive entries as core.
    pub eta_nonpos: f64,
    /// False when both orientations score the same, in which case the
    /// non-negative orientation is returned.
    pub clear_separation: bool,
}

/// LapSgn-Core from a given bottom eigenvector.
pub fn lapsgn_from_vector(g: &Graph, v: &[f64]) -> LapSgn {
    let (nonneg, eta1, nonpos, eta2) = sign_objectives(g, v);
    let clear_separation = (eta1 - eta2).abs() > ETA_TIE;
    let partition = if clear_separation && eta2 > eta1 { nonpos } else { nonneg };
    LapSgn {
        partition,
        eta_nonneg: eta1,
        eta_nonpos: eta2,
        clear_separation,
    }
}

/// LapSgn-Core: classifies by the signs of the bottom eigenvector of `L`,
/// picking the global sign with the larger objective. Needs no core size.
pub fn lapsgn_core(g: &Graph) -> Result<LapSgn> {
    let spectrum = random_walk_spectrum(g)?;
    let k = bottom_index(&spectrum.eigenvalues);
    let v: Vec<f64> = spectrum.eigenvectors.column(k).iter().copied().collect();
    Ok(lapsgn_from_vector(g, &v))
}
