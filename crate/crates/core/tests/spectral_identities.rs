mod support;

use coreperiph::{
    classify_known_beta, combinatorial_laplacian, eig_symmetric, error_vector, hierarchical_blocks, idealized,
    lowrank_core_matrix, numerical_rank, random_walk_laplacian, random_walk_spectrum, Graph, Partition,
};
use nalgebra::{DMatrix, DVector};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use support::{gnp, jacobi_eigenvalues};

fn ascending(m: &DMatrix<f64>) -> Vec<f64> {
    let mut ev = eig_symmetric(m).unwrap().eigenvalues;
    ev.reverse();
    ev
}

fn cycle(n: usize) -> Graph {
    Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
}

fn prism() -> Graph {
    Graph::from_edges(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)]).unwrap()
}

fn random_graph(seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = 2 + (seed % 29) as usize;
    Graph::from_edges(n, gnp(n, 0.35, &mut rng)).unwrap()
}

#[test]
fn balanced_idealized_spectrum() {
    let (a0, _) = idealized(50, 50);
    let ev = eig_symmetric(&a0).unwrap().eigenvalues;
    let phi = 5f64.sqrt();
    assert!((ev[0] - 50.0 * (1.0 + phi) / 2.0).abs() < 1e-8);
    assert!((ev[99] - 50.0 * (1.0 - phi) / 2.0).abs() < 1e-8);
    assert!(ev[1..99].iter().all(|l| l.abs() < 1e-8));
}

#[test]
fn hierarchical_rank() {
    for g in 1..=5 {
        let b = hierarchical_blocks(g, 6, 9).unwrap();
        assert_eq!(numerical_rank(&b, 1e-8).unwrap(), 2 * g);
    }
}

#[test]
fn kelmans_relation_on_random_graphs() {
    for seed in 0..50u64 {
        let g = random_graph(seed);
        let n = g.n();
        let f = ascending(&combinatorial_laplacian(&g));
        let fbar = ascending(&combinatorial_laplacian(&g.complement()));
        // 1-based: λ_j(F̄) = n − λ_{n+2−j}(F), j = 2..n
        for j in 2..=n {
            let lhs = fbar[j - 1];
            let rhs = n as f64 - f[n + 2 - j - 1];
            assert!((lhs - rhs).abs() < 1e-8, "seed {seed}, j {j}: {lhs} vs {rhs}");
        }
    }
}

#[test]
fn complement_laplacian_identity() {
    for seed in 0..20u64 {
        let g = random_graph(seed);
        let n = g.n();
        let f = combinatorial_laplacian(&g);
        let want = DMatrix::identity(n, n) * n as f64 - DMatrix::from_element(n, n, 1.0) - f;
        assert_eq!(combinatorial_laplacian(&g.complement()), want);
    }
}

#[test]
fn regular_graph_eigenvectors_are_shared() {
    for g in [cycle(5), cycle(8), prism()] {
        let n = g.n();
        let d = g.degree(0) as f64;
        assert!((0..n).all(|v| g.degree(v) as f64 == d));
        let l = random_walk_laplacian(&g).unwrap();
        let comp = random_walk_spectrum(&g.complement()).unwrap();
        for k in 1..n {
            let x = comp.vector(k);
            assert!(x.sum().abs() < 1e-8);
            let lambda_bar = comp.eigenvalues[k];
            let theta = (lambda_bar * (n as f64 - 1.0 - d) + 1.0) / d;
            let residual = (&l * &x + theta * &x).norm();
            assert!(residual <= 1e-8, "n={n}, k={k}: residual {residual}");
        }
    }
}

#[test]
fn random_walk_spectrum_is_bounded() {
    for seed in 0..40u64 {
        let g = random_graph(seed);
        if (0..g.n()).any(|v| g.degree(v) == 0) {
            continue;
        }
        let spectrum = random_walk_spectrum(&g).unwrap();
        assert!((spectrum.eigenvalues[0] - 1.0).abs() < 1e-10);
        assert!(spectrum.eigenvalues.iter().all(|l| l.abs() <= 1.0 + 1e-10));
        let l = random_walk_laplacian(&g).unwrap();
        assert!((&l * DVector::from_element(g.n(), 1.0)).iter().all(|x| (x - 1.0).abs() < 1e-14));
    }
}

#[test]
fn eigensolver_agrees_with_jacobi() {
    for seed in 0..20u64 {
        let g = random_graph(seed);
        let a = g.adjacency_matrix();
        let rows: Vec<Vec<f64>> = a.row_iter().map(|r| r.iter().copied().collect()).collect();
        let want = jacobi_eigenvalues(&rows);
        let got = ascending(&a);
        for (x, y) in got.iter().zip(&want) {
            assert!((x - y).abs() < 1e-9, "seed {seed}: {got:?} vs {want:?}");
        }
    }
}

#[test]
fn lowrank_recovers_idealized_matrices() {
    for (n_c, n_p) in [(1, 1), (1, 7), (5, 5), (13, 40), (50, 50), (50, 3)] {
        let (a0, _) = idealized(n_c, n_p);
        let out = lowrank_core_matrix(&a0).unwrap();
        assert_eq!(out.thresholded, a0);
        let known = classify_known_beta(&out.scores, n_c as f64 / (n_c + n_p) as f64).unwrap();
        let e = error_vector(&Partition::leading(n_c + n_p, n_c), &known).unwrap();
        assert_eq!(e.total(), 0);
    }
}

proptest! {
    #[test]
    fn lowrank_reconstructs_rank_two_binary_matrices(
        u in proptest::collection::vec(any::<bool>(), 2..20),
        w in proptest::collection::vec(any::<bool>(), 20),
        sign in any::<bool>(),
    ) {
        // A = xxᵀ ± yyᵀ with disjoint 0/1 supports is a symmetric 0/1 matrix
        // of rank at most two.
        let n = u.len();
        let x: Vec<f64> = u.iter().map(|&b| b as u8 as f64).collect();
        let y: Vec<f64> = (0..n).map(|i| (!u[i] && w[i]) as u8 as f64).collect();
        let s = if sign { 1.0 } else { 0.0 };
        let a = DMatrix::from_fn(n, n, |i, j| x[i] * x[j] + s * y[i] * y[j]);
        prop_assert_eq!(lowrank_core_matrix(&a).unwrap().thresholded, a);
    }
}
