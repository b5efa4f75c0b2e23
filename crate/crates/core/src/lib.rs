//! Core-periphery detection for undirected graphs.
//!
//! A [`Graph`] is scored by one of several coreness methods
//! ([`degree_core`], [`path_core`], [`sampled_path_core`], [`lowrank_core`],
//! [`lap_core`]) and the scores are turned into a [`Partition`] either by
//! taking a known number of top vertices ([`classify_known_beta`]) or by
//! maximising the core-periphery density objective ([`find_cut`]).
//! [`lapsgn_core`] classifies directly from eigenvector signs.
//!
//! ```
//! use coreperiph::{classify_known_beta, error_vector, find_cut, generate_block_model, path_core, BlockModelParams};
//!
//! let params = BlockModelParams::with_beta(60, 0.5, [0.8, 0.5, 0.1], 7).unwrap();
//! let planted = generate_block_model(&params).unwrap();
//! let scores = path_core(&planted.graph);
//!
//! let known = classify_known_beta(&scores, 0.5).unwrap();
//! assert!(error_vector(&planted.truth, &known).unwrap().total() <= 2);
//!
//! let cut = find_cut(&planted.graph, &scores, 6).unwrap();
//! assert_eq!(cut.curve.values.len(), 60 - 2 * 6 + 1);
//! assert!(cut.curve.values.iter().all(|&v| v <= cut.curve.objective));
//! ```

pub mod error;
pub mod eval;
pub mod find_cut;
pub mod generators;
pub mod graph;
pub mod path_core;
pub mod rng;
pub mod score;
pub mod spectral;

pub use error::{Error, Result};
pub use eval::{error_vector, pearson, permutation_zscore, s_frac, spearman, ErrorVector, PermutationZScore};
pub use find_cut::{
    classify_known_beta, cp_connectivity, cp_density, find_cut, find_cut_with, largest_score_gap,
    refine_partition, FindCut, ObjectiveCurve, RefineMode,
};
pub use generators::{
    generate_block_model, generate_kappa_ensemble, hierarchical_blocks, idealized,
    plant_high_degree_periphery, BlockModelParams, KappaEnsemble, PlantedDegree, PlantedGraph,
};
pub use graph::{EdgeList, Graph, Partition, Subgraph};
pub use path_core::{betweenness, path_core, sampled_path_core};
pub use score::{degree_core, Method, ScoreVector};
pub use spectral::{
    combinatorial_laplacian, eig_symmetric, lap_core, lapsgn_core, lowrank_core, lowrank_core_matrix,
    numerical_rank, random_walk_laplacian, random_walk_spectrum, LapCore, LapSgn, LowRankCore,
    SpectralDecomposition,
};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/graphs.md")]
    mod graphs {}
    #[doc = include_str!("../../../book/src/path-core.md")]
    mod path_core {}
    #[doc = include_str!("../../../book/src/find-cut.md")]
    mod find_cut {}
    #[doc = include_str!("../../../book/src/spectral.md")]
    mod spectral {}
    #[doc = include_str!("../../../book/src/evaluation.md")]
    mod evaluation {}
}
