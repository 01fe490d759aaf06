//! Full-flag Johnson graphs `FJ(n, k)`.
//!
//! The vertices of `FJ(n, k)` are the full flags of subsets of `[n]`,
//! identified with permutations of `[n]`; two are adjacent when their flags
//! differ in exactly `k` members. `FJ(n, 1)` is the permutahedron.
//!
//! The crate builds these graphs as Cayley graphs on `S_n`, measures their
//! connectivity and diameters, checks the recursive block structure of their
//! adjacency matrices under the insertion ordering, and computes the part of
//! the permutahedron spectrum captured by the regularity matrix.
//!
//! ```
//! use flag_johnson::{diameter, DiameterMode, FlagGraphSpec};
//!
//! let permutahedron = FlagGraphSpec::new(4, 1)?;
//! assert_eq!(diameter(&permutahedron, DiameterMode::Transitive)?, 6);
//! # Ok::<(), flag_johnson::Error>(())
//! ```

pub mod blocks;
pub mod error;
pub mod export;
pub mod graph;
pub mod metrics;
pub mod oracle;
pub mod ordering;
pub mod perm;
pub mod spectra;
pub mod verify;

/// Version tag carried by every serialized report.
pub const SCHEMA_VERSION: u32 = 1;

pub use blocks::{
    adjacency_matrix, block_regularity, cayley_matrix, concatenated_ordering, flag_relation_matrix,
    verify_permutahedron_blocks, verify_recursive_blocks, AdjacencyMatrix, BitGrid, BitMatrix,
    BlockReport, BlockView,
};
pub use error::{Error, Result};
pub use export::EdgeListExport;
pub use graph::{
    adjacent, build_edges, degree, generators, irreducible_count, neighbors, Caps, FlagGraphSpec,
    GeneratorSet,
};
pub use metrics::{
    bfs, diameter, diameter_lower_bound, edge_transposition_bound_check, is_connected,
    DiameterMode, DistanceProfile,
};
pub use ordering::{enumerate_permutations, VertexOrdering};
pub use perm::{
    block_boundaries, compose, disorder, insertion, is_irreducible, kendall_distance,
    prefix_mismatch_count, prefix_set, BlockDecomposition, Permutation, PrefixSet,
};
pub use spectra::{
    conjecture_second_largest, eig_symmetric, eig_tridiagonal, lift_vector, regularity_matrix,
    regularity_matrix_from_blocks, second_largest_evidence, spectrum_subset_check,
    verify_intertwining, DenseMatrix, RegularityMatrix, SpectralConfig, Spectrum,
};
pub use verify::{verify_all, VerificationReport};

// The guide's code listings are compiled and run as doctests.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/flags.md")]
    mod flags {}
    #[doc = include_str!("../../../book/src/cayley.md")]
    mod cayley {}
    #[doc = include_str!("../../../book/src/diameters.md")]
    mod diameters {}
    #[doc = include_str!("../../../book/src/blocks.md")]
    mod blocks {}
    #[doc = include_str!("../../../book/src/spectra.md")]
    mod spectra {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
