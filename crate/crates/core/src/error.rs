use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("size mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },

    #[error("index {index} out of range {min}..={max}")]
    IndexOutOfRange {
        index: usize,
        min: usize,
        max: usize,
    },

    #[error("invalid graph parameters n={n}, k={k} (need 0 <= k < n)")]
    InvalidParameters { n: usize, k: usize },

    #[error("{what}: n={n} exceeds the configured cap {cap}")]
    CapExceeded {
        what: &'static str,
        n: usize,
        cap: usize,
    },

    #[error("FJ({n},0) has no edges under the loop-free convention")]
    TrivialGraph { n: usize },

    #[error("FJ({n},{k}) is disconnected: {unreachable} vertices unreachable from the identity")]
    Disconnected {
        n: usize,
        k: usize,
        unreachable: usize,
    },

    #[error("matrix is not symmetric at ({row},{col})")]
    NonSymmetric { row: usize, col: usize },

    #[error("block [{i},{j}] does not have constant row and column sums")]
    NonRegularBlock { i: usize, j: usize },

    #[error(
        "Jacobi iteration did not converge after {sweeps} sweeps (off-diagonal norm {residual:e})"
    )]
    NoConvergence { sweeps: usize, residual: f64 },

    #[error("parse error: {0}")]
    Parse(String),
}
