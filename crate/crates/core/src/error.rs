use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("shape mismatch: expected {expected}, got {got}")]
    ShapeMismatch { expected: String, got: String },

    #[error("ambient dimension mismatch: {left} vs {right}")]
    AmbientMismatch { left: usize, right: usize },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("space is not closed under the bracket: [B{i}, B{j}] leaves the span", i = .i + 1, j = .j + 1)]
    NotClosed { i: usize, j: usize },

    #[error("subspace is not a subalgebra")]
    NotSubalgebra,

    #[error("{what}: {count} exceeds the guard of {limit}")]
    GuardExceeded {
        what: String,
        count: u128,
        limit: u128,
    },

    #[error("Cartan descent stalled after {rounds} rounds")]
    DescentStalled { rounds: usize },

    #[error("Cartan basis matrices {i} and {j} do not commute")]
    NonCommuting { i: usize, j: usize },

    #[error("unsupported spectrum: {factor}")]
    UnsupportedSpectrum { factor: String },

    #[error("algebra is not semisimple; only the singularity verdict is guaranteed")]
    NotSemisimple,

    #[error("matrix {index} is not alternating")]
    NotAlternating { index: usize },

    #[error("chain is not an invariant flag (step {index})")]
    ChainNotInvariant { index: usize },

    #[error("entry {value} cannot be reduced modulo {p}")]
    NotReducible { value: String, p: u64 },

    #[error("certificate is identically zero")]
    ZeroCertificate,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}
