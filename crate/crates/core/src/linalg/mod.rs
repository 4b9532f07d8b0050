//! Exact linear algebra over [`Rational`](crate::field::Rational) and prime fields.

pub mod echelon;
pub mod matrix;
pub mod poly;
pub mod subspace;

pub use echelon::{
    char_poly, determinant, inverse, kernel, rank, rref, solve_in_span, EchelonBuilder, SpanSolver,
};
pub use matrix::Matrix;
pub use subspace::{enumerate_subspaces, Subspace, SubspaceEnumerator, DEFAULT_SUBSPACE_GUARD};
