pub mod cartan;
pub mod certificate;
pub mod error;
pub mod families;
pub mod field;
pub mod lie;
pub mod linalg;
pub mod monomial;
pub mod sdit;
pub mod shrunk;
pub mod space;

pub use error::{Error, Result};
pub use field::{Field, FiniteField, Fp, Gf2, Gf3, Rational};
pub use linalg::{Matrix, Subspace};
pub use space::MatrixSpace;
