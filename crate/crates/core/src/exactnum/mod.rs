//! Exact scalars, dense matrices and Kronecker-structured operators.

pub mod forms;
pub mod kron;
pub mod matrix;
pub mod scalar;
pub mod sparse;

pub use kron::{KronOp, KronTerm, RightFactor};
pub use matrix::DenseMatrix;
pub use scalar::{q, qi, Scalar, Q};
