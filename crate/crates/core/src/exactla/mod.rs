//! Exact scalars, dense matrices and canonical subspaces.

pub mod echelon;
pub mod matrix;
pub mod modular;
pub mod poly;
pub mod scalar;
pub mod subspace;

pub use echelon::{kernel, rref, solve_combination, Echelon, MemberTest, ModMemberTest};
pub use matrix::{cayley_orthogonal, CMat, Mat, Matrix};
pub use scalar::{GaussRational, Rational, Ring, Scalar};
pub use subspace::Subspace;
