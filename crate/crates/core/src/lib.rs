//! Exact-arithmetic construction, completion and classification of Jordan
//! subalgebras of real symmetric matrices and Jordan multialgebras.
//!
//! Everything here is computed over the rationals. There is no floating
//! point anywhere in the crate, so every identity is checked exactly.
//!
//! The crate is `no_std` (it needs `alloc`). File formats and the command
//! line driver live in the `jordan-workbench` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

mod error;
pub mod rng;

pub mod classify;
pub mod completion;
pub mod exactla;
pub mod grouprep;
pub mod jordan;
pub mod repforge;
pub mod twodim;

pub use error::Error;
pub use exactla::{
    cayley_orthogonal, CMat, Echelon, GaussRational, Mat, Matrix, Rational, Ring, Scalar, Subspace,
};

pub use jordan::MultialgebraInstance;

/// Shorthand used across the crate.
pub type Result<T, E = Error> = core::result::Result<T, E>;
