//! Explicit constructors for the matrix families and catalog algebras, and
//! scrambling by rational orthogonal conjugation.

pub mod catalog;
pub mod maps;
pub mod quaternion;
pub mod radon_hurwitz;
pub mod scramble;
pub mod spin;

pub use catalog::{catalog_build, enumerate_catalog, native_frame, CatalogLabel, Form};
pub use maps::{big_o, hat_q, phi, psi, quat_q};
pub use quaternion::Quaternion;
pub use radon_hurwitz::{
    dim_d, rh_violation, rho, rho4_product_sign, rho8_product_sign, spaces_wu, Variant,
};
pub use scramble::{scramble, scramble_matrix};
pub use spin::{
    classical_frame, classical_irrep, spin_auto_t, spin_factor, spin_frame, ClassicalKind,
};
