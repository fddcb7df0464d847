//! Exact linear algebra over [`crate::Scalar`] fields.

mod fm;
mod matrix;

pub use fm::{fourier_motzkin, Equality, Inequality, LinearSystem};
pub use matrix::{dot, Matrix};
