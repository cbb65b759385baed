//! Exact integer and rational matrix algebra.

pub mod group;
pub mod hnf;
pub mod lattice;
pub mod matrix;
pub mod snf;

pub use group::FiniteAbelianGroup;
pub use hnf::{hermite_form, hnf, HermiteForm};
pub use lattice::{lattice_quotient, quotient_presentation, Lattice, QuotientPresentation};
pub use matrix::{IntMatrix, Matrix, RatMatrix};
pub use snf::{integer_kernel, snf, solve_integer, SmithForm};
