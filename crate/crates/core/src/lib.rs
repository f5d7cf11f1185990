//! Exact computations in the polynomial representation of the type A rational
//! Cherednik algebra: irreducible quotients at coprime parameters, their
//! filtrations, coinvariant-algebra kernels, and rational Catalan combinatorics.

pub mod catalan;
pub mod coinv;
pub mod dunkl;
pub mod filtration;
pub mod irrep;
pub mod linalg;
pub mod poly;
pub mod qt;
pub mod series;
pub mod symgroup;
pub mod verify;

pub use dunkl::CherednikParam;
pub use irrep::IrrepModel;
pub use linalg::{QMat, Subspace};
pub use poly::{Monomial, Poly, Rational};
