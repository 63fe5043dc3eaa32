//! Numerical period lattices and Prym decompositions for hyperelliptic
//! double covers.
//!
//! Given a curve y² = f(x) and one of its two supported involutions, the
//! crate builds an involution-adapted symplectic homology basis, integrates
//! the holomorphic differentials to a period lattice, splits the lattice
//! into invariant and anti-invariant parts, and decides whether the linear
//! equivalence D + σ(D) ≃ K + P₁ + P₂ admits a solution — producing either
//! an explicit divisor or a lattice-membership witness of unsolvability.
//!
//! The narrative guide lives in `book/` and is compiled as doc-tests via the
//! [`guide`] module, so every snippet in the book is checked by `cargo test`.

pub mod error;
pub mod poly;
pub mod curve;
pub mod divisor;
pub mod geometry;
pub mod continuation;
pub mod quadrature;
pub mod cycles;
pub mod homology;
pub mod fixtures;

pub use error::Error;
pub use num_complex::Complex64;

/// Crate-wide result type.
pub type Result<T> = std::result::Result<T, Error>;
