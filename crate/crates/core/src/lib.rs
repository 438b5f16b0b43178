//! Ternary derivations and ternary automorphisms of finite-dimensional
//! evolution algebras over exact fields.
//!
//! An evolution algebra is given by its structure matrix `M` in a natural
//! basis: `e_i e_i = sum_k M[k][i] e_k` and `e_i e_j = 0` for `i != j`.
//! [`tder::tder_basis`] computes a basis and parametrization of the Lie
//! algebra of ternary derivations, [`taut`] builds, checks and decomposes
//! ternary automorphisms of perfect algebras, and [`oracle`] re-derives the
//! same answers by brute force so the two can be compared.

pub mod catalog;
pub mod error;
pub mod evolalg;
pub mod field;
pub mod io;
pub mod matrix;
pub mod oracle;
pub mod rng;
pub mod sample;
pub mod taut;
pub mod tder;

pub use error::{Error, Result};
pub use evolalg::{EvolutionAlgebra, SquareDecomposition};
pub use field::{FieldElement, FieldSpec};
pub use matrix::{Matrix, Rref};
pub use rng::SeededRng;
pub use taut::{TautDecomposition, TautTriple};
pub use tder::{TderSolution, TernaryTriple};
