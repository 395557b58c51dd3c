//! Exact computation of combinatorial induction data for Drinfeld centers.
//!
//! Given the Grothendieck data of a fusion 2-category — the fusion rings of
//! its endomorphism categories, the bimodule multiplicities between them, and
//! exact dimensions in a cyclotomic field — this crate builds the Gram matrix
//! of inner products between induced objects and enumerates all of its
//! *algebraic decompositions*: non-negative integer matrices `A` with
//! `M = A A^t` whose column dot products with every dimension vector are
//! Ostrik d-numbers dividing the global dimension as algebraic integers.
//!
//! Each algebraic decomposition is a candidate for the matrix of the induction
//! functor into the center; its column count is the number of simple objects
//! of the center, and its per-object row blocks are the induction matrices.
//!
//! The pipeline:
//!
//! 1. [`fusion_data`] validates the input and produces a
//!    [`solver::DecompositionProblem`] (Gram matrix, padded dimension vectors,
//!    global dimension).
//! 2. [`exact_linalg`] reduces the Gram matrix to a full-rank principal
//!    submatrix `M'` with `M = R M' R^t` over the rationals.
//! 3. [`solver`] runs a canonical-order, column-by-column backtracking search
//!    over decompositions of `M'`, lifting each accepted column through `R`
//!    and checking the algebraic conditions with [`cyclotomic`] arithmetic.
//!
//! All decision-making arithmetic is exact (big rationals, big integers,
//! cyclotomic field elements); floating point appears only in the optional
//! numeric positive-semidefiniteness filter and in validation cross-checks.

pub mod cli;
pub mod cyclotomic;
pub mod error;
pub mod exact_linalg;
pub mod fusion_data;
pub mod io;
pub mod solver;

pub use error::{Error, Result};
