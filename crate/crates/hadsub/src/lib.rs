//! Subfactor invariants of complex Hadamard matrices.
//!
//! An `n x n` complex Hadamard matrix `H` (unimodular entries, orthogonal
//! rows) places the diagonal algebra `D_n` and its rotated copy
//! `U D_n U*` (`U = H/sqrt(n)`) in a *spin-model commuting square* inside
//! `M_n(C)`. Iterating the basic construction turns that square into a tower
//! of algebras whose relative commutants are finite-dimensional invariants of
//! `H` up to Hadamard equivalence. This crate computes those invariants:
//!
//! * [`hadamard`] — verification, dephasing, seeded random equivalences, and
//!   equivalence fingerprints;
//! * [`catalog`] — the built-in parametric families (`fourier`, `f4`, `f6`,
//!   `bn6`, `p7`, `f8`, `tao`, `haagerup`);
//! * [`profile`] — the rank-4 profile tensor, which materializes the first
//!   tower projection;
//! * [`tower`] — Jones projections, correction unitaries, tower projections,
//!   and verification of the commuting-square and basic-construction axioms;
//! * [`commutants`] — the second relative commutant (as a partition of
//!   `{1..n^2}`) plus third/fourth commutant dimensions and zero-pattern
//!   parameter sweeps;
//! * [`dita`] — block (Dita-type) compositions, the Bisch projection, and
//!   intermediate-subfactor checks;
//! * [`io`] / [`report`] — matrix file formats and deterministic analysis
//!   reports.
//!
//! # Quick start
//!
//! ```
//! use hadsub::catalog::{catalog_matrix, Family};
//! use hadsub::commutants::second_commutant;
//!
//! // The 4x4 Fourier matrix: second relative commutant has dimension 4.
//! let h = catalog_matrix(Family::Fourier, &[4.0])?;
//! let result = second_commutant(&h);
//! assert_eq!(result.dim, 4);
//! # Ok::<(), hadsub::Error>(())
//! ```

pub mod catalog;
pub mod commutants;
pub mod dita;
pub mod error;
pub mod hadamard;
pub mod io;
pub mod linalg;
pub mod matrix;
pub mod profile;
pub mod report;
pub mod tower;

pub use error::{Error, Result};
pub use hadamard::{dephase, equivalence_fingerprint, random_equivalence, verify_hadamard, HadamardMatrix};
pub use matrix::{Scalar, SquareMatrix};
