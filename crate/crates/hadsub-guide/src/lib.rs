//! Doc-test shim for the book under `book/`.
//!
//! Each module below embeds one chapter verbatim, so every fenced Rust block
//! in the book compiles and runs as a doc-test of this crate. If a chapter
//! drifts from the library's API, `cargo test --workspace` fails here.
#![doc = include_str!("../../../book/src/introduction.md")]

#[doc = include_str!("../../../book/src/hadamard-matrices.md")]
pub mod hadamard_matrices {}

#[doc = include_str!("../../../book/src/commuting-squares.md")]
pub mod commuting_squares {}

#[doc = include_str!("../../../book/src/profile.md")]
pub mod profile {}

#[doc = include_str!("../../../book/src/second-commutant.md")]
pub mod second_commutant {}

#[doc = include_str!("../../../book/src/higher-commutants.md")]
pub mod higher_commutants {}

#[doc = include_str!("../../../book/src/block-compositions.md")]
pub mod block_compositions {}

#[doc = include_str!("../../../book/src/equivalence-fingerprints.md")]
pub mod equivalence_fingerprints {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}

#[doc = include_str!("../../../book/src/file-formats.md")]
pub mod file_formats {}
