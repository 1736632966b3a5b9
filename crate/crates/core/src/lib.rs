//! Sparse recovery through channel-coded lattice sensing matrices.
//!
//! A k-sparse integer signal x ∈ Z_p^n is compressed by a Reed-Solomon
//! parity-check matrix, each dictionary column is protected by a linear channel
//! code and lifted to a real lattice point (Construction A), and measurements
//! pass through a p-level sawtooth quantizer. Decoding runs in two stages:
//! the quantized measurements are folded to F_p and channel-decoded into the
//! noiseless syndrome H·x, then syndrome decoding recovers x.

pub mod biht;
pub mod error;
pub mod experiment;
pub mod finite_field;
pub mod lattice;
pub mod noise_theory;
pub mod ops;
pub mod pipeline;
pub mod polar_code;
pub mod reed_solomon;

pub use error::{DecodeFailureKind, Error, Result};
