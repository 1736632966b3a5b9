use std::fmt;

use thiserror::Error;

/// Why a syndrome could not be turned into a sparse vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DecodeFailureKind {
    /// Berlekamp-Massey produced a locator longer than the code can correct.
    BmDegreeOverflow,
    /// The locator does not split into distinct roots inside the code length.
    ChienMismatch,
    /// A recovered value is zero or lies outside the signal alphabet.
    ValueOutOfAlphabet,
    /// The corrected pattern does not reproduce the input syndrome.
    ReencodeMismatch,
}

impl fmt::Display for DecodeFailureKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            DecodeFailureKind::BmDegreeOverflow => "bm_degree_overflow",
            DecodeFailureKind::ChienMismatch => "chien_mismatch",
            DecodeFailureKind::ValueOutOfAlphabet => "value_out_of_alphabet",
            DecodeFailureKind::ReencodeMismatch => "reencode_mismatch",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u32),
    #[error("inverse of zero")]
    InverseOfZero,
    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },
    #[error("invalid field modulus: {0}")]
    InvalidModulus(String),
    #[error("field of size {q} is too small for code length {n}")]
    FieldTooSmall { n: usize, q: usize },
    #[error("decode failure: {0}")]
    DecodeFailure(DecodeFailureKind),
    #[error("alphabet size {0} is not supported by the polar code (binary only)")]
    AlphabetUnsupported(u32),
    #[error("search space of {0} messages exceeds the exhaustive decoding limit")]
    SearchSpaceTooLarge(u128),
    #[error("value {0} is not a quantizer output")]
    NotOnGrid(f64),
    #[error("rate infeasible: {0}")]
    RateInfeasible(String),
    #[error("unachievable: p-ary noise entropy {0} leaves no capacity")]
    Unachievable(f64),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
