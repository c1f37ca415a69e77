use num_bigint::BigUint;
use thiserror::Error;

/// Everything that can go wrong across the transform, cipher, codec, and
/// expression-grammar layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("message is empty")]
    EmptyMessage,

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    /// An image atom that the inverse table cannot map back to the time
    /// domain (e.g. `1/c^(m+0)` or a trig image with zero frequency).
    #[error("malformed image atom: {0}")]
    MalformedImage(String),

    #[error("remainder {remainder} is not in [0, {modulus})")]
    RemainderOutOfRange {
        remainder: BigUint,
        modulus: BigUint,
    },

    /// Integrity failure on decryption: the reconstructed coefficient is not
    /// an exact multiple of the position divisor.
    #[error("position {position}: coefficient {value} is not divisible by {divisor}")]
    Divisibility {
        position: usize,
        value: BigUint,
        divisor: BigUint,
    },

    /// Integrity failure on decryption: the recovered symbol does not fit in
    /// a byte.
    #[error("position {position}: recovered value {value} exceeds the byte range 0..=255")]
    ByteRange { position: usize, value: BigUint },

    #[error("ciphertext holds {ciphertext} entries but key holds {key}")]
    LengthMismatch { ciphertext: usize, key: usize },

    /// Malformed ciphertext or key file; `line` is 1-based.
    #[error("line {line}: {message}")]
    Format { line: usize, message: String },

    /// Malformed expression passed to the textual grammar.
    #[error("parse error: {0}")]
    Parse(String),

    #[error("bytes do not form valid UTF-8 text")]
    InvalidEncoding,
}

impl Error {
    pub(crate) fn format(line: usize, message: impl Into<String>) -> Self {
        Error::Format {
            line,
            message: message.into(),
        }
    }
}
