//! Exact-arithmetic toolkit for the KAJ integral transform and the
//! modular cipher built on top of it.
//!
//! The transform side ([`transform`]) rewrites time-domain expressions over a
//! seven-atom basis into image-domain expressions with a symbolic order `m`,
//! and back, with exact rational coefficients throughout. The cipher side
//! ([`cipher`]) hosts one plaintext byte per term of the carrier polynomial
//! `F*t^2*e^(beta*t)`, transforms it, and splits each integer image
//! coefficient `M_k = F_k * beta^(k-1) * k * (k+1)` by the public modulus `N`
//! into a remainder stream (the ciphertext) and a quotient stream (the key).
//!
//! ```
//! use kaj::{encrypt, decrypt, CipherParams};
//! use num_bigint::BigUint;
//!
//! let params = CipherParams::new(BigUint::from(2u32), BigUint::from(500u32)).unwrap();
//! let (ciphertext, key) = encrypt(b"ENVIRONMENT", &params).unwrap();
//! assert_eq!(decrypt(&ciphertext, &key).unwrap(), b"ENVIRONMENT");
//! ```
//!
//! ## ⚠️ Security warning
//!
//! This scheme is a classical/educational construction and is **not**
//! secure: the remainders leak plaintext through a per-position congruence
//! that needs no key material at all. The [`mod@crack`] module quantifies
//! exactly how much an adversary learns from a ciphertext alone. Do not use
//! this for anything that needs real confidentiality.

pub mod cipher;
pub mod codec;
pub mod crack;
pub mod error;
pub mod grammar;
pub mod transform;

pub use cipher::{
    decrypt, encrypt, image_coefficients, mod_join, mod_split, position_multiplier, recover_symbol,
    CipherParams, Ciphertext, ImageCoefficients, KeyStream,
};
pub use crack::{crack, residue_candidates, CandidateReport};
pub use error::Error;
pub use transform::{expand_carrier_series, ImageAtom, ImageExpr, TimeAtom, TimeExpr};

/// Exact rational coefficient type used everywhere in the transform layer.
pub type Rational = num_rational::BigRational;

pub type Result<T> = std::result::Result<T, Error>;
