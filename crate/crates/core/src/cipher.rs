//! The KAJ-transform cipher: carrier coefficients, modulus split, and exact
//! recovery.
//!
//! Encryption hosts byte `F_k` in term `k` of the carrier polynomial, whose
//! image coefficient is the integer `M_k = F_k * beta^(k-1) * k * (k+1)`.
//! Each `M_k` splits as `M_k = N*q_k + r_k`: the remainders `r_k` form the
//! ciphertext, the quotients `q_k` form the secret key. Decryption rejoins
//! them and divides back out, so any tampering surfaces as a divisibility or
//! byte-range failure. Everything is arbitrary-precision; `M_k` outgrows any
//! fixed-width integer quickly (see the growth tests).

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::Error;
use crate::Result;

/// Public cipher parameters: the carrier growth base `beta >= 1` and the
/// split modulus `N >= 2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CipherParams {
    beta: BigUint,
    modulus: BigUint,
}

impl CipherParams {
    pub fn new(beta: BigUint, modulus: BigUint) -> Result<Self> {
        if beta.is_zero() {
            return Err(Error::InvalidParams("beta must be at least 1".into()));
        }
        if modulus < BigUint::from(2u32) {
            return Err(Error::InvalidParams("modulus must be at least 2".into()));
        }
        Ok(CipherParams { beta, modulus })
    }

    pub fn beta(&self) -> &BigUint {
        &self.beta
    }

    pub fn modulus(&self) -> &BigUint {
        &self.modulus
    }
}

/// The integer coefficients `M_1..M_n` of the transformed carrier.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImageCoefficients {
    values: Vec<BigUint>,
}

impl ImageCoefficients {
    pub fn new(values: Vec<BigUint>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptyMessage);
        }
        Ok(ImageCoefficients { values })
    }

    pub fn values(&self) -> &[BigUint] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// The remainder stream `r_1..r_n` together with the public parameters it
/// was produced under. Invariant: every remainder is below the modulus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ciphertext {
    remainders: Vec<BigUint>,
    params: CipherParams,
}

impl Ciphertext {
    pub fn new(remainders: Vec<BigUint>, params: CipherParams) -> Result<Self> {
        if remainders.is_empty() {
            return Err(Error::EmptyMessage);
        }
        if let Some(r) = remainders.iter().find(|r| *r >= params.modulus()) {
            return Err(Error::RemainderOutOfRange {
                remainder: r.clone(),
                modulus: params.modulus().clone(),
            });
        }
        Ok(Ciphertext { remainders, params })
    }

    pub fn remainders(&self) -> &[BigUint] {
        &self.remainders
    }

    pub fn params(&self) -> &CipherParams {
        &self.params
    }

    pub fn len(&self) -> usize {
        self.remainders.len()
    }

    pub fn is_empty(&self) -> bool {
        self.remainders.is_empty()
    }
}

/// The quotient stream `q_1..q_n` — the secret key.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KeyStream {
    quotients: Vec<BigUint>,
}

impl KeyStream {
    pub fn new(quotients: Vec<BigUint>) -> Result<Self> {
        if quotients.is_empty() {
            return Err(Error::EmptyMessage);
        }
        Ok(KeyStream { quotients })
    }

    pub fn quotients(&self) -> &[BigUint] {
        &self.quotients
    }

    pub fn len(&self) -> usize {
        self.quotients.len()
    }

    pub fn is_empty(&self) -> bool {
        self.quotients.is_empty()
    }
}

/// `beta^(k-1) * k * (k+1)` for 1-based position `k`: the factor multiplying
/// byte `F_k` in the image coefficient `M_k`.
pub fn position_multiplier(k: usize, beta: &BigUint) -> BigUint {
    assert!(k >= 1, "positions are 1-based");
    let exponent = u32::try_from(k - 1).expect("position too large");
    beta.pow(exponent) * BigUint::from(k) * BigUint::from(k + 1)
}

/// The closed form `M_k = F_k * beta^(k-1) * k * (k+1)` for every byte of
/// the message. Equals the coefficient extracted from the symbolic pipeline
/// `expand_carrier_series(..).transform()` on the `1/c^(m+k+2)` term.
pub fn image_coefficients(message: &[u8], params: &CipherParams) -> Result<ImageCoefficients> {
    if message.is_empty() {
        return Err(Error::EmptyMessage);
    }
    let mut power = BigUint::one(); // beta^(k-1)
    let mut values = Vec::with_capacity(message.len());
    for (index, &byte) in message.iter().enumerate() {
        let k = index + 1;
        if k > 1 {
            power *= params.beta();
        }
        values.push(&power * byte * BigUint::from(k) * BigUint::from(k + 1));
    }
    ImageCoefficients::new(values)
}

/// Euclidean split `value = modulus*q + r` with `0 <= r < modulus`.
pub fn mod_split(value: &BigUint, modulus: &BigUint) -> (BigUint, BigUint) {
    assert!(
        *modulus >= BigUint::from(2u32),
        "modulus must be at least 2"
    );
    value.div_rem(modulus)
}

/// Inverse of [`mod_split`]: `modulus*quotient + remainder`.
pub fn mod_join(quotient: &BigUint, remainder: &BigUint, modulus: &BigUint) -> Result<BigUint> {
    if remainder >= modulus {
        return Err(Error::RemainderOutOfRange {
            remainder: remainder.clone(),
            modulus: modulus.clone(),
        });
    }
    Ok(quotient * modulus + remainder)
}

/// Divide the reconstructed coefficient back down to the plaintext byte at
/// position `k`. Fails when the position divisor does not divide `value`
/// exactly, or when the quotient does not fit in a byte — both signal a
/// corrupted ciphertext, a wrong key, or wrong parameters.
pub fn recover_symbol(value: &BigUint, k: usize, beta: &BigUint) -> Result<u8> {
    let divisor = position_multiplier(k, beta);
    let (quotient, rest) = value.div_rem(&divisor);
    if !rest.is_zero() {
        return Err(Error::Divisibility {
            position: k,
            value: value.clone(),
            divisor,
        });
    }
    if quotient > BigUint::from(255u32) {
        return Err(Error::ByteRange {
            position: k,
            value: quotient,
        });
    }
    Ok(quotient.to_u8().expect("checked against byte range"))
}

/// Encrypt a byte message: image coefficients, then a componentwise modulus
/// split into (ciphertext, key). Deterministic.
pub fn encrypt(message: &[u8], params: &CipherParams) -> Result<(Ciphertext, KeyStream)> {
    let coefficients = image_coefficients(message, params)?;
    let mut remainders = Vec::with_capacity(coefficients.len());
    let mut quotients = Vec::with_capacity(coefficients.len());
    for value in coefficients.values() {
        let (q, r) = mod_split(value, params.modulus());
        quotients.push(q);
        remainders.push(r);
    }
    Ok((
        Ciphertext {
            remainders,
            params: params.clone(),
        },
        KeyStream { quotients },
    ))
}

/// Decrypt by rejoining each `(q_k, r_k)` pair into `M_k` and dividing out
/// the position multiplier. Exact inverse of [`encrypt`] under the same
/// parameters; any mismatch surfaces as an integrity error.
pub fn decrypt(ciphertext: &Ciphertext, key: &KeyStream) -> Result<Vec<u8>> {
    if ciphertext.len() != key.len() {
        return Err(Error::LengthMismatch {
            ciphertext: ciphertext.len(),
            key: key.len(),
        });
    }
    let params = ciphertext.params();
    let mut message = Vec::with_capacity(ciphertext.len());
    for (index, (remainder, quotient)) in ciphertext
        .remainders()
        .iter()
        .zip(key.quotients())
        .enumerate()
    {
        let value = mod_join(quotient, remainder, params.modulus())?;
        message.push(recover_symbol(&value, index + 1, params.beta())?);
    }
    Ok(message)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::transform::{expand_carrier_series, ImageAtom};
    use proptest::prelude::*;

    fn big(n: u128) -> BigUint {
        BigUint::from(n)
    }

    fn params(beta: u32, modulus: u32) -> CipherParams {
        CipherParams::new(BigUint::from(beta), BigUint::from(modulus)).unwrap()
    }

    const ENVIRONMENT_M: [u64; 11] = [
        138, 936, 4128, 11680, 39360, 106176, 279552, 709632, 1589760, 4392960, 11354112,
    ];

    #[test]
    fn params_are_validated() {
        assert!(matches!(
            CipherParams::new(BigUint::zero(), big(500)),
            Err(Error::InvalidParams(_))
        ));
        assert!(matches!(
            CipherParams::new(big(2), BigUint::one()),
            Err(Error::InvalidParams(_))
        ));
        assert!(CipherParams::new(big(1), big(2)).is_ok());
    }

    #[test]
    fn golden_image_coefficients() {
        let coeffs = image_coefficients(b"ENVIRONMENT", &params(2, 500)).unwrap();
        let expected: Vec<BigUint> = ENVIRONMENT_M.iter().map(|&m| BigUint::from(m)).collect();
        assert_eq!(coeffs.values(), expected.as_slice());
    }

    #[test]
    fn image_coefficients_of_zero_bytes_are_zero() {
        let coeffs = image_coefficients(&[0, 0], &params(7, 500)).unwrap();
        assert_eq!(coeffs.values(), &[BigUint::zero(), BigUint::zero()]);
    }

    #[test]
    fn image_coefficients_match_symbolic_pipeline() {
        // oracle: extract each 1/c^(m+k+2) coefficient from the transformed
        // carrier series
        let message = [65u8, 66];
        let beta = big(3);
        let image = expand_carrier_series(&message, &beta).unwrap().transform();
        let oracle: Vec<BigUint> = (1..=message.len())
            .map(|k| {
                let coeff = image.coefficient_of(&ImageAtom::InvPow(k as u32 + 2));
                assert!(coeff.is_integer());
                coeff.to_integer().to_biguint().unwrap()
            })
            .collect();
        assert_eq!(oracle, vec![big(130), big(1188)]);

        let closed = image_coefficients(&message, &params(3, 500)).unwrap();
        assert_eq!(closed.values(), oracle.as_slice());
    }

    #[test]
    fn mod_split_matches_worked_values() {
        assert_eq!(mod_split(&big(936), &big(500)), (big(1), big(436)));
        assert_eq!(mod_split(&big(11354112), &big(500)), (big(22708), big(112)));
        assert_eq!(mod_split(&big(0), &big(500)), (big(0), big(0)));
    }

    #[test]
    fn mod_join_matches_worked_values() {
        assert_eq!(
            mod_join(&big(22708), &big(112), &big(500)).unwrap(),
            big(11354112)
        );
        assert_eq!(mod_join(&big(0), &big(0), &big(7)).unwrap(), big(0));
        assert_eq!(
            mod_join(&big(3179), &big(260), &big(500)).unwrap(),
            big(1589760)
        );
        assert!(matches!(
            mod_join(&big(1), &big(500), &big(500)),
            Err(Error::RemainderOutOfRange { .. })
        ));
    }

    #[test]
    fn recover_symbol_worked_values() {
        assert_eq!(recover_symbol(&big(138), 1, &big(2)).unwrap(), 69);
        assert_eq!(recover_symbol(&big(0), 5, &big(3)).unwrap(), 0);
        assert!(matches!(
            recover_symbol(&big(131), 1, &big(2)),
            Err(Error::Divisibility { .. })
        ));
    }

    #[test]
    fn golden_encrypt_environment() {
        let (ciphertext, key) = encrypt(b"ENVIRONMENT", &params(2, 500)).unwrap();
        let expected_r: Vec<BigUint> = [138u64, 436, 128, 180, 360, 176, 52, 132, 260, 460, 112]
            .iter()
            .map(|&r| BigUint::from(r))
            .collect();
        let expected_q: Vec<BigUint> = [0u64, 1, 8, 23, 78, 212, 559, 1419, 3179, 8785, 22708]
            .iter()
            .map(|&q| BigUint::from(q))
            .collect();
        assert_eq!(ciphertext.remainders(), expected_r.as_slice());
        assert_eq!(key.quotients(), expected_q.as_slice());
    }

    #[test]
    fn encrypt_single_byte() {
        let (ciphertext, key) = encrypt(&[65], &params(2, 500)).unwrap();
        assert_eq!(ciphertext.remainders(), &[big(130)]);
        assert_eq!(key.quotients(), &[big(0)]);
        assert_eq!(decrypt(&ciphertext, &key).unwrap(), vec![65]);
    }

    #[test]
    fn encrypt_rejects_empty_message() {
        assert_eq!(
            encrypt(&[], &params(2, 500)).unwrap_err(),
            Error::EmptyMessage
        );
    }

    #[test]
    fn golden_decrypt_environment() {
        let p = params(2, 500);
        let remainders = [138u64, 436, 128, 180, 360, 176, 52, 132, 260, 460, 112]
            .iter()
            .map(|&r| BigUint::from(r))
            .collect();
        let quotients = [0u64, 1, 8, 23, 78, 212, 559, 1419, 3179, 8785, 22708]
            .iter()
            .map(|&q| BigUint::from(q))
            .collect();
        let ciphertext = Ciphertext::new(remainders, p).unwrap();
        let key = KeyStream::new(quotients).unwrap();
        assert_eq!(decrypt(&ciphertext, &key).unwrap(), b"ENVIRONMENT");
    }

    #[test]
    fn tampered_quotient_fails_integrity() {
        // M = 500*1 + 130 = 630; 630/2 = 315 does not fit a byte
        let p = params(2, 500);
        let ciphertext = Ciphertext::new(vec![big(130)], p).unwrap();
        let key = KeyStream::new(vec![big(1)]).unwrap();
        assert!(matches!(
            decrypt(&ciphertext, &key),
            Err(Error::ByteRange { position: 1, .. })
        ));
    }

    #[test]
    fn tampered_remainder_fails_divisibility() {
        // M = 500*0 + 139 is odd; divisor at k=1 is 2
        let p = params(2, 500);
        let ciphertext = Ciphertext::new(vec![big(139)], p).unwrap();
        let key = KeyStream::new(vec![big(0)]).unwrap();
        assert!(matches!(
            decrypt(&ciphertext, &key),
            Err(Error::Divisibility { position: 1, .. })
        ));
    }

    #[test]
    fn length_mismatch_is_rejected() {
        let p = params(2, 500);
        let (ciphertext, _) = encrypt(b"AB", &p).unwrap();
        let key = KeyStream::new(vec![big(0)]).unwrap();
        assert_eq!(
            decrypt(&ciphertext, &key).unwrap_err(),
            Error::LengthMismatch {
                ciphertext: 2,
                key: 1
            }
        );
    }

    #[test]
    fn ciphertext_rejects_out_of_range_remainders() {
        assert!(matches!(
            Ciphertext::new(vec![big(500)], params(2, 500)),
            Err(Error::RemainderOutOfRange { .. })
        ));
    }

    #[test]
    fn coefficients_outgrow_fixed_width_integers() {
        // 256 bytes at beta=3: M_256 = F*3^255*256*257 needs far more than
        // 128 bits, so any fixed-width path would have overflowed.
        let message = vec![255u8; 256];
        let coeffs = image_coefficients(&message, &params(3, 500)).unwrap();
        let last = coeffs.values().last().unwrap();
        assert!(last.bits() > 128);
        let bound = position_multiplier(256, &big(3)) * BigUint::from(255u32);
        assert_eq!(last, &bound);
    }

    proptest! {
        #[test]
        fn split_join_round_trip(value in any::<u128>(), modulus in 2u128..=u128::MAX) {
            let (value, modulus) = (big(value), big(modulus));
            let (q, r) = mod_split(&value, &modulus);
            prop_assert!(r < modulus);
            prop_assert_eq!(mod_join(&q, &r, &modulus).unwrap(), value);
        }

        #[test]
        fn encrypt_decrypt_round_trip(
            message in proptest::collection::vec(any::<u8>(), 1..=64),
            beta in prop_oneof![Just(1u32), Just(2), Just(3), Just(5), Just(10)],
            modulus in prop_oneof![Just(2u32), Just(257), Just(500), Just(1009)],
        ) {
            let p = params(beta, modulus);
            let (ciphertext, key) = encrypt(&message, &p).unwrap();
            for r in ciphertext.remainders() {
                prop_assert!(r < p.modulus());
            }
            prop_assert_eq!(decrypt(&ciphertext, &key).unwrap(), message);
        }
    }
}
