//! Ciphertext-only cryptanalysis: what the remainder stream leaks without
//! the quotient key.
//!
//! At position `k` the remainder satisfies
//! `F_k * (beta^(k-1)*k*(k+1)) ≡ r_k (mod N)` with everything except `F_k`
//! public, so a keyless adversary can enumerate all 256 byte values and keep
//! the consistent ones. The per-position candidate sets are often tiny — a
//! singleton at position 1 for the classic beta=2, N=500 parameters — which
//! is the quantified counterpoint to any security claim for this scheme.
//!
//! Enumeration is used instead of modular inversion on purpose: the
//! multiplier frequently shares a factor with `N` (e.g. even multipliers
//! against N=500), where inverses do not exist and general congruence
//! solving is needed; over 256 candidates, brute force is simpler and
//! obviously correct.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigUint;
use num_traits::One;

use crate::cipher::{position_multiplier, CipherParams, Ciphertext};

/// Per-position candidate sets plus the position multipliers
/// `beta^(k-1)*k*(k+1) mod N` they were derived from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CandidateReport {
    sets: Vec<BTreeSet<u8>>,
    multipliers: Vec<BigUint>,
}

impl CandidateReport {
    pub fn candidate_sets(&self) -> &[BTreeSet<u8>] {
        &self.sets
    }

    pub fn multipliers(&self) -> &[BigUint] {
        &self.multipliers
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    /// The same report with every set intersected with printable ASCII
    /// (32..=126).
    pub fn restrict_printable(&self) -> CandidateReport {
        CandidateReport {
            sets: self
                .sets
                .iter()
                .map(|set| {
                    set.iter()
                        .copied()
                        .filter(|b| (0x20..=0x7e).contains(b))
                        .collect()
                })
                .collect(),
            multipliers: self.multipliers.clone(),
        }
    }
}

impl fmt::Display for CandidateReport {
    /// One line per position: `k=<pos> candidates=<count> {<bytes/chars>}`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (index, set) in self.sets.iter().enumerate() {
            let rendered = set
                .iter()
                .map(|&b| {
                    // hex-escape the set's own delimiters along with
                    // non-printable bytes
                    if (0x21..=0x7e).contains(&b) && !b",{}".contains(&b) {
                        (b as char).to_string()
                    } else {
                        format!("\\x{b:02x}")
                    }
                })
                .collect::<Vec<_>>()
                .join(",");
            writeln!(f, "k={} candidates={} {{{rendered}}}", index + 1, set.len())?;
        }
        Ok(())
    }
}

/// All bytes `F` with `F * (beta^(k-1)*k*(k+1) mod N) ≡ r (mod N)`, by
/// exhaustive enumeration. An empty set signals a parameter mismatch.
pub fn residue_candidates(remainder: &BigUint, k: usize, params: &CipherParams) -> BTreeSet<u8> {
    let multiplier = position_multiplier(k, params.beta()) % params.modulus();
    candidates_for(remainder, &multiplier, params.modulus())
}

fn candidates_for(remainder: &BigUint, multiplier: &BigUint, modulus: &BigUint) -> BTreeSet<u8> {
    (0u16..=255)
        .filter(|&f| &(BigUint::from(f) * multiplier) % modulus == *remainder)
        .map(|f| f as u8)
        .collect()
}

/// [`residue_candidates`] at every position of the ciphertext.
pub fn crack(ciphertext: &Ciphertext) -> CandidateReport {
    let params = ciphertext.params();
    let modulus = params.modulus();
    let mut power = BigUint::one() % modulus; // beta^(k-1) mod N
    let mut sets = Vec::with_capacity(ciphertext.len());
    let mut multipliers = Vec::with_capacity(ciphertext.len());
    for (index, remainder) in ciphertext.remainders().iter().enumerate() {
        let k = index + 1;
        if k > 1 {
            power = power * params.beta() % modulus;
        }
        let multiplier = &power * BigUint::from(k) * BigUint::from(k + 1) % modulus;
        sets.push(candidates_for(remainder, &multiplier, modulus));
        multipliers.push(multiplier);
    }
    CandidateReport { sets, multipliers }
}
