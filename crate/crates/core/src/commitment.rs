//! Setup, commit and the two opening rules.
//!
//! A commitment to message `m` is `g(m) XOR S` for a witness codeword `S`;
//! the opening is the pair `(g(m), S)`. The crisp rule accepts only an exact
//! reconstruction. The fuzzy rule corrects the reconstruction to its nearest
//! codeword and accepts when it lies within `z0` (as a fraction of `n`) of
//! the commitment that was actually received.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bitword::BitWord;
use crate::codeset::CodeSet;
use crate::error::{Error, Result};
use crate::metric::{check_threshold, correct, fuzz_membership, nearness};
use crate::rational::Rational;
use crate::rng::{sample_codeword, Stream, StreamKey};

/// The public commitment key. XOR is the only combiner.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum Combiner {
    #[default]
    Xor,
}

impl fmt::Display for Combiner {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("XOR")
    }
}

/// The error-correction function. Nearest neighbor in the code is the only one.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum Correction {
    #[default]
    NearestNeighbor,
}

impl fmt::Display for Correction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("nearest")
    }
}

/// Public parameters agreed at setup time.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchemeParams {
    pub code: CodeSet,
    pub z0: Rational,
    pub combiner: Combiner,
    pub correction: Correction,
}

impl SchemeParams {
    pub fn n(&self) -> usize {
        self.code.n()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Opening {
    pub encoded_message: BitWord,
    pub witness: BitWord,
}

/// How the committer picks the witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    Explicit(BitWord),
    /// Uniform codeword from the keyed ChaCha20 stream for this seed.
    Seeded(u64),
}

/// Outcome of a fuzzy opening.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Decision {
    pub accepted: bool,
    /// `c' = t(g(m)) XOR t(S)`.
    pub reconstructed: BitWord,
    /// `f(c')`, or `c'` itself when it already equals the received commitment.
    pub corrected: BitWord,
    pub nearness_value: Rational,
    pub fuzz_value: Rational,
    pub recovered_message: Option<BitWord>,
    /// True when `corrected XOR witness` was already a codeword, i.e. the
    /// recovered message needed no second correction.
    pub recovery_exact: bool,
}

pub fn setup(code: CodeSet, z0: Rational) -> Result<SchemeParams> {
    let z0 = check_threshold(z0)?;
    Ok(SchemeParams {
        code,
        z0,
        combiner: Combiner::Xor,
        correction: Correction::NearestNeighbor,
    })
}

/// Commits to `message` under a witness codeword.
pub fn commit(params: &SchemeParams, message: &BitWord, witness: &Witness) -> Result<(BitWord, Opening)> {
    let code = &params.code;
    let encoded = code.encode(message)?;
    let witness = match witness {
        Witness::Explicit(s) => {
            check_len(s, code.n())?;
            if !code.contains(s) {
                return Err(Error::WitnessNotInCode(s.to_string()));
            }
            s.clone()
        }
        Witness::Seeded(seed) => sample_codeword(code, StreamKey::new(*seed, 0, Stream::Witness)),
    };
    combine(encoded, witness)
}

/// Crisp-mode commit: the witness may be any word of length `n`.
pub fn commit_crisp(params: &SchemeParams, message: &BitWord, witness: &BitWord) -> Result<(BitWord, Opening)> {
    let encoded = params.code.encode(message)?;
    check_len(witness, params.n())?;
    combine(encoded, witness.clone())
}

fn combine(encoded_message: BitWord, witness: BitWord) -> Result<(BitWord, Opening)> {
    let commitment = encoded_message.xor(&witness)?;
    Ok((
        commitment,
        Opening {
            encoded_message,
            witness,
        },
    ))
}

/// Crisp opening: accept iff `g(m) XOR S` equals the commitment exactly.
pub fn open_exact(params: &SchemeParams, commitment: &BitWord, opening: &Opening) -> Result<bool> {
    check_lengths(params, commitment, opening)?;
    let reconstructed = opening.encoded_message.xor(&opening.witness)?;
    Ok(&reconstructed == commitment)
}

/// Fuzzy opening over possibly corrupted inputs.
///
/// Correction is applied only when the reconstruction disagrees with the
/// received commitment, i.e. when a transmission error is visible. The
/// message is recovered as `g⁻¹(f(corrected XOR S))`.
pub fn open_fuzzy(
    params: &SchemeParams,
    received_commitment: &BitWord,
    received_opening: &Opening,
) -> Result<Decision> {
    check_lengths(params, received_commitment, received_opening)?;
    let code = &params.code;
    let reconstructed = received_opening
        .encoded_message
        .xor(&received_opening.witness)?;
    let corrected = if &reconstructed == received_commitment {
        reconstructed.clone()
    } else {
        correct(&reconstructed, code)?
    };
    let nearness_value = nearness(received_commitment, &corrected)?;
    let fuzz_value = fuzz_membership(received_commitment, &corrected, params.z0)?;
    let accepted = fuzz_value.is_zero();

    let (recovered_message, recovery_exact) = if accepted {
        let unblinded = corrected.xor(&received_opening.witness)?;
        let exact = code.contains(&unblinded);
        let codeword = if exact { unblinded } else { correct(&unblinded, code)? };
        (Some(code.decode(&codeword)?), exact)
    } else {
        (None, false)
    };

    Ok(Decision {
        accepted,
        reconstructed,
        corrected,
        nearness_value,
        fuzz_value,
        recovered_message,
        recovery_exact,
    })
}

fn check_len(word: &BitWord, n: usize) -> Result<()> {
    if word.len() != n {
        return Err(Error::LengthMismatch {
            left: word.len(),
            right: n,
        });
    }
    Ok(())
}

fn check_lengths(params: &SchemeParams, commitment: &BitWord, opening: &Opening) -> Result<()> {
    let n = params.n();
    check_len(commitment, n)?;
    check_len(&opening.encoded_message, n)?;
    check_len(&opening.witness, n)
}
