//! Distance, nearest-neighbor correction, nearness and fuzzy membership.

use crate::bitword::BitWord;
use crate::codeset::CodeSet;
use crate::error::{Error, Result};
use crate::rational::Rational;

/// Number of positions in which `a` and `b` differ.
pub fn hamming_distance(a: &BitWord, b: &BitWord) -> Result<usize> {
    a.distance(b)
}

pub fn xor(a: &BitWord, b: &BitWord) -> Result<BitWord> {
    a.xor(b)
}

/// `dist(a, b) / n` as an exact fraction in `[0, 1]`.
pub fn nearness(a: &BitWord, b: &BitWord) -> Result<Rational> {
    let d = hamming_distance(a, b)?;
    Rational::new(d as u64, a.len() as u64)
}

/// Nearest codeword to `word`.
///
/// Defined on every word of length `n`; a codeword maps to itself. Among
/// several codewords at the minimum distance the lexicographically smallest
/// bit string wins.
pub fn correct(word: &BitWord, code: &CodeSet) -> Result<BitWord> {
    if word.len() != code.n() {
        return Err(Error::LengthMismatch {
            left: word.len(),
            right: code.n(),
        });
    }
    if code.contains(word) {
        return Ok(word.clone());
    }
    let mut best: Option<(usize, &BitWord)> = None;
    // codewords() is sorted, so a strict comparison keeps the first minimizer
    for candidate in code.codewords() {
        let d = word.distance(candidate)?;
        if best.is_none_or(|(bd, _)| d < bd) {
            best = Some((d, candidate));
        }
    }
    best.map(|(_, c)| c.clone())
        .ok_or_else(|| Error::InvalidCode("empty code".into()))
}

/// Checks `0 <= z0 < 1`.
pub fn check_threshold(z0: Rational) -> Result<Rational> {
    if z0 >= Rational::ONE {
        return Err(Error::ThresholdOutOfRange(z0.to_string()));
    }
    Ok(z0)
}

/// Fuzzy membership of `candidate` with respect to `reference`.
///
/// Returns zero when `nearness(reference, candidate) <= z0` (accept) and the
/// nearness itself otherwise (reject).
pub fn fuzz_membership(reference: &BitWord, candidate: &BitWord, z0: Rational) -> Result<Rational> {
    let z0 = check_threshold(z0)?;
    let z = nearness(reference, candidate)?;
    Ok(if z <= z0 { Rational::ZERO } else { z })
}
