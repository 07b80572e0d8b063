//! Keyed deterministic random streams.
//!
//! Every random draw comes from a ChaCha20 stream whose 32-byte seed is
//! `seed ‖ row ‖ trial ‖ stream` (each little-endian u64). A draw therefore
//! depends only on its key, never on evaluation order or thread count.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

use crate::bitword::BitWord;
use crate::codeset::CodeSet;
use crate::rational::Rational;

/// Name recorded in parameter files and simulation output.
pub const PRNG_ALGORITHM: &str = "chacha20";

/// Which quantity a stream feeds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Stream {
    Witness,
    Commitment,
    EncodedMessage,
    WitnessTransit,
    /// Stand-alone channel use outside a simulation.
    Channel,
}

impl Stream {
    fn tag(self) -> u64 {
        match self {
            Stream::Witness => 1,
            Stream::Commitment => 2,
            Stream::EncodedMessage => 3,
            Stream::WitnessTransit => 4,
            Stream::Channel => 5,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct StreamKey {
    pub seed: u64,
    pub row: u64,
    pub trial: u64,
    pub stream: Stream,
}

impl StreamKey {
    pub fn new(seed: u64, trial: u64, stream: Stream) -> Self {
        StreamKey {
            seed,
            row: 0,
            trial,
            stream,
        }
    }

    pub fn with_row(self, row: u64) -> Self {
        StreamKey { row, ..self }
    }

    pub fn rng(&self) -> ChaCha20Rng {
        let mut bytes = [0u8; 32];
        bytes[0..8].copy_from_slice(&self.seed.to_le_bytes());
        bytes[8..16].copy_from_slice(&self.row.to_le_bytes());
        bytes[16..24].copy_from_slice(&self.trial.to_le_bytes());
        bytes[24..32].copy_from_slice(&self.stream.tag().to_le_bytes());
        ChaCha20Rng::from_seed(bytes)
    }
}

/// Uniform codeword of `code`.
pub fn sample_codeword(code: &CodeSet, key: StreamKey) -> BitWord {
    let index = key.rng().gen_range(0..code.len());
    code.codeword_at(index).clone()
}

/// Length-`len` word whose bits are independently 1 with probability `p`.
/// Each bit compares a uniform draw from `0..den` with `num`, so `p` is
/// applied exactly.
pub fn bernoulli_mask(len: usize, p: Rational, key: StreamKey) -> BitWord {
    let mut mask = BitWord::zeros(len);
    if p.is_zero() {
        return mask;
    }
    if p >= Rational::ONE {
        return BitWord::ones(len);
    }
    let mut rng = key.rng();
    for i in 0..len {
        if rng.gen_range(0..p.denominator()) < p.numerator() {
            mask.set(i, true);
        }
    }
    mask
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn keys_separate_streams() {
        let a = StreamKey::new(7, 0, Stream::Commitment);
        let p = Rational::new(1, 2).unwrap();
        assert_eq!(bernoulli_mask(64, p, a), bernoulli_mask(64, p, a));
        assert_ne!(bernoulli_mask(64, p, a), bernoulli_mask(64, p, a.with_row(1)));
        assert_ne!(
            bernoulli_mask(64, p, a),
            bernoulli_mask(64, p, StreamKey::new(7, 0, Stream::EncodedMessage))
        );
    }

    #[test]
    fn degenerate_probabilities() {
        let key = StreamKey::new(1, 2, Stream::Channel);
        assert!(bernoulli_mask(9, Rational::ZERO, key).is_zero());
        assert_eq!(bernoulli_mask(9, Rational::ONE, key).weight(), 9);
    }

    #[test]
    fn witness_sampling_reaches_every_codeword() {
        let code = CodeSet::paper_example_code();
        let mut seen = std::collections::HashSet::new();
        for t in 0..200 {
            let s = sample_codeword(&code, StreamKey::new(3, t, Stream::Witness));
            assert!(code.contains(&s));
            seen.insert(s);
        }
        assert_eq!(seen.len(), code.len());
    }
}
