//! Fixed-length binary words.
//!
//! Bits are numbered from the left as printed: the first character of the
//! text form is bit 1. Internally bit `i` (zero-based) lives in block `i / 64`
//! at position `63 - i % 64`, so comparing the block vectors of two words of
//! equal length is the same as comparing their bit strings lexicographically.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const BLOCK: usize = 64;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct BitWord {
    len: usize,
    blocks: Vec<u64>,
}

impl BitWord {
    /// The all-zeros word of length `len`. Panics if `len` is zero.
    pub fn zeros(len: usize) -> Self {
        assert!(len > 0, "bit words have at least one bit");
        BitWord {
            len,
            blocks: vec![0; len.div_ceil(BLOCK)],
        }
    }

    pub fn ones(len: usize) -> Self {
        let mut w = Self::zeros(len);
        for b in w.blocks.iter_mut() {
            *b = u64::MAX;
        }
        w.clear_padding();
        w
    }

    pub fn from_bits<I: IntoIterator<Item = bool>>(bits: I) -> Result<Self> {
        let bits: Vec<bool> = bits.into_iter().collect();
        if bits.is_empty() {
            return Err(Error::InvalidBitString(String::new()));
        }
        let mut w = Self::zeros(bits.len());
        for (i, b) in bits.into_iter().enumerate() {
            w.set(i, b);
        }
        Ok(w)
    }

    /// Builds a word from the low `len` bits of `value`, most significant
    /// of those bits first. `len` must be in `1..=64`.
    pub fn from_u64(value: u64, len: usize) -> Self {
        assert!((1..=BLOCK).contains(&len), "from_u64 takes 1..=64 bits");
        let mut w = Self::zeros(len);
        let masked = if len == BLOCK {
            value
        } else {
            value & ((1u64 << len) - 1)
        };
        w.blocks[0] = masked << (BLOCK - len);
        w
    }

    /// Inverse of [`BitWord::from_u64`] for words of at most 64 bits.
    pub fn to_u64(&self) -> Option<u64> {
        (self.len <= BLOCK).then(|| self.blocks[0] >> (BLOCK - self.len))
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Zero-based bit access.
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit index {i} out of range for {} bits", self.len);
        (self.blocks[i / BLOCK] >> (BLOCK - 1 - i % BLOCK)) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit index {i} out of range for {} bits", self.len);
        let bit = 1u64 << (BLOCK - 1 - i % BLOCK);
        if value {
            self.blocks[i / BLOCK] |= bit;
        } else {
            self.blocks[i / BLOCK] &= !bit;
        }
    }

    pub fn flip(&mut self, i: usize) {
        let v = self.get(i);
        self.set(i, !v);
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    /// Number of 1 bits.
    pub fn weight(&self) -> usize {
        self.blocks.iter().map(|b| b.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(|&b| b == 0)
    }

    pub fn complement(&self) -> Self {
        let mut w = BitWord {
            len: self.len,
            blocks: self.blocks.iter().map(|b| !b).collect(),
        };
        w.clear_padding();
        w
    }

    pub fn xor(&self, other: &BitWord) -> Result<BitWord> {
        self.check_len(other)?;
        Ok(BitWord {
            len: self.len,
            blocks: self
                .blocks
                .iter()
                .zip(&other.blocks)
                .map(|(a, b)| a ^ b)
                .collect(),
        })
    }

    /// Hamming distance; see [`crate::metric::hamming_distance`].
    pub fn distance(&self, other: &BitWord) -> Result<usize> {
        self.check_len(other)?;
        Ok(self
            .blocks
            .iter()
            .zip(&other.blocks)
            .map(|(a, b)| (a ^ b).count_ones() as usize)
            .sum())
    }

    pub(crate) fn check_len(&self, other: &BitWord) -> Result<()> {
        if self.len != other.len {
            return Err(Error::LengthMismatch {
                left: self.len,
                right: other.len,
            });
        }
        Ok(())
    }

    fn clear_padding(&mut self) {
        let tail = self.len % BLOCK;
        if tail != 0 {
            let last = self.blocks.len() - 1;
            self.blocks[last] &= u64::MAX << (BLOCK - tail);
        }
    }
}

impl FromStr for BitWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.is_empty() || !s.bytes().all(|c| c == b'0' || c == b'1') {
            return Err(Error::InvalidBitString(s.to_string()));
        }
        BitWord::from_bits(s.bytes().map(|c| c == b'1'))
    }
}

impl TryFrom<String> for BitWord {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<BitWord> for String {
    fn from(w: BitWord) -> String {
        w.to_string()
    }
}

impl fmt::Display for BitWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = self.iter().map(|b| if b { '1' } else { '0' }).collect();
        f.pad(&s)
    }
}

impl fmt::Debug for BitWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitWord({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> BitWord {
        s.parse().unwrap()
    }

    #[test]
    fn text_round_trip_keeps_order() {
        let word = w("1011010");
        assert_eq!(word.to_string(), "1011010");
        assert!(word.get(0));
        assert!(!word.get(1));
        assert_eq!(word.len(), 7);
        assert_eq!(word.to_u64(), Some(0b1011010));
    }

    #[test]
    fn rejects_bad_text() {
        assert!("".parse::<BitWord>().is_err());
        assert!("10 1".parse::<BitWord>().is_err());
        assert!("1021".parse::<BitWord>().is_err());
    }

    #[test]
    fn ordering_is_lexicographic() {
        assert!(w("0111111") < w("1000000"));
        assert!(w("0000000") < w("0000001"));
        let long_a = w(&format!("{}0", "1".repeat(70)));
        let long_b = w(&format!("{}1", "1".repeat(70)));
        assert!(long_a < long_b);
    }

    #[test]
    fn words_longer_than_one_block() {
        let text = "10".repeat(50);
        let word = w(&text);
        assert_eq!(word.to_string(), text);
        assert_eq!(word.weight(), 50);
        assert_eq!(word.complement().weight(), 50);
        assert_eq!(BitWord::ones(100).weight(), 100);
        assert_eq!(word.xor(&word.complement()).unwrap(), BitWord::ones(100));
    }

    #[test]
    fn xor_and_distance_need_equal_lengths() {
        assert_eq!(
            w("101").xor(&w("10")),
            Err(Error::LengthMismatch { left: 3, right: 2 })
        );
        assert!(w("101").distance(&w("1011")).is_err());
    }

    #[test]
    fn from_u64_masks_high_bits() {
        assert_eq!(BitWord::from_u64(0xff, 4).to_string(), "1111");
        assert_eq!(BitWord::from_u64(5, 7).to_string(), "0000101");
    }
}
