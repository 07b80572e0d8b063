//! Transmission channels: identity, a fixed XOR mask, or a binary
//! symmetric channel.

use std::fmt;
use std::str::FromStr;

use crate::bitword::BitWord;
use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::rng::{bernoulli_mask, Stream, StreamKey};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub enum ChannelSpec {
    #[default]
    Identity,
    Mask(BitWord),
    Bsc { flip_probability: Rational, seed: u64 },
}

impl ChannelSpec {
    pub fn bsc(flip_probability: Rational, seed: u64) -> Result<Self> {
        if flip_probability > Rational::ONE {
            return Err(Error::ProbabilityOutOfRange(flip_probability.to_string()));
        }
        Ok(ChannelSpec::Bsc {
            flip_probability,
            seed,
        })
    }

    /// The error pattern this channel applies to a word of length `len`.
    /// `key` supplies the trial, row and stream; the seed comes from the
    /// channel itself.
    pub fn realize_mask(&self, len: usize, key: StreamKey) -> Result<BitWord> {
        match self {
            ChannelSpec::Identity => Ok(BitWord::zeros(len)),
            ChannelSpec::Mask(mask) => {
                if mask.len() != len {
                    return Err(Error::LengthMismatch {
                        left: len,
                        right: mask.len(),
                    });
                }
                Ok(mask.clone())
            }
            ChannelSpec::Bsc {
                flip_probability,
                seed,
            } => {
                if *flip_probability > Rational::ONE {
                    return Err(Error::ProbabilityOutOfRange(flip_probability.to_string()));
                }
                Ok(bernoulli_mask(
                    len,
                    *flip_probability,
                    StreamKey { seed: *seed, ..key },
                ))
            }
        }
    }

    /// Sends `word` through the channel, returning the received word and the
    /// mask that was applied.
    pub fn send(&self, word: &BitWord, key: StreamKey) -> Result<(BitWord, BitWord)> {
        let mask = self.realize_mask(word.len(), key)?;
        Ok((word.xor(&mask)?, mask))
    }
}

/// `t(word)` for trial `trial_index`, on the generic channel stream.
pub fn transmit(word: &BitWord, channel: &ChannelSpec, trial_index: u64) -> Result<BitWord> {
    let key = StreamKey::new(0, trial_index, Stream::Channel);
    channel.send(word, key).map(|(received, _)| received)
}

/// Text form: `identity`, `mask(0100000)`, `bsc(p=1/20,seed=7)`.
impl fmt::Display for ChannelSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChannelSpec::Identity => f.write_str("identity"),
            ChannelSpec::Mask(mask) => write!(f, "mask({mask})"),
            ChannelSpec::Bsc {
                flip_probability,
                seed,
            } => write!(f, "bsc(p={flip_probability},seed={seed})"),
        }
    }
}

impl FromStr for ChannelSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse {
            line: 0,
            message: format!("unrecognized channel {s:?}"),
        };
        if s == "identity" {
            return Ok(ChannelSpec::Identity);
        }
        if let Some(body) = s.strip_prefix("mask(").and_then(|r| r.strip_suffix(')')) {
            return Ok(ChannelSpec::Mask(body.parse()?));
        }
        if let Some(body) = s.strip_prefix("bsc(").and_then(|r| r.strip_suffix(')')) {
            let mut p = None;
            let mut seed = None;
            for part in body.split(',') {
                match part.split_once('=') {
                    Some(("p", v)) => p = Some(v.parse::<Rational>()?),
                    Some(("seed", v)) => seed = Some(v.parse::<u64>().map_err(|_| bad())?),
                    _ => return Err(bad()),
                }
            }
            return ChannelSpec::bsc(p.ok_or_else(bad)?, seed.unwrap_or(0));
        }
        Err(bad())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> BitWord {
        s.parse().unwrap()
    }

    #[test]
    fn mask_replays_worked_example() {
        let ch = ChannelSpec::Mask(w("0100000"));
        assert_eq!(transmit(&w("1111111"), &ch, 0).unwrap(), w("1011111"));
        assert!(transmit(&w("111"), &ch, 0).is_err());
    }

    #[test]
    fn identity_and_extreme_bsc() {
        let word = w("1100101");
        assert_eq!(transmit(&word, &ChannelSpec::Identity, 3).unwrap(), word);
        let clean = ChannelSpec::bsc(Rational::ZERO, 5).unwrap();
        assert_eq!(transmit(&word, &clean, 3).unwrap(), word);
        let certain = ChannelSpec::bsc(Rational::ONE, 5).unwrap();
        assert_eq!(transmit(&word, &certain, 3).unwrap(), word.complement());
    }

    #[test]
    fn bsc_probability_checked() {
        assert!(matches!(
            ChannelSpec::bsc(Rational::new(3, 2).unwrap(), 0),
            Err(Error::ProbabilityOutOfRange(_))
        ));
    }

    #[test]
    fn bsc_is_keyed_by_trial() {
        let ch = ChannelSpec::bsc(Rational::new(1, 2).unwrap(), 11).unwrap();
        let word = BitWord::zeros(64);
        let a = transmit(&word, &ch, 0).unwrap();
        assert_eq!(a, transmit(&word, &ch, 0).unwrap());
        assert_ne!(a, transmit(&word, &ch, 1).unwrap());
    }

    #[test]
    fn text_form_round_trips() {
        for ch in [
            ChannelSpec::Identity,
            ChannelSpec::Mask(w("0100000")),
            ChannelSpec::bsc(Rational::new(1, 20).unwrap(), 7).unwrap(),
        ] {
            assert_eq!(ch.to_string().parse::<ChannelSpec>().unwrap(), ch);
        }
        assert!("bsc(q=1)".parse::<ChannelSpec>().is_err());
        assert!("noise".parse::<ChannelSpec>().is_err());
    }
}
