//! Monte Carlo and exhaustive measurement of fuzzy acceptance under noise.

use rayon::prelude::*;
use serde::Serialize;

use crate::bitword::BitWord;
use crate::channel::ChannelSpec;
use crate::commitment::{commit, open_fuzzy, Opening, SchemeParams, Witness};
use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::rng::{sample_codeword, Stream, StreamKey};

/// Exhaustive enumeration walks all `2^n` error patterns; beyond this it is refused.
pub const MAX_ENUMERATION_BITS: usize = 20;

/// One channel per transmitted value. The witness defaults to a clean channel.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Channels {
    pub commitment: ChannelSpec,
    pub encoded_message: ChannelSpec,
    pub witness: ChannelSpec,
}

/// Which legs a sweep puts noise on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NoiseTargets {
    pub commitment: bool,
    pub encoded_message: bool,
    pub witness: bool,
}

impl Default for NoiseTargets {
    fn default() -> Self {
        NoiseTargets {
            commitment: true,
            encoded_message: false,
            witness: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AcceptanceStats {
    pub trials: u64,
    pub accepted: u64,
    pub rate: Rational,
    pub mean_nearness: Rational,
    pub recovery_correct: u64,
}

impl AcceptanceStats {
    /// One-sigma binomial standard error of `rate` around `expected`.
    pub fn standard_error(expected: f64, trials: u64) -> f64 {
        (expected * (1.0 - expected) / trials as f64).sqrt()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepRow {
    pub p: Rational,
    #[serde(flatten)]
    pub stats: AcceptanceStats,
}

#[derive(Default)]
struct Tally {
    accepted: u64,
    recovered: u64,
    nearness_sum: Rational,
}

impl Tally {
    fn merge(self, other: Tally) -> Result<Tally> {
        Ok(Tally {
            accepted: self.accepted + other.accepted,
            recovered: self.recovered + other.recovered,
            nearness_sum: self.nearness_sum.checked_add(other.nearness_sum)?,
        })
    }
}

/// Runs `trials` independent commit → transmit → fuzzy-open rounds.
///
/// Trial `i` draws its witness from stream `(seed, i, Witness)` and its
/// channel noise from `(channel seed, i, leg)`, so the result does not
/// depend on how trials are scheduled across threads.
pub fn run_trials(
    params: &SchemeParams,
    message: &BitWord,
    channels: &Channels,
    trials: u64,
    seed: u64,
) -> Result<AcceptanceStats> {
    run_trials_in_row(params, message, channels, trials, seed, 0)
}

fn run_trials_in_row(
    params: &SchemeParams,
    message: &BitWord,
    channels: &Channels,
    trials: u64,
    seed: u64,
    row: u64,
) -> Result<AcceptanceStats> {
    if trials == 0 {
        return Err(Error::NoTrials);
    }
    params.code.encode(message)?;

    let tally = (0..trials)
        .into_par_iter()
        .map(|trial| one_trial(params, message, channels, seed, row, trial))
        .try_reduce(Tally::default, Tally::merge)?;

    Ok(AcceptanceStats {
        trials,
        accepted: tally.accepted,
        rate: Rational::new(tally.accepted, trials)?,
        mean_nearness: tally.nearness_sum.checked_div_int(trials)?,
        recovery_correct: tally.recovered,
    })
}

fn one_trial(
    params: &SchemeParams,
    message: &BitWord,
    channels: &Channels,
    seed: u64,
    row: u64,
    trial: u64,
) -> Result<Tally> {
    let key = |stream| StreamKey::new(seed, trial, stream).with_row(row);
    let witness = sample_codeword(&params.code, key(Stream::Witness));
    let (c, opening) = commit(params, message, &Witness::Explicit(witness))?;

    let (t_c, _) = channels.commitment.send(&c, key(Stream::Commitment))?;
    let (t_m, _) = channels
        .encoded_message
        .send(&opening.encoded_message, key(Stream::EncodedMessage))?;
    let (t_s, _) = channels
        .witness
        .send(&opening.witness, key(Stream::WitnessTransit))?;

    let decision = open_fuzzy(
        params,
        &t_c,
        &Opening {
            encoded_message: t_m,
            witness: t_s,
        },
    )?;
    Ok(Tally {
        accepted: u64::from(decision.accepted),
        recovered: u64::from(decision.recovered_message.as_ref() == Some(message)),
        nearness_sum: decision.nearness_value,
    })
}

/// One [`run_trials`] per flip probability. Row `i` uses row index `i` in
/// every stream key, so rows are independent even with a shared seed.
pub fn sweep(
    params: &SchemeParams,
    message: &BitWord,
    p_values: &[Rational],
    trials: u64,
    seed: u64,
    targets: NoiseTargets,
) -> Result<Vec<SweepRow>> {
    p_values
        .iter()
        .enumerate()
        .map(|(row, &p)| {
            let noisy = ChannelSpec::bsc(p, seed)?;
            let pick = |on: bool| if on { noisy.clone() } else { ChannelSpec::Identity };
            let channels = Channels {
                commitment: pick(targets.commitment),
                encoded_message: pick(targets.encoded_message),
                witness: pick(targets.witness),
            };
            let stats = run_trials_in_row(params, message, &channels, trials, seed, row as u64)?;
            Ok(SweepRow { p, stats })
        })
        .collect()
}

/// Result of opening against every commitment error pattern of one weight.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MaskEnumeration {
    pub weight: usize,
    pub masks: u64,
    pub accepted: u64,
    pub recovered: u64,
}

/// Corrupts the commitment with every mask of Hamming weight `weight` (clean
/// opening) and counts acceptances and correct recoveries.
pub fn enumerate_commitment_masks(
    params: &SchemeParams,
    message: &BitWord,
    witness: &BitWord,
    weight: usize,
) -> Result<MaskEnumeration> {
    let n = params.n();
    check_enumerable(n)?;
    let (c, opening) = commit(params, message, &Witness::Explicit(witness.clone()))?;
    let mut out = MaskEnumeration {
        weight,
        masks: 0,
        accepted: 0,
        recovered: 0,
    };
    for bits in (0u64..1 << n).filter(|b| b.count_ones() as usize == weight) {
        let t_c = c.xor(&BitWord::from_u64(bits, n))?;
        let d = open_fuzzy(params, &t_c, &opening)?;
        out.masks += 1;
        out.accepted += u64::from(d.accepted);
        out.recovered += u64::from(d.recovered_message.as_ref() == Some(message));
    }
    Ok(out)
}

/// Exact acceptance probability when only the commitment crosses a BSC with
/// flip probability `p` and the witness is uniform over the code:
/// the mean over witnesses of `Σ_mask p^w (1-p)^(n-w) · accept(mask)`.
pub fn exact_commitment_bsc_rate(params: &SchemeParams, message: &BitWord, p: Rational) -> Result<f64> {
    let n = params.n();
    check_enumerable(n)?;
    let p = p.to_f64();
    let mut total = 0.0;
    for witness in params.code.codewords() {
        let (c, opening) = commit(params, message, &Witness::Explicit(witness.clone()))?;
        for bits in 0u64..1 << n {
            let t_c = c.xor(&BitWord::from_u64(bits, n))?;
            if open_fuzzy(params, &t_c, &opening)?.accepted {
                let w = bits.count_ones() as i32;
                total += p.powi(w) * (1.0 - p).powi(n as i32 - w);
            }
        }
    }
    Ok(total / params.code.len() as f64)
}

fn check_enumerable(n: usize) -> Result<()> {
    if n > MAX_ENUMERATION_BITS {
        return Err(Error::InvalidCode(format!(
            "n = {n} is too long to enumerate (limit {MAX_ENUMERATION_BITS})"
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codeset::CodeSet;
    use crate::commitment::setup;

    fn w(s: &str) -> BitWord {
        s.parse().unwrap()
    }

    fn hamming_params() -> SchemeParams {
        setup(CodeSet::hamming74(), Rational::new(1, 5).unwrap()).unwrap()
    }

    #[test]
    fn identity_channels_always_accept() {
        let params = hamming_params();
        let stats = run_trials(&params, &w("0110"), &Channels::default(), 50, 1).unwrap();
        assert_eq!(stats.accepted, 50);
        assert_eq!(stats.rate, Rational::ONE);
        assert_eq!(stats.recovery_correct, 50);
        assert_eq!(stats.mean_nearness, Rational::ZERO);
    }

    #[test]
    fn single_masks_all_accept() {
        let params = hamming_params();
        for i in 0..7 {
            let mut mask = BitWord::zeros(7);
            mask.set(i, true);
            let channels = Channels {
                commitment: ChannelSpec::Mask(mask),
                ..Channels::default()
            };
            let stats = run_trials(&params, &w("1001"), &channels, 20, 3).unwrap();
            assert_eq!(stats.rate, Rational::ONE);
            assert_eq!(stats.recovery_correct, 20);
            assert_eq!(stats.mean_nearness, Rational::new(1, 7).unwrap());
        }
    }

    #[test]
    fn zero_trials_rejected() {
        let params = hamming_params();
        assert_eq!(
            run_trials(&params, &w("0000"), &Channels::default(), 0, 0),
            Err(Error::NoTrials)
        );
    }

    #[test]
    fn sweep_shapes() {
        let params = hamming_params();
        let m = w("1111");
        assert!(sweep(&params, &m, &[], 10, 0, NoiseTargets::default()).unwrap().is_empty());
        let rows = sweep(&params, &m, &[Rational::ZERO], 10, 0, NoiseTargets::default()).unwrap();
        assert_eq!(rows.len(), 1);
        assert_eq!(rows[0].stats.rate, Rational::ONE);
    }

    #[test]
    fn weight_enumeration_counts() {
        let params = hamming_params();
        let e1 = enumerate_commitment_masks(&params, &w("1010"), &BitWord::zeros(7), 1).unwrap();
        assert_eq!((e1.masks, e1.accepted, e1.recovered), (7, 7, 7));
        let e2 = enumerate_commitment_masks(&params, &w("1010"), &BitWord::zeros(7), 2).unwrap();
        assert_eq!((e2.masks, e2.accepted), (21, 0));
    }

    #[test]
    fn exact_rate_endpoints() {
        let params = hamming_params();
        let r0 = exact_commitment_bsc_rate(&params, &w("0001"), Rational::ZERO).unwrap();
        assert_eq!(r0, 1.0);
        let r1 = exact_commitment_bsc_rate(&params, &w("0001"), Rational::ONE).unwrap();
        assert_eq!(r1, 0.0);
    }
}
