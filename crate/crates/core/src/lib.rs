//! Fuzzy commitments over binary codes.
//!
//! A sender commits to a message by XOR-blinding its codeword with a random
//! codeword. The receiver opens by rebuilding the commitment from the
//! revealed pair, snapping it to the nearest codeword, and accepting when the
//! result is within a fixed fraction `z0` of the bits of the commitment it
//! actually received. Corruption in transit is therefore tolerated up to the
//! threshold, where a crisp scheme would reject.
//!
//! ```
//! use fuzzcommit_core::{commit, open_fuzzy, setup, CodeSet, Opening, Rational, Witness};
//!
//! let params = setup(CodeSet::paper_example_code(), "0.20".parse().unwrap()).unwrap();
//! let m = "1011".parse().unwrap();
//! let (c, _) = commit(&params, &m, &Witness::Explicit("1011010".parse().unwrap())).unwrap();
//! assert_eq!(c.to_string(), "1111111");
//!
//! // one bit of the commitment and one of g(m) are flipped in transit
//! let received = Opening {
//!     encoded_message: "1100101".parse().unwrap(),
//!     witness: "1011010".parse().unwrap(),
//! };
//! let decision = open_fuzzy(&params, &"1011111".parse().unwrap(), &received).unwrap();
//! assert!(decision.accepted);
//! assert_eq!(decision.nearness_value, Rational::new(1, 7).unwrap());
//! assert_eq!(decision.recovered_message, Some(m));
//! ```

pub mod artifact;
pub mod bitword;
pub mod channel;
pub mod codeset;
pub mod commitment;
pub mod error;
pub mod metric;
pub mod rational;
pub mod rng;
pub mod simulation;

pub use bitword::BitWord;
pub use channel::{transmit, ChannelSpec};
pub use codeset::{build_linear_code, decode, encode, min_distance, paper_example_code, CodeSet};
pub use commitment::{
    commit, commit_crisp, open_exact, open_fuzzy, setup, Combiner, Correction, Decision, Opening,
    SchemeParams, Witness,
};
pub use error::{Error, Result};
pub use metric::{correct, fuzz_membership, hamming_distance, nearness, xor};
pub use rational::Rational;
pub use rng::{Stream, StreamKey, PRNG_ALGORITHM};
pub use simulation::{
    enumerate_commitment_masks, exact_commitment_bsc_rate, run_trials, sweep, AcceptanceStats,
    Channels, MaskEnumeration, NoiseTargets, SweepRow,
};
