use proptest::prelude::*;

use fuzzcommit_core::{
    commit, commit_crisp, correct, fuzz_membership, hamming_distance, nearness, open_exact,
    open_fuzzy, run_trials, setup, transmit, BitWord, ChannelSpec, Channels, CodeSet, Opening,
    Rational, Witness,
};

fn word_of(len: usize) -> impl Strategy<Value = BitWord> {
    prop::collection::vec(any::<bool>(), len).prop_map(|bits| BitWord::from_bits(bits).unwrap())
}

fn same_len_pair() -> impl Strategy<Value = (BitWord, BitWord)> {
    (1usize..150).prop_flat_map(|n| (word_of(n), word_of(n)))
}

fn same_len_triple() -> impl Strategy<Value = (BitWord, BitWord, BitWord)> {
    (1usize..150).prop_flat_map(|n| (word_of(n), word_of(n), word_of(n)))
}

/// Random full-rank generator: k rows of length n, retried until independent.
fn linear_code() -> impl Strategy<Value = CodeSet> {
    (2usize..=10)
        .prop_flat_map(|n| (Just(n), 1usize..=n.min(6)))
        .prop_flat_map(|(n, k)| prop::collection::vec(word_of(n), k))
        .prop_filter_map("rank deficient", |rows| CodeSet::build_linear(&rows).ok())
}

fn z0_strategy() -> impl Strategy<Value = Rational> {
    (1u64..20).prop_flat_map(|den| (0..den, Just(den))).prop_map(|(n, d)| Rational::new(n, d).unwrap())
}

proptest! {
    #[test]
    fn text_form_round_trips(word in (1usize..200).prop_flat_map(word_of)) {
        let text = word.to_string();
        prop_assert_eq!(text.len(), word.len());
        prop_assert_eq!(text.parse::<BitWord>().unwrap(), word);
    }

    #[test]
    fn distance_is_a_metric((a, b, c) in same_len_triple()) {
        let ab = hamming_distance(&a, &b).unwrap();
        prop_assert_eq!(ab, hamming_distance(&b, &a).unwrap());
        prop_assert_eq!(ab == 0, a == b);
        prop_assert!(hamming_distance(&a, &c).unwrap() <= ab + hamming_distance(&b, &c).unwrap());
    }

    #[test]
    fn distance_counts_differing_positions((a, b) in same_len_pair()) {
        let naive = a.iter().zip(b.iter()).filter(|(x, y)| x != y).count();
        prop_assert_eq!(hamming_distance(&a, &b).unwrap(), naive);
    }

    #[test]
    fn xor_laws((a, b, c) in same_len_triple()) {
        prop_assert!(a.xor(&a).unwrap().is_zero());
        prop_assert_eq!(a.xor(&b).unwrap(), b.xor(&a).unwrap());
        prop_assert_eq!(
            a.xor(&b).unwrap().xor(&c).unwrap(),
            a.xor(&b.xor(&c).unwrap()).unwrap()
        );
    }

    #[test]
    fn nearness_in_unit_interval((a, b) in same_len_pair()) {
        let z = nearness(&a, &b).unwrap();
        prop_assert!(z <= Rational::ONE);
        prop_assert_eq!(z.is_zero(), a == b);
    }

    #[test]
    fn fuzz_zero_iff_within_threshold((a, b) in same_len_pair(), z0 in z0_strategy()) {
        let fuzz = fuzz_membership(&a, &b, z0).unwrap();
        let z = nearness(&a, &b).unwrap();
        prop_assert_eq!(fuzz.is_zero(), z <= z0);
        if !fuzz.is_zero() {
            prop_assert_eq!(fuzz, z);
        }
    }

    #[test]
    fn correction_is_a_nearest_codeword(code in linear_code(), seed in any::<u64>()) {
        let word = BitWord::from_u64(seed, code.n());
        let fixed = correct(&word, &code).unwrap();
        prop_assert!(code.contains(&fixed));
        let best = hamming_distance(&word, &fixed).unwrap();
        for c in code.codewords() {
            let d = hamming_distance(&word, c).unwrap();
            prop_assert!(d >= best);
            if d == best {
                prop_assert!(&fixed <= c, "tie not broken lexicographically");
            }
        }
    }

    #[test]
    fn linear_codes_are_closed_and_bijective(code in linear_code()) {
        prop_assert!(code.closed_under_xor());
        prop_assert!(code.contains(&BitWord::zeros(code.n())));
        prop_assert_eq!(code.len(), 1usize << code.k());
        for m in code.messages() {
            prop_assert_eq!(&code.decode(&code.encode(m).unwrap()).unwrap(), m);
        }
    }

    #[test]
    fn decision_is_consistent(
        code_pick in 0usize..2,
        m_index in 0usize..7,
        seed in any::<u64>(),
        e_c in 0u64..128,
        e_m in 0u64..128,
        e_s in 0u64..128,
        z0 in z0_strategy(),
    ) {
        let code = [CodeSet::paper_example_code(), CodeSet::hamming74()][code_pick].clone();
        let m = code.messages().nth(m_index).unwrap().clone();
        let params = setup(code, z0).unwrap();
        let (c, opening) = commit(&params, &m, &Witness::Seeded(seed)).unwrap();
        let flip = |w: &BitWord, e: u64| w.xor(&BitWord::from_u64(e, 7)).unwrap();
        let received = Opening {
            encoded_message: flip(&opening.encoded_message, e_m),
            witness: flip(&opening.witness, e_s),
        };
        let d = open_fuzzy(&params, &flip(&c, e_c), &received).unwrap();
        prop_assert_eq!(d.accepted, d.fuzz_value.is_zero());
        prop_assert_eq!(d.accepted, d.nearness_value <= z0);
        prop_assert_eq!(d.accepted, d.recovered_message.is_some());
        prop_assert!(params.code.contains(&d.corrected) || d.corrected == flip(&c, e_c));

        // threshold monotonicity
        if d.accepted {
            for looser in [Rational::new(9, 10).unwrap(), Rational::new(99, 100).unwrap()] {
                if looser >= z0 {
                    let p2 = setup(params.code.clone(), looser).unwrap();
                    prop_assert!(open_fuzzy(&p2, &flip(&c, e_c), &received).unwrap().accepted);
                }
            }
        }
    }

    #[test]
    fn mask_channel_is_an_involution(word in word_of(16), mask in word_of(16), trial in any::<u64>()) {
        let ch = ChannelSpec::Mask(mask);
        let once = transmit(&word, &ch, trial).unwrap();
        prop_assert_eq!(transmit(&once, &ch, trial).unwrap(), word);
    }

    #[test]
    fn bsc_is_deterministic(word in word_of(40), num in 0u64..=20, seed in any::<u64>(), trial in any::<u64>()) {
        let ch = ChannelSpec::bsc(Rational::new(num, 20).unwrap(), seed).unwrap();
        prop_assert_eq!(transmit(&word, &ch, trial).unwrap(), transmit(&word, &ch, trial).unwrap());
    }
}

#[test]
fn metric_axioms_exhaustive_n8() {
    let words: Vec<BitWord> = (0..256).map(|v| BitWord::from_u64(v, 8)).collect();
    for a in &words {
        for b in &words {
            let ab = hamming_distance(a, b).unwrap();
            assert_eq!(ab, hamming_distance(b, a).unwrap());
            assert_eq!(ab == 0, a == b);
        }
    }
    // triangle inequality on a strided subset of triples
    for a in words.iter().step_by(3) {
        for b in words.iter().step_by(5) {
            for c in words.iter().step_by(7) {
                assert!(
                    hamming_distance(a, c).unwrap()
                        <= hamming_distance(a, b).unwrap() + hamming_distance(b, c).unwrap()
                );
            }
        }
    }
}

#[test]
fn correction_exhaustive_on_shipped_codes() {
    for code in [CodeSet::paper_example_code(), CodeSet::hamming74()] {
        for v in 0..128 {
            let word = BitWord::from_u64(v, 7);
            let fixed = correct(&word, &code).unwrap();
            assert!(code.contains(&fixed));
            let best = hamming_distance(&word, &fixed).unwrap();
            assert!(code.codewords().all(|c| hamming_distance(&word, c).unwrap() >= best));
        }
    }
}

#[test]
fn crisp_and_zero_threshold_fuzzy_agree_on_clean_openings() {
    for code in [CodeSet::paper_example_code(), CodeSet::hamming74()] {
        let params = setup(code, Rational::ZERO).unwrap();
        let messages: Vec<_> = params.code.messages().cloned().collect();
        let witnesses: Vec<_> = params.code.codewords().cloned().collect();
        for m in &messages {
            for s in &witnesses {
                let (c, opening) = commit(&params, m, &Witness::Explicit(s.clone())).unwrap();
                let crisp = open_exact(&params, &c, &opening).unwrap();
                let fuzzy = open_fuzzy(&params, &c, &opening).unwrap();
                assert!(crisp);
                assert_eq!(crisp, fuzzy.accepted, "{} m={m} S={s}", params.code.id());
                assert_eq!(fuzzy.nearness_value, Rational::ZERO);
                assert_eq!(fuzzy.recovered_message.as_ref(), Some(m));
            }
        }
    }
}

#[test]
fn crisp_completeness_with_arbitrary_witness() {
    let params = setup(CodeSet::paper_example_code(), Rational::new(1, 5).unwrap()).unwrap();
    for m in params.code.messages() {
        for v in 0..128 {
            let s = BitWord::from_u64(v, 7);
            let (c, opening) = commit_crisp(&params, m, &s).unwrap();
            assert!(open_exact(&params, &c, &opening).unwrap());
        }
    }
}

#[test]
fn unique_decoding_radius_hamming74() {
    let params = setup(CodeSet::hamming74(), Rational::new(1, 5).unwrap()).unwrap();
    for m in params.code.messages() {
        let (c, opening) = commit(&params, m, &Witness::Seeded(5)).unwrap();
        for i in 0..7 {
            let mut t_c = c.clone();
            t_c.flip(i);
            let d = open_fuzzy(&params, &t_c, &opening).unwrap();
            assert_eq!(d.corrected, c);
            assert!(d.accepted);
            assert_eq!(d.recovered_message.as_ref(), Some(m));
        }
    }
}

#[test]
fn trials_do_not_depend_on_thread_count() {
    let params = setup(CodeSet::hamming74(), Rational::new(1, 5).unwrap()).unwrap();
    let channels = Channels {
        commitment: ChannelSpec::bsc(Rational::new(1, 10).unwrap(), 3).unwrap(),
        encoded_message: ChannelSpec::bsc(Rational::new(1, 20).unwrap(), 4).unwrap(),
        witness: ChannelSpec::Identity,
    };
    let m: BitWord = "0111".parse().unwrap();
    let parallel = run_trials(&params, &m, &channels, 2000, 9).unwrap();
    let single = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .unwrap()
        .install(|| run_trials(&params, &m, &channels, 2000, 9).unwrap());
    assert_eq!(parallel, single);
    assert!(parallel.recovery_correct <= parallel.accepted);
    assert!(parallel.accepted <= parallel.trials);
}
