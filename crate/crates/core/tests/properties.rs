use std::sync::Arc;

use ccc_core::oracle::{brute_dual, code_set};
use ccc_core::{
    count_ideals, enumerate_codes, euclidean_size_check, expand_codewords, gamma, nth_ideal, CyclicCode,
    Decomposition, FieldSpec, IdealDescriptor,
};
use num_bigint::BigUint;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn decomp(m: u32, n: usize, k: u32) -> Arc<Decomposition> {
    Arc::new(Decomposition::new(FieldSpec::default_for(m).unwrap(), n, k).unwrap())
}

fn gamma_direct(q: &BigUint, k: u32) -> BigUint {
    let mut g = BigUint::from(0u32);
    for t in 0..k {
        for s in t + 1..k {
            for i in s + 1..k {
                if i + s < k + t {
                    g += q.pow(s - t - 1);
                }
            }
        }
    }
    g
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn random_codes_complement_and_round_trip(seed in any::<u64>(), nk in prop::sample::select(vec![(7usize, 4u32), (7, 5), (9, 3), (15, 2), (5, 6)])) {
        let d = decomp(1, nk.0, nk.1);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = CyclicCode::random(&d, &mut rng).unwrap();
        let (a, b) = euclidean_size_check(&c).unwrap();
        prop_assert_eq!(a + b, d.space_log2());
        prop_assert_eq!(c.dual().unwrap().dual().unwrap(), c.clone());
        prop_assert_eq!(CyclicCode::from_json(&c.to_json(), d.clone()).unwrap(), c);
    }

    #[test]
    fn random_codes_over_f4(seed in any::<u64>()) {
        let d = decomp(2, 5, 3);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = CyclicCode::random(&d, &mut rng).unwrap();
        prop_assert_eq!(c.dual().unwrap().dual().unwrap(), c.clone());
        prop_assert_eq!(c.log2_size() + c.dual().unwrap().log2_size(), d.space_log2());
    }

    #[test]
    fn descriptor_json_round_trip(m in 1u32..=3, dj in 1usize..=3, k in 2u32..=7, raw in any::<u64>()) {
        let q = BigUint::from(2u32).pow(m * dj as u32);
        let total = count_ideals(&q, k);
        let index = BigUint::from(raw) % &total;
        let d = nth_ideal(dj, m, k, &index).unwrap();
        d.validate(m).unwrap();
        let text = serde_json::to_string(&d).unwrap();
        let back: IdealDescriptor = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back, d);
    }

    #[test]
    fn gamma_matches_triple_sum(q_bits in 1u32..=4, k in 1u32..=10) {
        let q = BigUint::from(2u32).pow(q_bits);
        prop_assert_eq!(gamma(&q, k), gamma_direct(&q, k));
    }
}

#[test]
fn codeword_count_matches_size_for_all_small_codes() {
    for (m, n, k) in [(1, 1, 2), (1, 3, 2), (2, 1, 2)] {
        for c in enumerate_codes(&decomp(m, n, k)).unwrap() {
            let words: Vec<_> = expand_codewords(&c, None).unwrap().collect();
            assert_eq!(words.len() as u64, 1u64 << c.log2_size());
            for w in &words {
                assert!(c.contains(w).unwrap());
            }
        }
    }
}

#[test]
fn self_dual_codes_equal_their_brute_dual() {
    for (m, n, k) in [(1, 1, 4), (1, 3, 2), (2, 3, 2)] {
        let d = decomp(m, n, k);
        for c in ccc_core::selfdual_enumerate(&d).unwrap() {
            assert_eq!(brute_dual(&c).unwrap(), code_set(&c).unwrap(), "{}", c.to_json());
        }
    }
}

#[test]
fn expansion_guard() {
    let d = decomp(1, 7, 4);
    let full = CyclicCode::full(d);
    assert!(expand_codewords(&full, None).is_err());
    assert_eq!(expand_codewords(&full, Some(5)).unwrap().count(), 5);
}
