use std::collections::HashSet;
use std::path::PathBuf;

use balset::codec::{
    balanced_subcode_min_distance, bounds, build_codec, load_codec, reference_codec16,
    REFERENCE16_D_BAL,
};
use balset::gf2::{LinearCode, Word};
use balset::Error;
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn fixture_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures/codec16")
}

#[test]
fn committed_fixture_matches_reference() {
    let disk = load_codec(fixture_dir().join("manifest.json")).unwrap();
    let reference = reference_codec16().unwrap();
    assert_eq!(disk.cprime().basis(), reference.cprime().basis());
    assert_eq!(disk.cbal().basis(), reference.cbal().basis());
    assert_eq!(disk.t_prime(), 3);
    assert!(disk.strict());
}

#[test]
fn every_message_encodes_to_a_balanced_word() {
    let codec = reference_codec16().unwrap();
    for u in 0..codec.message_count() {
        assert_eq!(codec.encode(u).unwrap().weight(), 8, "message {u}");
    }
}

#[test]
fn round_trip_with_up_to_one_error() {
    let codec = reference_codec16().unwrap();
    let d_bal = balanced_subcode_min_distance(&codec).unwrap().unwrap();
    assert_eq!(d_bal, REFERENCE16_D_BAL);
    for u in 0..codec.message_count() {
        let sent = codec.encode(u).unwrap();
        let clean = codec.decode(&sent).unwrap();
        assert_eq!((clean.message, clean.error_weight), (u, 0));
        assert_eq!(clean.codeword, sent);
        for i in 0..16 {
            let mut y = sent.clone();
            y.flip(i);
            let got = codec.decode(&y).unwrap();
            assert_eq!((got.message, got.error_weight), (u, 1), "u={u} bit={i}");
        }
    }
}

#[test]
fn decoder_calls_component_once_per_balancing_word() {
    let codec = reference_codec16().unwrap();
    let before = codec.invocations();
    let _ = codec.decode(&codec.encode(7).unwrap());
    assert_eq!(codec.invocations() - before, 1 << codec.k_bal());
    let _ = codec.decode(&Word::ones(16));
    assert_eq!(codec.invocations() - before, 2 << codec.k_bal());
}

#[test]
fn direct_sum_is_injective() {
    let codec = reference_codec16().unwrap();
    let mut sums = HashSet::new();
    for c in codec.cprime().span().unwrap() {
        for x in codec.cbal().span().unwrap() {
            sums.insert(&c ^ &x);
        }
    }
    assert_eq!(sums.len(), 1 << (codec.k_prime() + codec.k_bal()));
}

#[test]
fn far_word_fails_to_decode() {
    // C' = {0^8, 1^8} with radius 1: y + x is at distance 2 from C' for
    // both x in C'', so no candidate survives.
    let cprime = LinearCode::new(8, vec![Word::ones(8)]).unwrap();
    let cbal = LinearCode::new(8, vec![Word::parse_bits("11110000").unwrap()]).unwrap();
    let codec = build_codec(cprime, cbal, 1, true).unwrap();
    let y = Word::parse_bits("11000000").unwrap();
    assert!(matches!(codec.decode(&y), Err(Error::DecodeFailure)));
}

#[test]
fn shared_row_is_rejected() {
    let g = LinearCode::new(6, vec![Word::parse_bits("111000").unwrap()]).unwrap();
    let err = build_codec(g.clone(), g, 0, true).unwrap_err();
    assert!(matches!(
        err,
        Error::NontrivialIntersection {
            stacked: 1,
            expected: 2
        }
    ));
}

fn brute_volume(n: usize, t: usize) -> u64 {
    (0u64..1 << n)
        .filter(|w| (w.count_ones() as usize) <= t)
        .count() as u64
}

#[test]
fn bounds_agree_with_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..100 {
        let n = 2 * rng.gen_range(1..=8);
        let d_prime = rng.gen_range(1..=n);
        let d = rng.gen_range(1..=d_prime);
        let k_prime = rng.gen_range(0..=n);
        let k_bal = rng.gen_range(0..=n - k_prime);
        let report = bounds(n, k_prime, d, d_prime, k_bal).unwrap();
        let v_prime = brute_volume(n, d_prime - 1);
        assert_eq!(report.gv_premise_holds, (v_prime << k_prime) <= 1 << n);
        let expected = BigRational::new(
            BigInt::from(brute_volume(n, d - 1) << k_bal),
            BigInt::from(v_prime),
        );
        assert_eq!(report.failure_bound, expected);
    }
}
