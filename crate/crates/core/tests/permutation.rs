mod common;

use std::collections::{HashMap, HashSet};

use common::*;
use keyak::bit_oracle::{oracle_permutation, oracle_round, BitState};
use keyak::state::*;
use proptest::prelude::*;
use rand::Rng;

#[test]
fn rounds_agree_with_oracle_on_every_width() {
    let mut rng = rng(1);
    for (l, &width) in WIDTHS.iter().enumerate() {
        for trial in 0..100 {
            let s = random_state(&mut rng, width);
            let i = trial % (12 + 2 * l);
            let lane = apply_round(&s, round_constant(i, l as u32).unwrap());
            let oracle = oracle_round(&to_bits(&s), i as i64, l as u32);
            assert_eq!(to_bits(&lane), oracle, "width {width} round {i}");
        }
    }
}

#[test]
fn zero_state_golden_vectors() {
    let lane = keccak_f(&KeccakState::zero(1600).unwrap());
    assert_eq!(hex::encode(lane.to_bytes().unwrap()), KECCAK_F1600_ZERO);
    assert_eq!(lane.lane(0, 0), 0xF1258F7940E1DDE7);
    assert_eq!(lane.lane(4, 4), 0xEAF1FF7B5CECA249);

    let small = keccak_f(&KeccakState::zero(25).unwrap());
    let bits: String = (0..25).map(|i| if small.bit(i) { '1' } else { '0' }).collect();
    assert_eq!(bits, KECCAK_F25_ZERO);
    let oracle = oracle_permutation(&BitState::zero(0), 12, 0);
    assert_eq!(from_bits(&oracle), small);
}

#[test]
fn single_bit_difference_fixture() {
    let zero = BitState::zero(6);
    let mut flipped = zero.clone();
    flipped.flip(0);
    let a = oracle_round(&zero, 0, 6);
    let b = oracle_round(&flipped, 0, 6);
    let diff: Vec<usize> = (0..1600).filter(|&i| a.bit(i) != b.bit(i)).collect();
    assert_eq!(
        diff,
        vec![0, 108, 143, 192, 271, 300, 405, 429, 557, 597, 641, 713, 833, 841, 970, 988, 1098, 1180, 1320, 1410, 1448, 1538]
    );
}

#[test]
fn last_round_only() {
    let mut rng = rng(2);
    let s = random_state(&mut rng, 1600);
    let spec = PermutationSpec::new(1600, 1).unwrap();
    let expected = apply_round(&s, round_constant(23, 6).unwrap());
    assert_eq!(keccak_p(&s, &spec).unwrap(), expected);
    assert!(keccak_p(&KeccakState::zero(800).unwrap(), &spec).is_err());
}

#[test]
fn keccak_p_matches_oracle_for_one_and_full_rounds() {
    let mut rng = rng(3);
    for &width in &WIDTHS {
        let l = width_log(width).unwrap();
        for rounds in [1, full_rounds(width).unwrap()] {
            let spec = PermutationSpec::new(width, rounds).unwrap();
            for _ in 0..100 {
                let s = random_state(&mut rng, width);
                let oracle = oracle_permutation(&to_bits(&s), rounds, l);
                assert_eq!(keccak_p(&s, &spec).unwrap(), from_bits(&oracle));
            }
        }
    }
}

#[test]
fn keccak_p12_on_800_matches_oracle_fixture() {
    let spec = PermutationSpec::new(800, 12).unwrap();
    let out = keccak_p(&KeccakState::zero(800).unwrap(), &spec).unwrap();
    assert_eq!(
        hex::encode(out.to_bytes().unwrap()),
        "0b3e6e25cb9aebd24d7f25c1669636eda9cf4ef7c9ea4dd58c308e1793ea1968ad9f8d11c206fe0191e28d4492422ba45af67a62c6f049978fc1f2c59a3ab148c73381d02bb9f603e2a081eecae2b83814ba14e9b8f23d2d2e537a35ac9180493a826fdd"
    );
}

#[test]
fn keccak_f25_is_a_bijection_on_samples() {
    let mut rng = rng(4);
    let mut inputs = HashSet::new();
    while inputs.len() < 1 << 12 {
        inputs.insert(rng.gen_range(0u32..1 << 25));
    }
    let permute = |v: u32| {
        let mut s = KeccakState::zero(25).unwrap();
        (0..25).for_each(|i| s.set_bit(i, (v >> i) & 1 == 1));
        let out = keccak_f(&s);
        (0..25).fold(0u32, |acc, i| acc | (out.bit(i) as u32) << i)
    };
    let mut inverse = HashMap::new();
    for &x in &inputs {
        assert!(inverse.insert(permute(x), x).is_none(), "collision");
    }
    for &x in inputs.iter().take(1 << 10) {
        assert_eq!(inverse[&permute(x)], x);
    }
}

#[test]
fn theta_flip_touches_at_least_two_bits() {
    let mut rng = rng(5);
    for &width in &WIDTHS {
        for _ in 0..50 {
            let s = random_state(&mut rng, width);
            let bit = rng.gen_range(0..width);
            let mut t = s;
            t.set_bit(bit, !s.bit(bit));
            let (a, b) = (theta(&s), theta(&t));
            let changed = (0..width).filter(|&i| a.bit(i) != b.bit(i)).count();
            assert!(changed >= 2);
        }
    }
}

#[test]
fn f_of_f_is_not_identity() {
    let mut rng = rng(6);
    for _ in 0..20 {
        let s = random_state(&mut rng, 1600);
        assert_ne!(keccak_f(&keccak_f(&s)), s);
    }
}

proptest! {
    #[test]
    fn byte_view_round_trips(bytes in proptest::collection::vec(any::<u8>(), 200)) {
        let s = KeccakState::from_bytes(&bytes).unwrap();
        prop_assert_eq!(s.to_bytes().unwrap(), bytes);
    }

    #[test]
    fn rot_then_complement_is_identity(lane in any::<u64>(), l in 0u32..=6, r in 0u32..64) {
        let w = 1u32 << l;
        let lane = if w == 64 { lane } else { lane & ((1 << w) - 1) };
        let r = r % w;
        prop_assert_eq!(rot(rot(lane, r, w), w - r, w), lane);
    }
}
