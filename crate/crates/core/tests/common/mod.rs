#![allow(dead_code)]

use keyak::bit_oracle::BitState;
use keyak::state::KeccakState;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const KECCAK_F1600_ZERO: &str = "e7dde140798f25f18a47c033f9ccd584eea95aa61e2698d54d49806f304715bd57d05362054e288bd46f8e7f2da497ffc44746a4a0e5fe90762e19d60cda5b8c9c05191bf7a630ad64fc8fd0b75a933035d617233fa95aeb0321710d26e6a6a95f55cfdb167ca58126c84703cd31b8439f56a5111a2ff20161aed9215a63e505f270c98cf2febe641166c47b95703661cb0ed04f555a7cb8c832cf1c8ae83e8c14263aae22790c94e409c5a224f94118c26504e72635f5163ba1307fe944f67549a2ec5c7bfff1ea";
pub const KECCAK_F25_ZERO: &str = "0011011001000000010101010";
pub const KECCAK256_EMPTY: &str = "c5d2460186f7233c927e7db2dcc703c0e500b653ca82273b7bfad8045d85a470";

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_bytes(rng: &mut ChaCha8Rng, len: usize) -> Vec<u8> {
    (0..len).map(|_| rng.gen()).collect()
}

pub fn random_state(rng: &mut ChaCha8Rng, width: usize) -> KeccakState {
    let mut s = KeccakState::zero(width).unwrap();
    for i in 0..width {
        s.set_bit(i, rng.gen());
    }
    s
}

pub fn to_bits(s: &KeccakState) -> BitState {
    BitState::from_fn(s.width_log(), |i| s.bit(i))
}

pub fn from_bits(b: &BitState) -> KeccakState {
    let mut s = KeccakState::zero(b.len()).unwrap();
    for i in 0..b.len() {
        s.set_bit(i, b.bit(i));
    }
    s
}
