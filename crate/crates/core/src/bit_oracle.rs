//! A naive bit-at-a-time reference for the Keccak round function.
//!
//! Nothing here is shared with [`crate::state`]: the rotation table is kept in the printed
//! (y = 2, 1, 0, 4, 3) × (x = 3, 4, 0, 1, 2) layout, round-constant bits come from explicit
//! polynomial long division, and every step is written per bit. It is slow on purpose and
//! exists to be compared against.

use crate::Permutation;

const PRINTED_ROWS_Y: [usize; 5] = [2, 1, 0, 4, 3];
const PRINTED_COLS_X: [usize; 5] = [3, 4, 0, 1, 2];
const PRINTED_OFFSETS: [[usize; 5]; 5] = [
    [25, 39, 3, 10, 43],
    [55, 20, 36, 44, 6],
    [28, 27, 0, 1, 62],
    [56, 14, 18, 2, 61],
    [21, 8, 41, 45, 15],
];

fn offset(x: usize, y: usize) -> usize {
    let row = PRINTED_ROWS_Y.iter().position(|&v| v == y).unwrap();
    let col = PRINTED_COLS_X.iter().position(|&v| v == x).unwrap();
    PRINTED_OFFSETS[row][col]
}

/// `(x^t mod x^8 + x^6 + x^5 + x^4 + 1) mod x` by long division of the monomial `x^t`.
fn rc_bit(t: i64) -> u8 {
    let t = t.rem_euclid(255) as usize;
    let modulus = [1u8, 0, 0, 0, 1, 1, 1, 0, 1]; // coefficient of x^k at index k
    let mut poly = vec![0u8; t.max(8) + 1];
    poly[t] = 1;
    for degree in (8..poly.len()).rev() {
        if poly[degree] == 1 {
            for (k, &m) in modulus.iter().enumerate() {
                poly[degree - 8 + k] ^= m;
            }
        }
    }
    poly[0]
}

/// A Keccak state as `b` separate bits, bit `(x, y, z)` at `w·(5y + x) + z`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitState {
    bits: Vec<u8>,
    l: u32,
}

impl BitState {
    pub fn zero(l: u32) -> Self {
        Self { bits: vec![0; 25 << l], l }
    }

    pub fn from_fn(l: u32, mut f: impl FnMut(usize) -> bool) -> Self {
        Self { bits: (0..25usize << l).map(|i| f(i) as u8).collect(), l }
    }

    /// Unpacks `b/8` bytes, LSB first within each byte.
    pub fn from_bytes(bytes: &[u8]) -> Self {
        let b = bytes.len() * 8;
        let l = (0..7).find(|&l| 25usize << l == b).expect("byte length of a valid width");
        Self::from_fn(l, |i| (bytes[i / 8] >> (i % 8)) & 1 == 1)
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = vec![0u8; self.bits.len().div_ceil(8)];
        for (i, &bit) in self.bits.iter().enumerate() {
            out[i / 8] |= bit << (i % 8);
        }
        out
    }

    pub fn width_log(&self) -> u32 {
        self.l
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn bit(&self, index: usize) -> bool {
        self.bits[index] == 1
    }

    pub fn flip(&mut self, index: usize) {
        self.bits[index] ^= 1;
    }

    fn w(&self) -> usize {
        1 << self.l
    }

    fn get(&self, x: usize, y: usize, z: usize) -> u8 {
        self.bits[self.w() * (5 * y + x) + z]
    }

    fn set(&mut self, x: usize, y: usize, z: usize, v: u8) {
        let w = self.w();
        self.bits[w * (5 * y + x) + z] = v;
    }
}

/// One round with index `round_index`, which may be negative for extended schedules.
pub fn oracle_round(a: &BitState, round_index: i64, l: u32) -> BitState {
    assert_eq!(a.l, l, "state width does not match l");
    let w = a.w();

    // theta
    let mut c = vec![vec![0u8; w]; 5];
    for x in 0..5 {
        for z in 0..w {
            c[x][z] = a.get(x, 0, z) ^ a.get(x, 1, z) ^ a.get(x, 2, z) ^ a.get(x, 3, z) ^ a.get(x, 4, z);
        }
    }
    let mut after_theta = a.clone();
    for x in 0..5 {
        for y in 0..5 {
            for z in 0..w {
                let d = c[(x + 4) % 5][z] ^ c[(x + 1) % 5][(z + w - 1) % w];
                after_theta.set(x, y, z, a.get(x, y, z) ^ d);
            }
        }
    }

    // rho and pi
    let mut b = BitState::zero(l);
    for x in 0..5 {
        for y in 0..5 {
            let r = offset(x, y) % w;
            for z in 0..w {
                b.set(y, (2 * x + 3 * y) % 5, z, after_theta.get(x, y, (z + w - r) % w));
            }
        }
    }

    // chi
    let mut out = BitState::zero(l);
    for x in 0..5 {
        for y in 0..5 {
            for z in 0..w {
                let v = b.get(x, y, z) ^ ((1 ^ b.get((x + 1) % 5, y, z)) & b.get((x + 2) % 5, y, z));
                out.set(x, y, z, v);
            }
        }
    }

    // iota
    for j in 0..=l {
        let z = (1usize << j) - 1;
        let v = out.get(0, 0, z) ^ rc_bit(j as i64 + 7 * round_index);
        out.set(0, 0, z, v);
    }
    out
}

/// The last `rounds` rounds of the `12 + 2l` schedule.
pub fn oracle_permutation(state: &BitState, rounds: usize, l: u32) -> BitState {
    let full = 12 + 2 * l as i64;
    let mut s = state.clone();
    for i in full - rounds as i64..full {
        s = oracle_round(&s, i, l);
    }
    s
}

/// Keccak-p through the bit oracle, usable wherever a [`Permutation`] is expected.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OraclePermutation {
    pub width: usize,
    pub rounds: usize,
}

impl OraclePermutation {
    pub fn keccak_f(width: usize) -> Self {
        let l = (0..7).find(|&l| 25usize << l == width).expect("valid width");
        Self { width, rounds: 12 + 2 * l }
    }
}

impl Permutation for OraclePermutation {
    fn width(&self) -> usize {
        self.width
    }

    fn permute(&self, state: &mut [u8]) {
        let bits = BitState::from_bytes(state);
        let l = bits.width_log();
        state.copy_from_slice(&oracle_permutation(&bits, self.rounds, l).to_bytes());
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rc_bits_start_like_the_lfsr() {
        let bits: Vec<u8> = (0..14).map(rc_bit).collect();
        assert_eq!(bits, vec![1, 0, 0, 0, 0, 0, 0, 0, 1, 0, 1, 1, 0, 0]);
        assert_eq!(rc_bit(255), rc_bit(0));
        assert_eq!(rc_bit(-1), rc_bit(254));
    }

    #[test]
    fn zero_state_only_iota_bits_flip() {
        // RC[0] = 1 for every width: only bit (0,0,0) is set after the first round.
        for l in 0..=6 {
            let out = oracle_round(&BitState::zero(l), 0, l);
            let ones: Vec<usize> = (0..out.len()).filter(|&i| out.bit(i)).collect();
            assert_eq!(ones, vec![0]);
        }
    }

    #[test]
    fn total_over_widths_and_rounds() {
        for l in 0..=6u32 {
            let s = BitState::from_fn(l, |i| i % 3 == 0);
            for rounds in [0, 1, 12 + 2 * l as usize, 30] {
                assert_eq!(oracle_permutation(&s, rounds, l).len(), 25 << l);
            }
        }
    }

    #[test]
    fn single_round_is_final_index() {
        let s = BitState::from_fn(6, |i| i % 7 == 1);
        assert_eq!(oracle_permutation(&s, 1, 6), oracle_round(&s, 23, 6));
    }

    #[test]
    fn byte_round_trip() {
        let bytes: Vec<u8> = (0..200).map(|i| (i * 37) as u8).collect();
        assert_eq!(BitState::from_bytes(&bytes).to_bytes(), bytes);
    }
}
