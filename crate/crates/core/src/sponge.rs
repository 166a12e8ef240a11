//! Sponge functions over any [`Permutation`], including keyed variants.

use crate::bits::BitString;
use crate::error::{Error, Result};
use crate::padding::{pad10star1_bytes, PadRule};
use crate::state::{keccak_f, KeccakState, PermutationSpec};
use crate::Permutation;

/// A sponge `Sponge[f, pad, r]`. The capacity is `b − r`.
#[derive(Debug, Clone)]
pub struct Sponge<P> {
    f: P,
    pad: PadRule,
    rate: usize,
}

impl<P: Permutation> Sponge<P> {
    /// `rate` is in bits and must be a positive multiple of 8 no larger than the width.
    pub fn new(f: P, pad: PadRule, rate: usize) -> Result<Self> {
        let width = f.width();
        if !width.is_multiple_of(8) {
            return Err(Error::NotByteAligned(width));
        }
        if rate == 0 || rate > width {
            return Err(Error::InvalidRate { rate, width, reason: "must be in 1..=b" });
        }
        if !rate.is_multiple_of(8) {
            return Err(Error::InvalidRate { rate, width, reason: "must be a multiple of 8" });
        }
        Ok(Self { f, pad, rate })
    }

    pub fn rate(&self) -> usize {
        self.rate
    }

    pub fn capacity(&self) -> usize {
        self.f.width() - self.rate
    }

    pub fn permutation(&self) -> &P {
        &self.f
    }

    pub fn pad_rule(&self) -> PadRule {
        self.pad
    }

    /// Pads, absorbs and squeezes `out_bits` bits from a bit-level message.
    pub fn hash_bits(&self, message: &BitString, out_bits: usize) -> BitString {
        let mut state = vec![0u8; self.f.width() / 8];
        let padded = self.pad.apply(message, self.rate);
        for start in (0..padded.len()).step_by(self.rate) {
            padded.slice(start, self.rate).xor_into(&mut state, 0);
            self.f.permute(&mut state);
        }
        self.squeeze(state, out_bits)
    }

    /// Byte-level convenience over [`Sponge::hash_bits`]; a partial final byte keeps its
    /// high bits zero.
    pub fn hash(&self, message: &[u8], out_bits: usize) -> Vec<u8> {
        self.hash_bits(&BitString::from_bytes(message), out_bits).into_bytes()
    }

    fn squeeze(&self, mut state: Vec<u8>, out_bits: usize) -> BitString {
        let rate_bytes = self.rate / 8;
        let mut out = Vec::with_capacity(out_bits.div_ceil(8));
        loop {
            out.extend_from_slice(&state[..rate_bytes]);
            if out.len() * 8 >= out_bits {
                break;
            }
            self.f.permute(&mut state);
        }
        BitString::from_bytes_truncated(&out, out_bits)
    }
}

/// `Sponge[f, pad, r](M, out_bits)` on a byte message.
pub fn sponge<P: Permutation>(params: &Sponge<P>, message: &[u8], out_bits: usize) -> Vec<u8> {
    params.hash(message, out_bits)
}

/// Keccak\[r, c\] with pad10\*1, absorbing and squeezing lane by lane.
///
/// The rate must be a multiple of the lane size and `r + c` a byte-aligned width.
pub fn keccak_rc_hash(rate: usize, capacity: usize, message: &[u8], out_bits: usize) -> Result<Vec<u8>> {
    let width = rate + capacity;
    let mut state = KeccakState::zero(width)?;
    let w = state.lane_bits() as usize;
    if w < 8 {
        return Err(Error::NotByteAligned(width));
    }
    if rate == 0 || !rate.is_multiple_of(w) || rate > width {
        return Err(Error::InvalidRate { rate, width, reason: "must be a positive multiple of the lane size" });
    }
    let lane_bytes = w / 8;
    let rate_lanes = rate / w;
    let read_lane = |bytes: &[u8]| {
        let mut word = [0u8; 8];
        word[..lane_bytes].copy_from_slice(bytes);
        u64::from_le_bytes(word)
    };

    let padded = pad10star1_bytes(message, rate / 8);
    for block in padded.chunks_exact(rate / 8) {
        for (i, lane) in block.chunks_exact(lane_bytes).enumerate().take(rate_lanes) {
            let (x, y) = (i % 5, i / 5);
            state.set_lane(x, y, state.lane(x, y) ^ read_lane(lane));
        }
        state = keccak_f(&state);
    }

    let out_bytes = out_bits.div_ceil(8);
    let mut out = Vec::with_capacity(out_bytes);
    loop {
        for i in 0..rate_lanes {
            out.extend_from_slice(&state.lane(i % 5, i / 5).to_le_bytes()[..lane_bytes]);
        }
        if out.len() >= out_bytes {
            break;
        }
        state = keccak_f(&state);
    }
    Ok(BitString::from_bytes_truncated(&out, out_bits).into_bytes())
}

/// The Keccak\[r, c\] parameters as a generic sponge over Keccak-f.
pub fn keccak_sponge(rate: usize, capacity: usize) -> Result<Sponge<PermutationSpec>> {
    Sponge::new(PermutationSpec::keccak_f(rate + capacity)?, PadRule::Pad10Star1, rate)
}

/// `Sponge(K ‖ M)`.
pub fn outer_keyed_sponge<P: Permutation>(
    params: &Sponge<P>,
    key: &[u8],
    message: &[u8],
    out_bits: usize,
) -> Vec<u8> {
    let mut input = key.to_vec();
    input.extend_from_slice(message);
    params.hash(&input, out_bits)
}

/// The Even–Mansour block cipher `E_K(x) = f(x ⊕ K) ⊕ K` over a public permutation.
#[derive(Debug, Clone)]
pub struct EvenMansour<P> {
    f: P,
    key: Vec<u8>,
}

impl<P: Permutation> EvenMansour<P> {
    pub fn new(f: P, key: &[u8]) -> Result<Self> {
        let expected = f.width() / 8;
        if key.len() != expected || !f.width().is_multiple_of(8) {
            return Err(Error::LengthMismatch { expected, actual: key.len() });
        }
        Ok(Self { f, key: key.to_vec() })
    }
}

impl<P: Permutation> Permutation for EvenMansour<P> {
    fn width(&self) -> usize {
        self.f.width()
    }

    fn permute(&self, state: &mut [u8]) {
        state.iter_mut().zip(&self.key).for_each(|(s, k)| *s ^= k);
        self.f.permute(state);
        state.iter_mut().zip(&self.key).for_each(|(s, k)| *s ^= k);
    }
}

/// One Even–Mansour evaluation on a `b`-bit block.
pub fn even_mansour<P: Permutation>(f: P, key: &[u8], block: &[u8]) -> Result<Vec<u8>> {
    let cipher = EvenMansour::new(f, key)?;
    if block.len() != key.len() {
        return Err(Error::LengthMismatch { expected: key.len(), actual: block.len() });
    }
    let mut out = block.to_vec();
    cipher.permute(&mut out);
    Ok(out)
}

/// A sponge whose permutation is replaced by `E_K` keyed with a `b`-bit key.
pub fn inner_keyed_sponge<P: Permutation>(
    f: P,
    pad: PadRule,
    rate: usize,
    key: &[u8],
    message: &[u8],
    out_bits: usize,
) -> Result<Vec<u8>> {
    let keyed = Sponge::new(EvenMansour::new(f, key)?, pad, rate)?;
    Ok(keyed.hash(message, out_bits))
}

/// The full-state keyed sponge: the key fills the last `k ≤ c` bits of the initial state,
/// messages are pad10\*-padded to full-width blocks, and output is squeezed `r` bits at a time.
#[derive(Debug, Clone)]
pub struct FullStateKeyedSponge<P> {
    f: P,
    rate: usize,
    key: BitString,
}

impl<P: Permutation> FullStateKeyedSponge<P> {
    pub fn new(f: P, rate: usize, key: BitString) -> Result<Self> {
        // validates width and rate
        let base = Sponge::new(f, PadRule::Pad10Star, rate)?;
        let capacity = base.capacity();
        if key.len() > capacity {
            return Err(Error::KeyTooLong { key: key.len(), capacity });
        }
        Ok(Self { f: base.f, rate, key })
    }

    /// The state before anything is absorbed.
    pub fn initial_state(&self) -> Vec<u8> {
        let width = self.f.width();
        let mut state = vec![0u8; width / 8];
        self.key.xor_into(&mut state, width - self.key.len());
        state
    }

    pub fn hash_bits(&self, message: &BitString, out_bits: usize) -> BitString {
        let width = self.f.width();
        let mut state = self.initial_state();
        let padded = PadRule::Pad10Star.apply(message, width);
        for start in (0..padded.len()).step_by(width) {
            padded.slice(start, width).xor_into(&mut state, 0);
            self.f.permute(&mut state);
        }
        let rate_bytes = self.rate / 8;
        let mut out = Vec::new();
        loop {
            out.extend_from_slice(&state[..rate_bytes]);
            if out.len() * 8 >= out_bits {
                break;
            }
            self.f.permute(&mut state);
        }
        BitString::from_bytes_truncated(&out, out_bits)
    }

    pub fn hash(&self, message: &[u8], out_bits: usize) -> Vec<u8> {
        self.hash_bits(&BitString::from_bytes(message), out_bits).into_bytes()
    }
}

/// One-shot full-state keyed sponge.
pub fn fks<P: Permutation>(f: P, rate: usize, key: &BitString, message: &[u8], out_bits: usize) -> Result<Vec<u8>> {
    Ok(FullStateKeyedSponge::new(f, rate, key.clone())?.hash(message, out_bits))
}

#[cfg(test)]
mod tests {
    use super::*;

    const KECCAK256_EMPTY: &str = "c5d2460186f7233c927e7db2dcc703c0e500b653ca82273b7bfad8045d85a470";

    #[test]
    fn keccak256_of_empty_string() {
        let digest = keccak_rc_hash(1088, 512, b"", 256).unwrap();
        assert_eq!(hex::encode(&digest), KECCAK256_EMPTY);
        let generic = keccak_sponge(1088, 512).unwrap().hash(b"", 256);
        assert_eq!(generic, digest);
    }

    #[test]
    fn zero_output_still_valid() {
        assert!(keccak_rc_hash(1088, 512, b"abc", 0).unwrap().is_empty());
        assert!(keccak_sponge(1088, 512).unwrap().hash(b"abc", 0).is_empty());
    }

    #[test]
    fn partial_byte_output() {
        let full = keccak_rc_hash(1088, 512, b"", 256).unwrap();
        let twelve = keccak_rc_hash(1088, 512, b"", 12).unwrap();
        assert_eq!(twelve, vec![full[0], full[1] & 0x0F]);
    }

    #[test]
    fn rejects_bad_rates() {
        assert!(keccak_rc_hash(1087, 513, b"", 8).is_err());
        assert!(keccak_rc_hash(1056, 544, b"", 8).is_err());
        assert!(Sponge::new(PermutationSpec::keccak_f(1600).unwrap(), PadRule::Pad10Star1, 0).is_err());
        assert!(Sponge::new(PermutationSpec::keccak_f(1600).unwrap(), PadRule::Pad10Star1, 1087).is_err());
    }

    #[test]
    fn single_bit_flip_changes_digest() {
        let a = keccak_rc_hash(1088, 512, &[0x00], 256).unwrap();
        let b = keccak_rc_hash(1088, 512, &[0x01], 256).unwrap();
        assert_ne!(a, b);
    }

    #[test]
    fn outer_keyed_with_empty_key_is_plain() {
        let s = keccak_sponge(1088, 512).unwrap();
        assert_eq!(outer_keyed_sponge(&s, b"", b"msg", 256), s.hash(b"msg", 256));
        assert_eq!(outer_keyed_sponge(&s, b"key", b"msg", 256), s.hash(b"keymsg", 256));
    }

    #[test]
    fn even_mansour_zero_key_is_plain() {
        let f = PermutationSpec::keccak_f(800).unwrap();
        let block: Vec<u8> = (0..100).collect();
        let mut plain = block.clone();
        f.permute(&mut plain);
        assert_eq!(even_mansour(f, &[0u8; 100], &block).unwrap(), plain);
        assert!(even_mansour(f, &[0u8; 99], &block).is_err());
        assert!(even_mansour(f, &[0u8; 100], &block[..99]).is_err());
    }

    #[test]
    fn fks_key_bounds() {
        let f = PermutationSpec::keccak_f(1600).unwrap();
        assert!(FullStateKeyedSponge::new(f, 1088, BitString::zeros(512)).is_ok());
        assert!(FullStateKeyedSponge::new(f, 1088, BitString::zeros(513)).is_err());
    }

    #[test]
    fn fks_empty_message_trace() {
        let f = PermutationSpec::keccak_f(1600).unwrap();
        let key = BitString::from_bytes(&[0xA5; 32]);
        let fks = FullStateKeyedSponge::new(f, 1088, key).unwrap();
        let mut state = vec![0u8; 200];
        state[168..].fill(0xA5);
        state[0] ^= 0x01;
        f.permute(&mut state);
        assert_eq!(fks.hash(b"", 1088), state[..136].to_vec());
    }
}
