//! The reversible padding rules pad10\* and pad10\*1, and the one-byte length encoder.

use crate::bits::BitString;
use crate::error::{Error, Result};

/// A padding rule applied at a given block length.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PadRule {
    /// `1 0^q`
    Pad10Star,
    /// `1 0^q 1`
    Pad10Star1,
}

impl PadRule {
    /// The padding to append to a `message_len`-bit message for `rate`-bit blocks.
    pub fn pad(self, message_len: usize, rate: usize) -> BitString {
        match self {
            PadRule::Pad10Star => pad10star(message_len, rate),
            PadRule::Pad10Star1 => pad10star1(message_len, rate),
        }
    }

    /// Length of the shortest padding the rule can emit.
    pub fn min_len(self) -> usize {
        match self {
            PadRule::Pad10Star => 1,
            PadRule::Pad10Star1 => 2,
        }
    }

    /// Strips the padding from a padded string, recovering the message.
    pub fn unpad(self, padded: &BitString) -> Option<BitString> {
        let mut end = padded.len();
        if self == PadRule::Pad10Star1 {
            if end == 0 || !padded.get(end - 1) {
                return None;
            }
            end -= 1;
        }
        while end > 0 && !padded.get(end - 1) {
            end -= 1;
        }
        if end == 0 {
            return None;
        }
        Some(padded.slice(0, end - 1))
    }

    /// `message ‖ pad`.
    pub fn apply(self, message: &BitString, rate: usize) -> BitString {
        message.concat(&self.pad(message.len(), rate))
    }
}

/// `1 0^q` with `q` the least value making `message_len + 1 + q` a multiple of `rate`.
pub fn pad10star(message_len: usize, rate: usize) -> BitString {
    assert!(rate >= 1, "pad10* needs a rate of at least one bit");
    let q = (rate - (message_len + 1) % rate) % rate;
    let mut pad = BitString::zeros(1 + q);
    pad.set(0, true);
    pad
}

/// `1 0^q 1` with `q` the least value making `message_len + 2 + q` a multiple of `rate`.
pub fn pad10star1(message_len: usize, rate: usize) -> BitString {
    assert!(rate >= 2, "pad10*1 needs a rate of at least two bits");
    let q = (rate - (message_len + 2) % rate) % rate;
    let mut pad = BitString::zeros(2 + q);
    pad.set(0, true);
    pad.set(1 + q, true);
    pad
}

/// Byte form of pad10\*1 for byte-aligned messages and rates: `0x01 0x00… ` with `0x80`
/// folded into the final byte.
pub fn pad10star1_bytes(message: &[u8], rate_bytes: usize) -> Vec<u8> {
    let mut padded = message.to_vec();
    padded.push(0x01);
    let full = padded.len().div_ceil(rate_bytes) * rate_bytes;
    padded.resize(full, 0);
    *padded.last_mut().expect("non-empty") ^= 0x80;
    padded
}

/// Encodes `n < 256` as a single byte.
pub fn enc8(n: usize) -> Result<u8> {
    u8::try_from(n).map_err(|_| Error::ByteOutOfRange(n))
}
