//! The Piston: a full-state keyed duplex that builds its own input blocks.
//!
//! An input block holds an optional plaintext fragment ending at or before `R_s`, an
//! optional metadata fragment ending at or before `R_a`, and four fragment-offset bytes
//! at `R_a..R_a + 4`. The offsets are only ever XORed in, once per block.

use zeroize::Zeroize;

use crate::error::{Error, Result};
use crate::state::PermutationSpec;
use crate::stream::ByteStream;
use crate::Permutation;

/// The four fragment offsets, in the order they follow the absorb rate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FragmentOffset {
    Eom,
    CryptEnd,
    InjectStart,
    InjectEnd,
}

impl FragmentOffset {
    pub const ALL: [FragmentOffset; 4] =
        [FragmentOffset::Eom, FragmentOffset::CryptEnd, FragmentOffset::InjectStart, FragmentOffset::InjectEnd];

    /// Position after `R_a`.
    pub const fn slot(self) -> usize {
        match self {
            FragmentOffset::Eom => 0,
            FragmentOffset::CryptEnd => 1,
            FragmentOffset::InjectStart => 2,
            FragmentOffset::InjectEnd => 3,
        }
    }
}

#[derive(Clone)]
pub struct Piston {
    f: PermutationSpec,
    squeeze_rate: usize,
    absorb_rate: usize,
    state: Vec<u8>,
}

impl std::fmt::Debug for Piston {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Piston")
            .field("f", &self.f)
            .field("squeeze_rate", &self.squeeze_rate)
            .field("absorb_rate", &self.absorb_rate)
            .finish_non_exhaustive()
    }
}

impl Drop for Piston {
    fn drop(&mut self) {
        self.state.zeroize();
    }
}

impl Piston {
    /// `Piston[f, R_s, R_a]` with rates in bytes and a zero state.
    pub fn new(f: PermutationSpec, squeeze_rate: usize, absorb_rate: usize) -> Result<Self> {
        let width = f.width();
        if !width.is_multiple_of(8) {
            return Err(Error::NotByteAligned(width));
        }
        if squeeze_rate > absorb_rate {
            return Err(Error::InfeasibleParameters("squeeze rate exceeds absorb rate"));
        }
        if absorb_rate + 4 > width / 8 {
            return Err(Error::InfeasibleParameters("no room for the fragment offsets"));
        }
        Ok(Self { f, squeeze_rate, absorb_rate, state: vec![0; width / 8] })
    }

    pub fn squeeze_rate(&self) -> usize {
        self.squeeze_rate
    }

    pub fn absorb_rate(&self) -> usize {
        self.absorb_rate
    }

    pub fn permutation(&self) -> PermutationSpec {
        self.f
    }

    pub fn state(&self) -> &[u8] {
        &self.state
    }

    /// State index of a fragment offset.
    pub fn offset_index(&self, offset: FragmentOffset) -> usize {
        self.absorb_rate + offset.slot()
    }

    fn xor_offset(&mut self, offset: FragmentOffset, value: usize) {
        let index = self.offset_index(offset);
        // offsets never exceed R_a < 256 - 4 for byte-addressable Keccak widths
        self.state[index] ^= value as u8;
    }

    /// Encrypts (or decrypts when `unwrap`) from `input` into `output` starting at state byte
    /// `omega`, stopping at `R_s` or when input runs out. The state keeps the ciphertext in
    /// both directions.
    pub fn crypt(&mut self, input: &mut ByteStream, output: &mut ByteStream, omega: usize, unwrap: bool) -> Result<()> {
        if omega > self.squeeze_rate {
            return Err(Error::OffsetOutOfRange { offset: omega, rate: self.squeeze_rate });
        }
        let mut omega = omega;
        while input.has_more() && omega < self.squeeze_rate {
            let x = input.get()?;
            output.put(self.state[omega] ^ x);
            self.state[omega] = if unwrap { x } else { self.state[omega] ^ x };
            omega += 1;
        }
        self.xor_offset(FragmentOffset::CryptEnd, omega);
        Ok(())
    }

    /// Absorbs metadata from `R_s` (when a plaintext fragment is present) or 0 up to `R_a`.
    pub fn inject(&mut self, input: &mut ByteStream, crypting: bool) -> Result<()> {
        let mut omega = if crypting { self.squeeze_rate } else { 0 };
        self.xor_offset(FragmentOffset::InjectStart, omega);
        while input.has_more() && omega < self.absorb_rate {
            self.state[omega] ^= input.get()?;
            omega += 1;
        }
        self.xor_offset(FragmentOffset::InjectEnd, omega);
        Ok(())
    }

    /// Marks end-of-message with the tag length (0xFF for no tag) and applies `f`.
    pub fn spark(&mut self, eom: bool, tag_len: usize) -> Result<()> {
        if tag_len > 0xFF {
            return Err(Error::ByteOutOfRange(tag_len));
        }
        let marker = match (eom, tag_len) {
            (false, _) => 0,
            (true, 0) => 0xFF,
            (true, l) => l,
        };
        self.xor_offset(FragmentOffset::Eom, marker);
        self.f.permute(&mut self.state);
        Ok(())
    }

    /// Appends the first `len ≤ R_s` state bytes to `tag`.
    pub fn get_tag(&self, tag: &mut ByteStream, len: usize) -> Result<()> {
        if len > self.squeeze_rate {
            return Err(Error::OffsetOutOfRange { offset: len, rate: self.squeeze_rate });
        }
        tag.put_slice(&self.state[..len]);
        Ok(())
    }

    #[cfg(test)]
    pub(crate) fn state_mut(&mut self) -> &mut [u8] {
        &mut self.state
    }
}
