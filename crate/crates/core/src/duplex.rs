//! Duplex objects and full-state keyed duplex objects.

use crate::bits::BitString;
use crate::error::{Error, Result};
use crate::padding::PadRule;
use crate::sponge::Sponge;
use crate::Permutation;

/// `Duplex[f, pad, r]`: a zero-initialized state that pads each input into one `r`-bit block.
#[derive(Debug, Clone)]
pub struct Duplex<P> {
    f: P,
    pad: PadRule,
    rate: usize,
    state: Vec<u8>,
}

impl<P: Permutation> Duplex<P> {
    pub fn new(f: P, pad: PadRule, rate: usize) -> Result<Self> {
        let width = f.width();
        // same constraints as a sponge
        Sponge::new(&f, pad, rate)?;
        Ok(Self { f, pad, rate, state: vec![0; width / 8] })
    }

    pub fn rate(&self) -> usize {
        self.rate
    }

    /// ρ_max: the longest input that still pads to a single block.
    pub fn max_duplex_rate(&self) -> usize {
        self.rate - self.pad.min_len()
    }

    /// ρ_max rounded down to whole bytes.
    pub fn max_duplex_rate_bytes(&self) -> usize {
        self.max_duplex_rate() / 8
    }

    pub fn state(&self) -> &[u8] {
        &self.state
    }

    /// Pads `sigma`, XORs it into the outer `r` bits, permutes and returns the first
    /// `out_bits` bits. Empty `sigma` is a blank call; `out_bits = 0` is a mute call.
    pub fn duplexing(&mut self, sigma: &BitString, out_bits: usize) -> Result<BitString> {
        let max = self.max_duplex_rate();
        if sigma.len() > max {
            return Err(Error::InputTooLong { len: sigma.len(), max });
        }
        if out_bits > self.rate {
            return Err(Error::OutputTooLong { requested: out_bits, max: self.rate });
        }
        let block = self.pad.apply(sigma, self.rate);
        debug_assert_eq!(block.len(), self.rate);
        block.xor_into(&mut self.state, 0);
        self.f.permute(&mut self.state);
        Ok(BitString::from_bytes_truncated(&self.state, out_bits))
    }

    pub fn duplexing_bytes(&mut self, sigma: &[u8], out_bytes: usize) -> Result<Vec<u8>> {
        Ok(self.duplexing(&BitString::from_bytes(sigma), out_bytes * 8)?.into_bytes())
    }
}

/// A full-state keyed duplex: the key sits in the last `k ≤ c` bits and every call absorbs
/// across the whole `b`-bit state.
#[derive(Debug, Clone)]
pub struct FullStateKeyedDuplex<P> {
    f: P,
    rate: usize,
    key_bits: usize,
    state: Vec<u8>,
}

impl<P: Permutation> FullStateKeyedDuplex<P> {
    /// Full-state duplex sponge initialization: key inside, zero outside, no permutation yet.
    pub fn fds(f: P, rate: usize, key: &BitString) -> Result<Self> {
        let width = f.width();
        let capacity = Sponge::new(&f, PadRule::Pad10Star, rate)?.capacity();
        if key.len() > capacity {
            return Err(Error::KeyTooLong { key: key.len(), capacity });
        }
        let mut state = vec![0u8; width / 8];
        key.xor_into(&mut state, width - key.len());
        Ok(Self { f, rate, key_bits: key.len(), state })
    }

    /// Key inside, `sigma0` in the outer `b − k` bits, then one permutation.
    pub fn new(f: P, rate: usize, key: &BitString, sigma0: &BitString) -> Result<Self> {
        let mut d = Self::fds(f, rate, key)?;
        d.absorb_unpadded(sigma0)?;
        Ok(d)
    }

    pub fn state(&self) -> &[u8] {
        &self.state
    }

    pub fn key_bits(&self) -> usize {
        self.key_bits
    }

    /// Longest `sigma` accepted by [`Self::duplexing`]: one bit short of the width for pad10\*.
    pub fn max_input(&self) -> usize {
        self.f.width() - PadRule::Pad10Star.min_len()
    }

    fn absorb_unpadded(&mut self, block: &BitString) -> Result<()> {
        let max = self.f.width() - self.key_bits;
        if block.len() > max {
            return Err(Error::InputTooLong { len: block.len(), max });
        }
        block.xor_into(&mut self.state, 0);
        self.f.permute(&mut self.state);
        Ok(())
    }

    fn check_output(&self, out_bits: usize) -> Result<()> {
        if out_bits > self.rate {
            return Err(Error::OutputTooLong { requested: out_bits, max: self.rate });
        }
        Ok(())
    }

    /// XORs `sigma` padded with pad10\* to `b` bits over the full state, permutes, and returns
    /// the first `out_bits ≤ r` bits.
    pub fn duplexing(&mut self, sigma: &BitString, out_bits: usize) -> Result<BitString> {
        let width = self.f.width();
        if sigma.len() > self.max_input() {
            return Err(Error::InputTooLong { len: sigma.len(), max: self.max_input() });
        }
        self.check_output(out_bits)?;
        let block = PadRule::Pad10Star.apply(sigma, width);
        assert_eq!(block.len(), width, "full-width block exceeds the state");
        block.xor_into(&mut self.state, 0);
        self.f.permute(&mut self.state);
        Ok(BitString::from_bytes_truncated(&self.state, out_bits))
    }

    /// A call without padding, as used to fold `σ₀` into the initial state. The block may not
    /// reach into the key.
    pub fn duplexing_unpadded(&mut self, block: &BitString, out_bits: usize) -> Result<BitString> {
        self.check_output(out_bits)?;
        self.absorb_unpadded(block)?;
        Ok(BitString::from_bytes_truncated(&self.state, out_bits))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state::PermutationSpec;

    fn f1600() -> PermutationSpec {
        PermutationSpec::keccak_f(1600).unwrap()
    }

    #[test]
    fn max_duplex_rate() {
        let d = Duplex::new(f1600(), PadRule::Pad10Star1, 1088).unwrap();
        assert_eq!(d.max_duplex_rate(), 1086);
        assert_eq!(d.max_duplex_rate_bytes(), 135);
        let d = Duplex::new(f1600(), PadRule::Pad10Star, 1088).unwrap();
        assert_eq!(d.max_duplex_rate(), 1087);
    }

    #[test]
    fn first_blank_call() {
        let mut d = Duplex::new(f1600(), PadRule::Pad10Star1, 1088).unwrap();
        let mut expected = vec![0u8; 200];
        expected[0] = 0x01;
        expected[135] = 0x80;
        f1600().permute(&mut expected);
        let out = d.duplexing(&BitString::new(), 1088).unwrap();
        assert_eq!(out.as_bytes(), &expected[..136]);
        assert_eq!(d.state(), expected.as_slice());
    }

    #[test]
    fn mute_call_advances_state() {
        let mut d = Duplex::new(f1600(), PadRule::Pad10Star1, 1088).unwrap();
        let before = d.state().to_vec();
        assert!(d.duplexing(&BitString::new(), 0).unwrap().is_empty());
        assert_ne!(d.state(), before.as_slice());
    }

    #[test]
    fn limits() {
        let mut d = Duplex::new(f1600(), PadRule::Pad10Star1, 1088).unwrap();
        assert!(d.duplexing(&BitString::zeros(1087), 0).is_err());
        assert!(d.duplexing(&BitString::zeros(1086), 0).is_ok());
        assert!(d.duplexing(&BitString::new(), 1089).is_err());
        let fresh_a = Duplex::new(f1600(), PadRule::Pad10Star1, 1088).unwrap();
        let fresh_b = Duplex::new(f1600(), PadRule::Pad10Star1, 1088).unwrap();
        assert_eq!(fresh_a.state(), fresh_b.state());
    }

    #[test]
    fn fskd_initialization_identity() {
        let key = BitString::from_bytes(&[0x3C; 32]);
        let sigma0 = BitString::from_bytes(b"initial outer string");
        let direct = FullStateKeyedDuplex::new(f1600(), 1344, &key, &sigma0).unwrap();
        let mut via_fds = FullStateKeyedDuplex::fds(f1600(), 1344, &key).unwrap();
        via_fds.duplexing_unpadded(&sigma0, 0).unwrap();
        assert_eq!(direct.state(), via_fds.state());

        let empty = FullStateKeyedDuplex::new(f1600(), 1344, &key, &BitString::new()).unwrap();
        let mut fds = FullStateKeyedDuplex::fds(f1600(), 1344, &key).unwrap();
        fds.duplexing_unpadded(&BitString::new(), 0).unwrap();
        assert_eq!(empty.state(), fds.state());
    }

    #[test]
    fn fskd_bounds() {
        let key = BitString::zeros(256);
        assert!(FullStateKeyedDuplex::new(f1600(), 1344, &key, &BitString::zeros(1344)).is_ok());
        assert!(FullStateKeyedDuplex::new(f1600(), 1344, &key, &BitString::zeros(1345)).is_err());
        assert!(FullStateKeyedDuplex::fds(f1600(), 1344, &BitString::zeros(257)).is_err());
        let mut d = FullStateKeyedDuplex::fds(f1600(), 1344, &key).unwrap();
        assert!(d.duplexing(&BitString::new(), 1344).is_ok());
        assert!(d.duplexing(&BitString::new(), 1345).is_err());
        assert!(d.duplexing(&BitString::zeros(1599), 0).is_ok());
        assert!(d.duplexing(&BitString::zeros(1600), 0).is_err());
    }
}
