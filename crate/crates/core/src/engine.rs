//! The Engine: Π Pistons driven in lockstep with a four-phase state machine.
//!
//! Input and metadata are sliced into consecutive fragments in Piston order. Only the
//! permutation calls inside [`Engine::spark`] may run concurrently, and doing so gives the
//! same bytes as running them in sequence.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::piston::Piston;
use crate::state::PermutationSpec;
use crate::stream::ByteStream;

/// How far the current Π input blocks have been filled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EnginePhase {
    /// Input blocks are empty.
    Fresh,
    /// Blocks hold plaintext and more plaintext follows.
    Crypted,
    /// Blocks hold the last plaintext of the message.
    EndOfCrypt,
    /// The message is fully injected; the final spark is pending.
    EndOfMessage,
}

impl EnginePhase {
    pub fn name(self) -> &'static str {
        match self {
            EnginePhase::Fresh => "fresh",
            EnginePhase::Crypted => "crypted",
            EnginePhase::EndOfCrypt => "endOfCrypt",
            EnginePhase::EndOfMessage => "endOfMessage",
        }
    }
}

#[derive(Debug, Clone)]
pub struct Engine {
    pistons: Vec<Piston>,
    tag_usage: Vec<usize>,
    phase: EnginePhase,
    parallel: bool,
}

impl Engine {
    /// Π Pistons over `f` with rates in bytes.
    pub fn new(f: PermutationSpec, parallelism: usize, squeeze_rate: usize, absorb_rate: usize) -> Result<Self> {
        if parallelism == 0 || parallelism > 0xFF {
            return Err(Error::InfeasibleParameters("parallelism must be in 1..=255"));
        }
        let piston = Piston::new(f, squeeze_rate, absorb_rate)?;
        Ok(Self {
            pistons: vec![piston; parallelism],
            tag_usage: vec![0; parallelism],
            phase: EnginePhase::Fresh,
            parallel: false,
        })
    }

    /// Run the per-Piston permutations on the rayon pool.
    pub fn set_parallel(&mut self, parallel: bool) {
        self.parallel = parallel;
    }

    pub fn parallelism(&self) -> usize {
        self.pistons.len()
    }

    pub fn phase(&self) -> EnginePhase {
        self.phase
    }

    pub fn pistons(&self) -> &[Piston] {
        &self.pistons
    }

    /// Bytes of each Piston's current output already used as tag or chaining value.
    pub fn tag_usage(&self) -> &[usize] {
        &self.tag_usage
    }

    fn wrong_phase(&self, operation: &'static str) -> Error {
        Error::WrongPhase { operation, phase: self.phase.name() }
    }

    fn check_lengths(&self, lengths: &[usize]) -> Result<()> {
        if lengths.len() != self.pistons.len() {
            return Err(Error::LengthMismatch { expected: self.pistons.len(), actual: lengths.len() });
        }
        let rate = self.pistons[0].squeeze_rate();
        match lengths.iter().find(|&&l| l > rate) {
            Some(&l) => Err(Error::OffsetOutOfRange { offset: l, rate }),
            None => Ok(()),
        }
    }

    /// Sparks every Piston with its own tag length, then records those lengths.
    pub fn spark(&mut self, eom: bool, lengths: &[usize]) -> Result<()> {
        self.check_lengths(lengths)?;
        if self.parallel {
            self.pistons
                .par_iter_mut()
                .zip(lengths.par_iter())
                .try_for_each(|(p, &l)| p.spark(eom, l))?;
        } else {
            for (p, &l) in self.pistons.iter_mut().zip(lengths) {
                p.spark(eom, l)?;
            }
        }
        self.tag_usage.copy_from_slice(lengths);
        Ok(())
    }

    /// Hands consecutive fragments of `input` to the Pistons, keystream starting after any
    /// bytes already used as tag.
    pub fn crypt(&mut self, input: &mut ByteStream, output: &mut ByteStream, unwrap: bool) -> Result<()> {
        if self.phase != EnginePhase::Fresh {
            return Err(self.wrong_phase("Engine.crypt"));
        }
        for (p, &omega) in self.pistons.iter_mut().zip(&self.tag_usage) {
            p.crypt(input, output, omega, unwrap)?;
        }
        self.phase = if input.has_more() { EnginePhase::Crypted } else { EnginePhase::EndOfCrypt };
        Ok(())
    }

    /// Hands consecutive fragments of `metadata` to the Pistons. Sparks unless the message
    /// has ended, in which case the spark waits for [`Engine::get_tags`].
    pub fn inject(&mut self, metadata: &mut ByteStream) -> Result<()> {
        if self.phase == EnginePhase::EndOfMessage {
            return Err(self.wrong_phase("Engine.inject"));
        }
        let crypting = matches!(self.phase, EnginePhase::Crypted | EnginePhase::EndOfCrypt);
        for p in &mut self.pistons {
            p.inject(metadata, crypting)?;
        }
        if self.phase == EnginePhase::Crypted || metadata.has_more() {
            self.spark(false, &vec![0; self.pistons.len()])?;
            self.phase = EnginePhase::Fresh;
        } else {
            self.phase = EnginePhase::EndOfMessage;
        }
        Ok(())
    }

    /// Final spark of a message, then `lengths[i]` tag bytes from Piston `i`, in order.
    pub fn get_tags(&mut self, tags: &mut ByteStream, lengths: &[usize]) -> Result<()> {
        if self.phase != EnginePhase::EndOfMessage {
            return Err(self.wrong_phase("Engine.get_tags"));
        }
        self.spark(true, lengths)?;
        for (p, &l) in self.pistons.iter().zip(lengths) {
            p.get_tag(tags, l)?;
        }
        self.phase = EnginePhase::Fresh;
        Ok(())
    }

    /// Injects the rest of `input` into every Piston. With `diversify`, Piston `i` also
    /// absorbs the bytes `Π, i` so that Pistons never share a keystream.
    pub fn inject_collective(&mut self, input: &mut ByteStream, diversify: bool) -> Result<()> {
        if self.phase != EnginePhase::Fresh {
            return Err(self.wrong_phase("Engine.inject_collective"));
        }
        let n = self.pistons.len();
        let mut shared = Vec::with_capacity(input.remaining());
        while input.has_more() {
            shared.push(input.get()?);
        }
        let mut copies: Vec<ByteStream> = (0..n)
            .map(|i| {
                let mut s = ByteStream::from(shared.clone());
                if diversify {
                    s.put(n as u8);
                    s.put(i as u8);
                }
                s
            })
            .collect();

        while copies[0].has_more() {
            for (p, copy) in self.pistons.iter_mut().zip(&mut copies) {
                p.inject(copy, false)?;
            }
            if copies[0].has_more() {
                self.spark(false, &vec![0; n])?;
            }
        }
        self.phase = EnginePhase::EndOfMessage;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn engine(parallelism: usize) -> Engine {
        Engine::new(PermutationSpec::new(1600, 12).unwrap(), parallelism, 168, 192).unwrap()
    }

    #[test]
    fn spark_sets_tag_usage() {
        let mut e = engine(2);
        e.spark(false, &[0, 0]).unwrap();
        assert_eq!(e.tag_usage(), &[0, 0]);
        e.spark(true, &[16, 3]).unwrap();
        assert_eq!(e.tag_usage(), &[16, 3]);
        assert!(e.spark(true, &[16]).is_err());
        assert!(e.spark(true, &[169, 0]).is_err());
        assert_eq!(e.tag_usage(), &[16, 3]);
    }

    #[test]
    fn crypt_phases() {
        let mut e = engine(2);
        e.crypt(&mut ByteStream::new(), &mut ByteStream::new(), false).unwrap();
        assert_eq!(e.phase(), EnginePhase::EndOfCrypt);

        let mut e = engine(2);
        let mut input = ByteStream::from(vec![1u8; 336]);
        let mut out = ByteStream::new();
        e.crypt(&mut input, &mut out, false).unwrap();
        assert_eq!(e.phase(), EnginePhase::EndOfCrypt);
        assert_eq!(out.len(), 336);

        let mut e = engine(2);
        let mut input = ByteStream::from(vec![1u8; 337]);
        e.crypt(&mut input, &mut ByteStream::new(), false).unwrap();
        assert_eq!(e.phase(), EnginePhase::Crypted);
        assert_eq!(input.remaining(), 1);
        assert!(e.crypt(&mut input, &mut ByteStream::new(), false).is_err());
    }

    #[test]
    fn crypt_respects_tag_usage() {
        let mut e = engine(2);
        e.spark(true, &[16, 0]).unwrap();
        let mut input = ByteStream::from(vec![0u8; 400]);
        let mut out = ByteStream::new();
        e.crypt(&mut input, &mut out, false).unwrap();
        assert_eq!(input.position(), 152 + 168);
        // zero plaintext exposes the keystream: piston 0 from byte 16, piston 1 from byte 0
        assert_eq!(&out.as_slice()[..152], &e.pistons()[0].state()[16..168]);
    }

    #[test]
    fn inject_phases() {
        let mut e = engine(1);
        e.inject(&mut ByteStream::new()).unwrap();
        assert_eq!(e.phase(), EnginePhase::EndOfMessage);
        assert!(e.inject(&mut ByteStream::new()).is_err());

        let mut e = engine(1);
        e.crypt(&mut ByteStream::from(vec![0u8; 10]), &mut ByteStream::new(), false).unwrap();
        e.inject(&mut ByteStream::new()).unwrap();
        assert_eq!(e.phase(), EnginePhase::EndOfMessage);

        let mut e = engine(1);
        e.crypt(&mut ByteStream::from(vec![0u8; 200]), &mut ByteStream::new(), false).unwrap();
        assert_eq!(e.phase(), EnginePhase::Crypted);
        let before = e.pistons()[0].state().to_vec();
        e.inject(&mut ByteStream::new()).unwrap();
        assert_eq!(e.phase(), EnginePhase::Fresh);
        assert_ne!(e.pistons()[0].state(), before.as_slice());
    }

    #[test]
    fn inject_capacity_per_piston() {
        let mut e = engine(2);
        let mut meta = ByteStream::from(vec![7u8; 1000]);
        e.inject(&mut meta).unwrap();
        assert_eq!(meta.position(), 2 * 192);

        let mut e = engine(2);
        e.crypt(&mut ByteStream::from(vec![0u8; 10]), &mut ByteStream::new(), false).unwrap();
        let mut meta = ByteStream::from(vec![7u8; 1000]);
        e.inject(&mut meta).unwrap();
        assert_eq!(meta.position(), 2 * 24);
    }

    #[test]
    fn get_tags_per_piston() {
        let mut e = engine(2);
        assert!(e.get_tags(&mut ByteStream::new(), &[0, 0]).is_err());
        e.inject(&mut ByteStream::new()).unwrap();
        let mut t = ByteStream::new();
        e.get_tags(&mut t, &[16, 0]).unwrap();
        assert_eq!(t.as_slice(), &e.pistons()[0].state()[..16]);
        assert_eq!(e.phase(), EnginePhase::Fresh);

        e.inject(&mut ByteStream::new()).unwrap();
        let mut t = ByteStream::new();
        e.get_tags(&mut t, &[0, 0]).unwrap();
        assert!(t.is_empty());
    }

    #[test]
    fn collective_diversification_bytes() {
        let mut e = engine(2);
        e.inject_collective(&mut ByteStream::new(), true).unwrap();
        assert_eq!(e.phase(), EnginePhase::EndOfMessage);
        let p0 = e.pistons()[0].state();
        let p1 = e.pistons()[1].state();
        assert_eq!(&p0[..2], &[2, 0]);
        assert_eq!(&p1[..2], &[2, 1]);
        assert_eq!(p0[195], 2);
        assert!(e.inject_collective(&mut ByteStream::new(), true).is_err());

        let mut e = engine(2);
        e.inject_collective(&mut ByteStream::new(), false).unwrap();
        assert_eq!(e.phase(), EnginePhase::EndOfMessage);
        assert!(e.pistons()[0].state().iter().all(|&b| b == 0));
    }

    #[test]
    fn collective_block_count() {
        // R_a + 1 bytes need two blocks and exactly one intermediate spark.
        let mut e = engine(1);
        let mut x = ByteStream::from(vec![0x11u8; 193]);
        e.inject_collective(&mut x, false).unwrap();
        let mut reference = Piston::new(PermutationSpec::new(1600, 12).unwrap(), 168, 192).unwrap();
        let mut copy = ByteStream::from(vec![0x11u8; 193]);
        reference.inject(&mut copy, false).unwrap();
        reference.spark(false, 0).unwrap();
        reference.inject(&mut copy, false).unwrap();
        assert_eq!(e.pistons()[0].state(), reference.state());
    }

    #[test]
    fn parallel_spark_matches_sequential() {
        let mut a = engine(8);
        let mut b = engine(8);
        b.set_parallel(true);
        for e in [&mut a, &mut b] {
            e.inject_collective(&mut ByteStream::from(vec![3u8; 50]), true).unwrap();
            e.get_tags(&mut ByteStream::new(), &[0; 8]).unwrap();
        }
        for (p, q) in a.pistons().iter().zip(b.pistons()) {
            assert_eq!(p.state(), q.state());
        }
    }
}
