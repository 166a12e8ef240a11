//! The Motorist session layer over an [`Engine`].
//!
//! A session is started once from an SUV and then wraps (or unwraps) any number of
//! messages. Every tag authenticates the whole sequence of messages so far, so cryptograms
//! must be unwrapped in the order they were wrapped. Both ends have to agree on the
//! `tag_flag` and `forget` arguments of every call; they are part of the protocol.

use subtle::ConstantTimeEq;

use crate::engine::{Engine, EnginePhase};
use crate::error::{Error, Result};
use crate::state::PermutationSpec;
use crate::stream::ByteStream;

/// Rates derived from the width, alignment unit and capacity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Rates {
    /// `R_s` in bytes.
    pub squeeze_rate: usize,
    /// `R_a` in bytes.
    pub absorb_rate: usize,
    /// `c'` in bits.
    pub chaining_len: usize,
}

/// `R_s` is the largest multiple of `W` leaving at least `max(c, 32)` bits unused as output,
/// `R_a` the largest multiple of `W` leaving 32 bits for the fragment offsets, and `c'` the
/// smallest multiple of `W` not below `c`. All inputs are in bits.
pub fn derive_rates(width: usize, alignment: usize, capacity: usize) -> Result<Rates> {
    if alignment == 0 || !alignment.is_multiple_of(8) {
        return Err(Error::InfeasibleParameters("alignment unit must be a positive multiple of 8 bits"));
    }
    if !width.is_multiple_of(8) {
        return Err(Error::NotByteAligned(width));
    }
    let reserved = capacity.max(32);
    if reserved >= width {
        return Err(Error::InfeasibleParameters("capacity leaves no squeeze rate"));
    }
    let squeeze_bits = (width - reserved) / alignment * alignment;
    let absorb_bits = (width - 32) / alignment * alignment;
    let chaining_len = capacity.div_ceil(alignment) * alignment;
    if squeeze_bits == 0 {
        return Err(Error::InfeasibleParameters("squeeze rate is zero"));
    }
    if absorb_bits / 8 > 0xFF {
        return Err(Error::InfeasibleParameters("absorb rate does not fit the one-byte offsets"));
    }
    Ok(Rates { squeeze_rate: squeeze_bits / 8, absorb_rate: absorb_bits / 8, chaining_len })
}

/// `Motorist[f, Π, W, c, τ]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MotoristParams {
    pub f: PermutationSpec,
    pub parallelism: usize,
    /// `W` in bits.
    pub alignment: usize,
    /// `c` in bits.
    pub capacity: usize,
    /// `τ` in bits.
    pub tag_len: usize,
    pub rates: Rates,
}

impl MotoristParams {
    pub fn new(f: PermutationSpec, parallelism: usize, alignment: usize, capacity: usize, tag_len: usize) -> Result<Self> {
        let rates = derive_rates(f.width(), alignment, capacity)?;
        if !tag_len.is_multiple_of(8) {
            return Err(Error::InfeasibleParameters("tag length must be whole bytes"));
        }
        if tag_len / 8 > rates.squeeze_rate || rates.chaining_len / 8 > rates.squeeze_rate {
            return Err(Error::InfeasibleParameters("tag or chaining value longer than the squeeze rate"));
        }
        if parallelism == 0 || parallelism > 0xFF {
            return Err(Error::InfeasibleParameters("parallelism must be in 1..=255"));
        }
        Ok(Self { f, parallelism, alignment, capacity, tag_len, rates })
    }

    pub fn tag_bytes(&self) -> usize {
        self.tag_len / 8
    }

    pub fn chaining_bytes(&self) -> usize {
        self.rates.chaining_len / 8
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MotoristPhase {
    Ready,
    Riding,
    /// An unwrap saw a bad tag. Terminal.
    Failed,
}

impl MotoristPhase {
    pub fn name(self) -> &'static str {
        match self {
            MotoristPhase::Ready => "ready",
            MotoristPhase::Riding => "riding",
            MotoristPhase::Failed => "failed",
        }
    }
}

#[derive(Debug, Clone)]
pub struct Motorist {
    params: MotoristParams,
    engine: Engine,
    phase: MotoristPhase,
}

impl Motorist {
    pub fn new(params: MotoristParams) -> Result<Self> {
        let engine = Engine::new(params.f, params.parallelism, params.rates.squeeze_rate, params.rates.absorb_rate)?;
        Ok(Self { params, engine, phase: MotoristPhase::Ready })
    }

    pub fn params(&self) -> &MotoristParams {
        &self.params
    }

    pub fn phase(&self) -> MotoristPhase {
        self.phase
    }

    pub fn engine(&self) -> &Engine {
        &self.engine
    }

    pub fn set_parallel(&mut self, parallel: bool) {
        self.engine.set_parallel(parallel);
    }

    fn wrong_phase(&self, operation: &'static str) -> Error {
        Error::WrongPhase { operation, phase: self.phase.name() }
    }

    /// Starts the session from `suv`. With `tag_flag`, a tag is appended to `tag` (or checked
    /// against it when `unwrap`). Returns `false` if that check fails.
    pub fn start_engine(
        &mut self,
        suv: &mut ByteStream,
        tag_flag: bool,
        tag: &mut ByteStream,
        unwrap: bool,
        forget: bool,
    ) -> Result<bool> {
        if self.phase != MotoristPhase::Ready {
            return Err(self.wrong_phase("Motorist.start_engine"));
        }
        self.engine.inject_collective(suv, true)?;
        if forget {
            self.make_knot()?;
        }
        let ok = self.handle_tag(tag_flag, tag, unwrap)?;
        if ok {
            self.phase = MotoristPhase::Riding;
        }
        Ok(ok)
    }

    /// Wraps plaintext `input` with `metadata` into `output` and appends the tag to `tag`, or,
    /// when `unwrap`, decrypts ciphertext `input` and checks the tag read from `tag`. A failed
    /// check erases `output`, returns `false` and leaves the session failed.
    pub fn wrap(
        &mut self,
        input: &mut ByteStream,
        output: &mut ByteStream,
        metadata: &mut ByteStream,
        tag: &mut ByteStream,
        unwrap: bool,
        forget: bool,
    ) -> Result<bool> {
        if self.phase != MotoristPhase::Riding {
            return Err(self.wrong_phase("Motorist.wrap"));
        }
        if !input.has_more() && !metadata.has_more() {
            self.engine.inject(metadata)?;
        }
        while input.has_more() {
            self.engine.crypt(input, output, unwrap)?;
            self.engine.inject(metadata)?;
        }
        while metadata.has_more() {
            self.engine.inject(metadata)?;
        }
        if self.params.parallelism > 1 || forget {
            self.make_knot()?;
        }
        let ok = self.handle_tag(true, tag, unwrap)?;
        if !ok {
            output.erase();
        }
        Ok(ok)
    }

    /// Collects a `c'`-bit chaining value from every Piston and injects their concatenation
    /// into all of them. Expects the engine to be at the end of a message.
    pub fn make_knot(&mut self) -> Result<()> {
        let mut chaining = ByteStream::new();
        let lengths = vec![self.params.chaining_bytes(); self.params.parallelism];
        self.engine.get_tags(&mut chaining, &lengths)?;
        chaining.seek(0)?;
        self.engine.inject_collective(&mut chaining, false)
    }

    /// Finishes a message: extracts a `τ`-bit tag from Piston 0 when `tag_flag` and either
    /// appends it to `tag` or compares it in constant time with the next `τ/8` bytes of `tag`.
    pub fn handle_tag(&mut self, tag_flag: bool, tag: &mut ByteStream, unwrap: bool) -> Result<bool> {
        if self.engine.phase() != EnginePhase::EndOfMessage {
            return Err(Error::WrongPhase { operation: "Motorist.handle_tag", phase: self.engine.phase().name() });
        }
        let n = self.params.parallelism;
        let mut computed = ByteStream::new();
        if !tag_flag {
            self.engine.get_tags(&mut computed, &vec![0; n])?;
            return Ok(true);
        }
        let mut lengths = vec![0; n];
        lengths[0] = self.params.tag_bytes();
        self.engine.get_tags(&mut computed, &lengths)?;
        if !unwrap {
            tag.put_slice(computed.as_slice());
            return Ok(true);
        }
        let mut received = Vec::with_capacity(lengths[0]);
        while received.len() < lengths[0] && tag.has_more() {
            received.push(tag.get()?);
        }
        let equal = received.len() == lengths[0] && bool::from(computed.as_slice().ct_eq(&received));
        if !equal {
            self.phase = MotoristPhase::Failed;
        }
        Ok(equal)
    }
}
