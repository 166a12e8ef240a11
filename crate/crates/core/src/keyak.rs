//! Keyak: Motorist over Keccak-p\[b, 12\], with SUV = KeyPack(K, l_k) ‖ N.

use std::fmt;

use crate::error::{Error, Result};
use crate::motorist::{Motorist, MotoristParams};
use crate::padding::enc8;
use crate::state::PermutationSpec;
use crate::stream::ByteStream;

/// Parameters `Keyak[b, n_r, Π, c, τ]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct KeyakInstance {
    name: &'static str,
    width: usize,
    rounds: usize,
    parallelism: usize,
    capacity: usize,
    tag_len: usize,
}

pub const RIVER: KeyakInstance = KeyakInstance::named("river", 800, 1);
pub const LAKE: KeyakInstance = KeyakInstance::named("lake", 1600, 1);
pub const SEA: KeyakInstance = KeyakInstance::named("sea", 1600, 2);
pub const OCEAN: KeyakInstance = KeyakInstance::named("ocean", 1600, 4);
pub const LUNAR: KeyakInstance = KeyakInstance::named("lunar", 1600, 8);

/// The five named instances in order of increasing state size and parallelism.
pub const INSTANCES: [KeyakInstance; 5] = [RIVER, LAKE, SEA, OCEAN, LUNAR];

impl KeyakInstance {
    const fn named(name: &'static str, width: usize, parallelism: usize) -> Self {
        Self { name, width, rounds: 12, parallelism, capacity: 256, tag_len: 128 }
    }

    /// Looks up a named instance, case-insensitively.
    pub fn by_name(name: &str) -> Result<Self> {
        INSTANCES
            .iter()
            .find(|i| i.name.eq_ignore_ascii_case(name))
            .copied()
            .ok_or_else(|| Error::UnknownInstance(name.to_string()))
    }

    /// A non-standard parameter set. Validated the same way as the named instances.
    pub fn custom(width: usize, rounds: usize, parallelism: usize, capacity: usize, tag_len: usize) -> Result<Self> {
        let instance = Self { name: "custom", width, rounds, parallelism, capacity, tag_len };
        instance.motorist_params()?;
        Ok(instance)
    }

    pub fn name(&self) -> &'static str {
        self.name
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn rounds(&self) -> usize {
        self.rounds
    }

    pub fn parallelism(&self) -> usize {
        self.parallelism
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    pub fn tag_len(&self) -> usize {
        self.tag_len
    }

    pub fn tag_bytes(&self) -> usize {
        self.tag_len / 8
    }

    /// `W = max(b/25, 8)` bits.
    pub fn alignment(&self) -> usize {
        (self.width / 25).max(8)
    }

    /// `l_k = (W/8)·⌈(c + 9)/W⌉` bytes.
    pub fn key_pack_len(&self) -> usize {
        let w = self.alignment();
        w / 8 * (self.capacity + 9).div_ceil(w)
    }

    /// Accepted key sizes in bits: at least 128 and at most what the key pack can hold.
    pub fn key_bits_range(&self) -> (usize, usize) {
        (128, 8 * (self.key_pack_len() - 1) - 1)
    }

    /// Nonce length that makes the SUV plus the two diversification bytes fill one absorb block.
    pub fn recommended_nonce_len(&self) -> usize {
        match self.motorist_params() {
            Ok(p) => p.rates.absorb_rate.saturating_sub(self.key_pack_len() + 2),
            Err(_) => 0,
        }
    }

    pub fn motorist_params(&self) -> Result<MotoristParams> {
        let f = PermutationSpec::new(self.width, self.rounds)?;
        MotoristParams::new(f, self.parallelism, self.alignment(), self.capacity, self.tag_len)
    }
}

impl fmt::Display for KeyakInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name)
    }
}

/// `enc8(l) ‖ K ‖ 0x01 ‖ 0x00…`, `l` bytes in total.
pub fn key_pack(key: &[u8], len: usize) -> Result<Vec<u8>> {
    let len_byte = enc8(len).map_err(|_| Error::InvalidKeyPack("length must be below 256"))?;
    if key.len() + 2 > len {
        return Err(Error::InvalidKeyPack("key leaves no room for padding"));
    }
    let mut pack = Vec::with_capacity(len);
    pack.push(len_byte);
    pack.extend_from_slice(key);
    pack.push(0x01);
    pack.resize(len, 0);
    Ok(pack)
}

/// `KeyPack(K, l_k) ‖ N`.
pub fn make_suv(instance: &KeyakInstance, key: &[u8], nonce: &[u8]) -> Result<Vec<u8>> {
    let bits = key.len() * 8;
    let (min, max) = instance.key_bits_range();
    if bits < min || bits > max {
        return Err(Error::KeySize { bits, min, max });
    }
    let mut suv = key_pack(key, instance.key_pack_len())?;
    suv.extend_from_slice(nonce);
    Ok(suv)
}

/// Builds the Motorist for `instance` and starts it with the SUV of `key` and `nonce`.
/// A tag check failing on the unwrap side is reported as [`Error::AuthenticationFailed`].
pub fn new_session(
    instance: &KeyakInstance,
    key: &[u8],
    nonce: &[u8],
    tag_flag: bool,
    tag: &mut ByteStream,
    unwrap: bool,
    forget: bool,
) -> Result<Motorist> {
    let suv = make_suv(instance, key, nonce)?;
    let mut motorist = Motorist::new(instance.motorist_params()?)?;
    if !motorist.start_engine(&mut ByteStream::from(suv), tag_flag, tag, unwrap, forget)? {
        return Err(Error::AuthenticationFailed);
    }
    Ok(motorist)
}

/// A started Keyak session exchanging whole messages as byte slices.
#[derive(Debug, Clone)]
pub struct Session {
    motorist: Motorist,
    tag_bytes: usize,
}

impl Session {
    /// Starts a session without a start tag and without forgetting.
    pub fn start(instance: &KeyakInstance, key: &[u8], nonce: &[u8]) -> Result<Self> {
        let motorist = new_session(instance, key, nonce, false, &mut ByteStream::new(), false, false)?;
        Ok(Self { motorist, tag_bytes: instance.tag_bytes() })
    }

    pub fn motorist(&self) -> &Motorist {
        &self.motorist
    }

    pub fn set_parallel(&mut self, parallel: bool) {
        self.motorist.set_parallel(parallel);
    }

    /// Returns the ciphertext, as long as the plaintext, and the tag.
    pub fn wrap(&mut self, plaintext: &[u8], metadata: &[u8], forget: bool) -> Result<(Vec<u8>, Vec<u8>)> {
        let mut output = ByteStream::new();
        let mut tag = ByteStream::new();
        self.motorist.wrap(
            &mut ByteStream::from(plaintext),
            &mut output,
            &mut ByteStream::from(metadata),
            &mut tag,
            false,
            forget,
        )?;
        Ok((output.into_inner(), tag.into_inner()))
    }

    /// Returns the plaintext only if the tag verifies. After a failure the session is dead.
    pub fn unwrap(&mut self, ciphertext: &[u8], metadata: &[u8], tag: &[u8], forget: bool) -> Result<Vec<u8>> {
        if tag.len() != self.tag_bytes {
            return Err(Error::TagLength { expected: self.tag_bytes, actual: tag.len() });
        }
        let mut output = ByteStream::new();
        let ok = self.motorist.wrap(
            &mut ByteStream::from(ciphertext),
            &mut output,
            &mut ByteStream::from(metadata),
            &mut ByteStream::from(tag),
            true,
            forget,
        )?;
        if !ok {
            return Err(Error::AuthenticationFailed);
        }
        Ok(output.into_inner())
    }
}

/// One-shot encryption: a fresh session wrapping a single message.
pub fn aead_encrypt(
    instance: &KeyakInstance,
    key: &[u8],
    nonce: &[u8],
    ad: &[u8],
    plaintext: &[u8],
) -> Result<(Vec<u8>, Vec<u8>)> {
    seal(instance, key, nonce, ad, plaintext, false)
}

/// One-shot decryption. Parameter problems and authentication failure are distinct errors;
/// no plaintext is returned unless the tag verifies.
pub fn aead_decrypt(
    instance: &KeyakInstance,
    key: &[u8],
    nonce: &[u8],
    ad: &[u8],
    ciphertext: &[u8],
    tag: &[u8],
) -> Result<Vec<u8>> {
    open(instance, key, nonce, ad, ciphertext, tag, false)
}

/// [`aead_encrypt`] with a choice of forgetting on the single wrap.
pub fn seal(
    instance: &KeyakInstance,
    key: &[u8],
    nonce: &[u8],
    ad: &[u8],
    plaintext: &[u8],
    forget: bool,
) -> Result<(Vec<u8>, Vec<u8>)> {
    Session::start(instance, key, nonce)?.wrap(plaintext, ad, forget)
}

/// [`aead_decrypt`] with a choice of forgetting on the single unwrap.
pub fn open(
    instance: &KeyakInstance,
    key: &[u8],
    nonce: &[u8],
    ad: &[u8],
    ciphertext: &[u8],
    tag: &[u8],
    forget: bool,
) -> Result<Vec<u8>> {
    if tag.len() != instance.tag_bytes() {
        return Err(Error::TagLength { expected: instance.tag_bytes(), actual: tag.len() });
    }
    Session::start(instance, key, nonce)?.unwrap(ciphertext, ad, tag, forget)
}
