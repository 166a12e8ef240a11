//! Permutation-based cryptography built on Keccak-p.
//!
//! The crate is layered bottom-up:
//!
//! - [`state`]: the Keccak-f\[b\] / Keccak-p\[b, n_r\] permutations for all seven widths.
//! - [`padding`] and [`bits`]: the pad10\* and pad10\*1 rules over LSB-first bit strings.
//! - [`sponge`] and [`duplex`]: plain, keyed and full-state constructions over any
//!   [`Permutation`].
//! - [`stream`], [`piston`], [`engine`], [`motorist`]: the Motorist session AEAD mode.
//! - [`keyak`]: the five named Keyak instances, key packs, SUVs and a one-shot AEAD API.
//!
//! ```
//! use keyak::keyak::{aead_decrypt, aead_encrypt, LAKE};
//!
//! let key = [7u8; 16];
//! let (ct, tag) = aead_encrypt(&LAKE, &key, b"nonce", b"header", b"secret").unwrap();
//! let pt = aead_decrypt(&LAKE, &key, b"nonce", b"header", &ct, &tag).unwrap();
//! assert_eq!(pt, b"secret");
//! ```
#![forbid(unsafe_code)]
#![allow(clippy::needless_range_loop)]

#[cfg(any(test, feature = "testkit"))]
pub mod bit_oracle;
pub mod bits;
pub mod duplex;
pub mod engine;
mod error;
pub mod keyak;
pub mod motorist;
pub mod padding;
pub mod piston;
pub mod sponge;
pub mod state;
pub mod stream;

pub use error::{Error, Result};

/// A fixed-width permutation acting on a byte-serialized state.
pub trait Permutation {
    /// Width in bits; always a multiple of 8 for byte-level users.
    fn width(&self) -> usize;

    /// Permutes `state`, which is exactly `width() / 8` bytes long.
    fn permute(&self, state: &mut [u8]);
}

impl<P: Permutation + ?Sized> Permutation for &P {
    fn width(&self) -> usize {
        (**self).width()
    }

    fn permute(&self, state: &mut [u8]) {
        (**self).permute(state)
    }
}
