//! Sequential byte streams consumed and produced by the Motorist layers.

use crate::error::{Error, Result};

/// An in-memory byte buffer with a read cursor. Writes always append.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ByteStream {
    buffer: Vec<u8>,
    cursor: usize,
}

impl ByteStream {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&mut self) -> Result<u8> {
        let byte = *self.buffer.get(self.cursor).ok_or(Error::StreamExhausted)?;
        self.cursor += 1;
        Ok(byte)
    }

    pub fn put(&mut self, byte: u8) {
        self.buffer.push(byte);
    }

    pub fn put_slice(&mut self, bytes: &[u8]) {
        self.buffer.extend_from_slice(bytes);
    }

    pub fn has_more(&self) -> bool {
        self.cursor < self.buffer.len()
    }

    /// Bytes left to read.
    pub fn remaining(&self) -> usize {
        self.buffer.len() - self.cursor
    }

    /// Moves the read cursor to `pos`.
    pub fn seek(&mut self, pos: usize) -> Result<()> {
        if pos > self.buffer.len() {
            return Err(Error::SeekOutOfBounds { pos, len: self.buffer.len() });
        }
        self.cursor = pos;
        Ok(())
    }

    /// Empties the buffer and resets the cursor.
    pub fn erase(&mut self) {
        self.buffer.clear();
        self.cursor = 0;
    }

    pub fn position(&self) -> usize {
        self.cursor
    }

    pub fn len(&self) -> usize {
        self.buffer.len()
    }

    pub fn is_empty(&self) -> bool {
        self.buffer.is_empty()
    }

    /// Everything written so far, regardless of the cursor.
    pub fn as_slice(&self) -> &[u8] {
        &self.buffer
    }

    pub fn into_inner(self) -> Vec<u8> {
        self.buffer
    }
}

impl From<Vec<u8>> for ByteStream {
    fn from(buffer: Vec<u8>) -> Self {
        Self { buffer, cursor: 0 }
    }
}

impl From<&[u8]> for ByteStream {
    fn from(bytes: &[u8]) -> Self {
        bytes.to_vec().into()
    }
}
