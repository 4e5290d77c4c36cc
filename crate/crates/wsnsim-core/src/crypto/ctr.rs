//! CTR mode over the block cipher. The 16-byte nonce is the initial counter
//! block; successive blocks increment it as a big-endian integer mod 2^128.
//! Encryption and decryption are the same XOR operation.

use alloc::vec::Vec;
use core::fmt;

use super::aes::{self, Block, Key, BLOCK_LEN};

/// Payloads are bounded by the wire format's 2-byte length prefix.
pub const MAX_DATA_LEN: usize = u16::MAX as usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LengthError {
    pub len: usize,
}

impl fmt::Display for LengthError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "data length {} exceeds CTR limit {}", self.len, MAX_DATA_LEN)
    }
}

#[cfg(feature = "std")]
impl std::error::Error for LengthError {}

fn increment_be(block: &mut Block) {
    for i in (0..BLOCK_LEN).rev() {
        block[i] = block[i].wrapping_add(1);
        if block[i] != 0 {
            break;
        }
    }
}

/// XOR `data` with the AES-CTR keystream for (`key`, `nonce`).
pub fn ctr_xor(key: &Key, nonce: &Block, data: &[u8]) -> Result<Vec<u8>, LengthError> {
    if data.len() > MAX_DATA_LEN {
        return Err(LengthError { len: data.len() });
    }
    let keys = aes::expand_key(key);
    let mut counter = *nonce;
    let mut out = Vec::with_capacity(data.len());
    for chunk in data.chunks(BLOCK_LEN) {
        let ks = aes::encrypt_block_keys(&keys, &counter);
        for (i, byte) in chunk.iter().enumerate() {
            out.push(byte ^ ks[i]);
        }
        increment_be(&mut counter);
    }
    Ok(out)
}
