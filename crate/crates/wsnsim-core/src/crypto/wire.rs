//! Bit-exact wire record for node -> station traffic.
//!
//! Layout, all integers big-endian:
//!
//! ```text
//! sender id   4 bytes
//! counter     8 bytes   strictly increasing per sender
//! nonce      16 bytes
//! ct length   2 bytes
//! ciphertext  `ct length` bytes
//! tag        16 bytes   CMAC over sender || counter || nonce || ciphertext
//! ```

use alloc::vec::Vec;
use core::fmt;

use crate::NodeId;

pub const HEADER_LEN: usize = 4 + 8 + 16 + 2;
pub const TAG_LEN: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SealedMessage {
    pub sender: NodeId,
    pub counter: u64,
    pub nonce: [u8; 16],
    pub ciphertext: Vec<u8>,
    pub tag: [u8; 16],
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WireError {
    /// Fewer bytes than the fixed fields plus declared ciphertext length.
    Truncated,
    /// Bytes left over after the tag.
    TrailingBytes,
}

impl fmt::Display for WireError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WireError::Truncated => write!(f, "message truncated"),
            WireError::TrailingBytes => write!(f, "trailing bytes after message"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for WireError {}

impl SealedMessage {
    /// Total serialized size: 4 + 8 + 16 + 2 + len(ct) + 16.
    pub fn wire_len(&self) -> usize {
        HEADER_LEN + self.ciphertext.len() + TAG_LEN
    }

    /// The bytes covered by the authentication tag.
    pub fn mac_input(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(4 + 8 + 16 + self.ciphertext.len());
        out.extend_from_slice(&self.sender.0.to_be_bytes());
        out.extend_from_slice(&self.counter.to_be_bytes());
        out.extend_from_slice(&self.nonce);
        out.extend_from_slice(&self.ciphertext);
        out
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(self.wire_len());
        out.extend_from_slice(&self.sender.0.to_be_bytes());
        out.extend_from_slice(&self.counter.to_be_bytes());
        out.extend_from_slice(&self.nonce);
        out.extend_from_slice(&(self.ciphertext.len() as u16).to_be_bytes());
        out.extend_from_slice(&self.ciphertext);
        out.extend_from_slice(&self.tag);
        out
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self, WireError> {
        if bytes.len() < HEADER_LEN + TAG_LEN {
            return Err(WireError::Truncated);
        }
        let sender = NodeId(u32::from_be_bytes(bytes[0..4].try_into().unwrap()));
        let counter = u64::from_be_bytes(bytes[4..12].try_into().unwrap());
        let mut nonce = [0u8; 16];
        nonce.copy_from_slice(&bytes[12..28]);
        let ct_len = u16::from_be_bytes(bytes[28..30].try_into().unwrap()) as usize;
        let total = HEADER_LEN + ct_len + TAG_LEN;
        if bytes.len() < total {
            return Err(WireError::Truncated);
        }
        if bytes.len() > total {
            return Err(WireError::TrailingBytes);
        }
        let ciphertext = bytes[30..30 + ct_len].to_vec();
        let mut tag = [0u8; 16];
        tag.copy_from_slice(&bytes[30 + ct_len..]);
        Ok(SealedMessage { sender, counter, nonce, ciphertext, tag })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample(ct_len: usize) -> SealedMessage {
        SealedMessage {
            sender: NodeId(0xdeadbeef),
            counter: 42,
            nonce: [7u8; 16],
            ciphertext: (0..ct_len as u8).collect(),
            tag: [9u8; 16],
        }
    }

    #[test]
    fn roundtrip_exact() {
        for len in [0usize, 1, 8, 255] {
            let msg = sample(len);
            let bytes = msg.to_bytes();
            assert_eq!(bytes.len(), 4 + 8 + 16 + 2 + len + 16);
            assert_eq!(SealedMessage::from_bytes(&bytes).unwrap(), msg);
        }
    }

    #[test]
    fn truncation_and_trailing_rejected() {
        let bytes = sample(8).to_bytes();
        assert_eq!(SealedMessage::from_bytes(&bytes[..bytes.len() - 1]), Err(WireError::Truncated));
        assert_eq!(SealedMessage::from_bytes(&bytes[..10]), Err(WireError::Truncated));
        let mut longer = bytes.clone();
        longer.push(0);
        assert_eq!(SealedMessage::from_bytes(&longer), Err(WireError::TrailingBytes));
    }
}
