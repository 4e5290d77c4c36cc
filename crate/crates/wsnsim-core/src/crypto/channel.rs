//! Sealing and opening of node -> station messages: encrypt-then-MAC over
//! CTR + CMAC, a per-sender counter doubling as replay freshness state, and
//! deterministic nonces derived from the session key.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use super::aes::Key;
use super::cmac::{cmac, tags_equal};
use super::ctr::{ctr_xor, LengthError};
use super::wire::SealedMessage;
use crate::NodeId;

/// Domain-separation suffix for session-key derivation.
pub const KDF_SESSION: u8 = 0x01;
/// Domain-separation suffix for nonce derivation.
pub const KDF_NONCE: u8 = 0x02;

/// Nonce for a given counter: CMAC(session key, counter || 0x02). Distinct
/// per counter, so distinct per message within a session.
pub fn derive_nonce(session_key: &Key, counter: u64) -> [u8; 16] {
    let mut msg = [0u8; 9];
    msg[..8].copy_from_slice(&counter.to_be_bytes());
    msg[8] = KDF_NONCE;
    cmac(session_key, &msg)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SealError {
    /// No authenticated session, nothing to seal under.
    NoSession,
    /// Plaintext exceeds the wire format's length field.
    Length(LengthError),
}

impl fmt::Display for SealError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SealError::NoSession => write!(f, "no authenticated session"),
            SealError::Length(e) => write!(f, "{e}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for SealError {}

/// Seal one message: ciphertext = CTR(session, nonce, pt),
/// tag = CMAC(session, sender || counter || nonce || ciphertext).
pub fn seal(
    session_key: &Key,
    sender: NodeId,
    counter: u64,
    plaintext: &[u8],
) -> Result<SealedMessage, SealError> {
    let nonce = derive_nonce(session_key, counter);
    let ciphertext = ctr_xor(session_key, &nonce, plaintext).map_err(SealError::Length)?;
    let mut msg = SealedMessage { sender, counter, nonce, ciphertext, tag: [0u8; 16] };
    msg.tag = cmac(session_key, &msg.mac_input());
    Ok(msg)
}

/// Node-side uplink state: the session key once authenticated, and the
/// strictly increasing message counter.
#[derive(Debug, Clone)]
pub struct NodeUplink {
    pub node: NodeId,
    session: Option<Key>,
    counter: u64,
}

impl NodeUplink {
    pub fn new(node: NodeId) -> Self {
        NodeUplink { node, session: None, counter: 0 }
    }

    pub fn set_session(&mut self, key: Key) {
        self.session = Some(key);
    }

    pub fn session(&self) -> Option<&Key> {
        self.session.as_ref()
    }

    /// Seal the next message, advancing the counter.
    pub fn seal_next(&mut self, plaintext: &[u8]) -> Result<SealedMessage, SealError> {
        let key = self.session.as_ref().ok_or(SealError::NoSession)?;
        let msg = seal(key, self.node, self.counter + 1, plaintext)?;
        self.counter += 1;
        Ok(msg)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum OpenError {
    /// Sender has no live session at the station.
    UnknownSender,
    /// Authentication tag did not verify.
    BadTag,
    /// Counter not strictly fresher than the highest accepted one.
    Replay,
}

impl fmt::Display for OpenError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OpenError::UnknownSender => write!(f, "unknown sender"),
            OpenError::BadTag => write!(f, "bad tag"),
            OpenError::Replay => write!(f, "replayed counter"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for OpenError {}

/// Highest accepted counter per sender. Anything at or below it is a replay.
#[derive(Debug, Clone, Default)]
pub struct FreshnessWindow {
    highest: BTreeMap<NodeId, u64>,
}

impl FreshnessWindow {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn is_fresh(&self, sender: NodeId, counter: u64) -> bool {
        counter > self.highest.get(&sender).copied().unwrap_or(0)
    }

    fn advance(&mut self, sender: NodeId, counter: u64) {
        self.highest.insert(sender, counter);
    }

    pub fn highest_accepted(&self, sender: NodeId) -> u64 {
        self.highest.get(&sender).copied().unwrap_or(0)
    }
}

/// Per-cause rejection counters plus the accepted count.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct RecvMetrics {
    pub accepted: u64,
    pub unknown_sender: u64,
    pub bad_tag: u64,
    pub replay: u64,
}

/// Station-side receive path: verify tag, check freshness, decrypt.
/// Rejection never advances the window and never releases plaintext.
#[derive(Debug, Clone, Default)]
pub struct Receiver {
    pub window: FreshnessWindow,
    pub metrics: RecvMetrics,
}

impl Receiver {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn open(
        &mut self,
        session_keys: &BTreeMap<NodeId, Key>,
        msg: &SealedMessage,
    ) -> Result<Vec<u8>, OpenError> {
        let key = match session_keys.get(&msg.sender) {
            Some(k) => k,
            None => {
                self.metrics.unknown_sender += 1;
                return Err(OpenError::UnknownSender);
            }
        };
        let expected = cmac(key, &msg.mac_input());
        if !tags_equal(&expected, &msg.tag) {
            self.metrics.bad_tag += 1;
            return Err(OpenError::BadTag);
        }
        if !self.window.is_fresh(msg.sender, msg.counter) {
            self.metrics.replay += 1;
            return Err(OpenError::Replay);
        }
        // tag verified over the nonce, so CTR input is authentic
        let plaintext = ctr_xor(key, &msg.nonce, &msg.ciphertext)
            .expect("ciphertext length bounded by wire format");
        self.window.advance(msg.sender, msg.counter);
        self.metrics.accepted += 1;
        Ok(plaintext)
    }
}
