//! Deterministic attack injectors for the data-plane attack surface:
//! captured nodes sealing attacker-chosen values with legitimate keys,
//! verbatim replays, keyless spoofing, Sybil identity claims at the
//! authentication layer, and selective forwarding (silent drops).
//!
//! Scripts are declarative config entries; every stochastic choice draws
//! from a labeled substream, so identical scripts and seed produce
//! identical traffic.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use rand::{Rng, RngCore};

use crate::crypto::{cmac, SealedMessage};
use crate::rng::{unit_uniform, DetRng};
use crate::NodeId;

/// What a captured node transmits in place of its honest reading.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CaptureProfile {
    /// Always the same value, independent of the field.
    Constant(f64),
    /// Honest value plus a fixed offset.
    Offset(f64),
    /// Seeded uniform draw in [lo, hi].
    Random { lo: f64, hi: f64 },
    /// The node's own transmitted value from `lag` steps ago.
    Stale { lag: u64 },
}

#[derive(Debug, Clone, PartialEq)]
pub enum AttackKind {
    NodeCapture { profile: CaptureProfile },
    Replay,
    SpoofNoKey { claimed_ids: Vec<u32> },
    Sybil { fake_ids: u32 },
    SelectiveForwarding { drop_probability: f64 },
}

impl AttackKind {
    /// Provenance label carried by every event this attack causes.
    pub fn name(&self) -> &'static str {
        match self {
            AttackKind::NodeCapture { .. } => "node_capture",
            AttackKind::Replay => "replay",
            AttackKind::SpoofNoKey { .. } => "spoof_no_key",
            AttackKind::Sybil { .. } => "sybil",
            AttackKind::SelectiveForwarding { .. } => "selective_forwarding",
        }
    }
}

/// One scripted attack: a kind, its targets, and the active step window
/// (inclusive on both ends).
#[derive(Debug, Clone, PartialEq)]
pub struct AttackScript {
    pub kind: AttackKind,
    pub targets: Vec<NodeId>,
    pub start: u64,
    pub end: u64,
}

impl AttackScript {
    pub fn active_at(&self, t: u64) -> bool {
        self.start <= t && t <= self.end
    }

    pub fn targets_node(&self, node: NodeId, t: u64) -> bool {
        self.active_at(t) && self.targets.contains(&node)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScriptError {
    WindowInverted,
    DropProbabilityOutOfRange,
    StaleLagZero,
    RandomRangeInverted,
}

impl fmt::Display for ScriptError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScriptError::WindowInverted => write!(f, "start must be <= end"),
            ScriptError::DropProbabilityOutOfRange => {
                write!(f, "drop probability must lie in [0, 1]")
            }
            ScriptError::StaleLagZero => write!(f, "stale replay lag must be at least 1"),
            ScriptError::RandomRangeInverted => write!(f, "random profile needs lo <= hi"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for ScriptError {}

impl AttackScript {
    /// Parameter sanity; deployment-dependent checks (targets exist) live
    /// with the scenario validation.
    pub fn validate(&self) -> Result<(), ScriptError> {
        if self.start > self.end {
            return Err(ScriptError::WindowInverted);
        }
        match &self.kind {
            AttackKind::SelectiveForwarding { drop_probability } => {
                if !(0.0..=1.0).contains(drop_probability) {
                    return Err(ScriptError::DropProbabilityOutOfRange);
                }
            }
            AttackKind::NodeCapture { profile: CaptureProfile::Stale { lag } } => {
                if *lag == 0 {
                    return Err(ScriptError::StaleLagZero);
                }
            }
            AttackKind::NodeCapture { profile: CaptureProfile::Random { lo, hi } } => {
                if lo > hi {
                    return Err(ScriptError::RandomRangeInverted);
                }
            }
            _ => {}
        }
        Ok(())
    }
}

/// The value a captured node transmits at `t`. `own_past` resolves the
/// node's previously transmitted value at an earlier step (stale profile);
/// before any history exists the honest value passes through.
pub fn apply_node_capture<F>(
    profile: &CaptureProfile,
    honest: f64,
    t: u64,
    own_past: F,
    rng: &mut DetRng,
) -> f64
where
    F: Fn(u64) -> Option<f64>,
{
    match *profile {
        CaptureProfile::Constant(v) => v,
        CaptureProfile::Offset(delta) => honest + delta,
        CaptureProfile::Random { lo, hi } => lo + unit_uniform(rng) * (hi - lo),
        CaptureProfile::Stale { lag } => {
            if t > lag {
                own_past(t - lag).unwrap_or(honest)
            } else {
                honest
            }
        }
    }
}

/// Selective forwarding: true when the reading is silently dropped.
pub fn drop_decision(drop_probability: f64, rng: &mut DetRng) -> bool {
    unit_uniform(rng) < drop_probability
}

/// Channel eavesdropper buffer for replay: records wire messages verbatim,
/// never sees keys.
#[derive(Debug, Clone, Default)]
pub struct ChannelTap {
    recorded: BTreeMap<NodeId, Vec<SealedMessage>>,
}

impl ChannelTap {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn record(&mut self, msg: &SealedMessage) {
        self.recorded.entry(msg.sender).or_default().push(msg.clone());
    }

    pub fn recorded_count(&self, sender: NodeId) -> usize {
        self.recorded.get(&sender).map_or(0, |v| v.len())
    }

    /// A verbatim copy of one recorded message from `sender`, picked by the
    /// seeded generator.
    pub fn pick_replay(&self, sender: NodeId, rng: &mut DetRng) -> Option<SealedMessage> {
        let msgs = self.recorded.get(&sender)?;
        if msgs.is_empty() {
            return None;
        }
        Some(msgs[rng.gen_range(0..msgs.len())].clone())
    }
}

/// A forged message from an attacker holding no valid key: random key,
/// random nonce, random payload. Verification can only fail.
pub fn forge_spoofed_message(claimed: u32, counter: u64, rng: &mut DetRng) -> SealedMessage {
    let mut key = [0u8; 16];
    let mut nonce = [0u8; 16];
    let mut payload = [0u8; 8];
    rng.fill_bytes(&mut key);
    rng.fill_bytes(&mut nonce);
    rng.fill_bytes(&mut payload);
    let mut msg = SealedMessage {
        sender: NodeId(claimed),
        counter,
        nonce,
        ciphertext: payload.to_vec(),
        tag: [0u8; 16],
    };
    msg.tag = cmac(&key, &msg.mac_input());
    msg
}

/// A Sybil identity's authentication response: a tag computed under a
/// random key, since fake identities hold no predistributed material.
pub fn sybil_response(nonce: &[u8; 16], claimed: u32, rng: &mut DetRng) -> [u8; 16] {
    let mut key = [0u8; 16];
    rng.fill_bytes(&mut key);
    crate::keying::auth_tag(&key, nonce, NodeId(claimed))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::Substreams;
    use alloc::vec;

    fn rng(label: &str) -> DetRng {
        Substreams::new(5).stream(label, &[])
    }

    #[test]
    fn zero_offset_capture_is_invisible() {
        let v = apply_node_capture(
            &CaptureProfile::Offset(0.0),
            3.25,
            10,
            |_| None,
            &mut rng("cap"),
        );
        assert_eq!(v, 3.25);
    }

    #[test]
    fn constant_capture_ignores_the_field() {
        let profile = CaptureProfile::Constant(42.0);
        let a = apply_node_capture(&profile, 1.0, 5, |_| None, &mut rng("cap"));
        let b = apply_node_capture(&profile, -100.0, 6, |_| None, &mut rng("cap"));
        assert_eq!(a, 42.0);
        assert_eq!(b, 42.0);
    }

    #[test]
    fn random_capture_stays_in_range_and_reproduces() {
        let profile = CaptureProfile::Random { lo: -2.0, hi: 3.0 };
        let a = apply_node_capture(&profile, 0.0, 5, |_| None, &mut rng("cap"));
        let b = apply_node_capture(&profile, 0.0, 5, |_| None, &mut rng("cap"));
        assert_eq!(a, b);
        assert!((-2.0..=3.0).contains(&a));
    }

    #[test]
    fn stale_capture_replays_own_past() {
        let profile = CaptureProfile::Stale { lag: 3 };
        let past = |t: u64| Some(t as f64 * 10.0);
        let v = apply_node_capture(&profile, 99.0, 8, past, &mut rng("cap"));
        assert_eq!(v, 50.0);
        // before enough history exists the honest value passes through
        let v = apply_node_capture(&profile, 99.0, 2, past, &mut rng("cap"));
        assert_eq!(v, 99.0);
    }

    #[test]
    fn drop_decision_edge_probabilities() {
        let mut r = rng("drops");
        for _ in 0..100 {
            assert!(!drop_decision(0.0, &mut r));
            assert!(drop_decision(1.0, &mut r));
        }
    }

    #[test]
    fn drop_rate_converges() {
        let subs = Substreams::new(31);
        let n = 10_000;
        let mut drops = 0;
        for t in 0..n {
            if drop_decision(0.5, &mut subs.stream("drop", &[0, 3, t])) {
                drops += 1;
            }
        }
        let rate = drops as f64 / n as f64;
        assert!((rate - 0.5).abs() < 0.02, "rate {rate}");
    }

    #[test]
    fn tap_records_and_replays_verbatim() {
        let mut tap = ChannelTap::new();
        let msg = crate::crypto::seal(&[1u8; 16], NodeId(4), 1, b"v").unwrap();
        tap.record(&msg);
        assert_eq!(tap.recorded_count(NodeId(4)), 1);
        let replayed = tap.pick_replay(NodeId(4), &mut rng("replay")).unwrap();
        assert_eq!(replayed, msg);
        assert!(tap.pick_replay(NodeId(9), &mut rng("replay")).is_none());
    }

    #[test]
    fn script_windows_and_params_validated() {
        let ok = AttackScript {
            kind: AttackKind::Replay,
            targets: vec![NodeId(0)],
            start: 5,
            end: 10,
        };
        assert!(ok.validate().is_ok());
        assert!(ok.targets_node(NodeId(0), 5));
        assert!(ok.targets_node(NodeId(0), 10));
        assert!(!ok.targets_node(NodeId(0), 11));
        assert!(!ok.targets_node(NodeId(1), 7));

        let bad_window = AttackScript { start: 10, end: 5, ..ok.clone() };
        assert_eq!(bad_window.validate(), Err(ScriptError::WindowInverted));

        let bad_p = AttackScript {
            kind: AttackKind::SelectiveForwarding { drop_probability: 1.5 },
            ..ok.clone()
        };
        assert_eq!(bad_p.validate(), Err(ScriptError::DropProbabilityOutOfRange));

        let bad_lag = AttackScript {
            kind: AttackKind::NodeCapture { profile: CaptureProfile::Stale { lag: 0 } },
            ..ok.clone()
        };
        assert_eq!(bad_lag.validate(), Err(ScriptError::StaleLagZero));

        let bad_range = AttackScript {
            kind: AttackKind::NodeCapture {
                profile: CaptureProfile::Random { lo: 2.0, hi: 1.0 },
            },
            ..ok
        };
        assert_eq!(bad_range.validate(), Err(ScriptError::RandomRangeInverted));
    }

    #[test]
    fn forged_messages_are_deterministic_per_stream() {
        let a = forge_spoofed_message(93, 1, &mut rng("spoof"));
        let b = forge_spoofed_message(93, 1, &mut rng("spoof"));
        assert_eq!(a, b);
        assert_eq!(a.sender, NodeId(93));
    }
}
