//! The deterministic step-loop driver: deploy, predistribute, authenticate,
//! then per step poll -> sense/attack -> seal -> channel -> open -> trust
//! pipeline, emitting a per-node trace, an event stream and a run summary.
//! Identical configs produce identical outputs, bit for bit.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;
use core::fmt;

use crate::attacks::{
    apply_node_capture, drop_decision, forge_spoofed_message, sybil_response, AttackKind,
    ChannelTap,
};
use crate::config::{ConfigError, ScenarioConfig};
use crate::crypto::{OpenError, Receiver};
use crate::field::observe;
use crate::keying::{
    authenticate, predistribute, station_voter, AuthOutcome, KeyServer, ParameterError,
    VoteOutcome,
};
use crate::rng::Substreams;
use crate::topology::{deploy, neighbors, DeployError, Deployment};
use crate::trust::{Action, TrustEngine, TrustEvent};
use crate::{NodeId, StationId};

/// Which attack (if any) caused an event.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    Organic,
    NodeCapture,
    Replay,
    SpoofNoKey,
    Sybil,
    SelectiveForwarding,
}

impl Provenance {
    pub fn name(&self) -> &'static str {
        match self {
            Provenance::Organic => "organic",
            Provenance::NodeCapture => "node_capture",
            Provenance::Replay => "replay",
            Provenance::SpoofNoKey => "spoof_no_key",
            Provenance::Sybil => "sybil",
            Provenance::SelectiveForwarding => "selective_forwarding",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EventKind {
    AuthAccepted,
    AuthRejected { outcome: AuthOutcome },
    OpenRejected { cause: OpenError },
    Dropped,
    Quarantined,
    Readmitted,
    Alarmed,
    AvailabilityAlarm,
    RevocationVote { voter: NodeId },
    Revoked,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Event {
    pub t: u64,
    pub node: NodeId,
    pub kind: EventKind,
    pub provenance: Provenance,
}

/// One row per polled node per step.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceRow {
    pub t: u64,
    pub node: NodeId,
    /// Accepted reading, absent when dropped or rejected.
    pub x: Option<f64>,
    pub x_hat: Option<f64>,
    pub e: Option<f64>,
    pub b: f64,
    pub action: Action,
    pub missing: bool,
}

/// Message conservation: sent = accepted + rejected + dropped, per run.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct MessageStats {
    pub sent: u64,
    pub accepted: u64,
    pub rejected: u64,
    pub dropped: u64,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct RejectionCounts {
    pub open_unknown_sender: u64,
    pub open_bad_tag: u64,
    pub open_replay: u64,
    pub auth_no_shared_key: u64,
    pub auth_bad_tag: u64,
    pub auth_revoked: u64,
}

/// Detection outcome for one capture-attacked node.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DetectionRecord {
    pub node: NodeId,
    pub attack_start: u64,
    pub quarantined_at: Option<u64>,
}

impl DetectionRecord {
    /// Steps from attack start to quarantine.
    pub fn latency(&self) -> Option<u64> {
        self.quarantined_at.map(|t| t.saturating_sub(self.attack_start))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunSummary {
    pub detections: Vec<DetectionRecord>,
    pub true_positives: u32,
    pub false_negatives: u32,
    /// Quarantine events on nodes no capture script targets.
    pub false_positives: u32,
    pub rejections: RejectionCounts,
    pub availability_alarms: u32,
    pub revocations: u32,
    pub final_trust: Vec<f64>,
    pub messages: MessageStats,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunOutput {
    pub trace: Vec<TraceRow>,
    pub events: Vec<Event>,
    pub summary: RunSummary,
}

#[derive(Debug, Clone, PartialEq)]
pub enum RunError {
    Config(ConfigError),
    Deploy(DeployError),
    Keying(ParameterError),
}

impl fmt::Display for RunError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RunError::Config(e) => write!(f, "config: {e}"),
            RunError::Deploy(e) => write!(f, "deploy: {e}"),
            RunError::Keying(e) => write!(f, "keying: {e}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for RunError {}

impl From<ConfigError> for RunError {
    fn from(e: ConfigError) -> Self {
        RunError::Config(e)
    }
}

impl From<DeployError> for RunError {
    fn from(e: DeployError) -> Self {
        RunError::Deploy(e)
    }
}

impl From<ParameterError> for RunError {
    fn from(e: ParameterError) -> Self {
        RunError::Keying(e)
    }
}

struct Driver<'a> {
    cfg: &'a ScenarioConfig,
    subs: Substreams,
    deployment: Deployment,
    home: Vec<StationId>,
    servers: BTreeMap<StationId, KeyServer>,
    receivers: BTreeMap<StationId, Receiver>,
    engines: BTreeMap<StationId, TrustEngine>,
    uplinks: Vec<crate::crypto::NodeUplink>,
    tap: ChannelTap,
    /// Per node: transmitted value by step, for stale-replay profiles.
    transmitted: Vec<BTreeMap<u64, f64>>,
    events: Vec<Event>,
    trace: Vec<TraceRow>,
    stats: MessageStats,
    rejections: RejectionCounts,
    detections: BTreeMap<NodeId, DetectionRecord>,
    false_positives: u32,
    availability_alarms: u32,
    revocations: u32,
}

/// Execute a scenario. The only failure modes are validation, deployment
/// coverage and keying parameter errors; a validated scenario always runs
/// to completion.
pub fn run(cfg: &ScenarioConfig) -> Result<RunOutput, RunError> {
    cfg.validate()?;
    let subs = Substreams::new(cfg.seed);
    let deployment = deploy(&cfg.deployment, &mut subs.stream("placement", &[]))?;
    let adjacency = neighbors(&deployment);
    let n = deployment.node_count();

    let station_ids: Vec<StationId> = deployment.stations.iter().map(|s| s.id).collect();
    let (mut rings, mut directory) = predistribute(
        cfg.deployment.count,
        cfg.keying.ring_size,
        &station_ids,
        &mut subs.stream("keys", &[]),
    )?;

    let home: Vec<StationId> = deployment
        .node_ids()
        .map(|id| deployment.home_station(id).expect("covered"))
        .collect();

    let mut servers = BTreeMap::new();
    let mut receivers = BTreeMap::new();
    let mut engines = BTreeMap::new();
    for &sid in &station_ids {
        let keys = directory.remove(&sid).expect("directory covers all stations");
        servers.insert(sid, KeyServer::new(sid, keys, cfg.keying.quorum));
        receivers.insert(sid, Receiver::new());
        // each cell's estimator only ever sees readings from its own nodes
        let cell_adjacency = adjacency.retain(|j| home[j.0 as usize] == sid);
        engines.insert(
            sid,
            TrustEngine::new(&deployment, cell_adjacency, cfg.estimator.clone(), cfg.trust.clone()),
        );
    }

    let capture_targets: BTreeSet<NodeId> = cfg
        .attacks
        .iter()
        .filter(|s| matches!(s.kind, AttackKind::NodeCapture { .. }))
        .flat_map(|s| s.targets.iter().copied())
        .collect();
    let mut detections = BTreeMap::new();
    for &node in &capture_targets {
        let attack_start = cfg
            .attacks
            .iter()
            .filter(|s| matches!(s.kind, AttackKind::NodeCapture { .. }))
            .filter(|s| s.targets.contains(&node))
            .map(|s| s.start)
            .min()
            .expect("capture target has a script");
        detections.insert(node, DetectionRecord { node, attack_start, quarantined_at: None });
    }

    let mut driver = Driver {
        cfg,
        subs,
        deployment,
        home,
        servers,
        receivers,
        engines,
        uplinks: (0..n as u32).map(|i| crate::crypto::NodeUplink::new(NodeId(i))).collect(),
        tap: ChannelTap::new(),
        transmitted: alloc::vec![BTreeMap::new(); n],
        events: Vec::new(),
        trace: Vec::new(),
        stats: MessageStats::default(),
        rejections: RejectionCounts::default(),
        detections,
        false_positives: 0,
        availability_alarms: 0,
        revocations: 0,
    };

    driver.authenticate_all(&mut rings);
    for t in 1..=cfg.horizon {
        driver.step(t);
    }
    Ok(driver.finish())
}

impl<'a> Driver<'a> {
    fn authenticate_all(&mut self, rings: &mut [crate::keying::KeyRing]) {
        for idx in 0..rings.len() {
            let node = NodeId(idx as u32);
            let sid = self.home[idx];
            let server = self.servers.get_mut(&sid).expect("station exists");
            let mut rng = self.subs.stream("auth-nonce", &[idx as u64]);
            let transcript = authenticate(&mut rings[idx], server, 0, &mut rng)
                .expect("fresh deployment: no node is already authenticated");
            match transcript.outcome {
                AuthOutcome::Accepted => {
                    let session = rings[idx].session().expect("accepted auth sets session");
                    self.uplinks[idx].set_session(session.key);
                    self.events.push(Event {
                        t: 0,
                        node,
                        kind: EventKind::AuthAccepted,
                        provenance: Provenance::Organic,
                    });
                }
                outcome => {
                    self.count_auth_rejection(outcome);
                    self.events.push(Event {
                        t: 0,
                        node,
                        kind: EventKind::AuthRejected { outcome },
                        provenance: Provenance::Organic,
                    });
                }
            }
        }
    }

    fn count_auth_rejection(&mut self, outcome: AuthOutcome) {
        match outcome {
            AuthOutcome::NoSharedKey => self.rejections.auth_no_shared_key += 1,
            AuthOutcome::BadTag => self.rejections.auth_bad_tag += 1,
            AuthOutcome::Revoked => self.rejections.auth_revoked += 1,
            AuthOutcome::Accepted => {}
        }
    }

    fn count_open_rejection(&mut self, cause: OpenError) {
        self.stats.rejected += 1;
        match cause {
            OpenError::UnknownSender => self.rejections.open_unknown_sender += 1,
            OpenError::BadTag => self.rejections.open_bad_tag += 1,
            OpenError::Replay => self.rejections.open_replay += 1,
        }
    }

    /// Provenance of a trust-level event on `node` at step `t`.
    fn trust_provenance(&self, node: NodeId, t: u64) -> Provenance {
        for script in &self.cfg.attacks {
            if script.targets_node(node, t) {
                match script.kind {
                    AttackKind::NodeCapture { .. } => return Provenance::NodeCapture,
                    AttackKind::SelectiveForwarding { .. } => {
                        return Provenance::SelectiveForwarding
                    }
                    _ => {}
                }
            }
        }
        Provenance::Organic
    }

    fn step(&mut self, t: u64) {
        let mut polled_by_cell: BTreeMap<StationId, Vec<NodeId>> = BTreeMap::new();
        let mut readings_by_cell: BTreeMap<StationId, BTreeMap<NodeId, f64>> = BTreeMap::new();
        for &sid in self.servers.keys() {
            polled_by_cell.insert(sid, Vec::new());
            readings_by_cell.insert(sid, BTreeMap::new());
        }

        // polling phase, ascending node id
        for idx in 0..self.deployment.node_count() {
            let node = NodeId(idx as u32);
            let sid = self.home[idx];
            if self.servers[&sid].is_revoked(node) {
                continue;
            }
            polled_by_cell.get_mut(&sid).expect("cell").push(node);

            let pos = self.deployment.position(node).expect("deployed");
            let honest = observe(
                &self.cfg.field,
                &self.cfg.noise,
                pos,
                t,
                &mut self.subs.stream(&self.cfg.noise.seed_stream, &[idx as u64, t]),
            );

            let mut value = honest;
            let mut provenance = Provenance::Organic;
            for (si, script) in self.cfg.attacks.iter().enumerate() {
                if let AttackKind::NodeCapture { profile } = &script.kind {
                    if script.targets_node(node, t) {
                        let mut rng =
                            self.subs.stream("attack-capture", &[si as u64, idx as u64, t]);
                        let log = &self.transmitted[idx];
                        value = apply_node_capture(
                            profile,
                            value,
                            t,
                            |past| log.get(&past).copied(),
                            &mut rng,
                        );
                        provenance = Provenance::NodeCapture;
                    }
                }
            }
            self.transmitted[idx].insert(t, value);

            let mut dropped = false;
            for (si, script) in self.cfg.attacks.iter().enumerate() {
                if let AttackKind::SelectiveForwarding { drop_probability } = script.kind {
                    if script.targets_node(node, t) {
                        let mut rng = self.subs.stream("attack-drop", &[si as u64, idx as u64, t]);
                        if drop_decision(drop_probability, &mut rng) {
                            dropped = true;
                        }
                    }
                }
            }
            self.stats.sent += 1;
            if dropped {
                self.stats.dropped += 1;
                self.events.push(Event {
                    t,
                    node,
                    kind: EventKind::Dropped,
                    provenance: Provenance::SelectiveForwarding,
                });
                continue;
            }

            let msg = self.uplinks[idx]
                .seal_next(&value.to_bits().to_be_bytes())
                .expect("authenticated node with 8-byte payload");
            self.tap.record(&msg);
            let receiver = self.receivers.get_mut(&sid).expect("cell");
            match receiver.open(self.servers[&sid].session_keys(), &msg) {
                Ok(pt) => {
                    let bits = u64::from_be_bytes(pt.as_slice().try_into().expect("8-byte payload"));
                    readings_by_cell
                        .get_mut(&sid)
                        .expect("cell")
                        .insert(node, f64::from_bits(bits));
                    self.stats.accepted += 1;
                }
                Err(cause) => {
                    self.count_open_rejection(cause);
                    self.events.push(Event {
                        t,
                        node,
                        kind: EventKind::OpenRejected { cause },
                        provenance,
                    });
                }
            }
        }

        self.inject(t, &mut readings_by_cell);

        // trust pipeline per cell, ascending station id
        let sids: Vec<StationId> = self.engines.keys().copied().collect();
        for sid in sids {
            let polled = polled_by_cell.remove(&sid).expect("cell");
            let readings = readings_by_cell.remove(&sid).expect("cell");
            let engine = self.engines.get_mut(&sid).expect("cell");
            let (verdicts, trust_events) = engine.step(t, &polled, &readings);
            for v in &verdicts {
                self.trace.push(TraceRow {
                    t,
                    node: v.node,
                    x: readings.get(&v.node).copied(),
                    x_hat: v.estimate,
                    e: v.residual,
                    b: v.trust,
                    action: v.action,
                    missing: !readings.contains_key(&v.node),
                });
            }
            for ev in trust_events {
                self.handle_trust_event(sid, t, ev);
            }
        }
    }

    /// Channel- and auth-layer injections for every active script.
    fn inject(
        &mut self,
        t: u64,
        readings_by_cell: &mut BTreeMap<StationId, BTreeMap<NodeId, f64>>,
    ) {
        let first_station = *self.servers.keys().next().expect("at least one station");
        for (si, script) in self.cfg.attacks.iter().enumerate() {
            if !script.active_at(t) {
                continue;
            }
            match &script.kind {
                AttackKind::Replay => {
                    for &target in &script.targets {
                        let mut rng =
                            self.subs.stream("attack-replay", &[si as u64, target.0 as u64, t]);
                        let Some(msg) = self.tap.pick_replay(target, &mut rng) else {
                            continue;
                        };
                        let sid = self.home[msg.sender.0 as usize];
                        self.stats.sent += 1;
                        let receiver = self.receivers.get_mut(&sid).expect("cell");
                        match receiver.open(self.servers[&sid].session_keys(), &msg) {
                            Ok(pt) => {
                                // only reachable if the original never arrived
                                let bits = u64::from_be_bytes(
                                    pt.as_slice().try_into().expect("8-byte payload"),
                                );
                                readings_by_cell
                                    .get_mut(&sid)
                                    .expect("cell")
                                    .insert(msg.sender, f64::from_bits(bits));
                                self.stats.accepted += 1;
                            }
                            Err(cause) => {
                                self.count_open_rejection(cause);
                                self.events.push(Event {
                                    t,
                                    node: msg.sender,
                                    kind: EventKind::OpenRejected { cause },
                                    provenance: Provenance::Replay,
                                });
                            }
                        }
                    }
                }
                AttackKind::SpoofNoKey { claimed_ids } => {
                    for &claimed in claimed_ids {
                        let mut rng =
                            self.subs.stream("attack-spoof", &[si as u64, claimed as u64, t]);
                        let msg = forge_spoofed_message(claimed, t, &mut rng);
                        let sid = if (claimed as usize) < self.home.len() {
                            self.home[claimed as usize]
                        } else {
                            first_station
                        };
                        self.stats.sent += 1;
                        let receiver = self.receivers.get_mut(&sid).expect("cell");
                        match receiver.open(self.servers[&sid].session_keys(), &msg) {
                            Ok(_) => unreachable!("forged tag under a random key cannot verify"),
                            Err(cause) => {
                                self.count_open_rejection(cause);
                                self.events.push(Event {
                                    t,
                                    node: NodeId(claimed),
                                    kind: EventKind::OpenRejected { cause },
                                    provenance: Provenance::SpoofNoKey,
                                });
                            }
                        }
                    }
                }
                AttackKind::Sybil { fake_ids } => {
                    let n = self.home.len() as u32;
                    for j in 0..*fake_ids {
                        let claimed = n + j;
                        let mut rng =
                            self.subs.stream("attack-sybil", &[si as u64, claimed as u64, t]);
                        let server = self.servers.get_mut(&first_station).expect("station");
                        let nonce = server.challenge(&mut rng);
                        let tag = sybil_response(&nonce, claimed, &mut rng);
                        let transcript = server
                            .verify_auth(NodeId(claimed), &nonce, &tag)
                            .expect("fake identities are never already authenticated");
                        self.count_auth_rejection(transcript.outcome);
                        self.events.push(Event {
                            t,
                            node: NodeId(claimed),
                            kind: EventKind::AuthRejected { outcome: transcript.outcome },
                            provenance: Provenance::Sybil,
                        });
                    }
                }
                AttackKind::NodeCapture { .. } | AttackKind::SelectiveForwarding { .. } => {}
            }
        }
    }

    fn handle_trust_event(&mut self, sid: StationId, t: u64, ev: TrustEvent) {
        match ev {
            TrustEvent::Quarantined(node) => {
                let provenance = self.trust_provenance(node, t);
                self.events.push(Event { t, node, kind: EventKind::Quarantined, provenance });
                if let Some(rec) = self.detections.get_mut(&node) {
                    if rec.quarantined_at.is_none() && t >= rec.attack_start {
                        rec.quarantined_at = Some(t);
                    }
                } else {
                    self.false_positives += 1;
                }
            }
            TrustEvent::Readmitted(node) => {
                self.events.push(Event {
                    t,
                    node,
                    kind: EventKind::Readmitted,
                    provenance: Provenance::Organic,
                });
            }
            TrustEvent::Alarmed(node) => {
                let provenance = self.trust_provenance(node, t);
                self.events.push(Event { t, node, kind: EventKind::Alarmed, provenance });
                if self.cfg.keying.revoke_on_alarm {
                    let voter = station_voter(sid);
                    let server = self.servers.get_mut(&sid).expect("cell");
                    match server.cast_revocation_vote(voter, node) {
                        Ok(outcome) => {
                            self.events.push(Event {
                                t,
                                node,
                                kind: EventKind::RevocationVote { voter },
                                provenance,
                            });
                            if outcome == VoteOutcome::Revoked {
                                self.revocations += 1;
                                self.events.push(Event {
                                    t,
                                    node,
                                    kind: EventKind::Revoked,
                                    provenance,
                                });
                            }
                        }
                        Err(_) => {}
                    }
                }
            }
            TrustEvent::AvailabilityAlarm(node) => {
                let provenance = self.trust_provenance(node, t);
                self.availability_alarms += 1;
                self.events.push(Event {
                    t,
                    node,
                    kind: EventKind::AvailabilityAlarm,
                    provenance,
                });
            }
        }
    }

    fn finish(self) -> RunOutput {
        let n = self.deployment.node_count();
        let mut final_trust = Vec::with_capacity(n);
        for idx in 0..n {
            let sid = self.home[idx];
            final_trust.push(self.engines[&sid].trust_of(NodeId(idx as u32)));
        }
        let detections: Vec<DetectionRecord> = self.detections.into_values().collect();
        let true_positives = detections.iter().filter(|d| d.quarantined_at.is_some()).count() as u32;
        let false_negatives = detections.len() as u32 - true_positives;
        let summary = RunSummary {
            detections,
            true_positives,
            false_negatives,
            false_positives: self.false_positives,
            rejections: self.rejections,
            availability_alarms: self.availability_alarms,
            revocations: self.revocations,
            final_trust,
            messages: self.stats,
        };
        RunOutput { trace: self.trace, events: self.events, summary }
    }
}
