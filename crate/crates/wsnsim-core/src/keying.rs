//! Pairwise-key predistribution, one-time post-deployment authentication
//! with session-key derivation, and quorum-based revocation.
//!
//! Each node's ring holds pairwise keys with a random sample of peers plus
//! a mandatory key with every base station (nodes only ever talk to
//! stations on the data plane, so station keys keep the pipe alive even
//! when two nodes share nothing). Capturing one node exposes only keys
//! naming that node.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;
use core::fmt;

use rand::{Rng, RngCore};

use crate::crypto::{cmac, tags_equal, Key, KDF_SESSION};
use crate::rng::DetRng;
use crate::{NodeId, StationId};

/// A peer a node can share a pairwise key with.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum PeerId {
    Node(NodeId),
    Station(StationId),
}

/// One node's key material.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KeyRing {
    pub owner: NodeId,
    pairwise: BTreeMap<PeerId, Key>,
    session: Option<SessionInfo>,
}

/// Session established by a successful authentication.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SessionInfo {
    pub key: Key,
    pub station: StationId,
    pub established_at: u64,
}

impl KeyRing {
    pub fn new(owner: NodeId) -> Self {
        KeyRing { owner, pairwise: BTreeMap::new(), session: None }
    }

    /// The pairwise key shared with `peer`, if sampled at predistribution.
    /// Never fabricates keys.
    pub fn shared_key(&self, peer: PeerId) -> Option<&Key> {
        self.pairwise.get(&peer)
    }

    pub fn session(&self) -> Option<&SessionInfo> {
        self.session.as_ref()
    }

    pub fn peer_count(&self) -> usize {
        self.pairwise.len()
    }

    pub fn peers(&self) -> impl Iterator<Item = (&PeerId, &Key)> {
        self.pairwise.iter()
    }

    fn insert(&mut self, peer: PeerId, key: Key) {
        self.pairwise.insert(peer, key);
    }

    /// Challenge response: CMAC(pairwise station key, nonce || owner id).
    /// `None` when the ring holds no key for that station (misdeployment).
    pub fn respond(&self, station: StationId, nonce: &[u8; 16]) -> Option<[u8; 16]> {
        let key = self.pairwise.get(&PeerId::Station(station))?;
        Some(auth_tag(key, nonce, self.owner))
    }
}

/// The tag a node proves possession of the station key with.
pub fn auth_tag(key: &Key, nonce: &[u8; 16], node: NodeId) -> [u8; 16] {
    let mut msg = [0u8; 20];
    msg[..16].copy_from_slice(nonce);
    msg[16..].copy_from_slice(&node.0.to_be_bytes());
    cmac(key, &msg)
}

/// Session key derivation: CMAC(pairwise key, nonce || 0x01).
pub fn derive_session_key(key: &Key, nonce: &[u8; 16]) -> Key {
    let mut msg = [0u8; 17];
    msg[..16].copy_from_slice(nonce);
    msg[16] = KDF_SESSION;
    cmac(key, &msg)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ParameterError {
    pub nodes: u32,
    pub ring_size: u32,
}

impl fmt::Display for ParameterError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "ring size {} must satisfy 1 <= ring_size < nodes ({})",
            self.ring_size, self.nodes
        )
    }
}

#[cfg(feature = "std")]
impl std::error::Error for ParameterError {}

/// Station-side copies of the node<->station pairwise keys.
pub type StationKeyDirectory = BTreeMap<StationId, BTreeMap<NodeId, Key>>;

/// Random-pairwise predistribution: every node samples `ring_size`
/// partners without replacement; a pair is linked when either side sampled
/// the other, and the pair's key lands in exactly the two endpoint rings.
/// Every node also receives a unique key with every station.
pub fn predistribute(
    nodes: u32,
    ring_size: u32,
    stations: &[StationId],
    rng: &mut DetRng,
) -> Result<(Vec<KeyRing>, StationKeyDirectory), ParameterError> {
    if ring_size == 0 || ring_size >= nodes {
        return Err(ParameterError { nodes, ring_size });
    }
    let n = nodes as usize;
    let m = ring_size as usize;

    // sample partner sets first so key draws come out in a fixed order
    let mut pairs: BTreeSet<(u32, u32)> = BTreeSet::new();
    for a in 0..nodes {
        let mut candidates: Vec<u32> = (0..nodes).filter(|&b| b != a).collect();
        for k in 0..m {
            let pick = rng.gen_range(k..candidates.len());
            candidates.swap(k, pick);
            let b = candidates[k];
            pairs.insert((a.min(b), a.max(b)));
        }
    }

    let mut rings: Vec<KeyRing> = (0..nodes).map(|i| KeyRing::new(NodeId(i))).collect();
    for &(a, b) in &pairs {
        let mut key = [0u8; 16];
        rng.fill_bytes(&mut key);
        rings[a as usize].insert(PeerId::Node(NodeId(b)), key);
        rings[b as usize].insert(PeerId::Node(NodeId(a)), key);
    }

    let mut directory: StationKeyDirectory = BTreeMap::new();
    for &sid in stations {
        let mut table = BTreeMap::new();
        for i in 0..n {
            let mut key = [0u8; 16];
            rng.fill_bytes(&mut key);
            rings[i].insert(PeerId::Station(sid), key);
            table.insert(NodeId(i as u32), key);
        }
        directory.insert(sid, table);
    }

    Ok((rings, directory))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AuthOutcome {
    Accepted,
    BadTag,
    NoSharedKey,
    Revoked,
}

/// Record of one authentication exchange.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AuthTranscript {
    pub node: NodeId,
    pub nonce: [u8; 16],
    pub tag: [u8; 16],
    pub outcome: AuthOutcome,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AuthError {
    /// Authentication is one-time; repeats are their own error, not BadTag.
    AlreadyAuthenticated(NodeId),
}

impl fmt::Display for AuthError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AuthError::AlreadyAuthenticated(n) => write!(f, "node {n} already authenticated"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for AuthError {}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VoteError {
    SelfVote(NodeId),
    VoterRevoked(NodeId),
}

impl fmt::Display for VoteError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VoteError::SelfVote(n) => write!(f, "node {n} cannot vote against itself"),
            VoteError::VoterRevoked(n) => write!(f, "voter {n} is revoked"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for VoteError {}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VoteOutcome {
    Recorded,
    Revoked,
    AlreadyRevoked,
}

/// Quorum-based revocation bookkeeping. Votes are idempotent per
/// (voter, accused) pair; reaching the quorum moves the accused into the
/// revoked set, which only ever grows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RevocationState {
    votes: BTreeMap<NodeId, BTreeSet<NodeId>>,
    pub quorum: usize,
    revoked: BTreeSet<NodeId>,
}

impl RevocationState {
    pub fn new(quorum: usize) -> Self {
        RevocationState { votes: BTreeMap::new(), quorum, revoked: BTreeSet::new() }
    }

    pub fn is_revoked(&self, node: NodeId) -> bool {
        self.revoked.contains(&node)
    }

    pub fn revoked(&self) -> impl Iterator<Item = NodeId> + '_ {
        self.revoked.iter().copied()
    }

    pub fn votes_against(&self, accused: NodeId) -> usize {
        self.votes.get(&accused).map_or(0, |s| s.len())
    }

    pub fn cast_vote(&mut self, voter: NodeId, accused: NodeId) -> Result<VoteOutcome, VoteError> {
        if voter == accused {
            return Err(VoteError::SelfVote(voter));
        }
        if self.revoked.contains(&voter) {
            return Err(VoteError::VoterRevoked(voter));
        }
        if self.revoked.contains(&accused) {
            return Ok(VoteOutcome::AlreadyRevoked);
        }
        let set = self.votes.entry(accused).or_default();
        set.insert(voter);
        if set.len() >= self.quorum {
            self.revoked.insert(accused);
            self.votes.remove(&accused);
            // a revoked node's votes against others are discarded
            for set in self.votes.values_mut() {
                set.remove(&accused);
            }
            return Ok(VoteOutcome::Revoked);
        }
        Ok(VoteOutcome::Recorded)
    }
}

/// Synthetic voter identity used when a base station itself casts a
/// revocation vote (votes are trusted simulator events; node ids are dense
/// from zero, so the top of the id space is free).
pub fn station_voter(station: StationId) -> NodeId {
    NodeId(u32::MAX - station.0)
}

/// Station-side authority: key server, live sessions, one-time-auth latch
/// and revocation state for one base station.
#[derive(Debug, Clone)]
pub struct KeyServer {
    pub station: StationId,
    node_keys: BTreeMap<NodeId, Key>,
    sessions: BTreeMap<NodeId, Key>,
    authenticated: BTreeSet<NodeId>,
    pub revocation: RevocationState,
}

impl KeyServer {
    pub fn new(station: StationId, node_keys: BTreeMap<NodeId, Key>, quorum: usize) -> Self {
        KeyServer {
            station,
            node_keys,
            sessions: BTreeMap::new(),
            authenticated: BTreeSet::new(),
            revocation: RevocationState::new(quorum),
        }
    }

    /// Fresh 16-byte challenge nonce.
    pub fn challenge(&self, rng: &mut DetRng) -> [u8; 16] {
        let mut nonce = [0u8; 16];
        rng.fill_bytes(&mut nonce);
        nonce
    }

    /// Verify a claimed identity's response tag. On success the session key
    /// is derived and stored. Repeat attempts by an authenticated node are
    /// an `AlreadyAuthenticated` error rather than a transcript outcome.
    pub fn verify_auth(
        &mut self,
        claimed: NodeId,
        nonce: &[u8; 16],
        tag: &[u8; 16],
    ) -> Result<AuthTranscript, AuthError> {
        let mk = |outcome| AuthTranscript { node: claimed, nonce: *nonce, tag: *tag, outcome };
        if self.revocation.is_revoked(claimed) {
            return Ok(mk(AuthOutcome::Revoked));
        }
        if self.authenticated.contains(&claimed) {
            return Err(AuthError::AlreadyAuthenticated(claimed));
        }
        let key = match self.node_keys.get(&claimed) {
            Some(k) => *k,
            None => return Ok(mk(AuthOutcome::NoSharedKey)),
        };
        let expected = auth_tag(&key, nonce, claimed);
        if !tags_equal(&expected, tag) {
            return Ok(mk(AuthOutcome::BadTag));
        }
        self.sessions.insert(claimed, derive_session_key(&key, nonce));
        self.authenticated.insert(claimed);
        Ok(mk(AuthOutcome::Accepted))
    }

    pub fn session_key(&self, node: NodeId) -> Option<&Key> {
        self.sessions.get(&node)
    }

    /// Live session table, consumed by the receive path.
    pub fn session_keys(&self) -> &BTreeMap<NodeId, Key> {
        &self.sessions
    }

    pub fn is_revoked(&self, node: NodeId) -> bool {
        self.revocation.is_revoked(node)
    }

    /// Record a revocation vote; reaching the quorum destroys the accused
    /// node's session key.
    pub fn cast_revocation_vote(
        &mut self,
        voter: NodeId,
        accused: NodeId,
    ) -> Result<VoteOutcome, VoteError> {
        let outcome = self.revocation.cast_vote(voter, accused)?;
        if outcome == VoteOutcome::Revoked {
            self.sessions.remove(&accused);
        }
        Ok(outcome)
    }
}

/// Honest-path authentication: challenge, respond, verify, and on success
/// install the session on both sides.
pub fn authenticate(
    ring: &mut KeyRing,
    server: &mut KeyServer,
    t: u64,
    rng: &mut DetRng,
) -> Result<AuthTranscript, AuthError> {
    let nonce = server.challenge(rng);
    let tag = match ring.respond(server.station, &nonce) {
        Some(tag) => tag,
        None => {
            // the node holds no key for this station; the station still
            // records the failed attempt
            return Ok(AuthTranscript {
                node: ring.owner,
                nonce,
                tag: [0u8; 16],
                outcome: AuthOutcome::NoSharedKey,
            });
        }
    };
    let transcript = server.verify_auth(ring.owner, &nonce, &tag)?;
    if transcript.outcome == AuthOutcome::Accepted {
        let key = *server.session_key(ring.owner).expect("session just created");
        ring.session = Some(SessionInfo { key, station: server.station, established_at: t });
    }
    Ok(transcript)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::Substreams;
    use alloc::vec;

    fn keyed_rng(label: &str) -> DetRng {
        Substreams::new(99).stream(label, &[])
    }

    fn one_station() -> Vec<StationId> {
        vec![StationId(0)]
    }

    #[test]
    fn forced_pairing_with_two_nodes() {
        let (rings, _) = predistribute(2, 1, &one_station(), &mut keyed_rng("keys")).unwrap();
        let k01 = rings[0].shared_key(PeerId::Node(NodeId(1))).unwrap();
        let k10 = rings[1].shared_key(PeerId::Node(NodeId(0))).unwrap();
        assert_eq!(k01, k10);
        // exactly one node-node key per ring
        assert_eq!(rings[0].peers().filter(|(p, _)| matches!(p, PeerId::Node(_))).count(), 1);
    }

    #[test]
    fn deterministic_given_seed() {
        let a = predistribute(20, 5, &one_station(), &mut keyed_rng("keys")).unwrap();
        let b = predistribute(20, 5, &one_station(), &mut keyed_rng("keys")).unwrap();
        assert_eq!(a.0, b.0);
        assert_eq!(a.1, b.1);
    }

    #[test]
    fn ring_size_bounds_enforced() {
        assert!(predistribute(5, 0, &one_station(), &mut keyed_rng("keys")).is_err());
        assert!(predistribute(5, 5, &one_station(), &mut keyed_rng("keys")).is_err());
        assert!(predistribute(5, 4, &one_station(), &mut keyed_rng("keys")).is_ok());
    }

    /// Two counting routes must agree: per-ring enumeration vs all-pairs
    /// shared_key scan.
    #[test]
    fn pair_count_routes_agree() {
        let (rings, _) = predistribute(50, 8, &one_station(), &mut keyed_rng("keys")).unwrap();
        let mut via_rings = 0usize;
        for ring in &rings {
            via_rings += ring.peers().filter(|(p, _)| matches!(p, PeerId::Node(_))).count();
        }
        let via_rings = via_rings / 2; // each pair held by both endpoints

        let mut via_scan = 0usize;
        for a in 0..50u32 {
            for b in (a + 1)..50 {
                let ka = rings[a as usize].shared_key(PeerId::Node(NodeId(b)));
                let kb = rings[b as usize].shared_key(PeerId::Node(NodeId(a)));
                assert_eq!(ka, kb, "asymmetric key for pair ({a},{b})");
                if ka.is_some() {
                    via_scan += 1;
                }
            }
        }
        assert_eq!(via_rings, via_scan);
        // sampled links: between N*m/2 (all mutual) and N*m (no overlap)
        assert!((200..=400).contains(&via_scan), "{via_scan}");
    }

    #[test]
    fn station_keys_always_present() {
        let stations = vec![StationId(0), StationId(7)];
        let (rings, dir) = predistribute(10, 3, &stations, &mut keyed_rng("keys")).unwrap();
        for ring in &rings {
            for &sid in &stations {
                let k = ring.shared_key(PeerId::Station(sid)).unwrap();
                assert_eq!(dir[&sid][&ring.owner], *k);
            }
        }
    }

    #[test]
    fn unsampled_pairs_share_nothing() {
        let (rings, _) = predistribute(30, 2, &one_station(), &mut keyed_rng("keys")).unwrap();
        let mut absent = 0;
        for a in 0..30u32 {
            for b in (a + 1)..30 {
                if rings[a as usize].shared_key(PeerId::Node(NodeId(b))).is_none() {
                    absent += 1;
                }
            }
        }
        assert!(absent > 0, "with m=2 and N=30 most pairs share no key");
    }

    /// Deleting one ring leaks no other pair's key: every key in the
    /// remaining rings either names a different pair or is a station key.
    #[test]
    fn capture_containment() {
        let (rings, _) = predistribute(20, 4, &one_station(), &mut keyed_rng("keys")).unwrap();
        let captured = NodeId(7);
        let captured_keys: BTreeSet<Key> = rings[7]
            .peers()
            .map(|(_, k)| *k)
            .collect();
        for ring in rings.iter().filter(|r| r.owner != captured) {
            for (peer, key) in ring.peers() {
                if captured_keys.contains(key) {
                    // the only rings allowed to hold these keys are the
                    // captured node's direct partners, for the shared pair
                    assert_eq!(*peer, PeerId::Node(captured));
                }
            }
        }
    }

    fn auth_setup() -> (Vec<KeyRing>, KeyServer) {
        let (rings, mut dir) = predistribute(4, 2, &one_station(), &mut keyed_rng("keys")).unwrap();
        let server = KeyServer::new(StationId(0), dir.remove(&StationId(0)).unwrap(), 3);
        (rings, server)
    }

    #[test]
    fn honest_authentication_installs_session_on_both_sides() {
        let (mut rings, mut server) = auth_setup();
        let tr = authenticate(&mut rings[0], &mut server, 0, &mut keyed_rng("auth")).unwrap();
        assert_eq!(tr.outcome, AuthOutcome::Accepted);
        let node_side = rings[0].session().unwrap();
        assert_eq!(node_side.key, *server.session_key(NodeId(0)).unwrap());
        assert_eq!(node_side.station, StationId(0));
    }

    #[test]
    fn wrong_key_yields_bad_tag() {
        let (_, mut server) = auth_setup();
        let mut rng = keyed_rng("adv");
        let nonce = server.challenge(&mut rng);
        let mut fake_key = [0u8; 16];
        rng.fill_bytes(&mut fake_key);
        let tag = auth_tag(&fake_key, &nonce, NodeId(1));
        let tr = server.verify_auth(NodeId(1), &nonce, &tag).unwrap();
        assert_eq!(tr.outcome, AuthOutcome::BadTag);
        assert!(server.session_key(NodeId(1)).is_none());
    }

    /// The response tag must equal an independent CMAC computation over
    /// nonce || id bytes.
    #[test]
    fn tag_matches_reference_cmac() {
        let (rings, server) = auth_setup();
        let nonce = [0xabu8; 16];
        let tag = rings[2].respond(StationId(0), &nonce).unwrap();
        let key = rings[2].shared_key(PeerId::Station(StationId(0))).unwrap();
        let mut msg = [0u8; 20];
        msg[..16].copy_from_slice(&nonce);
        msg[16..].copy_from_slice(&2u32.to_be_bytes());
        assert_eq!(tag, cmac(key, &msg));
        let _ = server;
    }

    /// A captured node reusing its own key under a different claimed id
    /// fails: the id is bound into both the key lookup and the MAC.
    #[test]
    fn key_to_id_binding_defeats_identity_reuse() {
        let (rings, mut server) = auth_setup();
        let mut rng = keyed_rng("sybil");
        let nonce = server.challenge(&mut rng);
        let own_key = rings[3].shared_key(PeerId::Station(StationId(0))).unwrap();
        // claim node 1's identity with node 3's key
        let tag = auth_tag(own_key, &nonce, NodeId(1));
        let tr = server.verify_auth(NodeId(1), &nonce, &tag).unwrap();
        assert_eq!(tr.outcome, AuthOutcome::BadTag);
        // claim an unallocated identity: no shared key at all
        let tag = auth_tag(own_key, &nonce, NodeId(77));
        let tr = server.verify_auth(NodeId(77), &nonce, &tag).unwrap();
        assert_eq!(tr.outcome, AuthOutcome::NoSharedKey);
    }

    #[test]
    fn authentication_is_one_time() {
        let (mut rings, mut server) = auth_setup();
        let mut rng = keyed_rng("auth");
        authenticate(&mut rings[0], &mut server, 0, &mut rng).unwrap();
        let err = authenticate(&mut rings[0], &mut server, 1, &mut rng).unwrap_err();
        assert_eq!(err, AuthError::AlreadyAuthenticated(NodeId(0)));
    }

    #[test]
    fn revoked_node_cannot_authenticate() {
        let (mut rings, mut server) = auth_setup();
        server.revocation = RevocationState::new(1);
        server.cast_revocation_vote(NodeId(1), NodeId(0)).unwrap();
        let tr = authenticate(&mut rings[0], &mut server, 0, &mut keyed_rng("auth")).unwrap();
        assert_eq!(tr.outcome, AuthOutcome::Revoked);
    }

    #[test]
    fn missing_station_key_reports_no_shared_key() {
        let (_, mut server) = auth_setup();
        let mut orphan = KeyRing::new(NodeId(3));
        orphan.insert(PeerId::Node(NodeId(0)), [1u8; 16]);
        let tr = authenticate(&mut orphan, &mut server, 0, &mut keyed_rng("auth")).unwrap();
        assert_eq!(tr.outcome, AuthOutcome::NoSharedKey);
    }

    #[test]
    fn quorum_votes() {
        let mut state = RevocationState::new(3);
        assert_eq!(state.cast_vote(NodeId(1), NodeId(9)).unwrap(), VoteOutcome::Recorded);
        assert_eq!(state.cast_vote(NodeId(2), NodeId(9)).unwrap(), VoteOutcome::Recorded);
        assert!(!state.is_revoked(NodeId(9)));
        assert_eq!(state.cast_vote(NodeId(3), NodeId(9)).unwrap(), VoteOutcome::Revoked);
        assert!(state.is_revoked(NodeId(9)));
    }

    /// The same voter voting twice counts once.
    #[test]
    fn duplicate_votes_count_once() {
        let mut state = RevocationState::new(2);
        state.cast_vote(NodeId(1), NodeId(9)).unwrap();
        assert_eq!(state.cast_vote(NodeId(1), NodeId(9)).unwrap(), VoteOutcome::Recorded);
        assert_eq!(state.votes_against(NodeId(9)), 1);
        assert!(!state.is_revoked(NodeId(9)));
    }

    #[test]
    fn self_votes_and_revoked_voters_rejected() {
        let mut state = RevocationState::new(1);
        assert_eq!(state.cast_vote(NodeId(4), NodeId(4)), Err(VoteError::SelfVote(NodeId(4))));
        state.cast_vote(NodeId(1), NodeId(4)).unwrap();
        assert_eq!(
            state.cast_vote(NodeId(4), NodeId(2)),
            Err(VoteError::VoterRevoked(NodeId(4)))
        );
    }

    /// Revoking a node discards its pending votes against others.
    #[test]
    fn revoked_nodes_pending_votes_discarded() {
        let mut state = RevocationState::new(2);
        state.cast_vote(NodeId(5), NodeId(7)).unwrap();
        assert_eq!(state.votes_against(NodeId(7)), 1);
        state.cast_vote(NodeId(1), NodeId(5)).unwrap();
        state.cast_vote(NodeId(2), NodeId(5)).unwrap();
        assert!(state.is_revoked(NodeId(5)));
        assert_eq!(state.votes_against(NodeId(7)), 0);
    }

    #[test]
    fn revocation_destroys_session() {
        let (mut rings, mut server) = auth_setup();
        server.revocation = RevocationState::new(2);
        authenticate(&mut rings[0], &mut server, 0, &mut keyed_rng("auth")).unwrap();
        assert!(server.session_key(NodeId(0)).is_some());
        server.cast_revocation_vote(NodeId(1), NodeId(0)).unwrap();
        server.cast_revocation_vote(NodeId(2), NodeId(0)).unwrap();
        assert!(server.session_key(NodeId(0)).is_none());
        assert!(server.is_revoked(NodeId(0)));
    }

    #[test]
    fn station_voter_ids_stay_clear_of_node_ids() {
        assert_eq!(station_voter(StationId(0)), NodeId(u32::MAX));
        assert_ne!(station_voter(StationId(0)), station_voter(StationId(1)));
    }
}
