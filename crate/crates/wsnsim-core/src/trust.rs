//! The base-station knowledge-based system. For every monitored node it
//! predicts the next reading from trust- and distance-weighted one-step
//! extrapolations of its neighbors' recent histories, compares prediction
//! with the reported value, and walks the node's trust factor up or down.
//! Low trust quarantines the node (its readings stop feeding anyone
//! else's estimate) and, lower still, raises an alarm.
//!
//! Arithmetic order is part of the contract: neighbors are folded in
//! adjacency order (ascending distance, then id) and history samples in
//! ascending time, so independent re-computations can match bit-exactly.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::math;
use crate::topology::{AdjacencyMap, Deployment};
use crate::NodeId;

/// Estimator shape: how much history feeds the per-neighbor line fits and
/// how neighbor weights fall off with distance.
#[derive(Debug, Clone, PartialEq)]
pub struct EstimatorConfig {
    /// History depth in steps; readings older than this never affect estimates.
    pub order: usize,
    /// Distance scale (meters) of the exp(-d/lambda) weight decay.
    pub distance_scale: f64,
    /// Minimum count of usable neighbors below which no estimate is made.
    pub min_neighbors: usize,
    /// Most recent lags used for the per-neighbor line fit; at most `order`.
    pub slope_window: usize,
}

/// Trust dynamics: dead-band penalty with constant recovery, plus the
/// decision thresholds and the availability alarm.
#[derive(Debug, Clone, PartialEq)]
pub struct TrustPolicy {
    /// Penalty slope per unit of residual beyond the tolerance.
    pub penalty_gain: f64,
    /// Residual dead-band; within it trust recovers.
    pub tolerance: f64,
    /// Trust recovered per in-tolerance step.
    pub recovery_rate: f64,
    pub quarantine_threshold: f64,
    pub alarm_threshold: f64,
    /// Re-admission requires trust above threshold + hysteresis.
    pub hysteresis: f64,
    pub init_interior: f64,
    pub init_peripheral: f64,
    /// Sliding window (steps) for the missing-reading rate.
    pub availability_window: usize,
    /// Missing-rate fraction above which the availability alarm fires.
    pub availability_threshold: f64,
}

/// What the decision block concluded for one node at one step.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Action {
    None,
    Alarm,
    Quarantine,
    SkipNoEstimate,
}

impl Action {
    pub fn name(&self) -> &'static str {
        match self {
            Action::None => "none",
            Action::Alarm => "alarm",
            Action::Quarantine => "quarantine",
            Action::SkipNoEstimate => "skip_no_estimate",
        }
    }
}

/// Per-node, per-step output of the pipeline.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Verdict {
    pub node: NodeId,
    pub t: u64,
    pub estimate: Option<f64>,
    pub residual: Option<f64>,
    pub trust: f64,
    pub action: Action,
}

/// State transitions worth reporting upward.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TrustEvent {
    Quarantined(NodeId),
    Readmitted(NodeId),
    Alarmed(NodeId),
    AvailabilityAlarm(NodeId),
}

/// Prediction error of Eq-style residual form: reported minus estimated.
#[inline]
pub fn residual(x: f64, x_hat: f64) -> f64 {
    x - x_hat
}

/// One trust update: outside the dead-band the penalty grows linearly with
/// the excess residual; inside it trust recovers at a constant rate. The
/// result is clamped to [0, 1].
pub fn update_trust(b_prev: f64, e: f64, pol: &TrustPolicy) -> f64 {
    let g = if math::abs(e) > pol.tolerance {
        pol.penalty_gain * (math::abs(e) - pol.tolerance)
    } else {
        -pol.recovery_rate
    };
    (b_prev - g).clamp(0.0, 1.0)
}

/// Ordinary least-squares line through `samples` (ascending time),
/// evaluated at `t`. A single sample extrapolates flat.
pub fn extrapolate(samples: &[(u64, f64)], t: u64) -> f64 {
    debug_assert!(!samples.is_empty());
    if samples.len() == 1 {
        return samples[0].1;
    }
    let n = samples.len() as f64;
    let mut sum_t = 0.0;
    let mut sum_y = 0.0;
    for &(ti, yi) in samples {
        sum_t += ti as f64;
        sum_y += yi;
    }
    let mean_t = sum_t / n;
    let mean_y = sum_y / n;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    for &(ti, yi) in samples {
        let dt = ti as f64 - mean_t;
        sxx += dt * dt;
        sxy += dt * (yi - mean_y);
    }
    let slope = sxy / sxx;
    mean_y + slope * (t as f64 - mean_t)
}

/// One neighbor's contribution to an estimate: its distance from the
/// monitored node, its trust factor, and its present samples (ascending
/// time) within the slope window.
#[derive(Debug, Clone)]
pub struct NeighborSeries {
    pub distance: f64,
    pub trust: f64,
    pub samples: Vec<(u64, f64)>,
}

/// The estimator core: trust-and-distance-weighted average of per-neighbor
/// extrapolations. Returns `None` (no estimate) when fewer than
/// `min_neighbors` neighbors carry weight, or all weights vanish.
pub fn weighted_estimate(
    neighbors: &[NeighborSeries],
    t: u64,
    cfg: &EstimatorConfig,
) -> Option<f64> {
    let mut usable = 0usize;
    let mut sum_w = 0.0;
    let mut sum_wx = 0.0;
    for nb in neighbors {
        if nb.samples.is_empty() {
            continue;
        }
        let w = nb.trust * math::exp(-nb.distance / cfg.distance_scale);
        if w == 0.0 {
            // zero weight must be indistinguishable from absence
            continue;
        }
        usable += 1;
        sum_w += w;
        sum_wx += w * extrapolate(&nb.samples, t);
    }
    if usable < cfg.min_neighbors || sum_w == 0.0 {
        return None;
    }
    Some(sum_wx / sum_w)
}

/// History ring per monitored node: one slot vector per lag, most recent
/// first, each slot holding the neighbor's reading or a missing marker.
#[derive(Debug, Clone)]
struct HistoryRing {
    // entries[0] is time t-1 when step t runs; fixed to `order` depth
    entries: Vec<Vec<Option<f64>>>,
}

/// The knowledge-based system for one base station.
#[derive(Debug, Clone)]
pub struct TrustEngine {
    cfg: EstimatorConfig,
    policy: TrustPolicy,
    adjacency: AdjacencyMap,
    /// Per node: distances to each adjacency-list entry, same order.
    distances: Vec<Vec<f64>>,
    trust: Vec<f64>,
    quarantined: Vec<bool>,
    alarmed: Vec<bool>,
    histories: Vec<HistoryRing>,
    /// Presence flags of the last `availability_window` polls, per node.
    presence: Vec<Vec<bool>>,
    availability_latched: Vec<bool>,
}

impl TrustEngine {
    /// Build the engine for a deployment. `adjacency` may be pre-filtered
    /// (e.g. to one station's cell). Initial trust comes from the
    /// peripheral/interior split.
    pub fn new(
        deployment: &Deployment,
        adjacency: AdjacencyMap,
        cfg: EstimatorConfig,
        policy: TrustPolicy,
    ) -> Self {
        let n = deployment.node_count();
        let mut distances = Vec::with_capacity(n);
        let mut trust = Vec::with_capacity(n);
        for id in deployment.node_ids() {
            let p = deployment.position(id).expect("deployed node");
            distances.push(
                adjacency
                    .of(id)
                    .iter()
                    .map(|&j| math::dist(p, deployment.position(j).expect("deployed node")))
                    .collect(),
            );
            trust.push(if deployment.is_peripheral(id).expect("deployed node") {
                policy.init_peripheral
            } else {
                policy.init_interior
            });
        }
        let histories = (0..n)
            .map(|_| HistoryRing { entries: Vec::new() })
            .collect();
        TrustEngine {
            cfg,
            policy,
            adjacency,
            distances,
            trust,
            quarantined: alloc::vec![false; n],
            alarmed: alloc::vec![false; n],
            histories,
            presence: alloc::vec![Vec::new(); n],
            availability_latched: alloc::vec![false; n],
        }
    }

    pub fn trust_of(&self, node: NodeId) -> f64 {
        self.trust[node.0 as usize]
    }

    pub fn ledger(&self) -> &[f64] {
        &self.trust
    }

    pub fn is_quarantined(&self, node: NodeId) -> bool {
        self.quarantined[node.0 as usize]
    }

    pub fn policy(&self) -> &TrustPolicy {
        &self.policy
    }

    pub fn config(&self) -> &EstimatorConfig {
        &self.cfg
    }

    /// Estimate for `node` at step `t` from the stored histories (strictly
    /// older than `t`) and a trust snapshot.
    fn estimate_from_history(&self, node: NodeId, t: u64, snapshot: &[f64]) -> Option<f64> {
        let idx = node.0 as usize;
        let adj = self.adjacency.of(node);
        if adj.is_empty() {
            return None;
        }
        let ring = &self.histories[idx];
        let window = self.cfg.slope_window.min(self.cfg.order);
        let mut series = Vec::with_capacity(adj.len());
        for (k, &j) in adj.iter().enumerate() {
            let mut samples = Vec::new();
            // ascending time: deepest usable lag first
            for lag in (1..=window).rev() {
                if lag > ring.entries.len() || lag as u64 > t {
                    continue;
                }
                if let Some(v) = ring.entries[lag - 1][k] {
                    samples.push((t - lag as u64, v));
                }
            }
            series.push(NeighborSeries {
                distance: self.distances[idx][k],
                trust: snapshot[j.0 as usize],
                samples,
            });
        }
        weighted_estimate(&series, t, &self.cfg)
    }

    /// Public probe used by tests and tooling: the estimate the engine
    /// would produce right now.
    pub fn estimate(&self, node: NodeId, t: u64) -> Option<f64> {
        self.estimate_from_history(node, t, &self.trust)
    }

    fn decide(&mut self, node: NodeId, b_new: f64, events: &mut Vec<TrustEvent>) -> Action {
        let idx = node.0 as usize;
        let pol = &self.policy;
        let mut action = Action::None;

        if self.quarantined[idx] {
            if b_new >= pol.quarantine_threshold + pol.hysteresis {
                self.quarantined[idx] = false;
                events.push(TrustEvent::Readmitted(node));
            }
        } else if b_new < pol.quarantine_threshold {
            self.quarantined[idx] = true;
            events.push(TrustEvent::Quarantined(node));
            action = Action::Quarantine;
        }

        if self.alarmed[idx] {
            if b_new >= pol.alarm_threshold + pol.hysteresis {
                self.alarmed[idx] = false;
            }
        } else if b_new < pol.alarm_threshold {
            self.alarmed[idx] = true;
            events.push(TrustEvent::Alarmed(node));
            if action == Action::None {
                action = Action::Alarm;
            }
        }
        action
    }

    /// Run one step of the pipeline over the polled nodes (ascending id):
    /// estimate from histories strictly older than `t`, compute the
    /// residual for nodes that reported, update trust, decide; then fold
    /// the time-`t` readings into the histories, masking quarantined
    /// senders. Trust weights use the ledger as it stood before this step.
    pub fn step(
        &mut self,
        t: u64,
        polled: &[NodeId],
        readings: &BTreeMap<NodeId, f64>,
    ) -> (Vec<Verdict>, Vec<TrustEvent>) {
        let snapshot = self.trust.clone();
        let mut verdicts = Vec::with_capacity(polled.len());
        let mut events = Vec::new();

        for &node in polled {
            let idx = node.0 as usize;
            let estimate = self.estimate_from_history(node, t, &snapshot);
            let verdict = match estimate {
                None => Verdict {
                    node,
                    t,
                    estimate: None,
                    residual: None,
                    trust: self.trust[idx],
                    action: Action::SkipNoEstimate,
                },
                Some(x_hat) => match readings.get(&node) {
                    Some(&x) => {
                        let e = residual(x, x_hat);
                        let b_new = update_trust(self.trust[idx], e, &self.policy);
                        self.trust[idx] = b_new;
                        let action = self.decide(node, b_new, &mut events);
                        Verdict { node, t, estimate: Some(x_hat), residual: Some(e), trust: b_new, action }
                    }
                    None => Verdict {
                        node,
                        t,
                        estimate: Some(x_hat),
                        residual: None,
                        trust: self.trust[idx],
                        action: Action::None,
                    },
                },
            };
            verdicts.push(verdict);
        }

        // availability bookkeeping over polled nodes
        for &node in polled {
            let idx = node.0 as usize;
            let present = readings.contains_key(&node);
            let window = self.policy.availability_window;
            let ring = &mut self.presence[idx];
            ring.push(present);
            if ring.len() > window {
                ring.remove(0);
            }
            if window > 0 && ring.len() == window && !self.availability_latched[idx] {
                let missing = ring.iter().filter(|&&p| !p).count();
                if missing as f64 / window as f64 > self.policy.availability_threshold {
                    self.availability_latched[idx] = true;
                    events.push(TrustEvent::AvailabilityAlarm(node));
                }
            }
        }

        // fold readings at t into every history, masking quarantined
        // senders (including ones quarantined this very step)
        for node in 0..self.histories.len() {
            let id = NodeId(node as u32);
            let slots: Vec<Option<f64>> = self
                .adjacency
                .of(id)
                .iter()
                .map(|&j| {
                    if self.quarantined[j.0 as usize] {
                        None
                    } else {
                        readings.get(&j).copied()
                    }
                })
                .collect();
            let ring = &mut self.histories[node];
            ring.entries.insert(0, slots);
            ring.entries.truncate(self.cfg.order);
        }

        (verdicts, events)
    }
}
