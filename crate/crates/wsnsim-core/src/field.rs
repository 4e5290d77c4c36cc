//! Ground-truth physical field and noisy per-sensor observations. A moving
//! Gaussian plume is the default: it gives neighboring sensors correlated
//! values (the precondition for cross-prediction) plus a temporal trend so
//! the estimator's history depth matters.

use alloc::string::String;

use rand::RngCore;

use crate::math;
use crate::rng::standard_normal;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldKind {
    GaussianPlume,
    LinearGradient,
    Constant,
}

/// Parameters of the simulated field. Evaluation is a pure function of
/// (position, time).
#[derive(Debug, Clone, PartialEq)]
pub struct FieldSpec {
    pub kind: FieldKind,
    pub amplitude: f64,
    pub center_start: [f64; 2],
    pub center_velocity: [f64; 2],
    /// Plume standard deviation, meters. Must be positive for the plume kind.
    pub spread: f64,
    pub baseline: f64,
    /// Additive trend per time step.
    pub drift: f64,
}

impl FieldSpec {
    pub fn center_at(&self, t: u64) -> [f64; 2] {
        [
            self.center_start[0] + t as f64 * self.center_velocity[0],
            self.center_start[1] + t as f64 * self.center_velocity[1],
        ]
    }
}

/// Observation noise: i.i.d. Gaussian per (node, step), drawn from the
/// named substream so each node's noise is independent of node count.
#[derive(Debug, Clone, PartialEq)]
pub struct NoiseSpec {
    pub sigma: f64,
    pub seed_stream: String,
}

/// Noiseless field value at position `p`, step `t`.
pub fn field_value(spec: &FieldSpec, p: [f64; 2], t: u64) -> f64 {
    let trend = spec.baseline + spec.drift * t as f64;
    match spec.kind {
        FieldKind::Constant => trend,
        FieldKind::LinearGradient => trend + spec.amplitude * (p[0] + p[1]),
        FieldKind::GaussianPlume => {
            let c = spec.center_at(t);
            let d = math::dist(p, c);
            trend + spec.amplitude * math::exp(-(d * d) / (2.0 * spec.spread * spec.spread))
        }
    }
}

/// One noisy observation: field value plus sigma times a standard normal
/// draw from `rng` (already positioned for this node and step).
pub fn observe(
    spec: &FieldSpec,
    noise: &NoiseSpec,
    p: [f64; 2],
    t: u64,
    rng: &mut impl RngCore,
) -> f64 {
    let v = field_value(spec, p, t);
    if noise.sigma == 0.0 {
        return v;
    }
    v + noise.sigma * standard_normal(rng)
}
