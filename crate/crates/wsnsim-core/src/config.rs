//! Fully resolved scenario parameters. A run is a pure function of this
//! record; file parsing, defaulting and echo live in the companion crate.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::attacks::{AttackKind, AttackScript};
use crate::field::{FieldKind, FieldSpec, NoiseSpec};
use crate::topology::DeploymentSpec;
use crate::trust::{EstimatorConfig, TrustPolicy};

#[derive(Debug, Clone, PartialEq)]
pub struct KeyingConfig {
    /// Node-node partners sampled per node at predistribution.
    pub ring_size: u32,
    /// Distinct voters required to revoke a node.
    pub quorum: usize,
    /// Whether a KBS alarm makes the base station cast a revocation vote.
    pub revoke_on_alarm: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioConfig {
    pub seed: u64,
    /// Number of polled steps; step 0 is reserved for authentication.
    pub horizon: u64,
    pub field: FieldSpec,
    pub noise: NoiseSpec,
    pub deployment: DeploymentSpec,
    pub keying: KeyingConfig,
    pub estimator: EstimatorConfig,
    pub trust: TrustPolicy,
    pub attacks: Vec<AttackScript>,
}

/// Validation failure with the path of the offending field(s).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigError {
    pub field: String,
    pub message: String,
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.field, self.message)
    }
}

#[cfg(feature = "std")]
impl std::error::Error for ConfigError {}

fn err(field: &str, message: impl fmt::Display) -> ConfigError {
    ConfigError { field: String::from(field), message: format!("{message}") }
}

impl ScenarioConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        let d = &self.deployment;
        if d.count == 0 {
            return Err(err("deployment.nodes", "must be at least 1"));
        }
        if !(d.area.width() > 0.0) || !(d.area.height() > 0.0) {
            return Err(err("deployment.area", "must have positive width and height"));
        }
        if !(d.adjacency_radius > 0.0) {
            return Err(err("deployment.adjacency_radius", "must be positive"));
        }
        if d.max_neighbors == 0 {
            return Err(err("deployment.max_neighbors", "must be at least 1"));
        }
        if d.peripheral_margin < 0.0 {
            return Err(err("deployment.peripheral_margin", "must be non-negative"));
        }
        if d.stations.is_empty() {
            return Err(err("deployment.stations", "at least one base station required"));
        }
        for (i, s) in d.stations.iter().enumerate() {
            if !(s.radius > 0.0) {
                return Err(err(&format!("deployment.stations[{i}].radius"), "must be positive"));
            }
        }

        if self.field.kind == FieldKind::GaussianPlume && !(self.field.spread > 0.0) {
            return Err(err("field.spread", "must be positive for the gaussian_plume kind"));
        }
        if self.noise.sigma < 0.0 {
            return Err(err("noise.sigma", "must be non-negative"));
        }

        let k = &self.keying;
        if k.ring_size == 0 || k.ring_size >= d.count {
            return Err(err(
                "keying.ring_size",
                format!("must satisfy 1 <= ring_size < deployment.nodes ({})", d.count),
            ));
        }
        if k.quorum == 0 {
            return Err(err("keying.quorum", "must be at least 1"));
        }

        let e = &self.estimator;
        if e.order == 0 {
            return Err(err("estimator.order", "must be at least 1"));
        }
        if e.min_neighbors == 0 {
            return Err(err("estimator.min_neighbors", "must be at least 1"));
        }
        if !(e.distance_scale > 0.0) {
            return Err(err("estimator.distance_scale", "must be positive"));
        }
        if e.slope_window == 0 || e.slope_window > e.order {
            return Err(err(
                "estimator.slope_window",
                format!("must lie in 1..=order ({})", e.order),
            ));
        }

        let p = &self.trust;
        if !(p.penalty_gain > 0.0) {
            return Err(err("trust.penalty_gain", "must be positive"));
        }
        if !(p.tolerance > 0.0) {
            return Err(err("trust.tolerance", "must be positive"));
        }
        if p.recovery_rate < 0.0 {
            return Err(err("trust.recovery_rate", "must be non-negative"));
        }
        if !(0.0 < p.quarantine_threshold && p.quarantine_threshold < 1.0) {
            return Err(err("trust.quarantine_threshold", "must lie in (0, 1)"));
        }
        if !(0.0 < p.alarm_threshold && p.alarm_threshold < 1.0) {
            return Err(err("trust.alarm_threshold", "must lie in (0, 1)"));
        }
        if p.alarm_threshold > p.quarantine_threshold {
            return Err(err(
                "trust.alarm_threshold",
                "must not exceed trust.quarantine_threshold",
            ));
        }
        if p.hysteresis < 0.0 {
            return Err(err("trust.hysteresis", "must be non-negative"));
        }
        if !(0.0 < p.init_interior && p.init_interior <= 1.0) {
            return Err(err("trust.init_interior", "must lie in (0, 1]"));
        }
        if !(0.0 < p.init_peripheral && p.init_peripheral <= 1.0) {
            return Err(err("trust.init_peripheral", "must lie in (0, 1]"));
        }
        if p.init_peripheral >= p.init_interior {
            return Err(err(
                "trust.init_peripheral",
                "must be strictly below trust.init_interior",
            ));
        }
        if p.availability_window == 0 {
            return Err(err("trust.availability_window", "must be at least 1"));
        }
        if !(0.0..=1.0).contains(&p.availability_threshold) {
            return Err(err("trust.availability_threshold", "must lie in [0, 1]"));
        }

        for (i, script) in self.attacks.iter().enumerate() {
            let path = format!("attacks[{i}]");
            script.validate().map_err(|e| err(&path, e))?;
            let needs_deployed_targets = !matches!(script.kind, AttackKind::SpoofNoKey { .. });
            if needs_deployed_targets {
                if script.targets.is_empty()
                    && !matches!(script.kind, AttackKind::Sybil { .. })
                {
                    return Err(err(&format!("{path}.targets"), "must name at least one node"));
                }
                for target in &script.targets {
                    if target.0 >= d.count {
                        return Err(err(
                            &format!("{path}.targets"),
                            format!("node {target} is not deployed (nodes: {})", d.count),
                        ));
                    }
                }
            }
        }
        Ok(())
    }
}
