//! Scenario config file schema (TOML), defaulting rules, validation and
//! the fully-resolved echo. Unknown keys are load errors; every default is
//! an explicit constant here, so a written-back config re-loads to the
//! same resolved scenario.

use std::fs;
use std::io;
use std::path::Path;

use serde::{Deserialize, Serialize};

use wsnsim_core::attacks::{AttackKind, AttackScript, CaptureProfile};
use wsnsim_core::config::{ConfigError, KeyingConfig, ScenarioConfig};
use wsnsim_core::field::{FieldKind, FieldSpec, NoiseSpec};
use wsnsim_core::topology::{DeploymentSpec, Placement, Rect, StationSite};
use wsnsim_core::trust::{EstimatorConfig, TrustPolicy};
use wsnsim_core::{NodeId, StationId};

pub const DEFAULT_SEED: u64 = 1;
pub const DEFAULT_HORIZON: u64 = 200;
pub const DEFAULT_AREA: [f64; 2] = [100.0, 100.0];
pub const DEFAULT_ADJACENCY_RADIUS: f64 = 25.0;
pub const DEFAULT_MAX_NEIGHBORS: usize = 6;
pub const DEFAULT_RING_SIZE: u32 = 8;
pub const DEFAULT_QUORUM: usize = 3;
pub const DEFAULT_SIGMA: f64 = 0.8;
pub const DEFAULT_ORDER: usize = 4;
pub const DEFAULT_MIN_NEIGHBORS: usize = 2;
pub const DEFAULT_RECOVERY_RATE: f64 = 0.01;
pub const DEFAULT_QUARANTINE_THRESHOLD: f64 = 0.5;
pub const DEFAULT_ALARM_THRESHOLD: f64 = 0.3;
pub const DEFAULT_HYSTERESIS: f64 = 0.1;
pub const DEFAULT_INIT_INTERIOR: f64 = 1.0;
pub const DEFAULT_INIT_PERIPHERAL: f64 = 0.8;
pub const DEFAULT_AVAILABILITY_WINDOW: usize = 20;
pub const DEFAULT_AVAILABILITY_THRESHOLD: f64 = 0.5;
/// Residual tolerance defaults to three noise sigmas (or 1.0 at sigma 0).
pub fn default_tolerance(sigma: f64) -> f64 {
    if sigma > 0.0 {
        3.0 * sigma
    } else {
        1.0
    }
}
/// Penalty gain defaults to 0.05 per tolerance unit of excess residual.
pub fn default_penalty_gain(tolerance: f64) -> f64 {
    0.05 / tolerance
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawConfig {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub horizon: Option<u64>,
    #[serde(default, skip_serializing_if = "is_default_field")]
    pub field: RawField,
    #[serde(default, skip_serializing_if = "is_default_noise")]
    pub noise: RawNoise,
    pub deployment: RawDeployment,
    #[serde(default, skip_serializing_if = "is_default_keying")]
    pub keying: RawKeying,
    #[serde(default, skip_serializing_if = "is_default_estimator")]
    pub estimator: RawEstimator,
    #[serde(default, skip_serializing_if = "is_default_trust")]
    pub trust: RawTrust,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub attacks: Vec<RawAttack>,
}

fn is_default_field(f: &RawField) -> bool {
    *f == RawField::default()
}
fn is_default_noise(f: &RawNoise) -> bool {
    *f == RawNoise::default()
}
fn is_default_keying(f: &RawKeying) -> bool {
    *f == RawKeying::default()
}
fn is_default_estimator(f: &RawEstimator) -> bool {
    *f == RawEstimator::default()
}
fn is_default_trust(f: &RawTrust) -> bool {
    *f == RawTrust::default()
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawField {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kind: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub amplitude: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub center_start: Option<[f64; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub center_velocity: Option<[f64; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spread: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub baseline: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub drift: Option<f64>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawNoise {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sigma: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed_stream: Option<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawDeployment {
    pub nodes: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub placement: Option<String>,
    /// Area width and height in meters; the origin defaults to (0, 0).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub area: Option<[f64; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub origin: Option<[f64; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub adjacency_radius: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_neighbors: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub peripheral_margin: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stations: Option<Vec<RawStation>>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawStation {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub id: Option<u32>,
    pub position: [f64; 2],
    pub radius: f64,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawKeying {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ring_size: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub quorum: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub revoke_on_alarm: Option<bool>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawEstimator {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub order: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub distance_scale: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub min_neighbors: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub slope_window: Option<usize>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawTrust {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub penalty_gain: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub recovery_rate: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub quarantine_threshold: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alarm_threshold: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hysteresis: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub init_interior: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub init_peripheral: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub availability_window: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub availability_threshold: Option<f64>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawAttack {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub targets: Vec<u32>,
    pub start: u64,
    pub end: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub profile: Option<RawProfile>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub drop_probability: Option<f64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub claimed_ids: Vec<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fake_ids: Option<u32>,
}

/// Capture profile, exactly one variant set.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawProfile {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub constant: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub offset: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub random: Option<[f64; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stale_lag: Option<u64>,
}

#[derive(Debug)]
pub enum LoadError {
    Io(io::Error),
    /// TOML syntax or unknown-key error; the message carries line info.
    Parse(String),
    Invalid(ConfigError),
}

impl std::fmt::Display for LoadError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            LoadError::Io(e) => write!(f, "io: {e}"),
            LoadError::Parse(e) => write!(f, "parse: {e}"),
            LoadError::Invalid(e) => write!(f, "invalid config: {e}"),
        }
    }
}

impl std::error::Error for LoadError {}

impl From<ConfigError> for LoadError {
    fn from(e: ConfigError) -> Self {
        LoadError::Invalid(e)
    }
}

fn cfg_err(field: &str, message: impl std::fmt::Display) -> ConfigError {
    ConfigError { field: field.to_string(), message: message.to_string() }
}

/// Parse a TOML document into the raw schema.
pub fn parse_raw(text: &str) -> Result<RawConfig, LoadError> {
    toml::from_str(text).map_err(|e| LoadError::Parse(e.to_string()))
}

/// Apply the documented defaults and validate.
pub fn resolve(raw: &RawConfig) -> Result<ScenarioConfig, ConfigError> {
    let d = &raw.deployment;
    let nodes = d.nodes;
    let area_wh = d.area.unwrap_or(DEFAULT_AREA);
    let origin = d.origin.unwrap_or([0.0, 0.0]);
    let area = Rect { min: origin, max: [origin[0] + area_wh[0], origin[1] + area_wh[1]] };
    let adjacency_radius = d.adjacency_radius.unwrap_or(DEFAULT_ADJACENCY_RADIUS);
    let placement = match d.placement.as_deref() {
        None | Some("grid") => Placement::Grid,
        Some("uniform_random") => Placement::UniformRandom,
        Some(other) => {
            return Err(cfg_err(
                "deployment.placement",
                format!("unknown placement '{other}' (expected grid or uniform_random)"),
            ))
        }
    };
    let stations = match &d.stations {
        Some(list) => list
            .iter()
            .enumerate()
            .map(|(i, s)| StationSite {
                id: StationId(s.id.unwrap_or(i as u32)),
                position: s.position,
                radius: s.radius,
            })
            .collect(),
        None => {
            // one central station with a cell that covers the whole area
            let center = [origin[0] + area_wh[0] / 2.0, origin[1] + area_wh[1] / 2.0];
            let radius = 1.05 * f64::hypot(area_wh[0] / 2.0, area_wh[1] / 2.0);
            vec![StationSite { id: StationId(0), position: center, radius }]
        }
    };

    let field_kind = match raw.field.kind.as_deref() {
        None | Some("gaussian_plume") => FieldKind::GaussianPlume,
        Some("linear_gradient") => FieldKind::LinearGradient,
        Some("constant") => FieldKind::Constant,
        Some(other) => {
            return Err(cfg_err(
                "field.kind",
                format!(
                    "unknown kind '{other}' (expected gaussian_plume, linear_gradient or constant)"
                ),
            ))
        }
    };
    let field = FieldSpec {
        kind: field_kind,
        amplitude: raw.field.amplitude.unwrap_or(8.0),
        center_start: raw.field.center_start.unwrap_or([30.0, 30.0]),
        center_velocity: raw.field.center_velocity.unwrap_or([0.2, 0.2]),
        spread: raw.field.spread.unwrap_or(60.0),
        baseline: raw.field.baseline.unwrap_or(20.0),
        drift: raw.field.drift.unwrap_or(0.02),
    };

    let sigma = raw.noise.sigma.unwrap_or(DEFAULT_SIGMA);
    let noise = NoiseSpec {
        sigma,
        seed_stream: raw.noise.seed_stream.clone().unwrap_or_else(|| "noise".to_string()),
    };

    let order = raw.estimator.order.unwrap_or(DEFAULT_ORDER);
    let estimator = EstimatorConfig {
        order,
        distance_scale: raw.estimator.distance_scale.unwrap_or(adjacency_radius),
        min_neighbors: raw.estimator.min_neighbors.unwrap_or(DEFAULT_MIN_NEIGHBORS),
        slope_window: raw.estimator.slope_window.unwrap_or(order),
    };

    let tolerance = raw.trust.tolerance.unwrap_or_else(|| default_tolerance(sigma));
    let trust = TrustPolicy {
        penalty_gain: raw.trust.penalty_gain.unwrap_or_else(|| default_penalty_gain(tolerance)),
        tolerance,
        recovery_rate: raw.trust.recovery_rate.unwrap_or(DEFAULT_RECOVERY_RATE),
        quarantine_threshold: raw
            .trust
            .quarantine_threshold
            .unwrap_or(DEFAULT_QUARANTINE_THRESHOLD),
        alarm_threshold: raw.trust.alarm_threshold.unwrap_or(DEFAULT_ALARM_THRESHOLD),
        hysteresis: raw.trust.hysteresis.unwrap_or(DEFAULT_HYSTERESIS),
        init_interior: raw.trust.init_interior.unwrap_or(DEFAULT_INIT_INTERIOR),
        init_peripheral: raw.trust.init_peripheral.unwrap_or(DEFAULT_INIT_PERIPHERAL),
        availability_window: raw
            .trust
            .availability_window
            .unwrap_or(DEFAULT_AVAILABILITY_WINDOW),
        availability_threshold: raw
            .trust
            .availability_threshold
            .unwrap_or(DEFAULT_AVAILABILITY_THRESHOLD),
    };

    let keying = KeyingConfig {
        ring_size: raw
            .keying
            .ring_size
            .unwrap_or_else(|| DEFAULT_RING_SIZE.min(nodes.saturating_sub(1).max(1))),
        quorum: raw.keying.quorum.unwrap_or(DEFAULT_QUORUM),
        revoke_on_alarm: raw.keying.revoke_on_alarm.unwrap_or(false),
    };

    let mut attacks = Vec::with_capacity(raw.attacks.len());
    for (i, a) in raw.attacks.iter().enumerate() {
        attacks.push(resolve_attack(i, a)?);
    }

    let cfg = ScenarioConfig {
        seed: raw.seed.unwrap_or(DEFAULT_SEED),
        horizon: raw.horizon.unwrap_or(DEFAULT_HORIZON),
        field,
        noise,
        deployment: DeploymentSpec {
            count: nodes,
            area,
            placement,
            stations,
            adjacency_radius,
            max_neighbors: d.max_neighbors.unwrap_or(DEFAULT_MAX_NEIGHBORS),
            peripheral_margin: d.peripheral_margin.unwrap_or(adjacency_radius),
        },
        keying,
        estimator,
        trust,
        attacks,
    };
    cfg.validate()?;
    Ok(cfg)
}

fn resolve_attack(index: usize, raw: &RawAttack) -> Result<AttackScript, ConfigError> {
    let path = format!("attacks[{index}]");
    let kind = match raw.kind.as_str() {
        "node_capture" => {
            let profile = raw
                .profile
                .as_ref()
                .ok_or_else(|| cfg_err(&format!("{path}.profile"), "required for node_capture"))?;
            let mut chosen = Vec::new();
            if let Some(v) = profile.constant {
                chosen.push(CaptureProfile::Constant(v));
            }
            if let Some(dv) = profile.offset {
                chosen.push(CaptureProfile::Offset(dv));
            }
            if let Some([lo, hi]) = profile.random {
                chosen.push(CaptureProfile::Random { lo, hi });
            }
            if let Some(lag) = profile.stale_lag {
                chosen.push(CaptureProfile::Stale { lag });
            }
            if chosen.len() != 1 {
                return Err(cfg_err(
                    &format!("{path}.profile"),
                    "set exactly one of constant, offset, random, stale_lag",
                ));
            }
            AttackKind::NodeCapture { profile: chosen.pop().expect("one profile") }
        }
        "replay" => AttackKind::Replay,
        "spoof_no_key" => {
            if raw.claimed_ids.is_empty() {
                return Err(cfg_err(
                    &format!("{path}.claimed_ids"),
                    "required for spoof_no_key",
                ));
            }
            AttackKind::SpoofNoKey { claimed_ids: raw.claimed_ids.clone() }
        }
        "sybil" => AttackKind::Sybil {
            fake_ids: raw
                .fake_ids
                .ok_or_else(|| cfg_err(&format!("{path}.fake_ids"), "required for sybil"))?,
        },
        "selective_forwarding" => AttackKind::SelectiveForwarding {
            drop_probability: raw.drop_probability.ok_or_else(|| {
                cfg_err(&format!("{path}.drop_probability"), "required for selective_forwarding")
            })?,
        },
        other => {
            return Err(cfg_err(
                &format!("{path}.kind"),
                format!("unknown attack kind '{other}'"),
            ))
        }
    };
    Ok(AttackScript {
        kind,
        targets: raw.targets.iter().map(|&n| NodeId(n)).collect(),
        start: raw.start,
        end: raw.end,
    })
}

/// Express a resolved scenario back in the raw schema with every field
/// explicit (the `config.echo` form).
pub fn to_raw(cfg: &ScenarioConfig) -> RawConfig {
    let d = &cfg.deployment;
    RawConfig {
        seed: Some(cfg.seed),
        horizon: Some(cfg.horizon),
        field: RawField {
            kind: Some(
                match cfg.field.kind {
                    FieldKind::GaussianPlume => "gaussian_plume",
                    FieldKind::LinearGradient => "linear_gradient",
                    FieldKind::Constant => "constant",
                }
                .to_string(),
            ),
            amplitude: Some(cfg.field.amplitude),
            center_start: Some(cfg.field.center_start),
            center_velocity: Some(cfg.field.center_velocity),
            spread: Some(cfg.field.spread),
            baseline: Some(cfg.field.baseline),
            drift: Some(cfg.field.drift),
        },
        noise: RawNoise {
            sigma: Some(cfg.noise.sigma),
            seed_stream: Some(cfg.noise.seed_stream.clone()),
        },
        deployment: RawDeployment {
            nodes: d.count,
            placement: Some(
                match d.placement {
                    Placement::Grid => "grid",
                    Placement::UniformRandom => "uniform_random",
                }
                .to_string(),
            ),
            area: Some([d.area.width(), d.area.height()]),
            origin: Some(d.area.min),
            adjacency_radius: Some(d.adjacency_radius),
            max_neighbors: Some(d.max_neighbors),
            peripheral_margin: Some(d.peripheral_margin),
            stations: Some(
                d.stations
                    .iter()
                    .map(|s| RawStation {
                        id: Some(s.id.0),
                        position: s.position,
                        radius: s.radius,
                    })
                    .collect(),
            ),
        },
        keying: RawKeying {
            ring_size: Some(cfg.keying.ring_size),
            quorum: Some(cfg.keying.quorum),
            revoke_on_alarm: Some(cfg.keying.revoke_on_alarm),
        },
        estimator: RawEstimator {
            order: Some(cfg.estimator.order),
            distance_scale: Some(cfg.estimator.distance_scale),
            min_neighbors: Some(cfg.estimator.min_neighbors),
            slope_window: Some(cfg.estimator.slope_window),
        },
        trust: RawTrust {
            penalty_gain: Some(cfg.trust.penalty_gain),
            tolerance: Some(cfg.trust.tolerance),
            recovery_rate: Some(cfg.trust.recovery_rate),
            quarantine_threshold: Some(cfg.trust.quarantine_threshold),
            alarm_threshold: Some(cfg.trust.alarm_threshold),
            hysteresis: Some(cfg.trust.hysteresis),
            init_interior: Some(cfg.trust.init_interior),
            init_peripheral: Some(cfg.trust.init_peripheral),
            availability_window: Some(cfg.trust.availability_window),
            availability_threshold: Some(cfg.trust.availability_threshold),
        },
        attacks: cfg.attacks.iter().map(attack_to_raw).collect(),
    }
}

fn attack_to_raw(script: &AttackScript) -> RawAttack {
    let mut raw = RawAttack {
        kind: script.kind.name().to_string(),
        targets: script.targets.iter().map(|n| n.0).collect(),
        start: script.start,
        end: script.end,
        profile: None,
        drop_probability: None,
        claimed_ids: Vec::new(),
        fake_ids: None,
    };
    match &script.kind {
        AttackKind::NodeCapture { profile } => {
            let mut p = RawProfile::default();
            match *profile {
                CaptureProfile::Constant(v) => p.constant = Some(v),
                CaptureProfile::Offset(dv) => p.offset = Some(dv),
                CaptureProfile::Random { lo, hi } => p.random = Some([lo, hi]),
                CaptureProfile::Stale { lag } => p.stale_lag = Some(lag),
            }
            raw.profile = Some(p);
        }
        AttackKind::SpoofNoKey { claimed_ids } => raw.claimed_ids = claimed_ids.clone(),
        AttackKind::Sybil { fake_ids } => raw.fake_ids = Some(*fake_ids),
        AttackKind::SelectiveForwarding { drop_probability } => {
            raw.drop_probability = Some(*drop_probability)
        }
        AttackKind::Replay => {}
    }
    raw
}

/// The fully-defaulted config as a TOML document.
pub fn echo_toml(cfg: &ScenarioConfig) -> String {
    toml::to_string(&to_raw(cfg)).expect("resolved config serializes")
}

/// Load, default and validate a scenario file.
pub fn load_config(path: &Path) -> Result<ScenarioConfig, LoadError> {
    let text = fs::read_to_string(path).map_err(LoadError::Io)?;
    let raw = parse_raw(&text)?;
    resolve(&raw).map_err(LoadError::Invalid)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_config_gets_all_defaults() {
        let raw = parse_raw("horizon = 50\n[deployment]\nnodes = 25\n").unwrap();
        let cfg = resolve(&raw).unwrap();
        assert_eq!(cfg.seed, DEFAULT_SEED);
        assert_eq!(cfg.horizon, 50);
        assert_eq!(cfg.deployment.count, 25);
        assert_eq!(cfg.deployment.adjacency_radius, DEFAULT_ADJACENCY_RADIUS);
        assert_eq!(cfg.deployment.peripheral_margin, DEFAULT_ADJACENCY_RADIUS);
        assert_eq!(cfg.estimator.distance_scale, DEFAULT_ADJACENCY_RADIUS);
        assert_eq!(cfg.estimator.slope_window, DEFAULT_ORDER);
        assert_eq!(cfg.trust.tolerance, 3.0 * DEFAULT_SIGMA);
        assert_eq!(cfg.trust.penalty_gain, 0.05 / (3.0 * DEFAULT_SIGMA));
        assert_eq!(cfg.keying.ring_size, 8);
        assert_eq!(cfg.deployment.stations.len(), 1);
        // the default cell covers the whole area
        assert!(cfg.deployment.stations[0].radius > f64::hypot(50.0, 50.0));
    }

    #[test]
    fn unknown_keys_are_rejected_with_location() {
        let err = parse_raw("horizon = 5\nbogus_key = 1\n[deployment]\nnodes = 4\n").unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("bogus_key"), "{msg}");
        let err =
            parse_raw("[deployment]\nnodes = 4\nradius = 3\n").unwrap_err();
        assert!(err.to_string().contains("radius"), "{err}");
    }

    #[test]
    fn threshold_ordering_violation_names_both_fields() {
        let raw = parse_raw(
            "horizon = 5\n[deployment]\nnodes = 4\n[trust]\nalarm_threshold = 0.9\nquarantine_threshold = 0.5\n",
        )
        .unwrap();
        let err = resolve(&raw).unwrap_err();
        assert!(err.field.contains("alarm_threshold"), "{err}");
        assert!(err.message.contains("quarantine_threshold"), "{err}");
    }

    #[test]
    fn roundtrip_through_echo_is_identity() {
        let text = r#"
seed = 9
horizon = 60
[field]
kind = "gaussian_plume"
amplitude = 6.5
[noise]
sigma = 0.4
[deployment]
nodes = 16
placement = "uniform_random"
area = [80.0, 120.0]
adjacency_radius = 30.0
[keying]
ring_size = 5
[[attacks]]
kind = "node_capture"
targets = [3]
start = 10
end = 60
profile = { offset = 4.0 }
[[attacks]]
kind = "selective_forwarding"
targets = [5]
start = 1
end = 60
drop_probability = 0.25
[[attacks]]
kind = "spoof_no_key"
claimed_ids = [2, 99]
start = 4
end = 6
[[attacks]]
kind = "sybil"
fake_ids = 3
start = 2
end = 2
[[attacks]]
kind = "replay"
targets = [1]
start = 7
end = 9
"#;
        let cfg = resolve(&parse_raw(text).unwrap()).unwrap();
        let echoed = echo_toml(&cfg);
        let cfg2 = resolve(&parse_raw(&echoed).unwrap()).unwrap();
        assert_eq!(cfg, cfg2);
        // echo is stable under a second round trip, byte for byte
        assert_eq!(echoed, echo_toml(&cfg2));
    }

    #[test]
    fn capture_requires_exactly_one_profile() {
        let base = "horizon = 5\n[deployment]\nnodes = 4\n[[attacks]]\nkind = \"node_capture\"\ntargets = [1]\nstart = 1\nend = 2\n";
        let raw = parse_raw(base).unwrap();
        let err = resolve(&raw).unwrap_err();
        assert!(err.field.contains("profile"), "{err}");

        let two = format!("{base}profile = {{ offset = 1.0, constant = 2.0 }}\n");
        let err = resolve(&parse_raw(&two).unwrap()).unwrap_err();
        assert!(err.message.contains("exactly one"), "{err}");
    }

    #[test]
    fn bad_enum_strings_name_the_field() {
        let raw = parse_raw("horizon = 1\n[deployment]\nnodes = 4\nplacement = \"ring\"\n").unwrap();
        let err = resolve(&raw).unwrap_err();
        assert_eq!(err.field, "deployment.placement");

        let raw =
            parse_raw("horizon = 1\n[field]\nkind = \"vortex\"\n[deployment]\nnodes = 4\n").unwrap();
        let err = resolve(&raw).unwrap_err();
        assert_eq!(err.field, "field.kind");
    }

    #[test]
    fn undeployed_attack_target_rejected() {
        let raw = parse_raw(
            "horizon = 5\n[deployment]\nnodes = 4\n[[attacks]]\nkind = \"replay\"\ntargets = [9]\nstart = 1\nend = 2\n",
        )
        .unwrap();
        let err = resolve(&raw).unwrap_err();
        assert!(err.field.contains("attacks[0]"), "{err}");
        assert!(err.message.contains('9'), "{err}");
    }
}
