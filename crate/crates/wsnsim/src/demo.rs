//! The built-in demo scenario: a 25-node grid over a 100 m square cell,
//! a slow-moving Gaussian plume smooth at the grid scale, and one node
//! captured at step 20 that reports a constant +10-sigma offset until the
//! trust engine quarantines it.

use wsnsim_core::attacks::{AttackKind, AttackScript, CaptureProfile};
use wsnsim_core::config::{KeyingConfig, ScenarioConfig};
use wsnsim_core::field::{FieldKind, FieldSpec, NoiseSpec};
use wsnsim_core::topology::{DeploymentSpec, Placement, Rect, StationSite};
use wsnsim_core::trust::{EstimatorConfig, TrustPolicy};
use wsnsim_core::{NodeId, StationId};

use crate::schema::{default_penalty_gain, default_tolerance};

pub const DEMO_SIGMA: f64 = 0.8;
pub const DEMO_CAPTURED_NODE: u32 = 12;
pub const DEMO_ATTACK_START: u64 = 20;
pub const DEMO_HORIZON: u64 = 200;

pub fn demo_config(seed: u64) -> ScenarioConfig {
    let tolerance = default_tolerance(DEMO_SIGMA);
    ScenarioConfig {
        seed,
        horizon: DEMO_HORIZON,
        field: FieldSpec {
            kind: FieldKind::GaussianPlume,
            amplitude: 8.0,
            center_start: [30.0, 30.0],
            center_velocity: [0.2, 0.2],
            spread: 60.0,
            baseline: 20.0,
            drift: 0.02,
        },
        noise: NoiseSpec { sigma: DEMO_SIGMA, seed_stream: "noise".to_string() },
        deployment: DeploymentSpec {
            count: 25,
            area: Rect { min: [0.0, 0.0], max: [100.0, 100.0] },
            placement: Placement::Grid,
            stations: vec![StationSite { id: StationId(0), position: [50.0, 50.0], radius: 80.0 }],
            adjacency_radius: 25.0,
            max_neighbors: 6,
            peripheral_margin: 25.0,
        },
        keying: KeyingConfig { ring_size: 8, quorum: 3, revoke_on_alarm: false },
        estimator: EstimatorConfig {
            order: 4,
            distance_scale: 25.0,
            min_neighbors: 2,
            slope_window: 4,
        },
        trust: TrustPolicy {
            penalty_gain: default_penalty_gain(tolerance),
            tolerance,
            recovery_rate: 0.01,
            quarantine_threshold: 0.5,
            alarm_threshold: 0.3,
            hysteresis: 0.1,
            init_interior: 1.0,
            init_peripheral: 0.8,
            availability_window: 20,
            availability_threshold: 0.5,
        },
        attacks: vec![AttackScript {
            kind: AttackKind::NodeCapture {
                // 10 sigma constant offset
                profile: CaptureProfile::Offset(10.0 * DEMO_SIGMA),
            },
            targets: vec![NodeId(DEMO_CAPTURED_NODE)],
            start: DEMO_ATTACK_START,
            end: DEMO_HORIZON,
        }],
    }
}
