//! Module-level invariants checked over generated inputs: estimator
//! locality, key-material containment, authentication soundness at scale,
//! and full-run reproducibility under labeled substreams.

use std::collections::BTreeMap;

use proptest::prelude::*;
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha12Rng;

use wsnsim_core::crypto::{cmac, tags_equal};
use wsnsim_core::keying::{auth_tag, predistribute, PeerId};
use wsnsim_core::rng::Substreams;
use wsnsim_core::topology::{deployment_from_positions, neighbors, Rect, StationSite};
use wsnsim_core::trust::{EstimatorConfig, TrustEngine, TrustPolicy};
use wsnsim_core::{NodeId, StationId};

fn frozen_policy() -> TrustPolicy {
    // gains at zero freeze the ledger so estimates depend on data alone
    TrustPolicy {
        penalty_gain: 0.0,
        tolerance: 1.0,
        recovery_rate: 0.0,
        quarantine_threshold: 0.5,
        alarm_threshold: 0.3,
        hysteresis: 0.1,
        init_interior: 1.0,
        init_peripheral: 0.8,
        availability_window: 8,
        availability_threshold: 0.9,
    }
}

/// Line network: (positions 10 apart, adjacency radius keeps immediate
/// neighbors only), so node 0 is never adjacent to the last node.
fn line_network(n: usize) -> (wsnsim_core::topology::Deployment, wsnsim_core::topology::AdjacencyMap)
{
    let positions: Vec<[f64; 2]> = (0..n).map(|i| [10.0 * i as f64, 0.0]).collect();
    let d = deployment_from_positions(
        Rect { min: [-5.0, -5.0], max: [10.0 * n as f64, 5.0] },
        positions,
        vec![StationSite {
            id: StationId(0),
            position: [5.0 * n as f64, 0.0],
            radius: 10.0 * n as f64,
        }],
        12.0,
        2,
        1.0,
    )
    .unwrap();
    let adj = neighbors(&d);
    (d, adj)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    /// Changing a non-adjacent node's reading at the final step leaves
    /// every other node's next estimate bit-identical (Eq-level locality:
    /// the estimate reads only the monitored node's neighbor histories).
    #[test]
    fn estimator_locality(seed in 0u64..5_000, delta in 1.0f64..50.0) {
        let n = 5usize;
        let (d, adj) = line_network(n);
        let cfg = EstimatorConfig { order: 3, distance_scale: 15.0, min_neighbors: 1, slope_window: 3 };
        let mut rng = ChaCha12Rng::seed_from_u64(seed);
        let steps = 4u64;

        let mut a = TrustEngine::new(&d, adj.clone(), cfg.clone(), frozen_policy());
        let mut b = TrustEngine::new(&d, adj.clone(), cfg, frozen_policy());
        let polled: Vec<NodeId> = (0..n as u32).map(NodeId).collect();
        let far = NodeId((n - 1) as u32);

        for t in 1..=steps {
            let mut readings: BTreeMap<NodeId, f64> = BTreeMap::new();
            for node in &polled {
                readings.insert(*node, rng.gen_range(-10.0..10.0));
            }
            let mut mutated = readings.clone();
            if t == steps {
                // final-step mutation of the far node only
                *mutated.get_mut(&far).unwrap() += delta;
            }
            a.step(t, &polled, &readings);
            b.step(t, &polled, &mutated);
        }

        for node in &polled {
            // adjacency radius 12 on a 10-spaced line: only immediate
            // neighbors are adjacent
            let is_adjacent = adj.of(*node).contains(&far);
            let ea = a.estimate(*node, steps + 1);
            let eb = b.estimate(*node, steps + 1);
            if *node == far || is_adjacent {
                continue;
            }
            prop_assert_eq!(ea.map(f64::to_bits), eb.map(f64::to_bits));
        }
    }

    /// Every node-node key names exactly two rings, so capturing one node
    /// exposes no other pair's key.
    #[test]
    fn pairwise_keys_have_exactly_two_endpoints(nodes in 3u32..30, seed in 0u64..10_000) {
        let ring_size = 1 + (seed % (nodes as u64 - 1)) as u32;
        let subs = Substreams::new(seed);
        let (rings, _) = predistribute(
            nodes,
            ring_size,
            &[StationId(0)],
            &mut subs.stream("keys", &[]),
        ).unwrap();
        let mut holders: BTreeMap<[u8; 16], Vec<u32>> = BTreeMap::new();
        for ring in &rings {
            for (peer, key) in ring.peers() {
                if matches!(peer, PeerId::Node(_)) {
                    holders.entry(*key).or_default().push(ring.owner.0);
                }
            }
        }
        for (_, owners) in holders {
            prop_assert_eq!(owners.len(), 2);
        }
    }
}

/// Forged tags never verify: one million random forgeries against fresh
/// key/nonce/id triples, zero acceptances.
#[test]
fn authentication_soundness_desk_scale() {
    let mut rng = ChaCha12Rng::seed_from_u64(0xf0f0);
    let mut key = [0u8; 16];
    let mut nonce = [0u8; 16];
    let mut expected = [0u8; 16];
    let mut node = NodeId(0);
    let mut accepted = 0u64;
    for trial in 0..1_000_000u64 {
        if trial % 64 == 0 {
            rng.fill_bytes(&mut key);
            rng.fill_bytes(&mut nonce);
            node = NodeId(rng.gen());
            expected = auth_tag(&key, &nonce, node);
        }
        let mut forged = [0u8; 16];
        rng.fill_bytes(&mut forged);
        if tags_equal(&expected, &forged) {
            accepted += 1;
        }
    }
    assert_eq!(accepted, 0);
}

/// CMAC under two different keys never agrees on the same short message
/// in a desk-scale sample (key separation sanity).
#[test]
fn cmac_key_separation() {
    let mut rng = ChaCha12Rng::seed_from_u64(77);
    for _ in 0..10_000 {
        let mut k1 = [0u8; 16];
        let mut k2 = [0u8; 16];
        let mut msg = [0u8; 24];
        rng.fill_bytes(&mut k1);
        rng.fill_bytes(&mut k2);
        rng.fill_bytes(&mut msg);
        if k1 == k2 {
            continue;
        }
        assert_ne!(cmac(&k1, &msg), cmac(&k2, &msg));
    }
}

/// Two full simulator runs from the same master seed are equal in every
/// output; a different seed diverges.
#[test]
fn full_run_reproducibility() {
    use wsnsim_core::attacks::{AttackKind, AttackScript, CaptureProfile};
    use wsnsim_core::config::{KeyingConfig, ScenarioConfig};
    use wsnsim_core::engine::run;
    use wsnsim_core::field::{FieldKind, FieldSpec, NoiseSpec};
    use wsnsim_core::topology::{DeploymentSpec, Placement};

    let cfg = ScenarioConfig {
        seed: 31337,
        horizon: 25,
        field: FieldSpec {
            kind: FieldKind::GaussianPlume,
            amplitude: 6.0,
            center_start: [20.0, 20.0],
            center_velocity: [0.3, 0.1],
            spread: 50.0,
            baseline: 15.0,
            drift: 0.01,
        },
        noise: NoiseSpec { sigma: 0.5, seed_stream: "noise".to_string() },
        deployment: DeploymentSpec {
            count: 12,
            area: Rect { min: [0.0, 0.0], max: [80.0, 80.0] },
            placement: Placement::UniformRandom,
            stations: vec![StationSite { id: StationId(0), position: [40.0, 40.0], radius: 80.0 }],
            adjacency_radius: 35.0,
            max_neighbors: 5,
            peripheral_margin: 10.0,
        },
        keying: KeyingConfig { ring_size: 4, quorum: 3, revoke_on_alarm: false },
        estimator: EstimatorConfig {
            order: 3,
            distance_scale: 35.0,
            min_neighbors: 2,
            slope_window: 3,
        },
        trust: TrustPolicy {
            penalty_gain: 0.05 / 1.5,
            tolerance: 1.5,
            recovery_rate: 0.01,
            quarantine_threshold: 0.5,
            alarm_threshold: 0.3,
            hysteresis: 0.1,
            init_interior: 1.0,
            init_peripheral: 0.8,
            availability_window: 10,
            availability_threshold: 0.5,
        },
        attacks: vec![AttackScript {
            kind: AttackKind::NodeCapture { profile: CaptureProfile::Random { lo: 0.0, hi: 40.0 } },
            targets: vec![NodeId(3)],
            start: 8,
            end: 25,
        }],
    };
    let a = run(&cfg).unwrap();
    let b = run(&cfg).unwrap();
    assert_eq!(a, b);

    let mut other = cfg.clone();
    other.seed = 31338;
    let c = run(&other).unwrap();
    assert_ne!(a.trace, c.trace);
}
