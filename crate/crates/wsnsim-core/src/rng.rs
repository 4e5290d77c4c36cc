//! Labeled, independently seeded RNG substreams derived from one master
//! seed. Every stochastic choice in a run (placement, keys, observation
//! noise, drops, attack draws, auth nonces) pulls from its own stream, so
//! adding or removing one consumer never perturbs the others.
//!
//! Stream seeds are expanded from the master seed with CMAC, keeping the
//! whole derivation inside the one primitive the crate already carries.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha12Rng;

use crate::crypto::cmac;
use crate::math;

/// The deterministic generator used everywhere in the simulator.
pub type DetRng = ChaCha12Rng;

/// Factory for labeled substreams of a master seed.
#[derive(Debug, Clone, Copy)]
pub struct Substreams {
    key: [u8; 16],
}

impl Substreams {
    pub fn new(master_seed: u64) -> Self {
        // fixed-key CMAC spreads the 64-bit seed over the derivation key
        let key = cmac(&[0u8; 16], &master_seed.to_be_bytes());
        Substreams { key }
    }

    /// A fresh generator for (`label`, `params`). Same inputs, same stream.
    pub fn stream(&self, label: &str, params: &[u64]) -> DetRng {
        let mut msg = alloc::vec::Vec::with_capacity(label.len() + 1 + 8 * params.len() + 1);
        msg.extend_from_slice(label.as_bytes());
        msg.push(0x00); // separates label from parameters
        for p in params {
            msg.extend_from_slice(&p.to_be_bytes());
        }
        let mut seed = [0u8; 32];
        msg.push(0);
        seed[..16].copy_from_slice(&cmac(&self.key, &msg));
        *msg.last_mut().unwrap() = 1;
        seed[16..].copy_from_slice(&cmac(&self.key, &msg));
        DetRng::from_seed(seed)
    }
}

/// Uniform draw in [0, 1) with 53 bits of precision.
pub fn unit_uniform(rng: &mut impl RngCore) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Standard normal draw via Box-Muller (cosine branch only, one draw per
/// pair of uniforms, no hidden state).
pub fn standard_normal(rng: &mut impl RngCore) -> f64 {
    let u1 = 1.0 - unit_uniform(rng); // (0, 1]; ln stays finite
    let u2 = unit_uniform(rng);
    math::sqrt(-2.0 * math::ln(u1)) * math::cos(2.0 * math::PI * u2)
}
