//! Deterministic model of a single-hop wireless sensor network hardened by
//! three cooperating defenses: pairwise-key authentication, AES-sealed
//! transport, and a base-station trust engine that cross-predicts every
//! sensor from its neighbors and demotes nodes whose readings drift from
//! the prediction.
//!
//! The crate is `no_std + alloc` so the node-side pieces (keying, sealing)
//! compile for embedded targets; everything is a pure function of explicit
//! state and a seeded RNG, so full simulation runs are bit-reproducible.
//! File IO, config parsing and the CLI live in the companion `wsnsim` crate.

#![cfg_attr(not(any(test, feature = "std")), no_std)]

extern crate alloc;

pub mod attacks;
pub mod config;
pub mod crypto;
pub mod engine;
pub mod field;
pub mod keying;
pub mod math;
pub mod rng;
pub mod topology;
pub mod trust;

use core::fmt;

/// Identity of a sensor node. Dense in `[0, N)` at deployment; never reused.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeId(pub u32);

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Identity of a base station.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StationId(pub u32);

impl fmt::Display for StationId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}
