//! Scenario files, run artifacts and the demo configuration for the
//! sensor-network security simulator. The simulation itself lives in
//! `wsnsim-core`; this crate owns everything that touches disk.

pub mod demo;
pub mod output;
pub mod schema;

pub use wsnsim_core as core;
