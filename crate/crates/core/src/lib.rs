//! Discrete-time link scheduling under per-link service frequency
//! constraints.
//!
//! Links carry a frame length `delta_i` and must transmit at least once in
//! every frame. The crate provides the slot-unit queue model, the
//! multi-stage maximum weight (MSMW) scheduler and its comparison policies,
//! a seeded simulator with frequency and regularity metrics, closed-form
//! capacity and backlog bounds, and the experiment presets used to compare
//! the policies.

pub mod bounds;
pub mod error;
pub mod model;
pub mod policies;
pub mod report;
pub mod runner;
pub mod scenarios;
pub mod sim;

pub use error::{Error, Result};
pub use model::{ArrivalMode, ConflictGraph, LinkSpec, Network, QueueState, Schedule};
pub use policies::{PolicyKind, StageState};
pub use scenarios::{expand_scenario, ExperimentConfig, ScenarioKind, ScenarioSpec};
pub use sim::{aggregate_runs, run_simulation, AggregateMetrics, RunMetrics, SimConfig};
