//! The randomized peeling algorithm and its benchmark harness.

mod bench;
mod config;
mod engine;
mod estimate;

pub use bench::{scaling_benchmark, BenchRow};
pub use config::{Mode, PeelConfig, PAPER_C1};
pub use engine::{certify, large_potato, run_amplified, PeelResult};
pub use estimate::{estimate_area_lower_bound, AreaEstimate, EstimateMethod};
