//! Shared helpers for the benchmark targets.

use vrpstw_cli::generate::{generate_instance, WindowStyle};
use vrpstw_core::Instance;

/// Deterministic benchmark instance with `n` customers.
pub fn bench_instance(seed: u64, n: usize) -> Instance {
    generate_instance(seed, n, 10.0, WindowStyle::Mixed)
        .expect("benchmark sizes are positive")
        .to_instance()
        .expect("generated instances validate")
}
