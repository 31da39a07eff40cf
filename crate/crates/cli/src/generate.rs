//! Synthetic instance generator. Stands in for unpublished production data:
//! one merchant at the origin, customers uniform in a square, and windows
//! drawn so the zero-penalty interval is actually attainable.

use clap::ValueEnum;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{CliError, Result};
use crate::format::{
    CostRecord, InstanceFile, MerchantRecord, OrderRecord, VehicleRecord, FORMAT_VERSION,
};

/// Shape of generated delivery windows.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum WindowStyle {
    /// Generous windows that rarely penalize.
    Wide,
    /// Narrow windows starting near the direct travel time.
    Tight,
    /// A coin flip per order between the two.
    Mixed,
}

/// Default order-placement horizon, minutes from midnight (11:30 to 18:30).
pub const HORIZON_START_MIN: f64 = 690.0;
pub const HORIZON_END_MIN: f64 = 1110.0;

/// Generates one single-merchant instance. Byte-identical output per seed.
pub fn generate_instance(
    seed: u64,
    n_customers: usize,
    spread: f64,
    style: WindowStyle,
) -> Result<InstanceFile> {
    if n_customers < 1 {
        return Err(CliError::Input(
            "n_customers must be at least 1".to_string(),
        ));
    }
    if !(spread.is_finite() && spread > 0.0) {
        return Err(CliError::Input(format!(
            "spread must be positive, got {spread}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let merchant_id = format!("S{seed}");

    let mut orders = Vec::with_capacity(n_customers);
    for i in 1..=n_customers {
        let x = rng.random_range(-spread..=spread);
        let y = rng.random_range(-spread..=spread);
        let quantity = rng.random_range(1..=5u32);
        let direct = (x * x + y * y).sqrt(); // travel time at unit speed
        let wide = match style {
            WindowStyle::Wide => true,
            WindowStyle::Tight => false,
            WindowStyle::Mixed => rng.random_bool(0.5),
        };
        let (a, width) = if wide {
            (
                rng.random_range(0.0..=direct.max(1e-6)),
                rng.random_range(2.0..=4.0) * spread,
            )
        } else {
            (
                direct + rng.random_range(0.0..=spread),
                rng.random_range(0.25..=0.5) * spread,
            )
        };
        let placed_at = rng.random_range(HORIZON_START_MIN..HORIZON_END_MIN);
        orders.push(OrderRecord {
            id: format!("o{i}"),
            merchant_id: merchant_id.clone(),
            x,
            y,
            quantity,
            a,
            b: a + width,
            c: a + 2.0 * width,
            placed_at: Some(placed_at),
        });
    }

    Ok(InstanceFile {
        version: FORMAT_VERSION.to_string(),
        merchants: vec![MerchantRecord {
            id: merchant_id,
            x: 0.0,
            y: 0.0,
        }],
        orders,
        vehicle: VehicleRecord {
            capacity: 20.0,
            endurance: 6.0 * spread,
            fixed_cost: 2.0 * spread,
            unit_distance_cost: 1.0,
            unit_weight: 1.0,
            speed: 1.0,
            fleet_size: n_customers,
        },
        costs: CostRecord {
            distance_penalty: 5.0 * spread,
            early_coeff: 0.5,
            late_coeff: 1.5,
        },
    })
}
