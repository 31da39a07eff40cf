use thiserror::Error;

/// Errors surfaced by the solver crates.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("node {node} out of range for distance matrix of {len} nodes")]
    UnknownNode { node: usize, len: usize },

    #[error("arrival time must be nonnegative, got {0}")]
    NegativeArrival(f64),

    #[error("endurance must be positive, got {0}")]
    NonPositiveEndurance(f64),

    #[error("fitness is undefined for nonpositive cost {0}")]
    NonPositiveCost(f64),

    #[error("invalid instance: {}", .0.join("; "))]
    InvalidInstance(Vec<String>),

    #[error("invalid solver configuration: {}", .0.join("; "))]
    InvalidConfig(Vec<String>),

    #[error("order {id} load {load} exceeds vehicle capacity {capacity}")]
    OrderExceedsCapacity {
        id: String,
        load: f64,
        capacity: f64,
    },

    #[error("solver requires a single-merchant instance, got {0} merchants")]
    MultiMerchant(usize),

    #[error("customer node {node} served {count} times")]
    BadCoverage { node: usize, count: usize },

    #[error("instance has {customers} customers, exact search is capped at {max}")]
    TooManyCustomers { customers: usize, max: usize },

    #[error("no solution within the fleet bound of {0} vehicles")]
    FleetExhausted(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
