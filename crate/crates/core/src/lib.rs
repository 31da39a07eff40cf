//! Open-route vehicle routing for meal delivery with soft time windows.
//!
//! The objective combines four parts: transport distance cost, per-vehicle
//! fixed cost, an endurance floor penalty, and a soft-time-window penalty
//! (linear when early, exponential when late). Solutions come from three
//! routes of increasing effort:
//!
//! - [`baseline::baseline_solve`] — closed-route nearest-neighbor plan,
//!   standing in for experience-based dispatch;
//! - [`ga::solve`] — genetic algorithm over customer permutations with a
//!   greedy capacity/endurance splitter producing open routes;
//! - [`oracle::oracle_solve`] — exhaustive exact search for small instances,
//!   used to verify the heuristics.
//!
//! All values are immutable after construction and evaluation is pure, so
//! instances and matrices can be shared freely across threads.

pub mod baseline;
pub mod compare;
pub mod cost;
pub mod error;
pub mod ga;
pub mod model;
pub mod oracle;

pub use cost::{
    arrival_schedule, check_feasibility, distance_penalty_factor, evaluate, fitness, time_penalty,
    ArrivalSchedule, CostBreakdown, Solution, COST_EPS,
};
pub use error::{Error, Result};
pub use ga::{decode, initialize_population, GaConfig, SolveResult};
pub use model::{
    route_distance, CostParams, DistanceMatrix, Instance, Location, Merchant, Metric, Order, Route,
    TimeWindow, VehicleSpec,
};
pub use oracle::DEFAULT_ORACLE_CAP;
