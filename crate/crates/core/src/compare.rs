//! Side-by-side evaluation of the nearest-neighbor plan and the genetic
//! solver on the same instance and cost parameters.

use serde::{Deserialize, Serialize};

use crate::baseline::baseline_solve;
use crate::error::Result;
use crate::ga::{solve, GaConfig};
use crate::model::{DistanceMatrix, Instance, Metric};

/// One comparison row. Times are total travel time in time units, distances
/// include return arcs where routes are closed. Improvement percentages are
/// `(baseline - ga) / baseline * 100`, absent when the baseline value is not
/// positive.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonRow {
    pub instance_id: String,
    pub baseline_cost: f64,
    pub ga_cost: f64,
    pub baseline_time: f64,
    pub ga_time: f64,
    pub baseline_distance: f64,
    pub ga_distance: f64,
    pub improvement_cost_pct: Option<f64>,
    pub improvement_time_pct: Option<f64>,
    pub improvement_distance_pct: Option<f64>,
}

fn improvement(baseline: f64, candidate: f64) -> Option<f64> {
    (baseline > 0.0).then(|| (baseline - candidate) / baseline * 100.0)
}

/// Runs both solvers on one single-merchant instance and reports the row.
pub fn compare(instance: &Instance, config: &GaConfig, metric: Metric) -> Result<ComparisonRow> {
    let dm = DistanceMatrix::build(instance, metric);
    let speed = instance.vehicle.speed;

    let baseline = baseline_solve(instance, metric)?;
    let ga = solve(instance, config, metric)?;

    let baseline_distance = baseline.total_distance(&dm)?;
    let ga_distance = ga.best.total_distance(&dm)?;
    let baseline_time = baseline.total_travel_time(&dm, speed)?;
    let ga_time = ga.best.total_travel_time(&dm, speed)?;

    Ok(ComparisonRow {
        instance_id: instance.merchants[0].id.clone(),
        baseline_cost: baseline.cost.total,
        ga_cost: ga.best.cost.total,
        baseline_time,
        ga_time,
        baseline_distance,
        ga_distance,
        improvement_cost_pct: improvement(baseline.cost.total, ga.best.cost.total),
        improvement_time_pct: improvement(baseline_time, ga_time),
        improvement_distance_pct: improvement(baseline_distance, ga_distance),
    })
}
