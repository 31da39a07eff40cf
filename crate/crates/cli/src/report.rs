//! Result rendering: per-solution rows (fitness, cost, times, route string)
//! and multi-instance comparison reports, in aligned text, CSV, or JSON.
//!
//! Text output rounds for reading; CSV prints floats at full round-trip
//! precision so downstream arithmetic on parsed values is exact.

use clap::ValueEnum;
use serde::Serialize;
use vrpstw_core::compare::ComparisonRow;
use vrpstw_core::{fitness, CostBreakdown, DistanceMatrix, Instance, Solution};

use crate::error::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Csv,
    Json,
}

/// One solver result row. `time_makespan` is the completion time of the
/// longest route, `time_total` the summed travel time of all routes; both are
/// reported because either reading of "delivery time" is defensible.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolveReport {
    pub instance: String,
    pub solver: String,
    pub fitness: f64,
    pub min_cost: f64,
    pub time_makespan: f64,
    pub time_total: f64,
    pub distance: f64,
    pub route: String,
    pub cost: CostBreakdown,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generations: Option<usize>,
}

impl SolveReport {
    pub fn new(
        instance_id: &str,
        solver: &str,
        solution: &Solution,
        instance: &Instance,
        dm: &DistanceMatrix,
        generations: Option<usize>,
    ) -> Result<Self> {
        let speed = instance.vehicle.speed;
        Ok(Self {
            instance: instance_id.to_string(),
            solver: solver.to_string(),
            fitness: fitness(solution.cost.total)?,
            min_cost: solution.cost.total,
            time_makespan: solution.makespan(dm, speed)?,
            time_total: solution.total_travel_time(dm, speed)?,
            distance: solution.total_distance(dm)?,
            route: solution.route_string(),
            cost: solution.cost,
            generations,
        })
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Text => {
                let header = format!(
                    "{:<10} {:<9} {:>9} {:>11} {:>11} {:>10}  {}",
                    "instance", "solver", "fitness", "min_C", "makespan", "total_time", "route"
                );
                let row = format!(
                    "{:<10} {:<9} {:>9.5} {:>11.3} {:>11.3} {:>10.3}  {}",
                    self.instance,
                    self.solver,
                    self.fitness,
                    self.min_cost,
                    self.time_makespan,
                    self.time_total,
                    self.route
                );
                format!("{header}\n{row}\n")
            }
            OutputFormat::Csv => format!(
                "instance,solver,fitness,min_C,makespan,total_time,distance,route\n{},{},{},{},{},{},{},{}\n",
                self.instance,
                self.solver,
                self.fitness,
                self.min_cost,
                self.time_makespan,
                self.time_total,
                self.distance,
                self.route
            ),
            OutputFormat::Json => {
                let mut text =
                    serde_json::to_string_pretty(self).expect("reports always serialize");
                text.push('\n');
                text
            }
        }
    }
}

/// Exact comparison CSV header, stable across releases.
pub const COMPARE_CSV_HEADER: &str = "instance,baseline_Z,ga_Z,baseline_time,ga_time,baseline_dist,ga_dist,impr_Z_pct,impr_time_pct,impr_dist_pct";

fn opt(value: Option<f64>) -> String {
    value.map(|v| v.to_string()).unwrap_or_default()
}

pub fn comparison_csv(rows: &[ComparisonRow]) -> String {
    let mut out = String::from(COMPARE_CSV_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{}\n",
            r.instance_id,
            r.baseline_cost,
            r.ga_cost,
            r.baseline_time,
            r.ga_time,
            r.baseline_distance,
            r.ga_distance,
            opt(r.improvement_cost_pct),
            opt(r.improvement_time_pct),
            opt(r.improvement_distance_pct),
        ));
    }
    out
}

pub fn comparison_text(rows: &[ComparisonRow]) -> String {
    let mut out = format!(
        "{:<12} {:>12} {:>12} {:>10} {:>10} {:>10} {:>10} {:>9} {:>9} {:>9}\n",
        "instance",
        "baseline_Z",
        "ga_Z",
        "base_time",
        "ga_time",
        "base_dist",
        "ga_dist",
        "dZ%",
        "dtime%",
        "ddist%"
    );
    let pct = |v: Option<f64>| {
        v.map(|p| format!("{p:.2}"))
            .unwrap_or_else(|| "-".to_string())
    };
    for r in rows {
        out.push_str(&format!(
            "{:<12} {:>12.3} {:>12.3} {:>10.3} {:>10.3} {:>10.3} {:>10.3} {:>9} {:>9} {:>9}\n",
            r.instance_id,
            r.baseline_cost,
            r.ga_cost,
            r.baseline_time,
            r.ga_time,
            r.baseline_distance,
            r.ga_distance,
            pct(r.improvement_cost_pct),
            pct(r.improvement_time_pct),
            pct(r.improvement_distance_pct),
        ));
    }
    out
}

pub fn comparison_json(rows: &[ComparisonRow]) -> String {
    let mut text = serde_json::to_string_pretty(rows).expect("reports always serialize");
    text.push('\n');
    text
}

pub fn render_comparison(rows: &[ComparisonRow], format: OutputFormat) -> String {
    match format {
        OutputFormat::Text => comparison_text(rows),
        OutputFormat::Csv => comparison_csv(rows),
        OutputFormat::Json => comparison_json(rows),
    }
}
