//! Cost engine: soft-time-window penalty, endurance floor penalty, the
//! four-part objective, feasibility checking, and the fitness transform.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{route_distance, CostParams, DistanceMatrix, Instance, Route, TimeWindow};

/// Absolute tolerance for cost comparisons.
pub const COST_EPS: f64 = 1e-9;

/// The four objective components and their sum.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CostBreakdown {
    pub transport_cost: f64,
    pub fixed_cost: f64,
    pub distance_penalty: f64,
    pub time_penalty: f64,
    pub total: f64,
}

impl CostBreakdown {
    pub fn zero() -> Self {
        Self {
            transport_cost: 0.0,
            fixed_cost: 0.0,
            distance_penalty: 0.0,
            time_penalty: 0.0,
            total: 0.0,
        }
    }
}

/// A route set together with its evaluated cost.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Solution {
    pub routes: Vec<Route>,
    pub cost: CostBreakdown,
}

impl Solution {
    /// Route string with routes joined by a single space, each one
    /// "0 - 1 - 2" (closed routes end in "- 0").
    pub fn route_string(&self) -> String {
        self.routes
            .iter()
            .map(Route::node_string)
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Sum of route distances (closed routes include the return arc).
    pub fn total_distance(&self, dm: &DistanceMatrix) -> Result<f64> {
        self.routes.iter().map(|r| route_distance(r, dm)).sum()
    }

    /// Sum of per-route travel times.
    pub fn total_travel_time(&self, dm: &DistanceMatrix, speed: f64) -> Result<f64> {
        Ok(self.total_distance(dm)? / speed)
    }

    /// Completion time of the longest route. A route completes when its last
    /// delivery is made, or when the vehicle is back at the merchant for a
    /// closed route.
    pub fn makespan(&self, dm: &DistanceMatrix, speed: f64) -> Result<f64> {
        let mut worst: f64 = 0.0;
        for route in &self.routes {
            worst = worst.max(route_distance(route, dm)? / speed);
        }
        Ok(worst)
    }
}

/// Soft-time-window penalty for one arrival.
///
/// Early arrivals are charged `early_coeff * (earliest - t)`, on-window
/// arrivals are free, and late arrivals are charged
/// `late_coeff * (exp(t - latest) - 1)`. The exponential branch continues
/// past the cutoff so that extreme lateness is never rewarded.
pub fn time_penalty(t: f64, window: &TimeWindow, params: &CostParams) -> Result<f64> {
    if t < 0.0 {
        return Err(Error::NegativeArrival(t));
    }
    Ok(if t < window.earliest {
        params.early_coeff * (window.earliest - t)
    } else if t <= window.latest {
        0.0
    } else {
        params.late_coeff * ((t - window.latest).exp() - 1.0)
    })
}

/// Endurance floor factor: how many whole endurance lengths a route exceeds.
pub fn distance_penalty_factor(total_route_distance: f64, endurance: f64) -> Result<u32> {
    if endurance <= 0.0 || endurance.is_nan() {
        return Err(Error::NonPositiveEndurance(endurance));
    }
    Ok((total_route_distance / endurance).floor() as u32)
}

/// Arrival time per customer node, `None` for nodes not served.
#[derive(Debug, Clone, PartialEq)]
pub struct ArrivalSchedule {
    by_node: Vec<Option<f64>>,
}

impl ArrivalSchedule {
    pub fn time_at(&self, node: usize) -> Option<f64> {
        self.by_node.get(node).copied().flatten()
    }
}

/// Computes cumulative arrival times along each route. Service time per stop
/// is zero; a closed route's return arc affects no arrival.
pub fn arrival_schedule(routes: &[Route], dm: &DistanceMatrix, speed: f64) -> ArrivalSchedule {
    assert!(speed > 0.0, "speed must be positive");
    let mut by_node = vec![None; dm.len()];
    for route in routes {
        let mut elapsed = 0.0;
        for pair in route.nodes.windows(2) {
            elapsed += dm.get(pair[0], pair[1]) / speed;
            by_node[pair[1]] = Some(elapsed);
        }
    }
    ArrivalSchedule { by_node }
}

/// Evaluates the four-part objective over a route set.
///
/// Transport cost covers every arc driven (merchant-customer and
/// customer-customer alike, plus return arcs of closed routes). Fixed cost is
/// charged per vehicle actually used, i.e. per route with at least one
/// customer. Routes must cover every customer exactly once; coverage failures
/// are feasibility errors.
pub fn evaluate(
    routes: &[Route],
    instance: &Instance,
    dm: &DistanceMatrix,
) -> Result<CostBreakdown> {
    let n_merchants = instance.merchants.len();
    let mut served = vec![0usize; dm.len()];
    for route in routes {
        for &c in route.customers() {
            if c >= dm.len() {
                return Err(Error::UnknownNode {
                    node: c,
                    len: dm.len(),
                });
            }
            served[c] += 1;
        }
    }
    for (node, &count) in served.iter().enumerate().skip(n_merchants) {
        if count != 1 {
            return Err(Error::BadCoverage { node, count });
        }
    }

    let mut transport_distance = 0.0;
    let mut used_vehicles = 0usize;
    let mut distance_penalty = 0.0;
    for route in routes {
        let d = route_distance(route, dm)?;
        transport_distance += d;
        if !route.customers().is_empty() {
            used_vehicles += 1;
        }
        let factor = distance_penalty_factor(d, instance.vehicle.endurance)?;
        distance_penalty += f64::from(factor) * instance.costs.distance_penalty;
    }

    let schedule = arrival_schedule(routes, dm, instance.vehicle.speed);
    let mut time_penalty_total = 0.0;
    for (idx, order) in instance.orders.iter().enumerate() {
        let node = instance.customer_node(idx);
        if let Some(t) = schedule.time_at(node) {
            time_penalty_total += time_penalty(t, &order.window, &instance.costs)?;
        }
    }

    let transport_cost = instance.vehicle.unit_distance_cost * transport_distance;
    let fixed_cost = instance.vehicle.fixed_cost * used_vehicles as f64;
    let total = transport_cost + fixed_cost + distance_penalty + time_penalty_total;
    Ok(CostBreakdown {
        transport_cost,
        fixed_cost,
        distance_penalty,
        time_penalty: time_penalty_total,
        total,
    })
}

/// Checks delivery feasibility: every customer served exactly once, per-route
/// loads within capacity, and the route count within the fleet bound.
/// Violations are returned, not thrown.
pub fn check_feasibility(routes: &[Route], instance: &Instance) -> Vec<String> {
    let mut violations = Vec::new();
    let n_merchants = instance.merchants.len();
    let node_count = instance.node_count();

    let mut served = vec![0usize; node_count];
    for route in routes {
        if route.nodes.is_empty() {
            violations.push(format!("route {}: empty node sequence", route.vehicle));
            continue;
        }
        if route.merchant_node() >= n_merchants {
            violations.push(format!(
                "route {}: first node {} is not a merchant",
                route.vehicle,
                route.merchant_node()
            ));
        }
        let mut load = 0.0;
        for &c in route.customers() {
            if c < n_merchants || c >= node_count {
                violations.push(format!(
                    "route {}: node {} is not a customer",
                    route.vehicle, c
                ));
                continue;
            }
            served[c] += 1;
            if let Some(order) = instance.order_of_node(c) {
                load += instance.order_load(order);
            }
        }
        if load > instance.vehicle.capacity + COST_EPS {
            violations.push(format!(
                "route {} load {} > capacity {}",
                route.vehicle, load, instance.vehicle.capacity
            ));
        }
    }
    for (node, &count) in served.iter().enumerate().skip(n_merchants) {
        if count == 0 {
            violations.push(format!("customer {node} unserved"));
        } else if count > 1 {
            violations.push(format!("customer {node} served {count} times"));
        }
    }
    let used = routes.iter().filter(|r| !r.customers().is_empty()).count();
    if used > instance.fleet_size {
        violations.push(format!(
            "route count {used} > fleet size {}",
            instance.fleet_size
        ));
    }
    violations
}

/// Selection signal: the reciprocal of total cost.
pub fn fitness(total_cost: f64) -> Result<f64> {
    if total_cost <= 0.0 || total_cost.is_nan() {
        return Err(Error::NonPositiveCost(total_cost));
    }
    Ok(1.0 / total_cost)
}
