//! Closed-route nearest-neighbor construction: the myopic "drive to the
//! closest order and come back" plan that the optimized solver is compared
//! against.

use crate::cost::{evaluate, Solution};
use crate::error::{Error, Result};
use crate::model::{DistanceMatrix, Instance, Metric, Route};

/// Builds closed nearest-neighbor routes over a prebuilt distance matrix.
///
/// Starting at the merchant, the closest unvisited customer whose addition
/// keeps the load within capacity and the closed-route distance within
/// endurance is appended; when nothing fits the route is closed and a new one
/// starts. Capacity is a hard constraint; endurance is soft, so a fresh route
/// accepts its first customer even when the round trip alone overruns it (the
/// overrun is charged by the floor penalty at evaluation).
pub fn baseline_routes(instance: &Instance, dm: &DistanceMatrix) -> Result<Vec<Route>> {
    if instance.merchants.len() != 1 {
        return Err(Error::MultiMerchant(instance.merchants.len()));
    }
    for order in &instance.orders {
        let load = instance.order_load(order);
        if load > instance.vehicle.capacity {
            return Err(Error::OrderExceedsCapacity {
                id: order.id.clone(),
                load,
                capacity: instance.vehicle.capacity,
            });
        }
    }

    let merchant = 0usize;
    let mut unvisited: Vec<usize> = (1..instance.node_count()).collect();
    let mut routes = Vec::new();

    while !unvisited.is_empty() {
        let mut nodes = vec![merchant];
        let mut load = 0.0;
        let mut outbound = 0.0;
        let mut last = merchant;

        loop {
            let mut choice: Option<(usize, f64)> = None;
            for (pos, &candidate) in unvisited.iter().enumerate() {
                let order = instance.order_of_node(candidate).expect("customer node");
                if load + instance.order_load(order) > instance.vehicle.capacity {
                    continue;
                }
                let step = dm.get(last, candidate);
                let closed_total = outbound + step + dm.get(candidate, merchant);
                if nodes.len() > 1 && closed_total > instance.vehicle.endurance {
                    continue;
                }
                // ties resolve to the lower node index, fixed by iteration order
                if choice.is_none_or(|(_, best)| step < best) {
                    choice = Some((pos, step));
                }
            }
            let Some((pos, step)) = choice else { break };
            let candidate = unvisited.remove(pos);
            let order = instance.order_of_node(candidate).expect("customer node");
            load += instance.order_load(order);
            outbound += step;
            last = candidate;
            nodes.push(candidate);
        }

        routes.push(Route::closed(routes.len(), nodes));
    }

    Ok(routes)
}

/// Nearest-neighbor plan with closed routes, evaluated by the cost engine.
pub fn baseline_solve(instance: &Instance, metric: Metric) -> Result<Solution> {
    instance.ensure_valid()?;
    let dm = DistanceMatrix::build(instance, metric);
    let routes = baseline_routes(instance, &dm)?;
    let cost = evaluate(&routes, instance, &dm)?;
    Ok(Solution { routes, cost })
}
