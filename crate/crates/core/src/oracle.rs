//! Exhaustive exact solver for small instances, used as a correctness oracle.
//!
//! Every set partition of the customers into at most `fleet_size` groups is
//! enumerated together with every ordering inside each group; each candidate
//! is priced by the same cost engine the heuristics use, so the minimum found
//! is the true optimum within those bounds.

use crate::cost::{evaluate, Solution};
use crate::error::{Error, Result};
use crate::model::{DistanceMatrix, Instance, Metric, Route};

/// Default customer cap: partition counts grow like the Bell numbers, and 8
/// customers (4140 partitions) still enumerate in well under a second.
pub const DEFAULT_ORACLE_CAP: usize = 8;

/// Finds the globally cheapest route set by exhaustive enumeration.
///
/// Searches open routes by default; `closed_routes` switches to the
/// return-to-merchant semantics for verifying the baseline. Ties on cost
/// resolve to the lexicographically smallest route string.
pub fn oracle_solve(
    instance: &Instance,
    metric: Metric,
    max_customers: usize,
    closed_routes: bool,
) -> Result<Solution> {
    instance.ensure_valid()?;
    if instance.merchants.len() != 1 {
        return Err(Error::MultiMerchant(instance.merchants.len()));
    }
    let n = instance.customer_count();
    if n > max_customers {
        return Err(Error::TooManyCustomers {
            customers: n,
            max: max_customers,
        });
    }
    let capacity = instance.vehicle.capacity;
    let mut loads = vec![0.0; instance.node_count()];
    for (idx, order) in instance.orders.iter().enumerate() {
        let load = instance.order_load(order);
        if load > capacity {
            return Err(Error::OrderExceedsCapacity {
                id: order.id.clone(),
                load,
                capacity,
            });
        }
        loads[instance.customer_node(idx)] = load;
    }

    let dm = DistanceMatrix::build(instance, metric);
    let max_blocks = instance.fleet_size.min(n);
    let mut best: Option<(f64, Vec<Route>, String)> = None;

    visit_candidates(n, max_blocks, &loads, capacity, &mut |ordered_blocks| {
        let routes: Vec<Route> = ordered_blocks
            .iter()
            .enumerate()
            .map(|(vehicle, block)| {
                let mut nodes = Vec::with_capacity(block.len() + 1);
                nodes.push(0);
                nodes.extend_from_slice(block);
                Route {
                    vehicle,
                    nodes,
                    closed: closed_routes,
                }
            })
            .collect();
        let z = evaluate(&routes, instance, &dm)
            .expect("enumerated candidates cover every customer exactly once")
            .total;
        let replace = match &best {
            None => true,
            Some((best_z, _, best_string)) => {
                z < *best_z
                    || (z == *best_z && {
                        let s = route_set_string(&routes);
                        s < *best_string
                    })
            }
        };
        if replace {
            let s = route_set_string(&routes);
            best = Some((z, routes, s));
        }
    });

    let (_, routes, _) = best.ok_or(Error::FleetExhausted(instance.fleet_size))?;
    let cost = evaluate(&routes, instance, &dm)?;
    Ok(Solution { routes, cost })
}

fn route_set_string(routes: &[Route]) -> String {
    routes
        .iter()
        .map(Route::node_string)
        .collect::<Vec<_>>()
        .join(" ")
}

/// Calls `visit` once per (partition, per-group ordering) candidate. Groups
/// are capped at `max_blocks` and pruned when their load exceeds capacity.
/// Customers are the node indices 1..=n.
pub(crate) fn visit_candidates(
    n: usize,
    max_blocks: usize,
    loads: &[f64],
    capacity: f64,
    visit: &mut impl FnMut(&[Vec<usize>]),
) {
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let mut block_loads: Vec<f64> = Vec::new();
    partition_rec(
        1,
        n,
        max_blocks,
        loads,
        capacity,
        &mut blocks,
        &mut block_loads,
        visit,
    );
}

#[allow(clippy::too_many_arguments)]
fn partition_rec(
    item: usize,
    n: usize,
    max_blocks: usize,
    loads: &[f64],
    capacity: f64,
    blocks: &mut Vec<Vec<usize>>,
    block_loads: &mut Vec<f64>,
    visit: &mut impl FnMut(&[Vec<usize>]),
) {
    if item > n {
        let mut ordered: Vec<Vec<usize>> = Vec::with_capacity(blocks.len());
        ordering_rec(blocks, &mut ordered, visit);
        return;
    }
    let load = loads[item];
    for b in 0..blocks.len() {
        if block_loads[b] + load <= capacity {
            blocks[b].push(item);
            block_loads[b] += load;
            partition_rec(
                item + 1,
                n,
                max_blocks,
                loads,
                capacity,
                blocks,
                block_loads,
                visit,
            );
            blocks[b].pop();
            block_loads[b] -= load;
        }
    }
    if blocks.len() < max_blocks {
        blocks.push(vec![item]);
        block_loads.push(load);
        partition_rec(
            item + 1,
            n,
            max_blocks,
            loads,
            capacity,
            blocks,
            block_loads,
            visit,
        );
        blocks.pop();
        block_loads.pop();
    }
}

fn ordering_rec(
    blocks: &[Vec<usize>],
    ordered: &mut Vec<Vec<usize>>,
    visit: &mut impl FnMut(&[Vec<usize>]),
) {
    if ordered.len() == blocks.len() {
        visit(ordered);
        return;
    }
    let block = &blocks[ordered.len()];
    let mut remaining = block.clone();
    let mut prefix = Vec::with_capacity(block.len());
    permute_rec(&mut remaining, &mut prefix, &mut |perm| {
        ordered.push(perm.to_vec());
        ordering_rec(blocks, ordered, visit);
        ordered.pop();
    });
}

fn permute_rec(
    remaining: &mut Vec<usize>,
    prefix: &mut Vec<usize>,
    visit: &mut impl FnMut(&[usize]),
) {
    if remaining.is_empty() {
        visit(prefix);
        return;
    }
    for i in 0..remaining.len() {
        let item = remaining.remove(i);
        prefix.push(item);
        permute_rec(remaining, prefix, visit);
        prefix.pop();
        remaining.insert(i, item);
    }
}
