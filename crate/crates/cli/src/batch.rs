//! Time-segment order batching: orders are grouped by placement-time slot and
//! then by merchant, producing one single-merchant sub-instance per group.

use std::collections::BTreeMap;

use vrpstw_core::Instance;

use crate::error::{CliError, Result};

/// Slotting rule over a half-open horizon `[horizon_start, horizon_end)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BatchSpec {
    pub slot_length: f64,
    pub horizon_start: f64,
    pub horizon_end: f64,
}

impl BatchSpec {
    pub fn validate(&self) -> Vec<String> {
        let mut violations = Vec::new();
        if !(self.slot_length.is_finite() && self.slot_length > 0.0) {
            violations.push(format!(
                "slot_length must be positive, got {}",
                self.slot_length
            ));
        }
        if !(self.horizon_start.is_finite() && self.horizon_end.is_finite())
            || self.horizon_start >= self.horizon_end
        {
            violations.push(format!(
                "horizon start {} must precede end {}",
                self.horizon_start, self.horizon_end
            ));
        }
        violations
    }

    fn slot_of(&self, placed_at: f64) -> Option<usize> {
        if placed_at < self.horizon_start || placed_at >= self.horizon_end {
            return None;
        }
        Some(((placed_at - self.horizon_start) / self.slot_length).floor() as usize)
    }
}

/// One batched group, ready for the single-merchant solver.
#[derive(Debug, Clone, PartialEq)]
pub struct SubInstance {
    pub slot: usize,
    pub slot_start: f64,
    pub merchant_id: String,
    pub instance: Instance,
}

impl SubInstance {
    /// Stable file stem like "slot003_S42".
    pub fn label(&self) -> String {
        format!("slot{:03}_{}", self.slot, self.merchant_id)
    }
}

/// An order that could not be batched, with the reason.
#[derive(Debug, Clone, PartialEq)]
pub struct RejectedOrder {
    pub order_id: String,
    pub reason: String,
}

/// Groups the instance's orders by (time slot, merchant). Every in-horizon
/// order lands in exactly one sub-instance; the rest are reported, never
/// dropped. Sub-instances are ordered by slot then merchant id.
pub fn batch_orders(
    instance: &Instance,
    spec: &BatchSpec,
) -> Result<(Vec<SubInstance>, Vec<RejectedOrder>)> {
    let violations = spec.validate();
    if !violations.is_empty() {
        return Err(CliError::Input(format!(
            "invalid batch spec: {}",
            violations.join("; ")
        )));
    }

    let mut groups: BTreeMap<(usize, String), Vec<usize>> = BTreeMap::new();
    let mut rejects = Vec::new();
    for (idx, order) in instance.orders.iter().enumerate() {
        let Some(placed_at) = order.placed_at else {
            rejects.push(RejectedOrder {
                order_id: order.id.clone(),
                reason: "no placement time recorded".to_string(),
            });
            continue;
        };
        match spec.slot_of(placed_at) {
            Some(slot) => groups
                .entry((slot, order.merchant_id.clone()))
                .or_default()
                .push(idx),
            None => rejects.push(RejectedOrder {
                order_id: order.id.clone(),
                reason: format!(
                    "placed_at {placed_at} outside horizon [{}, {})",
                    spec.horizon_start, spec.horizon_end
                ),
            }),
        }
    }

    let mut sub_instances = Vec::with_capacity(groups.len());
    for ((slot, merchant_id), order_indices) in groups {
        let merchant = instance
            .merchants
            .iter()
            .find(|m| m.id == merchant_id)
            .expect("validated instances resolve every merchant_id")
            .clone();
        let sub = Instance {
            merchants: vec![merchant],
            orders: order_indices
                .iter()
                .map(|&i| instance.orders[i].clone())
                .collect(),
            vehicle: instance.vehicle,
            costs: instance.costs,
            fleet_size: instance.fleet_size,
        };
        sub_instances.push(SubInstance {
            slot,
            slot_start: spec.horizon_start + slot as f64 * spec.slot_length,
            merchant_id,
            instance: sub,
        });
    }
    Ok((sub_instances, rejects))
}
